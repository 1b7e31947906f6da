"""Seed-deterministic Monte Carlo experiments.

Sample i always draws from stream (seed, i), so runs are reproducible
byte for byte regardless of how many workers execute them.  The
PERMLAB_THREADS environment variable caps the worker count.
"""
from __future__ import annotations

import csv
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterable, Sequence

import multiprocessing

import numpy as np

from . import dpp, limits, sampling
from .coupling import merge_to_single_cycle
from .perms import Permutation, cycle_count, descent_count, lds_length, lis_length
from .rng import RngStream
from .young import rsk_shape

KINDS = ("tw-edge", "vkls", "descent-corr", "descent-density", "edge-two-sample", "couple")

DISTRIBUTIONS = ("uniform", "ewens", "gen-ewens", "central", "pd", "diluted")

_SUBSET_COUNT_MAX_WIDTH = 20


@dataclass(frozen=True)
class ExperimentSpec:
    kind: str
    n: int
    reps: int
    dist: str = "uniform"
    theta: float = 1.0
    weights: tuple[float, ...] | None = None
    sticks: tuple[float, ...] | None = None
    x0: float = 0.0
    base: str = "uniform"
    seed: int = 0
    k: int = 1
    conjugate: bool = False
    sets: tuple[tuple[int, ...], ...] | None = None
    order: int = limits.DEFAULT_QUAD_ORDER
    dist_b: str | None = None
    theta_b: float = 1.0
    weights_b: tuple[float, ...] | None = None
    sticks_b: tuple[float, ...] | None = None
    x0_b: float = 0.0
    base_b: str = "uniform"
    n_b: int | None = None
    out: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; choose from {KINDS}")
        if self.n < 1 or self.reps < 1:
            raise ValueError("n and reps must be >= 1")
        for name in (self.dist, self.dist_b or "uniform"):
            if name not in DISTRIBUTIONS:
                raise ValueError(f"unknown distribution {name!r}; choose from {DISTRIBUTIONS}")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True)
class ExperimentResult:
    spec: ExperimentSpec
    header: tuple[str, ...]
    rows: tuple[tuple, ...]
    summary: dict[str, float]


# ---------------------------------------------------------------------------
# distribution plumbing


def _group_params(spec: ExperimentSpec, which: str):
    if which == "a":
        return (spec.dist, spec.theta, spec.weights, spec.sticks, spec.x0, spec.base, spec.n)
    dist = spec.dist_b if spec.dist_b is not None else spec.dist
    n = spec.n_b if spec.n_b is not None else spec.n
    return (dist, spec.theta_b, spec.weights_b, spec.sticks_b, spec.x0_b, spec.base_b, n)


def _base_sampler(name: str, theta: float) -> sampling.BaseSampler:
    if name == "uniform":
        return sampling.uniform_base
    if name == "single-cycle":
        return sampling.single_cycle_base
    if name == "ewens":
        return sampling.ewens_base(theta)
    raise ValueError(f"unknown dilution base {name!r}")


def draw_sample(spec: ExperimentSpec, which: str, index: int) -> Permutation:
    dist, theta, weights, sticks, x0, base, n = _group_params(spec, which)
    stream = RngStream(spec.seed, index)
    if dist == "uniform":
        return sampling.sample_uniform(n, stream)
    if dist == "ewens":
        return sampling.sample_ewens(n, theta, stream)
    if dist == "gen-ewens":
        if weights is None:
            raise ValueError("gen-ewens needs weights")
        return sampling.sample_gen_ewens(n, weights, stream)
    if dist == "central":
        if sticks is None:
            raise ValueError("central needs sticks")
        return sampling.sample_central(n, sampling.StickVector(sticks), stream)
    if dist == "pd":
        return sampling.sample_poisson_dirichlet(n, theta, stream)
    if dist == "diluted":
        return sampling.sample_diluted(n, x0, _base_sampler(base, theta), stream)
    raise ValueError(f"unknown distribution {dist!r}")


def group_fixed_mass(spec: ExperimentSpec, which: str = "a") -> float | None:
    """Asymptotic density of fixed points for the group's law, when
    it is determined by the parameters."""
    dist, theta, weights, sticks, x0, base, _ = _group_params(spec, which)
    if dist in ("uniform", "ewens", "pd"):
        return 0.0
    if dist == "central":
        return sampling.StickVector(sticks or ()).fixed_mass
    if dist == "diluted":
        if base in ("uniform", "ewens", "single-cycle"):
            return x0
        return None
    return None


def group_effective_size(spec: ExperimentSpec, which: str = "a") -> float:
    """Size entering edge rescalings: dilution hands the base law only
    (1 - x0) n points on average."""
    dist, _, _, _, x0, _, n = _group_params(spec, which)
    if dist == "diluted":
        return limits.diluted_effective_size(n, x0)
    return float(n)


# ---------------------------------------------------------------------------
# statistics helpers


def edge_rows(sigma: Permutation, k: int, conjugate: bool = False) -> tuple[int, ...]:
    """First k row lengths of the insertion shape (columns when
    conjugate), padded with zeros."""
    shape = rsk_shape(sigma)
    if conjugate:
        shape = shape.conjugate()
    return tuple(shape.row(i) for i in range(1, k + 1))


class EmpiricalCDF:
    """Right-continuous empirical distribution function."""

    __slots__ = ("_sorted",)

    def __init__(self, samples: Iterable[float]):
        arr = np.sort(np.asarray(list(samples), dtype=np.float64))
        if arr.size == 0:
            raise ValueError("need at least one sample")
        self._sorted = arr

    def __call__(self, x) -> np.ndarray | float:
        scalar = np.ndim(x) == 0
        q = np.atleast_1d(np.asarray(x, dtype=np.float64))
        out = np.searchsorted(self._sorted, q, side="right") / self._sorted.size
        return float(out[0]) if scalar else out


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> float:
    """sup |F_a - F_b| over the pooled sample points."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be non-empty")
    pooled = np.concatenate([a, b])
    fa = np.searchsorted(a, pooled, side="right") / a.size
    fb = np.searchsorted(b, pooled, side="right") / b.size
    return float(np.abs(fa - fb).max())


def ks_one_sample(samples: Sequence[float], cdf: Callable[[float], float]) -> float:
    """sup |F_hat - F| against a continuous reference cdf."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = x.size
    if n == 0:
        raise ValueError("need at least one sample")
    f = np.asarray([float(cdf(v)) for v in x])
    upper = (np.arange(1, n + 1) / n - f).max()
    lower = (f - np.arange(0, n) / n).max()
    return float(max(upper, lower))


# ---------------------------------------------------------------------------
# per-sample rows (top level so they cross process boundaries)


def _tw_edge_row(spec: ExperimentSpec, index: int) -> tuple:
    sigma = draw_sample(spec, "a", index)
    size = group_effective_size(spec, "a")
    value = lds_length(sigma) if spec.conjugate else lis_length(sigma)
    rescaled = limits.rescale_edge(value, size)
    if spec.k == 1:
        return (index, value, rescaled)
    rows = edge_rows(sigma, spec.k, conjugate=spec.conjugate)
    if rows[0] != value:
        raise AssertionError("first shape row must equal the monotone subsequence length")
    extra = tuple(limits.rescale_edge(r, size) for r in rows)
    return (index, value, rescaled) + rows + extra


def _vkls_row(spec: ExperimentSpec, index: int) -> tuple:
    sigma = draw_sample(spec, "a", index)
    shape = rsk_shape(sigma)
    return (index, limits.vkls_sup_distance(shape, sigma.n))


def _descent_mask_row(spec: ExperimentSpec, width: int, index: int) -> int:
    sigma = draw_sample(spec, "a", index)
    return dpp.descent_mask(sigma, width)


def _density_row(spec: ExperimentSpec, index: int) -> tuple:
    sigma = draw_sample(spec, "a", index)
    d = descent_count(sigma)
    return (index, d, d / sigma.n)


def _couple_row(spec: ExperimentSpec, index: int) -> tuple:
    sigma = draw_sample(spec, "a", index)
    before = lis_length(sigma)
    m = cycle_count(sigma)
    merged = merge_to_single_cycle(sigma, RngStream(spec.seed, index + spec.reps))
    after = lis_length(merged)
    return (index, m, before, after, after - before, 2 * (m - 1))


def _edge_two_row(spec: ExperimentSpec, index: int) -> tuple:
    which = "a" if index < spec.reps else "b"
    sigma = draw_sample(spec, which, index)
    size = group_effective_size(spec, which)
    value = lds_length(sigma) if spec.conjugate else lis_length(sigma)
    return (which, index, value, limits.rescale_edge(value, size))


# ---------------------------------------------------------------------------
# execution


def worker_count(tasks: int) -> int:
    env = os.environ.get("PERMLAB_THREADS")
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            raise ValueError(f"PERMLAB_THREADS must be an integer, got {env!r}")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, tasks))


def _parallel_map(fn: Callable[[int], object], indices: Sequence[int]) -> list:
    workers = worker_count(len(indices))
    if workers == 1:
        return [fn(i) for i in indices]
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(indices) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, indices, chunksize=chunk))


def run(spec: ExperimentSpec) -> ExperimentResult:
    """Execute the experiment; rows are ordered by sample index and are
    independent of the worker count."""
    if spec.kind == "tw-edge":
        header = ("index", "value", "rescaled")
        if spec.k > 1:
            header += tuple(f"row{i}" for i in range(1, spec.k + 1))
            header += tuple(f"rescaled_row{i}" for i in range(1, spec.k + 1))
        rows = _parallel_map(partial(_tw_edge_row, spec), range(spec.reps))
        rescaled = np.array([r[2] for r in rows])
        summary = {
            "reps": spec.reps,
            "mean_rescaled": float(rescaled.mean()),
            "sd_rescaled": float(rescaled.std(ddof=1)) if spec.reps > 1 else 0.0,
            "ks_vs_edge_law": ks_one_sample(
                rescaled, lambda s: limits.tracy_widom_cdf(s, spec.order)
            ),
        }
        return ExperimentResult(spec, header, tuple(rows), summary)

    if spec.kind == "vkls":
        header = ("index", "sup_distance")
        rows = _parallel_map(partial(_vkls_row, spec), range(spec.reps))
        dist = np.array([r[1] for r in rows])
        summary = {
            "reps": spec.reps,
            "mean_distance": float(dist.mean()),
            "max_distance": float(dist.max()),
        }
        return ExperimentResult(spec, header, tuple(rows), summary)

    if spec.kind == "descent-corr":
        if not spec.sets:
            raise ValueError("descent-corr needs query sets")
        queries = [dpp._validated_positions(s) for s in spec.sets]
        width = max(q[-1] for q in queries)
        if width > spec.n - 1:
            raise ValueError("query positions must stay below n")
        fixed_mass = group_fixed_mass(spec, "a")
        if fixed_mass is None:
            raise ValueError(f"no limit kernel for distribution {spec.dist!r}")
        masks = np.array(
            _parallel_map(partial(_descent_mask_row, spec, width), range(spec.reps)),
            dtype=np.int64,
        )
        if width <= _SUBSET_COUNT_MAX_WIDTH:
            counts = dpp.subset_occurrence_counts(masks, width)
            hit_of = lambda q: int(counts[dpp.positions_to_mask(q)])
        else:
            hit_of = lambda q: int(
                np.count_nonzero((masks & dpp.positions_to_mask(q)) == dpp.positions_to_mask(q))
            )
        kernel = dpp.descent_kernel(fixed_mass, band=width)
        header = ("positions", "draws", "hits", "estimate", "stderr",
                  "determinant", "block_product", "z_score")
        rows = []
        max_z = 0.0
        for q in queries:
            hits = hit_of(q)
            est = dpp.CorrelationEstimate(hits=hits, draws=spec.reps)
            det = float(dpp.correlation_determinant(kernel, q))
            block = float(dpp.block_product_correlation(fixed_mass, q))
            sd = math.sqrt(det * (1.0 - det) / spec.reps)
            z = (est.estimate - det) / sd if sd > 0 else math.inf
            max_z = max(max_z, abs(z))
            rows.append((",".join(map(str, q)), spec.reps, hits, est.estimate,
                         est.stderr, det, block, z))
        summary = {"reps": spec.reps, "sets": len(queries), "max_abs_z": max_z}
        return ExperimentResult(spec, header, tuple(rows), summary)

    if spec.kind == "descent-density":
        header = ("index", "descents", "ratio")
        rows = _parallel_map(partial(_density_row, spec), range(spec.reps))
        ratios = np.array([r[2] for r in rows])
        summary = {"reps": spec.reps, "mean_ratio": float(ratios.mean())}
        fixed_mass = group_fixed_mass(spec, "a")
        if fixed_mass is not None:
            summary["limit_density"] = float(dpp.block_correlation(1, fixed_mass))
        return ExperimentResult(spec, header, tuple(rows), summary)

    if spec.kind == "edge-two-sample":
        header = ("group", "index", "value", "rescaled")
        rows = _parallel_map(partial(_edge_two_row, spec), range(2 * spec.reps))
        a = [r[3] for r in rows if r[0] == "a"]
        b = [r[3] for r in rows if r[0] == "b"]
        summary = {
            "reps_per_group": spec.reps,
            "ks_two_sample": ks_two_sample(a, b),
        }
        return ExperimentResult(spec, header, tuple(rows), summary)

    if spec.kind == "couple":
        header = ("index", "cycles", "lis_before", "lis_after", "delta", "bound")
        rows = _parallel_map(partial(_couple_row, spec), range(spec.reps))
        excess = max(abs(r[4]) - r[5] for r in rows)
        summary = {
            "reps": spec.reps,
            "max_abs_delta": max(abs(r[4]) for r in rows),
            "max_excess_over_bound": float(excess),
            "bound_violations": sum(1 for r in rows if abs(r[4]) > r[5]),
        }
        return ExperimentResult(spec, header, tuple(rows), summary)

    raise ValueError(f"unknown experiment kind {spec.kind!r}")


# ---------------------------------------------------------------------------
# serialization


def _format_cell(value) -> str:
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def write_csv(result: ExperimentResult, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(result.header)
    for row in result.rows:
        writer.writerow([_format_cell(v) for v in row])


def format_summary(result: ExperimentResult) -> str:
    parts = [f"{key}={_format_cell(val)}" for key, val in result.summary.items()]
    return "\n".join(parts)


def save_result(result: ExperimentResult) -> None:
    if result.spec.out:
        with open(result.spec.out, "w", newline="") as fh:
            write_csv(result, fh)
    else:
        write_csv(result, sys.stdout)


# ---------------------------------------------------------------------------
# config files: flat key=value lines, # for comments


def parse_config_text(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _parse_tuple(text: str) -> tuple[float, ...]:
    items = [p for p in text.replace(";", ",").split(",") if p.strip()]
    return tuple(float(p) for p in items)


def _parse_sets(text: str) -> tuple[tuple[int, ...], ...]:
    groups = [g for g in text.split(";") if g.strip()]
    return tuple(tuple(int(p) for p in g.split(",") if p.strip()) for g in groups)


_FIELD_PARSERS: dict[str, Callable[[str], object]] = {
    "kind": str,
    "n": int,
    "reps": int,
    "dist": str,
    "theta": float,
    "weights": _parse_tuple,
    "sticks": _parse_tuple,
    "x0": float,
    "base": str,
    "seed": int,
    "k": int,
    "conjugate": lambda s: s.lower() in ("1", "true", "yes"),
    "sets": _parse_sets,
    "order": int,
    "dist_b": str,
    "theta_b": float,
    "weights_b": _parse_tuple,
    "sticks_b": _parse_tuple,
    "x0_b": float,
    "base_b": str,
    "n_b": int,
    "out": str,
}


def spec_from_mapping(mapping: dict[str, str]) -> ExperimentSpec:
    kwargs = {}
    for key, raw in mapping.items():
        if key not in _FIELD_PARSERS:
            raise ValueError(f"unknown config key {key!r}")
        kwargs[key] = _FIELD_PARSERS[key](raw)
    missing = {"kind", "n", "reps"} - set(kwargs)
    if missing:
        raise ValueError(f"missing required config keys: {sorted(missing)}")
    return ExperimentSpec(**kwargs)
