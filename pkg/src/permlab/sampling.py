"""Samplers and exact mass functions for conjugation-invariant laws.

All samplers take a seed-stable random source (see rng.RngStream) and
consume randomness element by element in a fixed order, so that the
sample of size n produced from a stream is the projection of the
sample of size n+1 produced from the same stream.
"""
from __future__ import annotations

import itertools
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from ._fast import crp_fill
from .perms import Permutation, cycle_type
from .rng import as_generator

CENTRAL_PMF_MAX_N = 10

BaseSampler = Callable[[int, np.random.Generator], np.ndarray]


# ---------------------------------------------------------------------------
# parameter types


@dataclass(frozen=True)
class StickVector:
    """Weakly decreasing nonnegative masses with sum at most 1.

    The leftover fixed_mass = 1 - sum(sticks) is the probability that a
    point starts a fresh cycle of its own in the circle construction
    (asymptotically: becomes a fixed point).
    """

    sticks: tuple[float, ...]

    def __post_init__(self):
        s = tuple(float(x) for x in self.sticks)
        if any(x < 0 for x in s):
            raise ValueError("sticks must be nonnegative")
        if any(a < b for a, b in zip(s, s[1:])):
            raise ValueError("sticks must be weakly decreasing")
        if sum(s) > 1.0 + 1e-12:
            raise ValueError("sticks must sum to at most 1")
        object.__setattr__(self, "sticks", s)

    @property
    def fixed_mass(self) -> float:
        return max(0.0, 1.0 - sum(self.sticks))


@dataclass(frozen=True)
class CycleWeights:
    """Per-length cycle weights; weights[k-1] multiplies each k-cycle."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if not w:
            raise ValueError("need at least one weight")
        if any(x <= 0 for x in w):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "weights", w)


# ---------------------------------------------------------------------------
# basic samplers


def sample_uniform(n: int, rng) -> Permutation:
    """Exactly uniform word via Fisher-Yates."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = as_generator(rng)
    return Permutation._trusted(gen.permutation(n).astype(np.int64) + 1)


def sample_ewens(n: int, theta: float, rng) -> Permutation:
    """Sequential cycle insertion: element k+1 opens a new cycle with
    probability theta/(theta+k), else lands after a uniform earlier
    element.  theta=1 is uniform; theta=0 is a uniform single cycle."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if theta < 0:
        raise ValueError("theta must be >= 0")
    gen = as_generator(rng)
    u = gen.random(2 * n)
    word = np.empty(n, dtype=np.int64)
    crp_fill(word, u, float(theta))
    return Permutation._trusted(word)


def sample_gen_ewens(n: int, weights: CycleWeights | Sequence[float], rng) -> Permutation:
    """Law proportional to the product of weights[len(c)-1] over cycles c.

    The cycle containing the smallest unplaced element gets length k
    with probability w_k h_{m-k} / (m h_m), where h solves the
    normalization recurrence m h_m = sum_k w_k h_{m-k}; its members and
    internal order are then uniform.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not isinstance(weights, CycleWeights):
        weights = CycleWeights(tuple(weights))
    if len(weights.weights) < n:
        raise ValueError(f"need weights for lengths 1..{n}")
    gen = as_generator(rng)
    logh = cycle_weight_log_norms(n, weights)
    logw = np.full(n + 1, -np.inf)
    for k in range(1, n + 1):
        if weights.weights[k - 1] > 0:
            logw[k] = math.log(weights.weights[k - 1])

    word = np.empty(n, dtype=np.int64)
    remaining = list(range(1, n + 1))
    while remaining:
        m = len(remaining)
        logp = logw[1 : m + 1] + logh[m - 1 :: -1]
        top = logp.max()
        if top == -np.inf:
            raise ValueError("weights assign zero mass to every completion")
        p = np.exp(logp - top)
        p /= p.sum()
        k = int(np.searchsorted(np.cumsum(p), gen.random(), side="right")) + 1
        smallest = remaining[0]
        rest = remaining[1:]
        picked_idx = gen.choice(m - 1, size=k - 1, replace=False) if k > 1 else []
        members = [rest[int(i)] for i in picked_idx]
        order = list(gen.permutation(k - 1)) if k > 1 else []
        cyc = [smallest] + [members[int(i)] for i in order]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            word[a - 1] = b
        taken = set(cyc)
        remaining = [x for x in remaining if x not in taken]
    return Permutation._trusted(word)


@lru_cache(maxsize=128)
def cycle_weight_log_norms(n: int, weights: CycleWeights) -> np.ndarray:
    """log h_m for m = 0..n, where m h_m = sum_k w_k h_{m-k}, h_0 = 1.

    h_m is the permanental normalizer: m! h_m sums the cycle-weight
    product over the whole group on m points.  Computed in log space.
    """
    if len(weights.weights) < n:
        raise ValueError(f"need weights for lengths 1..{n}")
    logw = np.array(
        [math.log(w) if w > 0 else -np.inf for w in weights.weights[:n]], dtype=np.float64
    )
    logh = np.empty(n + 1)
    logh[0] = 0.0
    for m in range(1, n + 1):
        # terms[k-1] = log w_k + log h_{m-k}
        terms = logw[:m] + logh[:m][::-1]
        top = terms.max()
        if top == -np.inf:
            logh[m] = -np.inf
        else:
            logh[m] = top + math.log(np.exp(terms - top).sum()) - math.log(m)
    logh.setflags(write=False)
    return logh


# ---------------------------------------------------------------------------
# central measures: circle construction over a stick vector


def sample_central(n: int, sticks: StickVector, rng) -> Permutation:
    """Circle construction: point k picks stick j with mass sticks[j-1]
    (leftover mass: a fresh circle of its own) and is inserted at a
    uniform position on that circle; circles are read as cycles."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = as_generator(rng)
    cum = list(itertools.accumulate(sticks.sticks))
    word = np.arange(1, n + 1, dtype=np.int64)
    circles: dict[int, list[int]] = {}
    for k in range(1, n + 1):
        u = gen.random()
        j = bisect_right(cum, u)
        if j >= len(cum):
            continue  # own circle: k stays a fixed point of the word
        members = circles.setdefault(j, [])
        if members:
            e = members[int(gen.random() * len(members))]
            word[k - 1] = word[e - 1]
            word[e - 1] = k
        members.append(k)
    return Permutation._trusted(word)


def sample_poisson_dirichlet(n: int, theta: float, rng) -> Permutation:
    """Central sample whose stick vector is Poisson-Dirichlet(theta),
    realized lazily: sticks are broken on first visit with Beta(1,theta)
    fractions of the remaining mass.  Equal in law to sample_ewens."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if theta <= 0:
        raise ValueError("theta must be > 0")
    gen = as_generator(rng)
    cum: list[float] = []
    remaining = 1.0
    word = np.arange(1, n + 1, dtype=np.int64)
    circles: dict[int, list[int]] = {}
    for k in range(1, n + 1):
        u = gen.random()
        while not cum or u >= cum[-1]:
            frac = gen.beta(1.0, theta)
            piece = remaining * frac
            remaining -= piece
            cum.append((cum[-1] if cum else 0.0) + piece)
        j = bisect_right(cum, u)
        members = circles.setdefault(j, [])
        if members:
            e = members[int(gen.random() * len(members))]
            word[k - 1] = word[e - 1]
            word[e - 1] = k
        members.append(k)
    return Permutation._trusted(word)


# ---------------------------------------------------------------------------
# dilution


def uniform_base(m: int, gen: np.random.Generator) -> np.ndarray:
    return gen.permutation(m).astype(np.int64) + 1


def single_cycle_base(m: int, gen: np.random.Generator) -> np.ndarray:
    """Uniform cyclic word: the law of sample_ewens with theta = 0."""
    u = gen.random(2 * m)
    word = np.empty(m, dtype=np.int64)
    crp_fill(word, u, 0.0)
    return word


def ewens_base(theta: float) -> BaseSampler:
    def base(m: int, gen: np.random.Generator) -> np.ndarray:
        u = gen.random(2 * m)
        word = np.empty(m, dtype=np.int64)
        crp_fill(word, u, float(theta))
        return word

    return base


def sample_diluted(n: int, fixed_prob: float, base: BaseSampler, rng) -> Permutation:
    """Each point independently becomes a fixed point with probability
    fixed_prob; the base law acts on the remaining points, relabelled
    order-preservingly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= fixed_prob <= 1.0:
        raise ValueError("fixed_prob must be in [0, 1]")
    gen = as_generator(rng)
    fixed = gen.random(n) < fixed_prob
    word = np.arange(1, n + 1, dtype=np.int64)
    free = np.nonzero(~fixed)[0]
    m = free.size
    if m > 0:
        tau = np.asarray(base(m, gen), dtype=np.int64)
        word[free] = free[tau - 1] + 1
    return Permutation._trusted(word)


# ---------------------------------------------------------------------------
# exact mass functions


def ewens_pmf(sigma: Permutation, theta) -> float | Fraction:
    """theta^(cycles-1) / prod_{i=1}^{n-1} (theta+i); exact when theta
    is a Fraction or int, float otherwise."""
    if isinstance(theta, float) and theta < 0:
        raise ValueError("theta must be >= 0")
    n = sigma.n
    k = len(cycle_type(sigma))
    exact = isinstance(theta, (Fraction, int))
    th = Fraction(theta) if exact else float(theta)
    if th < 0:
        raise ValueError("theta must be >= 0")
    num = th ** (k - 1) if k > 1 else (Fraction(1) if exact else 1.0)
    den = math.prod(th + i for i in range(1, n))
    if den == 0:
        raise ValueError("degenerate normalization")
    return num / den


def ewens_expected_cycles(n: int, theta: float) -> float:
    return sum(theta / (theta + i) for i in range(n)) if theta > 0 else 1.0


def central_expected_cycles(n: int, sticks: StickVector) -> float:
    return n * sticks.fixed_mass + sum(1.0 - (1.0 - x) ** n for x in sticks.sticks)


def _assignment_sum(length_counts: list[tuple[int, int]], sticks: Sequence) -> object:
    # Sum over injective placements of cycles onto sticks of the product
    # of stick^length; cycles of equal length use unordered stick sets.
    if not length_counts:
        return 1
    (length, count), rest = length_counts[0], length_counts[1:]
    total = 0
    indices = range(len(sticks))
    for combo in itertools.combinations(indices, count):
        term = 1
        for i in combo:
            term = term * sticks[i] ** length
        remaining = [sticks[i] for i in indices if i not in combo]
        total = total + term * _assignment_sum(rest, remaining)
    return total


def _central_pmf_full_mass(counts: dict[int, int], sticks: Sequence) -> object:
    # Mass of one permutation with the given cycle-length counts when
    # the sticks sum to exactly 1.
    if sum(counts.values()) > len(sticks):
        return 0
    prefactor = 1
    for j, r in counts.items():
        prefactor = prefactor * Fraction(math.factorial(r), math.factorial(j - 1) ** r)
    ordered = sorted(counts.items())
    return prefactor * _assignment_sum(ordered, list(sticks))


def central_pmf(sigma: Permutation, sticks: StickVector | Sequence) -> float | Fraction:
    """Exact mass of sigma under the circle construction over sticks.

    Sticks may be floats or Fractions; with Fractions the result is
    exact.  Guarded to n <= 10: the assignment sum is exponential.
    """
    n = sigma.n
    if n > CENTRAL_PMF_MAX_N:
        raise ValueError(f"central_pmf is limited to n <= {CENTRAL_PMF_MAX_N}")
    raw = list(sticks.sticks) if isinstance(sticks, StickVector) else list(sticks)
    if any(x < 0 for x in raw):
        raise ValueError("sticks must be nonnegative")
    total = sum(raw)
    if total > 1 and float(total - 1) > 1e-12:
        raise ValueError("sticks must sum to at most 1")
    counts: dict[int, int] = {}
    for j in cycle_type(sigma):
        counts[j] = counts.get(j, 0) + 1

    exact = all(isinstance(x, (Fraction, int)) for x in raw)
    one = Fraction(1) if exact else 1.0
    if total == 0:
        return one if set(counts) == {1} or not counts else 0 * one

    if (total == 1) if exact else (abs(float(total) - 1.0) <= 1e-12):
        return _central_pmf_full_mass(counts, raw) * one

    # Partial mass: mix over how many fixed points come from the
    # leftover mass, then recurse on the renormalized sticks.
    fixed_mass = 1 - total
    scaled = [x / total for x in raw]
    l = counts.get(1, 0)
    acc = 0 * one
    for j in range(l + 1):
        sub = dict(counts)
        if j:
            sub[1] -= j
            if sub[1] == 0:
                del sub[1]
        term = (
            math.comb(l, j)
            * fixed_mass**j
            * (1 - fixed_mass) ** (n - j)
            * _central_pmf_full_mass(sub, scaled)
        )
        acc = acc + term
    return acc * one


def gen_ewens_pmf(sigma: Permutation, weights: CycleWeights | Sequence[float]) -> float:
    """Normalized cycle-weight product mass, brute-force free."""
    if not isinstance(weights, CycleWeights):
        weights = CycleWeights(tuple(weights))
    n = sigma.n
    if len(weights.weights) < n:
        raise ValueError(f"need weights for lengths 1..{n}")
    logh = cycle_weight_log_norms(n, weights)
    logmass = 0.0
    for j in cycle_type(sigma):
        logmass += math.log(weights.weights[j - 1])
    log_total = logh[n] + math.lgamma(n + 1)
    return math.exp(logmass - log_total)
