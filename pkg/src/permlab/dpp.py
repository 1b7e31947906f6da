"""Determinantal description of descent sets.

For the stationary limit of conjugation-invariant permutation laws,
the probability that every position of a finite set A is a descent is
det[k(j - i)] over i, j in A, where the kernel coefficients come from
the Laurent expansion

    sum_l k(l) z^l = -1 / (z + sum_{l>=1} a(l) z^{l+1}),

with a(l) the probability that l given consecutive positions are all
descents.  a depends on one parameter: the asymptotic density
fixed_mass of points that are fixed.  The kernel has a simple pole
structure, so k(i) = 0 for all i <= -2, and correlations of an
interval block factor into a product of a-values over maximal runs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._fast import submask_counts
from .perms import Permutation, descent_set

_EXACT_TYPES = (Fraction, int)


def block_correlation(length: int, fixed_mass=0) -> float | Fraction:
    """Limit probability that length given consecutive positions are
    all descents; exact for Fraction/int fixed_mass.

    >>> block_correlation(1)
    Fraction(1, 2)
    >>> block_correlation(2)
    Fraction(1, 6)
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    x = fixed_mass if isinstance(fixed_mass, _EXACT_TYPES) else float(fixed_mass)
    if not 0 <= x <= 1:
        raise ValueError("fixed_mass must lie in [0, 1]")
    one = Fraction(1) if isinstance(x, _EXACT_TYPES) else 1.0
    l = length
    return (one - x) ** (l + 1) / math.factorial(l + 1) + x * (one - x) ** l / math.factorial(l)


def _invert_unit_series(g: Sequence) -> list:
    # Coefficients of 1/g for a series with g[0] = 1.
    if g[0] != 1:
        raise ValueError("series must have constant term 1")
    inv = [g[0] ** 0]  # typed one
    for m in range(1, len(g)):
        acc = 0 * inv[0]
        for j in range(1, m + 1):
            acc += g[j] * inv[m - j]
        inv.append(-acc)
    return inv


@dataclass(frozen=True)
class DescentKernel:
    """Banded translation kernel k(-1), k(0), ..., k(band)."""

    fixed_mass: object
    band: int
    coeffs: tuple  # coeffs[t] = k(t - 1)

    def at(self, offset: int):
        """k(offset); identically zero below the band at offset <= -2."""
        if offset <= -2:
            return 0 * self.coeffs[0]
        if offset > self.band:
            raise ValueError(f"kernel band {self.band} too small for offset {offset}")
        return self.coeffs[offset + 1]


def descent_kernel(fixed_mass=0, band: int = 8) -> DescentKernel:
    """Kernel coefficients out to k(band), exact for Fraction input.

    Built twice and cross-checked: once from the closed two-term block
    probabilities, once from the series product (1 + fixed_mass z) *
    exp((1 - fixed_mass) z) expanded directly.  The inverted series has
    a simple pole, which is what kills all coefficients below k(-1).
    """
    if band < 0:
        raise ValueError("band must be >= 0")
    x = fixed_mass if isinstance(fixed_mass, _EXACT_TYPES) else float(fixed_mass)
    if not 0 <= x <= 1:
        raise ValueError("fixed_mass must lie in [0, 1]")
    exact = isinstance(x, _EXACT_TYPES)
    one = Fraction(1) if exact else 1.0
    depth = band + 2

    g = [one] + [block_correlation(l, x) * one for l in range(1, depth)]

    # Independent expansion: coefficient m of (1 + x z) e^{(1-x) z} is
    # (1-x)^m / m! + x (1-x)^(m-1) / (m-1)!.  The full denominator
    # 1 - (1 + x z) e^{(1-x) z} then equals -z * h(z) with h below.
    h = []
    for m in range(1, depth + 1):
        c = (one - x) ** m / math.factorial(m) + x * (one - x) ** (m - 1) / math.factorial(m - 1)
        h.append(c)
    if h[0] != 1:
        raise AssertionError("pole of the generating function is not simple")
    tol = 0 if exact else 1e-12
    for a, b in zip(g, h):
        if abs(a - b) > tol:
            raise AssertionError("series representations disagree")

    inv = _invert_unit_series(g)
    coeffs = tuple(-c for c in inv)
    return DescentKernel(fixed_mass=x, band=band, coeffs=coeffs)


def _determinant_full_pivot(matrix: list[list]) -> object:
    # Gaussian elimination with full pivoting; works for Fractions and
    # floats alike.  Sizes here never exceed a few dozen.
    m = [row[:] for row in matrix]
    size = len(m)
    det = m[0][0] ** 0  # typed one
    sign = 1
    for col in range(size):
        pr, pc, best = -1, -1, None
        for i in range(col, size):
            for j in range(col, size):
                mag = abs(m[i][j])
                if best is None or mag > best:
                    best, pr, pc = mag, i, j
        if best == 0:
            return 0 * det
        if pr != col:
            m[col], m[pr] = m[pr], m[col]
            sign = -sign
        if pc != col:
            for row in m:
                row[col], row[pc] = row[pc], row[col]
            sign = -sign
        pivot = m[col][col]
        det = det * pivot
        for i in range(col + 1, size):
            factor = m[i][col] / pivot
            if factor == 0:
                continue
            for j in range(col, size):
                m[i][j] = m[i][j] - factor * m[col][j]
    return sign * det


def _validated_positions(positions: Iterable[int]) -> tuple[int, ...]:
    pos = tuple(int(p) for p in positions)
    if not pos:
        raise ValueError("need at least one position")
    if any(a >= b for a, b in zip(pos, pos[1:])):
        raise ValueError("positions must be strictly increasing")
    return pos


def correlation_determinant(kernel: DescentKernel, positions: Iterable[int]):
    """det[k(p_j - p_i)] over the query positions.

    >>> correlation_determinant(descent_kernel(Fraction(0)), [1, 2])
    Fraction(1, 6)
    """
    pos = _validated_positions(positions)
    if pos[-1] - pos[0] > kernel.band:
        raise ValueError("kernel band too small for the position spread")
    matrix = [[kernel.at(q - p) for q in pos] for p in pos]
    return _determinant_full_pivot(matrix)


def block_product_correlation(fixed_mass, positions: Iterable[int]):
    """Product of block correlations over maximal consecutive runs.

    Correlations of 1-dependent stationary descent indicators factor
    across runs; this is the determinant-free oracle.
    """
    pos = _validated_positions(positions)
    runs = []
    run_len = 1
    for prev, cur in zip(pos, pos[1:]):
        if cur == prev + 1:
            run_len += 1
        else:
            runs.append(run_len)
            run_len = 1
    runs.append(run_len)
    out = block_correlation(runs[0], fixed_mass)
    for r in runs[1:]:
        out = out * block_correlation(r, fixed_mass)
    return out


# ---------------------------------------------------------------------------
# empirical side


def descent_mask(sigma: Permutation, width: int) -> int:
    """Bitmask of the descents of sigma among positions 1..width."""
    if width < 1 or width > sigma.n - 1:
        raise ValueError("width must lie in 1..n-1")
    mask = 0
    for p in descent_set(sigma):
        if p <= width:
            mask |= 1 << (p - 1)
    return mask


def positions_to_mask(positions: Iterable[int]) -> int:
    mask = 0
    for p in _validated_positions(positions):
        mask |= 1 << (p - 1)
    return mask


def subset_occurrence_counts(masks: np.ndarray, width: int) -> np.ndarray:
    """counts[s] = number of masks containing the subset s."""
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    return submask_counts(masks, width)


@dataclass(frozen=True)
class CorrelationEstimate:
    hits: int
    draws: int

    @property
    def estimate(self) -> float:
        return self.hits / self.draws

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1.0 - p) / self.draws)

    def wilson_interval(self, z: float = 1.96) -> tuple[float, float]:
        p, n = self.estimate, self.draws
        center = (p + z * z / (2 * n)) / (1 + z * z / n)
        half = (z / (1 + z * z / n)) * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
        return (max(0.0, center - half), min(1.0, center + half))


def estimate_correlation(perms: Iterable[Permutation], positions: Iterable[int]) -> CorrelationEstimate:
    """Fraction of samples whose descent set contains all positions."""
    pos = _validated_positions(positions)
    want = positions_to_mask(pos)
    width = pos[-1]
    hits = 0
    draws = 0
    for p in perms:
        draws += 1
        if descent_mask(p, width) & want == want:
            hits += 1
    if draws == 0:
        raise ValueError("no samples")
    return CorrelationEstimate(hits=hits, draws=draws)


def limit_descent_density(fixed_masses: Iterable[float]) -> float:
    """Mean of (1 - m^2) / 2 over draws of the fixed mass; the limit of
    E|D| / n for the mixture the draws come from."""
    vals = [float(block_correlation(1, m)) for m in fixed_masses]
    if not vals:
        raise ValueError("need at least one draw")
    return float(np.mean(vals))
