"""Young diagrams, insertion shapes, and rotated height profiles.

The profile of a diagram is its boundary drawn with the row axis
rotated onto the positive diagonal: row ends land on the right of the
origin and row lengths stretch to the left.  Outside the diagram the
profile continues as |x|.  Breakpoints sit at integer multiples of
sqrt(2)/2.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ._fast import rsk_shape_word
from .perms import Permutation, reverse_values

SQRT2 = math.sqrt(2.0)

GREENE_MAX_N = 12


class YoungDiagram:
    """Partition with weakly decreasing positive rows.

    >>> YoungDiagram([4, 2, 1]).size
    7
    >>> YoungDiagram([4, 2, 1]).conjugate().rows
    (3, 2, 1, 1)
    """

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[int]):
        rows = tuple(int(r) for r in rows)
        if any(r <= 0 for r in rows):
            raise ValueError("rows must be positive")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError("rows must be weakly decreasing")
        self._rows = rows

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def size(self) -> int:
        return sum(self._rows)

    @property
    def row_count(self) -> int:
        return len(self._rows)

    def row(self, i: int) -> int:
        """Length of row i (1-based); 0 beyond the last row."""
        if i < 1:
            raise ValueError("row index is 1-based")
        return self._rows[i - 1] if i <= len(self._rows) else 0

    def conjugate(self) -> "YoungDiagram":
        if not self._rows:
            return YoungDiagram(())
        cols = [sum(1 for r in self._rows if r >= j) for j in range(1, self._rows[0] + 1)]
        return YoungDiagram(cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, YoungDiagram):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"YoungDiagram({list(self._rows)})"


def rsk_shape(sigma: Permutation) -> YoungDiagram:
    """Insertion-tableau shape of the word of sigma.

    Its first row length equals lis_length(sigma) and its first column
    length equals lds_length(sigma).

    >>> rsk_shape(Permutation([5, 3, 2, 1, 4])).rows
    (2, 1, 1, 1)
    """
    return YoungDiagram(rsk_shape_word(sigma.word))


def prefix_row_sum(diagram: YoungDiagram, k: int) -> int:
    """lambda_1 + ... + lambda_k, rows beyond the last counting 0."""
    return sum(diagram.rows[: max(k, 0)])


def max_prefix_row_gap(a: YoungDiagram, b: YoungDiagram) -> int:
    """max_i |sum_{k<=i} (a_k - b_k)| over all prefixes i >= 1."""
    depth = max(a.row_count, b.row_count)
    best = 0
    acc = 0
    for i in range(1, depth + 1):
        acc += a.row(i) - b.row(i)
        best = max(best, abs(acc))
    return best


def _lds_of_subsequence(values: Sequence[int]) -> int:
    # Quadratic DP; oracle-grade code used only on tiny inputs.
    best = 0
    ends: list[int] = []
    for idx, v in enumerate(values):
        cur = 1
        for jdx in range(idx):
            if values[jdx] > v and ends[jdx] + 1 > cur:
                cur = ends[jdx] + 1
        ends.append(cur)
        if cur > best:
            best = cur
    return best


def greene_union_profile(sigma: Permutation, decreasing: bool = False) -> tuple[int, ...]:
    """profile[k-1] = largest union of k monotone subsequences.

    Brute force over position subsets: a set of positions is a union of
    k increasing subsequences exactly when its longest decreasing
    subsequence has at most k terms (and dually).  Guarded to n <= 12.
    """
    n = sigma.n
    if n > GREENE_MAX_N:
        raise ValueError(f"exhaustive union profile is limited to n <= {GREENE_MAX_N}")
    word = sigma.as_tuple() if not decreasing else reverse_values(sigma).as_tuple()
    best = [0] * (n + 1)
    for mask in range(1, 1 << n):
        vals = [word[i] for i in range(n) if mask >> i & 1]
        width = _lds_of_subsequence(vals)
        if len(vals) > best[width]:
            best[width] = len(vals)
    profile = []
    running = 0
    for k in range(1, n + 1):
        running = max(running, best[k])
        profile.append(running)
    return tuple(profile)


def greene_union_size(sigma: Permutation, k: int, decreasing: bool = False) -> int:
    """Largest total size of a union of k increasing subsequences.

    With decreasing=True, unions of decreasing subsequences instead.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    profile = greene_union_profile(sigma, decreasing=decreasing)
    return profile[min(k, sigma.n) - 1]


def _half_heights(rows: Sequence[int], d: np.ndarray) -> np.ndarray:
    """(sqrt(2)/2) * L(d * sqrt(2)/2) for integer offsets d.

    Uses the staircase segments: offset d is covered by the vertical
    edge at row alpha = #{beta >= 1 : beta - lambda_beta <= d} when
    d <= alpha - lambda_{alpha+1}, else by the horizontal edge of row
    alpha + 1 (row lengths beyond the last are 0).
    """
    lam = np.asarray(rows, dtype=np.int64)
    r = lam.size
    d = np.asarray(d, dtype=np.float64)
    if r == 0:
        return np.abs(d) / 2.0
    step_at = np.arange(1, r + 1) - lam  # strictly increasing
    alpha = np.searchsorted(step_at, d, side="right")
    lam_next = np.where(alpha < r, lam[np.minimum(alpha, r - 1)], 0)
    on_vertical = d <= alpha - lam_next
    return np.where(on_vertical, alpha - d / 2.0, d / 2.0 + lam_next)


def height_profile(diagram: YoungDiagram, s) -> np.ndarray | float:
    """Boundary height L(s) of the rotated diagram, |s| far away.

    >>> height_profile(YoungDiagram([1]), 0.0)
    1.4142135623730951
    """
    scalar = np.ndim(s) == 0
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.float64))
    d = s_arr * SQRT2
    lo = np.floor(d)
    frac = d - lo
    m_lo = _half_heights(diagram.rows, lo)
    m_hi = _half_heights(diagram.rows, lo + 1.0)
    out = SQRT2 * ((1.0 - frac) * m_lo + frac * m_hi)
    return float(out[0]) if scalar else out


def profile_support(diagram: YoungDiagram) -> tuple[float, float]:
    """Interval outside which the profile equals |s| exactly."""
    lam1 = diagram.rows[0] if diagram.rows else 0
    return (-(SQRT2 / 2.0) * lam1, (SQRT2 / 2.0) * diagram.row_count)


def profile_sup_distance(a: YoungDiagram, b: YoungDiagram) -> float:
    """sup_s |L_a(s) - L_b(s)|, evaluated exactly.

    Both profiles are affine between consecutive breakpoints and agree
    with |s| outside their supports, so the sup is attained at an
    integer offset.
    """
    lam1 = max(a.rows[0] if a.rows else 0, b.rows[0] if b.rows else 0)
    depth = max(a.row_count, b.row_count)
    d = np.arange(-lam1, depth + 1, dtype=np.float64)
    gap = np.abs(_half_heights(a.rows, d) - _half_heights(b.rows, d))
    return float(SQRT2 * gap.max()) if gap.size else 0.0
