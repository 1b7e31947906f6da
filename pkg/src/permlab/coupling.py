"""The cycle-merging Markov step and its exact small-group analysis.

One step picks an unordered pair of distinct cycles uniformly, one
point uniformly inside each, and multiplies by that transposition on
the right.  The cycle count drops by exactly 1 (single cycles are
absorbing), so cycle_count - 1 steps always reach a single cycle, and
from any conjugation-invariant start the result is exactly the uniform
single-cycle law.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .perms import (
    Permutation,
    all_permutations,
    cycle_count,
    cycle_type,
    cycles,
)
from .rng import as_generator
from .sampling import ewens_pmf

TRANSITION_MAX_N = 6

Word = tuple[int, ...]


def merge_step(sigma: Permutation, rng) -> Permutation:
    """One cycle-merging step; identity on single-cycle permutations."""
    cycs = cycles(sigma)
    m = len(cycs)
    if m == 1:
        return sigma
    gen = as_generator(rng)
    a = int(gen.integers(m))
    b = int(gen.integers(m - 1))
    if b >= a:
        b += 1
    i = cycs[a][int(gen.integers(len(cycs[a])))]
    j = cycs[b][int(gen.integers(len(cycs[b])))]
    word = sigma.word.copy()
    word[i - 1], word[j - 1] = word[j - 1], word[i - 1]
    out = Permutation._trusted(word)
    assert cycle_count(out) == m - 1, "merging must remove exactly one cycle"
    return out


def merge_steps(sigma: Permutation, steps: int, rng) -> Permutation:
    """steps applications of merge_step drawing from one stream."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    gen = as_generator(rng)
    out = sigma
    for _ in range(steps):
        out = merge_step(out, gen)
    return out


def merge_to_single_cycle(sigma: Permutation, rng) -> Permutation:
    """Exactly cycle_count - 1 merging steps; always one cycle after."""
    return merge_steps(sigma, cycle_count(sigma) - 1, rng)


@dataclass(frozen=True)
class TransitionMatrix:
    """Exact one-step law of the merging chain on a full small group."""

    words: tuple[Word, ...]
    index: Mapping[Word, int]
    rows: tuple[Mapping[int, Fraction], ...]

    def probability(self, source: Permutation, target: Permutation) -> Fraction:
        row = self.rows[self.index[source.as_tuple()]]
        return row.get(self.index[target.as_tuple()], Fraction(0))

    def step_pmf(self, pmf: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
        out: dict[Word, Fraction] = {w: Fraction(0) for w in self.words}
        for w, mass in pmf.items():
            if mass == 0:
                continue
            for col, p in self.rows[self.index[w]].items():
                out[self.words[col]] += mass * p
        return out


def transition_matrix(n: int) -> TransitionMatrix:
    """Exact rational transition matrix of the merging step on all n!
    permutations; guarded to n <= 6."""
    if not 1 <= n <= TRANSITION_MAX_N:
        raise ValueError(f"transition matrix is limited to n <= {TRANSITION_MAX_N}")
    perms = tuple(all_permutations(n))
    words = tuple(p.as_tuple() for p in perms)
    index = {w: i for i, w in enumerate(words)}
    rows = []
    for p in perms:
        cycs = cycles(p)
        m = len(cycs)
        row: dict[int, Fraction] = {}
        if m == 1:
            row[index[p.as_tuple()]] = Fraction(1)
        else:
            pair_mass = Fraction(1, math.comb(m, 2))
            for ca, cb in itertools.combinations(cycs, 2):
                point_mass = pair_mass / (len(ca) * len(cb))
                for i in ca:
                    for j in cb:
                        w = list(p.as_tuple())
                        w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
                        col = index[tuple(w)]
                        row[col] = row.get(col, Fraction(0)) + point_mass
        rows.append(row)
    return TransitionMatrix(words=words, index=index, rows=tuple(rows))


# ---------------------------------------------------------------------------
# exact start laws and total variation


def uniform_pmf(n: int) -> dict[Word, Fraction]:
    mass = Fraction(1, math.factorial(n))
    return {p.as_tuple(): mass for p in all_permutations(n)}


def ewens_pmf_table(n: int, theta: Fraction | int) -> dict[Word, Fraction]:
    theta = Fraction(theta)
    return {p.as_tuple(): ewens_pmf(p, theta) for p in all_permutations(n)}


def point_mass_pmf(sigma: Permutation) -> dict[Word, Fraction]:
    out = {p.as_tuple(): Fraction(0) for p in all_permutations(sigma.n)}
    out[sigma.as_tuple()] = Fraction(1)
    return out


def uniform_single_cycle_pmf(n: int) -> dict[Word, Fraction]:
    mass = Fraction(1, math.factorial(n - 1)) if n > 1 else Fraction(1)
    out: dict[Word, Fraction] = {}
    for p in all_permutations(n):
        out[p.as_tuple()] = mass if cycle_count(p) == 1 else Fraction(0)
    return out


def is_conjugation_invariant_pmf(pmf: Mapping[Word, Fraction], n: int) -> bool:
    """True when the mass is constant on every cycle-type class."""
    by_type: dict[tuple[int, ...], Fraction] = {}
    total = Fraction(0)
    for p in all_permutations(n):
        mass = pmf.get(p.as_tuple(), Fraction(0))
        total += mass
        t = cycle_type(p)
        if t in by_type and by_type[t] != mass:
            return False
        by_type[t] = mass
    return total == 1


def tv_distance(p: Mapping[Word, Fraction], q: Mapping[Word, Fraction]) -> Fraction:
    keys = set(p) | set(q)
    return sum((abs(p.get(k, Fraction(0)) - q.get(k, Fraction(0))) for k in keys),
               Fraction(0)) / 2


def single_cycle_uniformization_tv(n: int, start: Mapping[Word, Fraction]) -> Fraction:
    """Total variation between the exact law after n-1 merging steps
    from the given conjugation-invariant start and the uniform law on
    single-cycle permutations.  Zero for every valid start."""
    if not is_conjugation_invariant_pmf(start, n):
        raise ValueError("start law must be conjugation-invariant and sum to 1")
    matrix = transition_matrix(n)
    pmf = {w: start.get(w, Fraction(0)) for w in matrix.words}
    for _ in range(n - 1):
        pmf = matrix.step_pmf(pmf)
    return tv_distance(pmf, uniform_single_cycle_pmf(n))
