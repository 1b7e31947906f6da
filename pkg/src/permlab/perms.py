"""Permutations of {1, ..., n} in one-line word form.

A permutation sigma is stored as the word (sigma(1), ..., sigma(n)).
Composition follows (sigma * tau)(i) = sigma(tau(i)): tau acts first.
Cycle decompositions are canonical: each cycle is rotated to start at
its minimum and cycles are sorted by their minima.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._fast import patience_pile_count


class Permutation:
    """Immutable permutation of {1, ..., n} in word form.

    >>> s = Permutation([5, 3, 2, 1, 4])
    >>> s(1), s(5)
    (5, 4)
    >>> s.n
    5
    """

    __slots__ = ("_word",)

    def __init__(self, word: Iterable[int]):
        arr = np.asarray(tuple(word) if not isinstance(word, (np.ndarray, tuple, list)) else word,
                         dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("word must be a non-empty 1-d sequence")
        n = arr.size
        seen = np.zeros(n, dtype=bool)
        if arr.min() < 1 or arr.max() > n:
            raise ValueError("word entries must lie in 1..n")
        seen[arr - 1] = True
        if not seen.all():
            raise ValueError("word must contain each of 1..n exactly once")
        arr = arr.copy()
        arr.setflags(write=False)
        self._word = arr

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "Permutation":
        # arr must already be a valid int64 word; used by samplers that
        # construct words element by element.
        self = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        self._word = arr
        return self

    @property
    def word(self) -> np.ndarray:
        return self._word

    @property
    def n(self) -> int:
        return self._word.size

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"point {i} outside 1..{self.n}")
        return int(self._word[i - 1])

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self._word)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._word.size == other._word.size and bool(
            np.array_equal(self._word, other._word)
        )

    def __hash__(self) -> int:
        return hash(self._word.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({list(self.as_tuple())})"


def identity(n: int) -> Permutation:
    return Permutation._trusted(np.arange(1, n + 1, dtype=np.int64))


def transposition(n: int, i: int, j: int) -> Permutation:
    """The permutation of {1..n} exchanging i and j."""
    if i == j:
        raise ValueError("transposition needs two distinct points")
    w = np.arange(1, n + 1, dtype=np.int64)
    w[i - 1], w[j - 1] = j, i
    return Permutation._trusted(w)


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """(sigma o tau)(i) = sigma(tau(i)).

    >>> compose(Permutation([2, 1, 3]), Permutation([1, 3, 2])).as_tuple()
    (2, 3, 1)
    """
    if sigma.n != tau.n:
        raise ValueError("size mismatch")
    return Permutation._trusted(sigma.word[tau.word - 1])


def inverse(sigma: Permutation) -> Permutation:
    w = np.empty(sigma.n, dtype=np.int64)
    w[sigma.word - 1] = np.arange(1, sigma.n + 1)
    return Permutation._trusted(w)


def conjugate(sigma: Permutation, rho: Permutation) -> Permutation:
    """rho o sigma o rho^{-1}; relabels every point i as rho(i)."""
    return compose(compose(rho, sigma), inverse(rho))


def from_cycles(n: int, cycle_list: Iterable[Sequence[int]]) -> Permutation:
    """Permutation with the given cycles; omitted points are fixed."""
    w = np.arange(1, n + 1, dtype=np.int64)
    used = set()
    for cyc in cycle_list:
        for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
            if not (1 <= a <= n):
                raise ValueError(f"point {a} outside 1..{n}")
            if a in used:
                raise ValueError(f"point {a} appears in two cycles")
            used.add(a)
            w[a - 1] = b
    return Permutation(w)


def cycles(sigma: Permutation) -> tuple[tuple[int, ...], ...]:
    """Canonical cycle decomposition, fixed points included.

    >>> cycles(Permutation([4, 2, 1, 3]))
    ((1, 4, 3), (2,))
    """
    w = sigma.word
    n = sigma.n
    seen = np.zeros(n, dtype=bool)
    out = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = [start + 1]
        seen[start] = True
        nxt = int(w[start]) - 1
        while nxt != start:
            seen[nxt] = True
            cyc.append(nxt + 1)
            nxt = int(w[nxt]) - 1
        out.append(tuple(cyc))
    return tuple(out)


def cycle_count(sigma: Permutation) -> int:
    w = sigma.word
    n = sigma.n
    seen = np.zeros(n, dtype=bool)
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        nxt = start
        while not seen[nxt]:
            seen[nxt] = True
            nxt = int(w[nxt]) - 1
    return count


def cycle_type(sigma: Permutation) -> tuple[int, ...]:
    """Cycle lengths sorted decreasingly; a partition of n."""
    return tuple(sorted((len(c) for c in cycles(sigma)), reverse=True))


def fixed_points(sigma: Permutation) -> tuple[int, ...]:
    w = sigma.word
    return tuple(int(i) for i in np.nonzero(w == np.arange(1, sigma.n + 1))[0] + 1)


def descent_set(sigma: Permutation) -> tuple[int, ...]:
    """Positions i with sigma(i+1) < sigma(i), as 1-based indices.

    >>> descent_set(Permutation([5, 3, 1, 4, 2]))
    (1, 2, 4)
    """
    w = sigma.word
    return tuple(int(i) for i in np.nonzero(w[1:] < w[:-1])[0] + 1)


def descent_count(sigma: Permutation) -> int:
    w = sigma.word
    return int(np.count_nonzero(w[1:] < w[:-1]))


def reverse_values(sigma: Permutation) -> Permutation:
    """The word i -> n + 1 - sigma(i); swaps ascents and descents."""
    return Permutation._trusted(sigma.n + 1 - sigma.word)


def lis_length(sigma: Permutation) -> int:
    """Length of the longest increasing subsequence of the word.

    >>> lis_length(Permutation([5, 3, 2, 1, 4]))
    2
    """
    return int(patience_pile_count(sigma.word))


def lds_length(sigma: Permutation) -> int:
    """Length of the longest decreasing subsequence of the word.

    >>> lds_length(Permutation([5, 3, 2, 1, 4]))
    4
    """
    return int(patience_pile_count(sigma.n + 1 - sigma.word))


def project(sigma: Permutation) -> Permutation:
    """Remove the largest point n from its cycle.

    The image in the group on {1..n-1} maps i to sigma(i) unless
    sigma(i) = n, in which case i maps to sigma(n).

    >>> project(Permutation([4, 2, 1, 3])).as_tuple()
    (3, 2, 1)
    """
    n = sigma.n
    if n < 2:
        raise ValueError("cannot project a permutation of a single point")
    w = sigma.word[: n - 1].copy()
    w[w == n] = sigma.word[n - 1]
    return Permutation._trusted(w)


def all_permutations(n: int) -> Iterator[Permutation]:
    """All n! permutations in lexicographic word order."""
    for word in itertools.permutations(range(1, n + 1)):
        yield Permutation._trusted(np.array(word, dtype=np.int64))


def all_transpositions(n: int) -> Iterator[Permutation]:
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            yield transposition(n, i, j)
