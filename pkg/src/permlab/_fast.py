"""Hot inner loops, jit-compiled when numba is available.

Every function here is written so that it also runs unmodified as plain
Python; numba is an accelerator, not a dependency of correctness.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


@njit(cache=True)
def patience_pile_count(seq):
    """Length of the longest strictly increasing subsequence of seq."""
    n = seq.shape[0]
    tops = np.empty(n, np.int64)
    p = 0
    for t in range(n):
        x = seq[t]
        lo, hi = 0, p
        while lo < hi:
            mid = (lo + hi) // 2
            if tops[mid] >= x:
                hi = mid
            else:
                lo = mid + 1
        if lo == p:
            p += 1
        tops[lo] = x
    return p


@njit(cache=True)
def _patience_with_bumps(seq, m, tops, bumped):
    # One round of patience sorting over seq[:m].  Pile tops end up in
    # tops[:p] and the displaced entries, in displacement order, in
    # bumped[:nb].  Returns (p, nb).
    p = 0
    nb = 0
    for t in range(m):
        x = seq[t]
        lo, hi = 0, p
        while lo < hi:
            mid = (lo + hi) // 2
            if tops[mid] >= x:
                hi = mid
            else:
                lo = mid + 1
        if lo == p:
            p += 1
        else:
            bumped[nb] = tops[lo]
            nb += 1
        tops[lo] = x
    return p, nb


@njit(cache=True)
def rsk_shape_word(word):
    """Common shape of the insertion/recording tableaux of a word.

    Row r of the output is produced by patience sorting; the entries
    displaced from row r, in displacement order, are the input of row
    r+1.  Only the shape is kept.
    """
    n = word.shape[0]
    seq = word.copy()
    tops = np.empty(n, np.int64)
    bumped = np.empty(n, np.int64)
    shape = np.empty(n, np.int64)
    rows = 0
    m = n
    while m > 0:
        p, nb = _patience_with_bumps(seq, m, tops, bumped)
        shape[rows] = p
        rows += 1
        seq[:nb] = bumped[:nb]
        m = nb
    return shape[:rows]


@njit(cache=True)
def crp_fill(word, u, theta):
    """Sequential cycle-insertion build of a permutation word.

    Element k+1 opens a new cycle with probability theta/(theta+k) and
    otherwise is inserted directly after a uniformly chosen earlier
    element.  u must hold at least 2n uniforms; element k consumes
    u[2k] and u[2k+1] so that prefixes of the stream give consistent
    nested samples.
    """
    n = word.shape[0]
    word[0] = 1
    for k in range(1, n):
        if u[2 * k] * (theta + k) < theta:
            word[k] = k + 1
        else:
            j = int(u[2 * k + 1] * k)
            if j >= k:
                j = k - 1
            word[k] = word[j]
            word[j] = k + 1


@njit(cache=True)
def submask_counts(masks, width):
    """Occurrence counts of every subset of each mask.

    masks holds one integer bitmask per sample; the result out[s] is
    the number of samples whose mask contains subset s, for all s in
    [0, 2**width).
    """
    out = np.zeros(2 ** width, np.int64)
    for i in range(masks.shape[0]):
        m = masks[i]
        s = m
        while True:
            out[s] += 1
            if s == 0:
                break
            s = (s - 1) & m
    return out
