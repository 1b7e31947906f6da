import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permlab.dpp import (
    CorrelationEstimate,
    block_correlation,
    block_product_correlation,
    correlation_determinant,
    descent_kernel,
    descent_mask,
    estimate_correlation,
    limit_descent_density,
    positions_to_mask,
    subset_occurrence_counts,
)
from permlab.perms import Permutation, descent_set
from permlab.rng import RngStream
from permlab.sampling import sample_ewens

rational_masses = st.fractions(min_value=0, max_value=1).map(
    lambda f: Fraction(f).limit_denominator(50)
)


def test_block_correlation_values():
    assert block_correlation(1) == Fraction(1, 2)
    assert block_correlation(2) == Fraction(1, 6)
    assert block_correlation(3) == Fraction(1, 24)
    assert block_correlation(1, Fraction(1, 2)) == Fraction(3, 8)
    assert block_correlation(5, 1) == 0
    assert block_correlation(1, 0.25) == pytest.approx(float(Fraction(9, 32) + Fraction(3, 16)))
    with pytest.raises(ValueError):
        block_correlation(0)
    with pytest.raises(ValueError):
        block_correlation(2, 1.5)


def test_kernel_exact_values_at_zero_mass():
    k = descent_kernel(Fraction(0))
    assert k.at(-1) == Fraction(-1)
    assert k.at(0) == Fraction(1, 2)
    assert k.at(1) == Fraction(-1, 12)
    assert k.at(2) == Fraction(0)
    assert k.at(-2) == 0 and k.at(-7) == 0


def test_kernel_band_and_validation():
    k = descent_kernel(Fraction(0), band=3)
    with pytest.raises(ValueError):
        k.at(4)
    with pytest.raises(ValueError):
        descent_kernel(band=-1)
    with pytest.raises(ValueError):
        descent_kernel(fixed_mass=2)


def test_kernel_third_mass_value():
    k = descent_kernel(Fraction(1, 3))
    assert k.at(0) == Fraction(4, 9)
    assert k.at(-1) == Fraction(-1)


@settings(max_examples=40, deadline=None)
@given(rational_masses)
def test_kernel_diagonal_is_single_block(x):
    k = descent_kernel(x)
    assert k.at(0) == block_correlation(1, x)
    assert correlation_determinant(k, [5]) == block_correlation(1, x)


def test_kernel_float_route_matches_exact():
    exact = descent_kernel(Fraction(7, 10))
    approx = descent_kernel(0.7)
    for off in range(-1, 9):
        assert approx.at(off) == pytest.approx(float(exact.at(off)), abs=1e-14)


def test_correlation_examples():
    k = descent_kernel(Fraction(0))
    assert correlation_determinant(k, [1, 2]) == Fraction(1, 6)
    assert correlation_determinant(k, list(range(1, 9))) == Fraction(1, math.factorial(9))
    with pytest.raises(ValueError):
        correlation_determinant(k, [1, 12])
    with pytest.raises(ValueError):
        correlation_determinant(k, [2, 2])
    with pytest.raises(ValueError):
        correlation_determinant(k, [3, 1])
    with pytest.raises(ValueError):
        correlation_determinant(k, [])


def test_correlation_is_translation_invariant():
    k = descent_kernel(Fraction(1, 5), band=6)
    base = [1, 2, 4]
    for shift in (1, 3, 10, 40):
        moved = [p + shift for p in base]
        assert correlation_determinant(k, moved) == correlation_determinant(k, base)


def test_correlation_factorizes_over_separated_clusters():
    # gap of at least 2 makes clusters independent
    k = descent_kernel(Fraction(1, 4), band=10)
    left, right = [1, 2], [5, 6, 7]
    joint = correlation_determinant(k, left + right)
    assert joint == correlation_determinant(k, left) * correlation_determinant(k, right)


@settings(max_examples=30, deadline=None)
@given(rational_masses)
def test_determinant_equals_block_product_subsets(x):
    k = descent_kernel(x, band=6)
    for r in range(1, 4):
        for pos in itertools.combinations(range(1, 7), r):
            assert correlation_determinant(k, pos) == block_product_correlation(x, pos)


def test_block_product_run_splitting():
    x = Fraction(1, 3)
    got = block_product_correlation(x, [1, 2, 3, 6, 8, 9])
    want = block_correlation(3, x) * block_correlation(1, x) * block_correlation(2, x)
    assert got == want


def test_descent_mask_and_subset_counts():
    p = Permutation([5, 3, 1, 4, 2])
    assert descent_set(p) == (1, 2, 4)
    assert descent_mask(p, 4) == 0b1011
    assert descent_mask(p, 2) == 0b11
    with pytest.raises(ValueError):
        descent_mask(p, 5)
    assert positions_to_mask([1, 3]) == 0b101

    masks = np.array([0b1011, 0b0011, 0b1000], dtype=np.int64)
    counts = subset_occurrence_counts(masks, 4)
    assert counts.shape == (16,)
    assert counts[0] == 3
    for s in range(16):
        brute = sum(1 for m in masks if (int(m) & s) == s)
        assert counts[s] == brute


def test_estimate_correlation_counts_supersets():
    perms = [
        Permutation([3, 2, 1]),  # descents {1, 2}
        Permutation([2, 3, 1]),  # descents {2}
        Permutation([1, 3, 2]),  # descents {2}
    ]
    est = estimate_correlation(perms, [2])
    assert est.hits == 3 and est.draws == 3
    est = estimate_correlation(perms, [1, 2])
    assert est.hits == 1
    with pytest.raises(ValueError):
        estimate_correlation([], [1])


def test_wilson_interval_contains_estimate():
    est = CorrelationEstimate(hits=30, draws=200)
    lo, hi = est.wilson_interval()
    assert 0.0 <= lo < est.estimate < hi <= 1.0
    assert est.stderr == pytest.approx(math.sqrt(0.15 * 0.85 / 200))


def test_empirical_single_cycle_descents_match_kernel():
    # theta=0 single-cycle law follows the zero-mass kernel at finite n
    draws = 20000
    n = 10
    perms = [sample_ewens(n, 0.0, RngStream(41, i)) for i in range(draws)]
    k = descent_kernel(Fraction(0))
    for pos in ([1], [2], [1, 2], [3, 5], [2, 3, 4]):
        est = estimate_correlation(perms, pos)
        exact = float(correlation_determinant(k, pos))
        sd = math.sqrt(exact * (1 - exact) / draws)
        assert abs(est.estimate - exact) < 4.5 * sd


def test_limit_descent_density():
    assert limit_descent_density([0.5]) == pytest.approx(0.375)
    assert limit_descent_density([0.0, 1.0]) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        limit_descent_density([])


def test_kernel_identities_on_mass_grid():
    # both identities on an even grid of exact masses
    for j in range(20):
        x = Fraction(j, 19)
        k = descent_kernel(x, band=2)
        assert k.at(-1) == -1
        assert k.at(0) == block_correlation(1, x)


def test_descent_rate_homogeneous_across_positions():
    # conjugation invariance makes P(i is a descent) position-free
    n, draws = 50, 100000
    counts = np.zeros(n - 1, dtype=np.int64)
    for i in range(draws):
        word = sample_ewens(n, 2.0, RngStream(42, i)).word
        counts += word[:-1] > word[1:]
    pooled = counts.sum() / (draws * (n - 1))
    expected = draws * pooled
    chi2 = float(((counts - expected) ** 2).sum() / (expected * (1.0 - pooled)))
    dof = n - 2
    assert chi2 < dof + 4.0 * math.sqrt(2.0 * dof)


def test_conditioned_descent_law_is_distribution_free():
    # conditioned on sending {1..m+1} outside itself, the descent
    # pattern on {1..m} is the uniform-pattern law for every
    # conjugation-invariant source
    n = 30
    positions = (1, 2)
    m = max(positions)
    window = m + 1
    exact = 1.0 / 6.0  # decreasing triple among three exchangeable values
    estimates = []
    for which, sampler in (
        (0, lambda r: sample_ewens(n, 1.0, r)),
        (1, lambda r: sample_ewens(n, 3.0, r)),
    ):
        hits = kept = 0
        for i in range(30000):
            word = sampler(RngStream(43 + which, i)).word
            if (word[:window] <= window).any():
                continue
            kept += 1
            if word[0] > word[1] > word[2]:
                hits += 1
        est = hits / kept
        estimates.append((est, kept))
        sd = math.sqrt(exact * (1 - exact) / kept)
        assert abs(est - exact) < 4.5 * sd
    (e1, k1), (e2, k2) = estimates
    joint_sd = math.sqrt(exact * (1 - exact) * (1 / k1 + 1 / k2))
    assert abs(e1 - e2) < 4.5 * joint_sd
