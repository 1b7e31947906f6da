import math
from fractions import Fraction

import pytest

from permlab.coupling import (
    TRANSITION_MAX_N,
    ewens_pmf_table,
    is_conjugation_invariant_pmf,
    merge_step,
    merge_steps,
    merge_to_single_cycle,
    point_mass_pmf,
    single_cycle_uniformization_tv,
    transition_matrix,
    tv_distance,
    uniform_pmf,
    uniform_single_cycle_pmf,
)
from permlab.perms import (
    Permutation,
    all_permutations,
    compose,
    conjugate,
    cycle_count,
    identity,
    lis_length,
    transposition,
)
from permlab.rng import RngStream
from permlab.sampling import sample_ewens, sample_uniform
from permlab.young import max_prefix_row_gap, profile_sup_distance, rsk_shape

SQRT2 = math.sqrt(2.0)


def test_merge_step_decrements_cycle_count():
    gen = RngStream(31).generator()
    for i in range(300):
        p = sample_uniform(9, gen)
        q = merge_step(p, gen)
        assert cycle_count(q) == max(cycle_count(p) - 1, 1)


def test_merge_step_fixes_single_cycles():
    p = Permutation([2, 3, 4, 5, 1])
    assert merge_step(p, RngStream(1)) == p


def test_merge_steps_validation_and_zero():
    p = identity(4)
    assert merge_steps(p, 0, RngStream(2)) == p
    with pytest.raises(ValueError):
        merge_steps(p, -1, RngStream(2))


def test_merge_to_single_cycle_always_lands():
    gen = RngStream(32).generator()
    for i in range(200):
        p = sample_uniform(7, gen)
        assert cycle_count(merge_to_single_cycle(p, gen)) == 1


def test_transition_guard():
    with pytest.raises(ValueError):
        transition_matrix(TRANSITION_MAX_N + 1)
    with pytest.raises(ValueError):
        transition_matrix(0)


def test_transition_rows_are_stochastic():
    mat = transition_matrix(4)
    for row in mat.rows:
        assert sum(row.values(), Fraction(0)) == 1
        assert all(p > 0 for p in row.values())


def test_transition_from_identity_three():
    # merging two of the three fixed points yields each transposition
    # with probability 1/3
    mat = transition_matrix(3)
    idw = identity(3)
    for t in ((2, 1, 3), (3, 2, 1), (1, 3, 2)):
        assert mat.probability(idw, Permutation(t)) == Fraction(1, 3)
    assert mat.probability(idw, Permutation([2, 3, 1])) == 0


def test_transition_conjugation_equivariance_exhaustive():
    mat = transition_matrix(4)
    perms = list(all_permutations(4))
    for g in perms:
        for p in perms:
            gp = conjugate(p, g)
            for q, mass in (
                (Permutation(mat.words[c]), f) for c, f in mat.rows[mat.index[p.as_tuple()]].items()
            ):
                assert mat.probability(gp, conjugate(q, g)) == mass


def test_step_pmf_preserves_mass():
    mat = transition_matrix(4)
    pmf = ewens_pmf_table(4, Fraction(3, 2))
    stepped = mat.step_pmf(pmf)
    assert sum(stepped.values(), Fraction(0)) == 1
    # one step removes one cycle: nothing with 4 cycles can remain
    assert stepped[tuple(range(1, 5))] == 0


def test_invariance_detector():
    assert is_conjugation_invariant_pmf(uniform_pmf(4), 4)
    assert is_conjugation_invariant_pmf(point_mass_pmf(identity(4)), 4)
    assert not is_conjugation_invariant_pmf(point_mass_pmf(transposition(4, 1, 2)), 4)
    short = {tuple(range(1, 5)): Fraction(1, 2)}
    assert not is_conjugation_invariant_pmf(short, 4)


def test_tv_distance_basics():
    u = uniform_pmf(3)
    assert tv_distance(u, u) == 0
    single = uniform_single_cycle_pmf(3)
    assert tv_distance(point_mass_pmf(identity(3)), single) == 1
    assert tv_distance(u, single) == Fraction(2, 3)


def test_uniformization_rejects_biased_start():
    with pytest.raises(ValueError):
        single_cycle_uniformization_tv(3, point_mass_pmf(transposition(3, 1, 2)))


def test_uniformization_is_exact_small():
    assert single_cycle_uniformization_tv(3, uniform_pmf(3)) == 0
    assert single_cycle_uniformization_tv(4, ewens_pmf_table(4, 3)) == 0
    assert single_cycle_uniformization_tv(4, point_mass_pmf(identity(4))) == 0


def test_single_transposition_shape_bounds_exhaustive_s4():
    # one transposition moves lis by at most 2, any prefix row sum by
    # at most 2, and any single row by at most 4
    for p in all_permutations(4):
        sp = rsk_shape(p)
        for i in range(1, 5):
            for j in range(i + 1, 5):
                q = compose(p, transposition(4, i, j))
                sq = rsk_shape(q)
                assert abs(lis_length(p) - lis_length(q)) <= 2
                assert max_prefix_row_gap(sp, sq) <= 2
                depth = max(sp.row_count, sq.row_count)
                assert all(abs(sp.row(r) - sq.row(r)) <= 4 for r in range(1, depth + 1))


def test_trajectory_bounds_random_n50():
    # merging to one cycle moves lis by at most 2 per step and any
    # row by at most 4 per step
    for i in range(300):
        p = sample_ewens(50, 2.0, RngStream(33, i))
        gen = RngStream(34, i).generator()
        q = merge_to_single_cycle(p, gen)
        steps = cycle_count(p) - 1
        sp, sq = rsk_shape(p), rsk_shape(q)
        assert abs(lis_length(p) - lis_length(q)) <= 2 * steps
        assert max_prefix_row_gap(sp, sq) <= 2 * steps
        depth = max(sp.row_count, sq.row_count)
        assert all(abs(sp.row(r) - sq.row(r)) <= 4 * steps for r in range(1, depth + 1))


def test_trajectory_height_bound_n100():
    # rescaled profile distance after full merging stays below
    # 2 * sqrt(steps / n)
    n = 100
    for i in range(150):
        p = sample_ewens(n, 3.0, RngStream(35, i))
        gen = RngStream(36, i).generator()
        q = merge_to_single_cycle(p, gen)
        steps = cycle_count(p) - 1
        dist = profile_sup_distance(rsk_shape(p), rsk_shape(q)) / math.sqrt(2 * n)
        assert dist <= 2 * math.sqrt(steps / n) + 1e-12
