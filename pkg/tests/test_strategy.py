"""Strategy assembly, repair, exact success accounting and role exchange."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kings.bounds import bound_p, overlap_target
from kings.mub import OrthonormalBasis, construct_mub
from kings.strategy import (
    AssignmentMap,
    GeneralStrategy,
    assign_greedy,
    build_strategy,
    complement_strategy,
    overlap_matrix,
    random_control_basis,
    random_strategy,
    repair_well_conditioned,
    success_exact,
    success_exact_general,
)
from kings.presets import d2_optimal_strategy, d4_optimal_strategy


def test_overlap_matrix_shape_and_rows():
    family = construct_mub(3)
    control = family.bases[1]
    o = overlap_matrix(family, control)
    assert o.shape == (4, 3, 3)
    # Born rows sum to one
    assert np.allclose(o.sum(axis=2), 1.0, atol=1e-12)
    # control coincides with basis 1: its block is the identity
    assert np.allclose(o[1], np.eye(3), atol=1e-12)


def test_overlap_matrix_dimension_mismatch():
    family = construct_mub(3)
    with pytest.raises(ValueError):
        overlap_matrix(family, construct_mub(2).bases[0])


def test_greedy_breaks_ties_toward_lowest_outcome():
    family = construct_mub(3)
    # control = a family basis: every covered basis has all overlaps 1/3
    raw = assign_greedy(family, prep_basis=0, control=family.bases[1])
    for i in (2, 3):
        assert [raw.forward[(i, j)] for j in range(3)] == [0, 0, 0]
    # basis 1 itself is matched exactly
    assert [raw.forward[(1, j)] for j in range(3)] == [0, 1, 2]


def test_repair_keeps_bijective_bases_and_fixes_the_rest():
    family = construct_mub(3)
    control = family.bases[1]
    raw = assign_greedy(family, 0, control)
    assert not raw.is_well_conditioned()
    repaired = repair_well_conditioned(raw, overlap_matrix(family, control))
    assert repaired.is_well_conditioned()
    # the already-bijective basis is untouched
    assert [repaired.forward[(1, j)] for j in range(3)] == [0, 1, 2]


@pytest.mark.parametrize("d, repeats", [(5, 5), (7, 2)])
def test_repair_hungarian_agrees_with_brute_force(d, repeats):
    """The d > 4 assignment path must find the same score as exhaustive search."""
    family = construct_mub(d)
    rng = np.random.default_rng(42 + d)
    for _ in range(repeats):
        control = random_control_basis(d, rng)
        o = overlap_matrix(family, control)
        raw = assign_greedy(family, 0, control)
        repaired = repair_well_conditioned(raw, o)
        repaired.require_well_conditioned()
        for i in range(1, d + 1):
            got = sum(o[i, j, repaired.forward[(i, j)]] for j in range(d))
            best = max(
                sum(o[i, j, perm[j]] for j in range(d))
                for perm in itertools.permutations(range(d))
            )
            assert got == pytest.approx(best, abs=1e-12), (d, i)


def test_assignment_map_inversion():
    fwd = {(1, 0): 2, (1, 1): 0, (1, 2): 1, (2, 0): 0, (2, 1): 0, (2, 2): 1}
    amap = AssignmentMap(dim=3, excluded=frozenset({0}), forward=fwd)
    # basis 1 is bijective and inverted; basis 2 is not and stays out
    assert amap.prediction[(2, 1)] == 0
    assert amap.prediction[(0, 1)] == 1
    assert amap.prediction[(1, 1)] == 2
    assert not any(i == 2 for _, i in amap.prediction)
    assert not amap.is_well_conditioned()
    with pytest.raises(ValueError):
        amap.require_well_conditioned()


def test_strategy_rejects_non_orthonormal_control():
    # the container only checks squareness; the strategy enforces orthonormality
    family = construct_mub(2)
    skew = OrthonormalBasis(label=None, states=np.array([[1, 0], [0.6, 0.8]]))
    with pytest.raises(ValueError):
        build_strategy(family, 0, 0, skew)


def test_family_basis_control_value():
    """Control = one of the family's own bases gives (3d - 1) / (d (d + 1))."""
    for d in (2, 3, 5):
        family = construct_mub(d)
        strat = build_strategy(family, 0, 0, family.bases[1])
        breakdown = success_exact(strat)
        assert breakdown.total == pytest.approx((3 * d - 1) / (d * (d + 1)), abs=1e-12)
        assert breakdown.per_basis[0] == 1.0
        assert breakdown.per_basis[1] == pytest.approx(1.0, abs=1e-12)


def test_d2_optimum_saturates_bound():
    strat = d2_optimal_strategy()
    breakdown = success_exact(strat)
    assert breakdown.total == pytest.approx((4 + np.sqrt(2)) / 6, abs=1e-12)
    assert breakdown.total == pytest.approx(bound_p(2), abs=1e-12)
    for f in breakdown.per_signal.values():
        assert f == pytest.approx(2 * overlap_target(2), abs=1e-12)


def test_d4_optimum_saturates_bound():
    breakdown = success_exact(d4_optimal_strategy())
    assert breakdown.total == pytest.approx(0.7, abs=1e-12)
    for f in breakdown.per_signal.values():
        assert f == pytest.approx(2.5, abs=1e-12)


def test_breakdown_regrouping_identity():
    family = construct_mub(3)
    rng = np.random.default_rng(0)
    for _ in range(20):
        breakdown = success_exact(random_strategy(family, 0, rng))
        assert breakdown.total == pytest.approx(breakdown.total_from_signals(), abs=1e-12)


def test_general_success_matches_conventional():
    """Scoring a conventional strategy through the general evaluator agrees."""
    for d in (2, 3, 4):
        family = construct_mub(d)
        rng = np.random.default_rng(d)
        strat = random_strategy(family, prep_basis=1, rng=rng)
        direct = success_exact(strat).total
        general = success_exact_general(
            family,
            preparation=strat.preparation,
            guess_bases={1},
            guesses={1: strat.prep_index},
            control=strat.control,
            assignment=strat.assignment,
        )
        assert general == pytest.approx(direct, abs=1e-12)


def test_general_success_partition_validation():
    family = construct_mub(2)
    strat = d2_optimal_strategy()
    with pytest.raises(ValueError):
        success_exact_general(family, strat.preparation, {0, 1}, {0: 0, 1: 0},
                              strat.control, strat.assignment)
    with pytest.raises(ValueError):
        success_exact_general(family, strat.preparation, {0}, {},
                              strat.control, strat.assignment)


def test_complement_preserves_success_and_inverts():
    for d in (2, 4):
        strat = d2_optimal_strategy() if d == 2 else d4_optimal_strategy()
        mirrored = complement_strategy(strat)
        assert isinstance(mirrored, GeneralStrategy)
        assert mirrored.success() == pytest.approx(success_exact(strat).total, abs=1e-9)
        back = complement_strategy(mirrored)
        assert back is not strat
        assert back.prep_basis == strat.prep_basis
        assert back.prep_index == strat.prep_index
        assert np.array_equal(back.control.states, strat.control.states)
        assert success_exact(back).total == pytest.approx(success_exact(strat).total, abs=1e-12)


def test_complement_each_control_state_of_the_optimum():
    strat = d4_optimal_strategy()
    for k in range(4):
        assert complement_strategy(strat, control_state_index=k).success() == pytest.approx(0.7, abs=1e-9)


def test_complement_needs_source():
    strat = d2_optimal_strategy()
    mirrored = complement_strategy(strat)
    orphan = GeneralStrategy(
        family=mirrored.family,
        preparation=mirrored.preparation,
        guess_bases=mirrored.guess_bases,
        guesses=mirrored.guesses,
        control=mirrored.control,
        assignment=mirrored.assignment,
        source=None,
    )
    with pytest.raises(ValueError):
        complement_strategy(orphan)


def test_random_control_basis_is_orthonormal_and_seeded():
    from kings.mub import orthonormality_defect
    basis = random_control_basis(5, np.random.default_rng(9))
    assert orthonormality_defect(basis.states) < 1e-12
    again = random_control_basis(5, np.random.default_rng(9))
    assert np.array_equal(again.states, basis.states)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 4]))
def test_random_strategies_respect_overlap_ceiling(seed, d):
    family = construct_mub(d)
    strat = random_strategy(family, 0, np.random.default_rng(seed))
    breakdown = success_exact(strat)
    ceiling = d * overlap_target(d)
    assert max(breakdown.per_signal.values()) <= ceiling + 1e-9
    assert breakdown.total <= bound_p(d) + 1e-9
    assert breakdown.total == pytest.approx(breakdown.total_from_signals(), abs=1e-12)
    assert breakdown.per_basis[0] == 1.0
