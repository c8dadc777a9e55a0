"""Closed-form bounds, their split identities, and the relaxed overlap maximum."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kings.bounds import (
    bound_p,
    bound_report,
    control_bound,
    guess_bound,
    overlap_target,
    relaxed_f_max,
    total_bound,
)
from kings.mub import construct_mub
from kings.reference import D3_RELAXED_MAX, SUCCESS_BOUND_TABLE


def test_bound_summary_to_four_decimals():
    for d, expected in SUCCESS_BOUND_TABLE.items():
        assert round(bound_p(d), 4) == expected, d


def test_closed_form_specials():
    assert bound_p(2) == pytest.approx((4 + np.sqrt(2)) / 6, abs=1e-15)
    assert bound_p(4) == pytest.approx(0.7, abs=1e-15)
    assert overlap_target(4) == pytest.approx(5 / 8, abs=1e-15)
    assert overlap_target(2) == pytest.approx((np.sqrt(2) + 1) / (2 * np.sqrt(2)), abs=1e-15)


def test_bound_relates_to_overlap_target():
    # attaining the bound means every control outcome collects d * target
    for d in range(2, 12):
        assert bound_p(d) == pytest.approx(
            (1 + d * overlap_target(d)) / (d + 1), abs=1e-15
        )


def test_bound_decreases_with_dimension():
    values = [bound_p(d) for d in range(2, 17)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_split_identity_interior():
    for d in range(2, 10):
        for r in range(1, d + 1):
            assert abs(total_bound(d, r) - bound_p(d)) <= 1e-14, (d, r)


def test_split_identity_edges():
    for d in range(2, 10):
        edge = (1 + np.sqrt(d)) / (1 + d)
        assert total_bound(d, 0) == pytest.approx(edge, abs=1e-14)
        assert total_bound(d, d + 1) == pytest.approx(edge, abs=1e-14)
        assert edge < bound_p(d)  # all-or-nothing is strictly worse


@settings(max_examples=200)
@given(st.integers(2, 40), st.data())
def test_split_identity_property(d, data):
    r = data.draw(st.integers(1, d))
    assert abs(total_bound(d, r) - bound_p(d)) <= 1e-13


def test_guess_and_control_bounds():
    assert guess_bound(3, 0) == 0.0
    assert control_bound(3, 0) == 0.0
    # one guessed basis contributes the same mass as one covered basis
    for d in range(2, 8):
        assert guess_bound(d, 1) == pytest.approx(control_bound(d, 1), abs=1e-15)


@pytest.mark.parametrize("func", [bound_p, overlap_target])
def test_dimension_validation(func):
    with pytest.raises(ValueError):
        func(1)


def test_range_validation():
    with pytest.raises(ValueError):
        guess_bound(3, 5)
    with pytest.raises(ValueError):
        control_bound(3, -1)
    with pytest.raises(ValueError):
        total_bound(3, 6)


def test_bound_report_formulas():
    assert bound_report(4).formula == "conventional"
    assert bound_report(4).value == pytest.approx(0.7)
    assert bound_report(4, 2).formula == "guess/control split"
    assert bound_report(4, 0).formula == "all-or-nothing split"
    assert bound_report(4, 5).formula == "all-or-nothing split"


# --- relaxed overlap-sum maximum ---------------------------------------------


def test_relaxed_max_d2_hits_projector_pair_eigenvalue():
    # with two bases in play the optimum is the top eigenvalue of a sum of two
    # rank-one projectors with cross overlap 1/2: 1 + 1/sqrt(2)
    family = construct_mub(2)
    result = relaxed_f_max(family, excluded=0, restarts=16, seed=1)
    assert result.value == pytest.approx(1 + 1 / np.sqrt(2), abs=1e-9)
    assert abs(np.linalg.norm(result.maximizer) - 1) < 1e-9
    # in d = 2 the ceiling is attained exactly
    assert result.value == pytest.approx(2 * overlap_target(2), abs=1e-9)


def test_relaxed_max_d4_reaches_ceiling():
    family = construct_mub(4)
    result = relaxed_f_max(family, excluded=0, restarts=32, seed=2)
    assert result.value == pytest.approx(4 * overlap_target(4), abs=1e-7)


def test_relaxed_max_d3_falls_short():
    family = construct_mub(3)
    result = relaxed_f_max(family, excluded=0, restarts=64, seed=0)
    ceiling = 3 * overlap_target(3)
    assert result.value == pytest.approx(D3_RELAXED_MAX, abs=1e-6)
    assert ceiling - result.value > 0.017  # the d = 3 gap
    assert ceiling - result.value < 0.018


def test_relaxed_max_never_exceeds_ceiling():
    for d in (2, 3, 5):
        family = construct_mub(d)
        result = relaxed_f_max(family, excluded=0, restarts=24, seed=5)
        assert result.value <= d * overlap_target(d) + 1e-9


def test_relaxed_max_deterministic_per_seed():
    family = construct_mub(3)
    a = relaxed_f_max(family, excluded=0, restarts=8, seed=11)
    b = relaxed_f_max(family, excluded=0, restarts=8, seed=11)
    assert a.value == b.value
    assert np.array_equal(a.maximizer, b.maximizer)
