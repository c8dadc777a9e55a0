"""The d = 4 signal-state scan, its basis assembly, and the d = 3 sweep."""

import numpy as np
import pytest

from kings.bounds import overlap_target
from kings.mub import construct_mub
from kings.reference import BASIS_CATALOG, D3_WORST_MIN_DEVIATION, SIGNAL_CATALOG
from kings.search import (
    certify_d3_impossible,
    certify_optimal_strategy,
    find_measurement_bases,
    find_signal_states,
    off_lattice_deviation,
    refine_signal_phases,
    signal_candidate,
    single_overlap_deviation,
)


@pytest.fixture(scope="module")
def family4():
    return construct_mub(4)


@pytest.fixture(scope="module")
def signals(family4):
    return find_signal_states(family4)


@pytest.fixture(scope="module")
def bases(signals):
    return find_measurement_bases(signals)


def test_scan_finds_exactly_32(signals):
    assert len(signals) == 32


def test_scan_matches_catalog(signals):
    got = {
        tuple(x + 1 for x in s.indices) + tuple(complex(p) for p in s.phases)
        for s in signals
    }
    expected = {
        (i, j, k, l, complex(b), complex(c), complex(d))
        for i, j, k, l, b, c, d in SIGNAL_CATALOG
    }
    assert got == expected


def test_signal_states_have_equal_overlaps(family4, signals):
    target = overlap_target(4)
    for s in signals:
        assert abs(np.linalg.norm(s.vector) - 1) < 1e-12
        for m, j in enumerate(s.indices):
            p = abs(np.vdot(family4.state(m + 1, j), s.vector)) ** 2
            assert p == pytest.approx(target, abs=1e-12)


def test_signal_candidate_assembly(family4, signals):
    s = signals[0]
    rebuilt = signal_candidate(family4, s.indices, s.phases)
    assert np.allclose(rebuilt, s.vector, atol=1e-12)


def test_scan_requires_dim_4():
    with pytest.raises(ValueError):
        find_signal_states(construct_mub(3))


def test_refinement_stays_on_the_lattice(family4, signals):
    for s in (signals[0], signals[13], signals[31]):
        residual, angles = refine_signal_phases(family4, s)
        assert residual < 1e-9
        drift = np.abs(np.exp(1j * angles) - np.asarray(s.phases)).max()
        assert drift < 1e-6


def test_no_solutions_off_the_lattice(family4, signals):
    # a solution tuple reaches ~0 even with free phases...
    assert off_lattice_deviation(family4, signals[0].indices) < 1e-9
    # ...while non-solution tuples stay far away no matter the phases
    assert off_lattice_deviation(family4, (0, 0, 0, 1)) > 0.01
    assert off_lattice_deviation(family4, (3, 0, 1, 2)) > 0.01


def test_bases_match_catalog(bases):
    assert len(bases) == 32
    got = [tuple(m + 1 for m in b.members) for b in bases]
    assert got == BASIS_CATALOG  # canonical (lexicographic) order
    assert got[0] == (1, 11, 22, 32)


def test_each_signal_state_sits_in_four_bases(bases):
    counts = np.zeros(32, dtype=int)
    for b in bases:
        for m in b.members:
            counts[m] += 1
    assert np.all(counts == 4)


def test_bases_are_orthonormal(bases):
    from kings.mub import orthonormality_defect
    for b in bases:
        assert orthonormality_defect(b.basis.states) < 1e-9


def test_every_basis_gives_the_optimal_strategy(family4, bases):
    for b in bases[:4] + bases[-2:]:
        strat, breakdown = certify_optimal_strategy(family4, b)
        assert breakdown.total == pytest.approx(0.7, abs=1e-12)
        assert all(abs(f - 2.5) < 1e-9 for f in breakdown.per_signal.values())


def test_certify_rejects_non_saturating_basis(family4):
    from kings.search import MeasurementBasis4
    fake = MeasurementBasis4(members=(0, 1, 2, 3), basis=family4.bases[1])
    with pytest.raises(ValueError):
        certify_optimal_strategy(family4, fake)


# --- d = 3 --------------------------------------------------------------------


@pytest.fixture(scope="module")
def d3_report():
    return certify_d3_impossible(construct_mub(3))


def test_d3_all_tuples_fail(d3_report):
    assert d3_report.passed
    assert len(d3_report.tuples) == 27
    assert all(t.deviation > 1e-3 for t in d3_report.tuples)


def test_d3_worst_matches_frozen_value(d3_report):
    assert d3_report.worst == pytest.approx(D3_WORST_MIN_DEVIATION, abs=1e-9)
    # the easiest and hardest tuples span a narrow, stable band
    assert 0.09 < max(t.deviation for t in d3_report.tuples) < 0.10


def test_d3_single_overlap_always_alignable():
    """Failure is collective: any one overlap alone can be made exact."""
    family = construct_mub(3)
    import itertools
    for indices in itertools.product(range(3), repeat=3):
        for which in range(3):
            assert single_overlap_deviation(family, indices, which) < 1e-12


def test_d3_certificate_requires_dim_3():
    with pytest.raises(ValueError):
        certify_d3_impossible(construct_mub(2))
