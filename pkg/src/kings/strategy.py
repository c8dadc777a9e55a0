"""Conventional retrodiction strategies and their exact success probability.

A conventional strategy prepares one eigenstate of a designated basis, guesses
that basis outright, and covers every other basis with a single orthogonal
control measurement.  The control outcomes and basis states are tied together
by an AssignmentMap; the strategy is "well conditioned" when the map restricts
to a bijection on every covered basis, so each control outcome commits to
exactly one prediction per basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import linear_sum_assignment

from .mub import MubFamily, OrthonormalBasis, orthonormality_defect
from .config import DEFAULT
from . import qstate


def overlap_matrix(family: MubFamily, control: OrthonormalBasis) -> np.ndarray:
    """Squared overlaps o[i, j, k] = |<chi_k | psi_j^i>|^2 for all bases i."""
    if control.dim != family.dim:
        raise ValueError(f"dimension mismatch: control {control.dim} vs family {family.dim}")
    amp = np.einsum("km,ijm->ijk", control.states.conj(), family.array)
    return np.abs(amp) ** 2


@dataclass
class AssignmentMap:
    """Pairing between control outcomes k and basis states j of covered bases.

    forward[(i, j)] = k  : state j of basis i is signalled by outcome k.
    prediction[(k, i)] = j : outcome k predicts state j if basis i was measured.
    prediction is populated per basis only where forward is bijective there.
    """

    dim: int
    excluded: frozenset[int]
    forward: dict[tuple[int, int], int]
    prediction: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.prediction:
            self.prediction = _invert_where_bijective(self.dim, self.forward)

    @cached_property
    def covered(self) -> tuple[int, ...]:
        return tuple(sorted({i for i, _ in self.forward}))

    def outcomes(self, basis: int) -> list[int]:
        return [self.forward[(basis, j)] for j in range(self.dim)]

    def is_well_conditioned(self) -> bool:
        return all(len(set(self.outcomes(i))) == self.dim for i in self.covered)

    def require_well_conditioned(self) -> None:
        for i in self.covered:
            if len(set(self.outcomes(i))) != self.dim:
                raise ValueError(f"assignment is not a bijection on basis {i}")


def _invert_where_bijective(dim: int, forward: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    prediction: dict[tuple[int, int], int] = {}
    for i in sorted({i for i, _ in forward}):
        ks = [forward[(i, j)] for j in range(dim)]
        if len(set(ks)) == dim:
            for j, k in enumerate(ks):
                prediction[(k, i)] = j
    return prediction


def assign_greedy(family: MubFamily, prep_basis: int, control: OrthonormalBasis) -> AssignmentMap:
    """Assign each covered basis state to its best-overlap control outcome.

    Ties break toward the lowest outcome index.  The result need not be
    bijective; feed it to repair_well_conditioned.
    """
    o = overlap_matrix(family, control)
    forward: dict[tuple[int, int], int] = {}
    for i in family.labels:
        if i == prep_basis:
            continue
        for j in range(family.dim):
            forward[(i, j)] = int(np.argmax(o[i, j]))
    return AssignmentMap(dim=family.dim, excluded=frozenset({prep_basis}), forward=forward)


def repair_well_conditioned(raw: AssignmentMap, overlaps: np.ndarray) -> AssignmentMap:
    """Make the map bijective per basis without losing overlap mass.

    Bases where `raw` is already bijective are kept as-is (a bijective greedy
    map is automatically the best bijection).  Elsewhere the bijection
    maximizing the summed overlap is found by brute force over all dim!
    pairings for dim <= 4, and by the Hungarian algorithm for larger dims.
    `overlaps` is the (d+1, d, d) tensor from overlap_matrix.
    """
    d = raw.dim
    forward: dict[tuple[int, int], int] = {}
    for i in raw.covered:
        ks = raw.outcomes(i)
        if len(set(ks)) != d:
            weights = overlaps[i]  # weights[j, k]
            if d <= 4:
                ks = max(
                    itertools.permutations(range(d)),
                    key=lambda perm: sum(weights[j, perm[j]] for j in range(d)),
                )
            else:
                rows, cols = linear_sum_assignment(weights, maximize=True)
                ks = cols[np.argsort(rows)]
        for j in range(d):
            forward[(i, j)] = int(ks[j])
    return AssignmentMap(dim=d, excluded=raw.excluded, forward=forward)


@dataclass
class ConventionalStrategy:
    """Eigenstate preparation + one control basis + outcome assignment."""

    family: MubFamily
    prep_basis: int
    prep_index: int
    control: OrthonormalBasis
    assignment: AssignmentMap

    def __post_init__(self) -> None:
        defect = orthonormality_defect(self.control.states)
        if defect > DEFAULT.construction:
            raise ValueError(f"control basis is not orthonormal (defect {defect:g})")
        self.assignment.require_well_conditioned()
        covered = set(self.assignment.covered)
        expected = set(self.family.labels) - {self.prep_basis}
        if covered != expected:
            raise ValueError(f"assignment covers {covered}, expected {expected}")

    @property
    def preparation(self) -> np.ndarray:
        return self.family.state(self.prep_basis, self.prep_index)


def build_strategy(
    family: MubFamily,
    prep_basis: int,
    prep_index: int,
    control: OrthonormalBasis,
) -> ConventionalStrategy:
    """Greedy assignment, repaired to a bijection, wrapped as a strategy."""
    raw = assign_greedy(family, prep_basis, control)
    repaired = repair_well_conditioned(raw, overlap_matrix(family, control))
    return ConventionalStrategy(
        family=family,
        prep_basis=prep_basis,
        prep_index=prep_index,
        control=control,
        assignment=repaired,
    )


def random_control_basis(d: int, rng: np.random.Generator) -> OrthonormalBasis:
    """Haar-random orthonormal basis of C^d (rows are the states)."""
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return OrthonormalBasis(label=None, states=q.T)


def random_strategy(family: MubFamily, prep_basis: int, rng: np.random.Generator) -> ConventionalStrategy:
    return build_strategy(family, prep_basis, 0, random_control_basis(family.dim, rng))


@dataclass
class SuccessBreakdown:
    """Exact success probability with per-basis and per-outcome accounting.

    per_basis[i] is the success probability conditional on the king choosing
    basis i; per_signal[k] is the overlap sum F(k) collected by control
    outcome k across the covered bases.
    """

    total: float
    per_basis: dict[int, float]
    per_signal: dict[int, float]

    def total_from_signals(self) -> float:
        """Recompute the total from the per-outcome sums (regrouped form)."""
        d = len(self.per_signal)
        return (1.0 + sum(self.per_signal.values()) / d) / (d + 1)


def success_exact(strategy: ConventionalStrategy) -> SuccessBreakdown:
    """Exact success probability of a well-conditioned conventional strategy.

    The king picks any of the d+1 bases uniformly; the guessed basis is always
    right, and a covered basis i contributes the mean of its assigned squared
    overlaps f(i, j).
    """
    family = strategy.family
    d = family.dim
    o = overlap_matrix(family, strategy.control)
    per_basis: dict[int, float] = {strategy.prep_basis: 1.0}
    per_signal: dict[int, float] = {k: 0.0 for k in range(d)}
    for i in strategy.assignment.covered:
        fs = [o[i, j, strategy.assignment.forward[(i, j)]] for j in range(d)]
        per_basis[i] = float(np.mean(fs))
        for j, f in enumerate(fs):
            per_signal[strategy.assignment.forward[(i, j)]] += float(f)
    total = sum(per_basis[i] for i in family.labels) / (d + 1)
    return SuccessBreakdown(total=total, per_basis=per_basis, per_signal=per_signal)


def success_exact_general(
    family: MubFamily,
    preparation: np.ndarray,
    guess_bases: frozenset[int] | set[int],
    guesses: dict[int, int],
    control: OrthonormalBasis,
    assignment: AssignmentMap,
) -> float:
    """Exact success for an arbitrary preparation with r guessed bases.

    Guessed bases score the Born weight of the guessed state; every other
    basis must be covered by the assignment and scores
    sum_j p(i, j) f(i, j) with p the king-outcome distribution under
    `preparation` and f the assigned control overlaps.
    """
    d = family.dim
    guess_bases = frozenset(guess_bases)
    covered = frozenset(assignment.covered)
    if guess_bases & covered or guess_bases | covered != set(family.labels):
        raise ValueError("guessed and covered bases must partition the family")
    if set(guesses) != guess_bases:
        raise ValueError("need exactly one guessed state per guessed basis")
    assignment.require_well_conditioned()
    p = np.abs(np.einsum("ijm,m->ij", family.array.conj(), np.asarray(preparation, dtype=complex))) ** 2
    o = overlap_matrix(family, control)
    total = 0.0
    for i in guess_bases:
        total += p[i, guesses[i]]
    for i in covered:
        total += sum(p[i, j] * o[i, j, assignment.forward[(i, j)]] for j in range(d))
    return float(total / (d + 1))


@dataclass
class GeneralStrategy:
    """A strategy description in the shape success_exact_general consumes."""

    family: MubFamily
    preparation: np.ndarray
    guess_bases: frozenset[int]
    guesses: dict[int, int]
    control: OrthonormalBasis
    assignment: AssignmentMap
    # Role exchange is only reversible when the basis the preparation was
    # drawn from is still known, so the source strategy rides along.
    source: ConventionalStrategy | None = None

    def success(self) -> float:
        return success_exact_general(
            self.family, self.preparation, self.guess_bases,
            self.guesses, self.control, self.assignment,
        )


def complement_strategy(
    strategy: ConventionalStrategy | GeneralStrategy,
    control_state_index: int = 0,
) -> GeneralStrategy | ConventionalStrategy:
    """Exchange the roles of the preparation basis and the control basis.

    From a conventional strategy this builds the mirrored description: prepare
    one of the former control states, guess every formerly covered basis via
    the assignment's predictions, and reserve the control measurement for the
    formerly guessed basis (where measuring in the same basis is always
    right).  Applying the exchange to such a description returns a
    conventional strategy with the same success probability.
    """
    if isinstance(strategy, GeneralStrategy):
        if strategy.source is None:
            raise ValueError("cannot exchange roles without the source strategy")
        src = strategy.source
        return ConventionalStrategy(
            family=src.family,
            prep_basis=src.prep_basis,
            prep_index=src.prep_index,
            control=src.control,
            assignment=src.assignment,
        )
    prep = strategy.prep_basis
    d = strategy.family.dim
    guess_bases = frozenset(set(strategy.family.labels) - {prep})
    guesses = {i: strategy.assignment.prediction[(control_state_index, i)] for i in guess_bases}
    identity = {(prep, j): j for j in range(d)}
    assignment = AssignmentMap(dim=d, excluded=guess_bases, forward=identity)
    return GeneralStrategy(
        family=strategy.family,
        preparation=strategy.control.states[control_state_index],
        guess_bases=guess_bases,
        guesses=guesses,
        control=strategy.family.bases[prep],
        assignment=assignment,
        source=strategy,
    )
