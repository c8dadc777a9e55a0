"""Exhaustive searches for equal-overlap signal states.

A signal state for the d = 4 family superposes one state from each of the
four non-computational bases with unit-modulus phases,

    chi = (|a> + b |b'> + c |c'> + d |d'>) / sqrt(10),

and qualifies when its squared overlap with every constituent equals
overlap_target(4) = 5/8.  Scanning all 4^4 index tuples with phases
restricted to 4th roots of unity yields exactly 32 solutions, which assemble
into exactly 32 orthonormal measurement bases; any of those bases saturates
the conventional success bound in d = 4.

The analogous d = 3 construction has no solution: for every index tuple the
three overlap conditions cannot be met simultaneously for any phases, and
certify_d3_impossible measures by how much they fail.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .bounds import overlap_target
from .mub import MubFamily, OrthonormalBasis
from .strategy import ConventionalStrategy, SuccessBreakdown, build_strategy, success_exact

FOURTH_ROOTS: tuple[complex, ...] = (1, 1j, -1, -1j)


@dataclass
class SignalState:
    """One equal-overlap superposition found by the scan (indices 0-based)."""

    indices: tuple[int, int, int, int]
    phases: tuple[complex, complex, complex]
    vector: np.ndarray


@dataclass
class MeasurementBasis4:
    """Four mutually orthogonal signal states (indices into the scan output)."""

    members: tuple[int, int, int, int]
    basis: OrthonormalBasis


def _norm_constant(d: int) -> float:
    return 1.0 / np.sqrt(d + np.sqrt(d) * (d - 1))


def signal_candidate(
    family: MubFamily,
    indices: tuple[int, ...],
    phases: tuple[complex, ...],
) -> np.ndarray:
    """Assemble the candidate superposition for given indices and phases."""
    comps = [family.state(m + 1, j) for m, j in enumerate(indices)]
    coeffs = (1.0,) + tuple(phases)
    return _norm_constant(family.dim) * sum(c * v for c, v in zip(coeffs, comps))


def find_signal_states(family: MubFamily, *, tol: float = 1e-9) -> list[SignalState]:
    """Scan all index tuples and 4th-root phase triples for equal overlaps.

    Requires the d = 4 family.  Returns solutions in lexicographic index
    order; the squared overlap with each of the four constituents must equal
    5/8 within `tol`.
    """
    d = family.dim
    if d != 4:
        raise ValueError(f"the scan is specific to dim 4, got {d}")
    target = overlap_target(d)  # 5/8
    found: list[SignalState] = []
    for indices in itertools.product(range(4), repeat=4):
        comps = np.array([family.state(m + 1, j) for m, j in enumerate(indices)])
        for phases in itertools.product(FOURTH_ROOTS, repeat=3):
            chi = _norm_constant(4) * (comps[0] + phases[0] * comps[1]
                                       + phases[1] * comps[2] + phases[2] * comps[3])
            overlaps = np.abs(comps.conj() @ chi) ** 2
            if np.max(np.abs(overlaps - target)) < tol:
                found.append(SignalState(indices=indices, phases=phases, vector=chi))
    return found


def refine_signal_phases(
    family: MubFamily,
    state: SignalState,
) -> tuple[float, np.ndarray]:
    """Continuously re-optimize a solution's phases.

    Returns (residual deviation, optimal phase angles).  For a true solution
    the optimizer must stay put: the residual is ~0 and the angles move by
    less than ~1e-7 from the 4th-root lattice point.
    """
    comps = np.array([family.state(m + 1, j) for m, j in enumerate(state.indices)])
    start = np.angle(np.asarray(state.phases))
    f = _phase_objective(comps, family.dim)
    res = minimize(f, start, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
    return float(res.fun), np.asarray(res.x)


def _phase_objective(comps: np.ndarray, d: int):
    n = _norm_constant(d)
    target = overlap_target(d)

    def f(angles: np.ndarray) -> float:
        coeffs = np.concatenate(([1.0], np.exp(1j * np.asarray(angles))))
        chi = n * (coeffs[:, None] * comps).sum(axis=0)
        overlaps = np.abs(comps.conj() @ chi) ** 2
        return float(np.max(np.abs(overlaps - target)))

    return f


def off_lattice_deviation(
    family: MubFamily,
    indices: tuple[int, int, int, int],
    *,
    grid_deg: float = 6.0,
    extra_starts: int = 8,
    seed: int = 0,
) -> float:
    """Best (smallest) max overlap deviation over continuous phases.

    Coarse vectorized grid seeds a Nelder-Mead polish, plus a few random
    restarts.  Solutions of the scan reach ~0; for every other index tuple
    the result stays bounded away from zero, confirming that no solutions
    hide off the 4th-root lattice.
    """
    comps = np.array([family.state(m + 1, j) for m, j in enumerate(indices)])
    gram = comps.conj() @ comps.T  # gram[m, m'] = <comp_m | comp_m'>
    n = _norm_constant(family.dim)
    target = 5.0 / 8.0
    steps = int(round(360 / grid_deg))
    ang = 2 * np.pi * np.arange(steps) / steps
    u = np.exp(1j * ang)[:, None, None]
    v = np.exp(1j * ang)[None, :, None]
    w = np.exp(1j * ang)[None, None, :]
    worst = None
    for m in range(4):
        c = gram[m]
        amp = n * (c[0] + c[1] * u + c[2] * v + c[3] * w)
        dev = np.abs(np.abs(amp) ** 2 - target)
        worst = dev if worst is None else np.maximum(worst, dev)
    flat = int(np.argmin(worst))
    gi = np.unravel_index(flat, worst.shape)
    starts = [np.array([ang[gi[0]], ang[gi[1]], ang[gi[2]]])]
    rng = np.random.default_rng(seed)
    starts += [rng.uniform(0, 2 * np.pi, 3) for _ in range(extra_starts)]
    f = _phase_objective(comps, family.dim)
    best = float(worst[gi])
    for s in starts:
        res = minimize(f, s, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 2000})
        best = min(best, float(res.fun))
    return best


def find_measurement_bases(states: list[SignalState], *, tol: float = 1e-9) -> list[MeasurementBasis4]:
    """All orthonormal quadruples among the signal states, canonically ordered.

    Checks every 4-subset for pairwise orthogonality within `tol` and returns
    the quadruples sorted lexicographically by member index.
    """
    vecs = np.array([s.vector for s in states])
    gram = np.abs(vecs.conj() @ vecs.T)
    out: list[MeasurementBasis4] = []
    for quad in itertools.combinations(range(len(states)), 4):
        if all(gram[a, b] < tol for a, b in itertools.combinations(quad, 2)):
            out.append(MeasurementBasis4(
                members=quad,
                basis=OrthonormalBasis(label=None, states=vecs[list(quad)]),
            ))
    return out


def certify_optimal_strategy(family: MubFamily, basis: MeasurementBasis4) -> tuple[ConventionalStrategy, SuccessBreakdown]:
    """Turn a signal-state basis into a strategy and check it is optimal.

    The greedy assignment pairs each covered basis state with the signal
    state holding the 5/8 overlap; the result must be well conditioned with
    every control outcome collecting the same overlap sum.  Raises ValueError
    if any of that fails (which would signal a search bug).
    """
    strat = build_strategy(family, prep_basis=0, prep_index=0, control=basis.basis)
    breakdown = success_exact(strat)
    ceiling = family.dim * overlap_target(family.dim)
    for k, f_sum in breakdown.per_signal.items():
        if abs(f_sum - ceiling) > 1e-9:
            raise ValueError(f"outcome {k} collects {f_sum!r} instead of {ceiling!r}")
    return strat, breakdown


@dataclass
class TupleDeviation:
    """Best achievable overlap deviation for one index tuple (d = 3)."""

    indices: tuple[int, int, int]
    deviation: float
    angles: tuple[float, float]


@dataclass
class ImpossibilityReport:
    """Outcome of the d = 3 phase sweep over all index tuples."""

    dim: int
    delta: float
    tuples: list[TupleDeviation]
    passed: bool

    @property
    def worst(self) -> float:
        """Smallest deviation over tuples: how close any tuple ever gets."""
        return min(t.deviation for t in self.tuples)


def certify_d3_impossible(
    family: MubFamily,
    *,
    delta: float = 1e-3,
    grid_deg: float = 0.5,
    starts: int = 32,
    seed: int = 0,
) -> ImpossibilityReport:
    """Show no d = 3 signal state exists for any index tuple.

    For each of the 27 tuples the two free phases are optimized to minimize
    the maximum deviation of the three constituent overlaps from
    overlap_target(3), by a vectorized grid at `grid_deg` resolution followed
    by Nelder-Mead polish from the grid argmin and `starts` random starts.
    Passes when every tuple stays above `delta`.
    """
    d = family.dim
    if d != 3:
        raise ValueError(f"this certificate is specific to dim 3, got {d}")
    n = _norm_constant(3)
    target = overlap_target(3)
    steps = int(round(360 / grid_deg))
    ang = 2 * np.pi * np.arange(steps) / steps
    u = np.exp(1j * ang)[:, None]
    v = np.exp(1j * ang)[None, :]
    rng = np.random.default_rng(seed)
    tuples: list[TupleDeviation] = []
    for indices in itertools.product(range(3), repeat=3):
        comps = np.array([family.state(m + 1, j) for m, j in enumerate(indices)])
        g = comps.conj() @ comps.T
        o1 = np.abs(n * (1 + g[0, 1] * u + g[0, 2] * v)) ** 2
        o2 = np.abs(n * (g[1, 0] + u + g[1, 2] * v)) ** 2
        o3 = np.abs(n * (g[2, 0] + g[2, 1] * u + v)) ** 2
        dev = np.maximum(np.abs(o1 - target),
                         np.maximum(np.abs(o2 - target), np.abs(o3 - target)))
        gi = np.unravel_index(int(np.argmin(dev)), dev.shape)

        def f(angles: np.ndarray) -> float:
            uu, vv = np.exp(1j * angles[0]), np.exp(1j * angles[1])
            oo = (
                abs(n * (1 + g[0, 1] * uu + g[0, 2] * vv)) ** 2,
                abs(n * (g[1, 0] + uu + g[1, 2] * vv)) ** 2,
                abs(n * (g[2, 0] + g[2, 1] * uu + vv)) ** 2,
            )
            return max(abs(o - target) for o in oo)

        best = float(dev[gi])
        best_angles = (float(ang[gi[0]]), float(ang[gi[1]]))
        for start in [np.array([ang[gi[0]], ang[gi[1]]])] + [rng.uniform(0, 2 * np.pi, 2) for _ in range(starts)]:
            res = minimize(f, start, method="Nelder-Mead",
                           options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
            if res.fun < best:
                best = float(res.fun)
                best_angles = (float(res.x[0]), float(res.x[1]))
        tuples.append(TupleDeviation(indices=indices, deviation=best, angles=best_angles))
    passed = all(t.deviation > delta for t in tuples)
    return ImpossibilityReport(dim=3, delta=delta, tuples=tuples, passed=passed)


def single_overlap_deviation(
    family: MubFamily,
    indices: tuple[int, int, int],
    which: int = 0,
) -> float:
    """Smallest deviation achievable for ONE overlap alone (d = 3).

    Aligning both cross terms of the chosen constituent makes its squared
    overlap hit the target exactly, so this is ~0 for every tuple; failure is
    collective, never per-overlap.
    """
    comps = np.array([family.state(m + 1, j) for m, j in enumerate(indices)])
    g = comps.conj() @ comps.T
    n = _norm_constant(3)
    target = overlap_target(3)
    # phases that cancel the cross-term phases as seen from `which`
    coeffs = np.ones(3, dtype=complex)
    for m in range(3):
        if m != which:
            coeffs[m] = np.exp(-1j * np.angle(g[which, m]))
    coeffs = coeffs / coeffs[0]  # keep the first amplitude's phase fixed
    chi = n * (coeffs[:, None] * comps).sum(axis=0)
    return float(abs(abs(np.vdot(comps[which], chi)) ** 2 - target))
