"""Retrodicting spin along cube diagonals with a maximally entangled pair.

The king measures the object qubit's spin along one of the four body
diagonals of a cube.  With the object maximally entangled with an ancilla the
joint state admits one product decomposition per diagonal (the partner leg is
the diagonal's mirror image in the x-z plane), and a single entangled
measurement basis (the VAA basis) retrodicts the king's sign with probability
(2 + sqrt(3)) / 4.  The best ancilla-free protocol instead prepares spin-up
along the first diagonal and measures along one optimized control direction,
reaching (15 + sqrt(33)) / 24.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .config import DEFAULT
from .mub import OrthonormalBasis, orthonormality_defect
from .qstate import spin_up_state, tensor

REFLECTION_PARTNER: dict[int, int] = {0: 3, 1: 2, 2: 1, 3: 0}


@dataclass
class CubeGameSetup:
    """Geometry and states of the cube-diagonal game.

    diagonals holds the four unit vectors as rows; bell is the shared
    (|00> + |11>)/sqrt(2) pair; vaa is the entangled measurement basis.
    """

    diagonals: np.ndarray
    bell: np.ndarray
    vaa: OrthonormalBasis
    reflection_partner: dict[int, int]


def make_cube_setup() -> CubeGameSetup:
    """Build the cube geometry, the shared pair and the VAA basis."""
    diagonals = np.array(
        [[1, 1, 1], [-1, 1, 1], [-1, -1, 1], [1, -1, 1]], dtype=float
    ) / np.sqrt(3)
    bell = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    r2 = 1 / np.sqrt(2)
    e = np.exp(1j * np.pi / 4) / 2
    eb = np.exp(-1j * np.pi / 4) / 2
    vaa = OrthonormalBasis(label=None, states=np.array([
        [r2, e, eb, 0],
        [r2, -e, -eb, 0],
        [0, eb, e, r2],
        [0, -eb, -e, r2],
    ]))
    defect = orthonormality_defect(vaa.states)
    if defect > DEFAULT.construction:
        raise ValueError(f"VAA basis defect {defect:g}")
    return CubeGameSetup(
        diagonals=diagonals, bell=bell, vaa=vaa,
        reflection_partner=dict(REFLECTION_PARTNER),
    )


def king_collapse(setup: CubeGameSetup, diagonal: int, sign: int) -> np.ndarray:
    """Joint state after the king finds `sign` along `diagonal` (0-based).

    The object collapses along the measured diagonal and the ancilla along
    its reflection partner, per the product decomposition of the shared pair.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    partner = setup.reflection_partner[diagonal]
    return tensor(
        spin_up_state(sign * setup.diagonals[diagonal]),
        spin_up_state(sign * setup.diagonals[partner]),
    )


def verify_bell_decompositions(setup: CubeGameSetup, *, atol: float | None = None) -> dict[int, float]:
    """Ray-equality defects of the four product decompositions of the pair.

    For each diagonal a the state (|+a,+partner> + |-a,-partner>)/sqrt(2)
    must reproduce the shared pair up to a global phase; returns the defect
    | |<bell|candidate>| - 1 | per diagonal and raises if any exceeds atol.
    """
    atol = DEFAULT.comparison if atol is None else atol
    defects: dict[int, float] = {}
    for a in range(4):
        candidate = (king_collapse(setup, a, +1) + king_collapse(setup, a, -1)) / np.sqrt(2)
        defects[a] = float(abs(abs(np.vdot(setup.bell, candidate)) - 1.0))
    bad = {a: v for a, v in defects.items() if v > atol}
    if bad:
        raise ValueError(f"decomposition defects exceed {atol}: {bad}")
    return defects


_ROW_ORDER: list[tuple[int, int]] = [(a, s) for a in range(4) for s in (1, -1)]


def collapse_row_labels() -> list[str]:
    """Labels of the eight collapsed joint states, in table row order."""
    labels = []
    for a, s in _ROW_ORDER:
        p = REFLECTION_PARTNER[a]
        sgn = "+" if s == 1 else "-"
        labels.append(f"{sgn}n{a + 1}{sgn}n{p + 1}")
    return labels


def vaa_overlap_table(setup: CubeGameSetup) -> np.ndarray:
    """8 x 4 Born matrix: collapsed joint states (rows) vs VAA states.

    Rows pair up per diagonal (+ then -), columns follow the VAA ordering;
    every row sums to 1.
    """
    rows = np.array([king_collapse(setup, a, s) for a, s in _ROW_ORDER])
    return np.abs(rows.conj() @ setup.vaa.states.T) ** 2


@dataclass
class PredictionTable:
    """Sign predicted for each (VAA outcome, diagonal) pair.

    table[k, a] is +1 or -1: the likelier king outcome along diagonal a
    given VAA outcome k.
    """

    table: np.ndarray

    def predict(self, outcome: int, diagonal: int) -> int:
        return int(self.table[outcome, diagonal])


def vaa_prediction_table(setup: CubeGameSetup) -> PredictionTable:
    """Majority-likelihood prediction rule read off the overlap table."""
    t = vaa_overlap_table(setup)
    table = np.empty((4, 4), dtype=int)
    for k in range(4):
        for a in range(4):
            table[k, a] = 1 if t[2 * a, k] >= t[2 * a + 1, k] else -1
    return PredictionTable(table=table)


def wrong_prediction_mass(setup: CubeGameSetup) -> np.ndarray:
    """Per collapsed state, the Born mass landing on wrong-prediction outcomes."""
    t = vaa_overlap_table(setup)
    pred = vaa_prediction_table(setup).table
    out = np.empty(8)
    for r, (a, s) in enumerate(_ROW_ORDER):
        out[r] = sum(t[r, k] for k in range(4) if pred[k, a] != s)
    return out


def vaa_success_exact(setup: CubeGameSetup) -> float:
    """Exact success of the VAA-basis protocol, (2 + sqrt(3)) / 4."""
    return float(1.0 - wrong_prediction_mass(setup).mean())


# --- ancilla-free (conventional) protocol ----------------------------------


def conventional_cube_value(setup: CubeGameSetup, direction: np.ndarray) -> float:
    """Success of the best decision rule for control direction m.

    Preparation is spin-up along diagonal 1, which the king's first diagonal
    confirms for free; for each other diagonal the optimal well-conditioned
    rule succeeds with probability (1 + |m . n_a|) / 2 regardless of which
    control outcome is tied to which sign, because the collapse and the rule
    flip signs together.
    """
    m = np.asarray(direction, dtype=float)
    dots = setup.diagonals[1:] @ m
    return float(0.25 + 0.25 * np.sum((1.0 + np.abs(dots)) / 2.0))


def conventional_cube_rule(setup: CubeGameSetup, direction: np.ndarray) -> dict[int, int]:
    """Sign predicted on the + control outcome, per diagonal (0-based keys).

    Diagonal 0 is the preparation diagonal and is always called +1; the -
    outcome predicts the opposite sign of the + outcome elsewhere.
    """
    rule = {0: 1}
    for a in range(1, 4):
        rule[a] = 1 if float(setup.diagonals[a] @ direction) >= 0 else -1
    return rule


def conventional_baseline(setup: CubeGameSetup) -> float:
    """Best constant-guess success: always call the likelier sign, 3/4."""
    dots = setup.diagonals[1:] @ setup.diagonals[0]
    return float(0.25 + 0.25 * np.sum((1.0 + np.abs(dots)) / 2.0))


@dataclass
class CubeConventionalResult:
    """Optimized ancilla-free protocol for the cube game."""

    direction: np.ndarray
    rule: dict[int, int]
    value: float
    angle_to_first_diagonal_deg: float
    co_optima: list[np.ndarray]
    great_circle: int | None
    grid_best: float


def _canonical_direction(setup: CubeGameSetup, m: np.ndarray) -> np.ndarray:
    """Pick the obtuse-angle representative of an optimal axis.

    The objective only sees |m . n_a|, so m and -m are equivalent; report the
    one making an angle >= 90 degrees with the preparation diagonal.
    """
    if float(m @ setup.diagonals[0]) > 0:
        return -m
    return m


def _great_circle_tag(setup: CubeGameSetup, m: np.ndarray, *, atol: float = 1e-6) -> int | None:
    """Which n_1 - n_k great circle (k in 1..3, 0-based) contains m, if any."""
    for k in range(1, 4):
        normal = np.cross(setup.diagonals[0], setup.diagonals[k])
        normal /= np.linalg.norm(normal)
        if abs(float(m @ normal)) < atol:
            return k
    return None


def conventional_cube_optimize(
    setup: CubeGameSetup,
    *,
    grid_deg: float = 0.25,
    refine: bool = True,
) -> CubeConventionalResult:
    """Grid-scan the control direction and polish the best candidates.

    A polar-azimuthal grid at `grid_deg` resolution is evaluated in one
    vectorized pass; every grid point within 1e-6 of the global value is
    polished with Nelder-Mead and the distinct optimal axes are reported
    (the cube's symmetry about the preparation diagonal makes the optimum
    three-fold degenerate).  The returned direction is the obtuse-angle
    representative of the best axis.
    """
    thetas = np.radians(np.arange(0.0, 180.0 + grid_deg / 2, grid_deg))
    phis = np.radians(np.arange(0.0, 360.0, grid_deg))
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    dirs = np.stack([np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1)
    dots = np.abs(dirs @ setup.diagonals[1:].T)
    values = 0.25 + 0.25 * ((1.0 + dots) / 2.0).sum(axis=-1)
    grid_best = float(values.max())

    def neg(angles: np.ndarray) -> float:
        th, ph = angles
        m = np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
        return -conventional_cube_value(setup, m)

    # polish every near-optimal grid point, then deduplicate by axis; the
    # window scales with the grid spacing so degenerate optima whose nearest
    # grid points sit a quadratic-in-spacing deficit below the max still count
    window = max(1e-6, 0.5 * np.radians(grid_deg) ** 2)
    near = np.argwhere(values >= grid_best - window)
    axes: list[np.ndarray] = []
    axis_values: list[float] = []
    for ti, pi in near:
        th, ph = float(thetas[ti]), float(phis[pi])
        if refine:
            res = minimize(neg, np.array([th, ph]), method="Nelder-Mead",
                           options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
            th, ph = float(res.x[0]), float(res.x[1])
            val = -float(res.fun)
        else:
            val = float(values[ti, pi])
        m = np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
        m = _canonical_direction(setup, m / np.linalg.norm(m))
        for seen in axes:
            if abs(float(seen @ m)) > 1.0 - 1e-8:
                break
        else:
            axes.append(m)
            axis_values.append(val)
    order = np.argsort(axis_values)[::-1]
    axes = [axes[i] for i in order]
    axis_values = [axis_values[i] for i in order]
    best = axes[0]
    value = axis_values[0]
    co = [m for m, v in zip(axes, axis_values) if v >= value - 1e-6]
    angle = float(np.degrees(np.arccos(np.clip(best @ setup.diagonals[0], -1, 1))))
    return CubeConventionalResult(
        direction=best,
        rule=conventional_cube_rule(setup, best),
        value=value,
        angle_to_first_diagonal_deg=angle,
        co_optima=co,
        great_circle=_great_circle_tag(setup, best),
        grid_best=grid_best,
    )
