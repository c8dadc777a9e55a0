"""Closed-form success bounds for ancilla-free retrodiction strategies.

A strategy that guesses the preparation basis outright and covers the other
bases with one control measurement has success probability at most

    bound_p(d) = (2 sqrt(d) + d - 1) / (sqrt(d) (1 + d)),

attained only if every signal state reaches squared overlap
overlap_target(d) = (sqrt(d) + d - 1) / (d sqrt(d)) with its assigned state in
each covered basis.  guess_bound / control_bound split the same accounting
between r guessed bases and s = d + 1 - r control-covered ones; the split is
rank-independent for 1 <= r <= d and strictly worse at r in {0, d+1}.

relaxed_f_max numerically maximizes the per-signal overlap sum F and is the
tool used to measure how close a given family lets a single state get to the
d * overlap_target(d) ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mub import MubFamily


def _check_dim(d: int) -> None:
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")


def bound_p(d: int) -> float:
    """Upper bound on the success of a conventional strategy in dimension d."""
    _check_dim(d)
    rd = np.sqrt(d)
    return float((2 * rd + d - 1) / (rd * (1 + d)))


def overlap_target(d: int) -> float:
    """The squared overlap each signal state needs to saturate bound_p."""
    _check_dim(d)
    rd = np.sqrt(d)
    return float((rd + d - 1) / (d * rd))


def guess_bound(d: int, r: int) -> float:
    """Bound on the total success mass of r outright-guessed bases."""
    _check_dim(d)
    if not 0 <= r <= d + 1:
        raise ValueError(f"r must lie in 0..{d + 1}, got {r}")
    if r == 0:
        return 0.0
    rd = np.sqrt(d)
    return float((rd + r - 1) / (rd * (d + 1)))


def control_bound(d: int, s: int) -> float:
    """Bound on the total success mass of s control-covered bases."""
    _check_dim(d)
    if not 0 <= s <= d + 1:
        raise ValueError(f"s must lie in 0..{d + 1}, got {s}")
    if s == 0:
        return 0.0
    rd = np.sqrt(d)
    return float((rd + s - 1) / ((d + 1) * rd))


def total_bound(d: int, r: int) -> float:
    """Combined bound when r bases are guessed and d + 1 - r are covered.

    Equals bound_p(d) for every r in 1..d and drops to
    (1 + sqrt(d)) / (1 + d) at the extremes r in {0, d+1}.
    """
    _check_dim(d)
    if not 0 <= r <= d + 1:
        raise ValueError(f"r must lie in 0..{d + 1}, got {r}")
    return guess_bound(d, r) + control_bound(d, d + 1 - r)


@dataclass
class BoundReport:
    """A bound evaluation with the formula family that produced it."""

    dim: int
    r: int | None
    value: float
    formula: str


def bound_report(d: int, r: int | None = None) -> BoundReport:
    """Evaluate the applicable bound; r is the number of guessed bases."""
    if r is None:
        return BoundReport(dim=d, r=None, value=bound_p(d), formula="conventional")
    value = total_bound(d, r)
    formula = "all-or-nothing split" if r in (0, d + 1) else "guess/control split"
    return BoundReport(dim=d, r=r, value=value, formula=formula)


@dataclass
class RelaxedMaximum:
    """Best overlap sum found by relaxed_f_max."""

    value: float
    maximizer: np.ndarray
    restarts: int


def relaxed_f_max(
    family: MubFamily,
    excluded: int = 0,
    *,
    restarts: int = 64,
    seed: int = 0,
) -> RelaxedMaximum:
    """Numerically maximize F(chi) = sum over bases != excluded of the best
    squared overlap of a unit vector chi with that basis.

    Multistart block-coordinate ascent: fix the per-basis best states, jump to
    the top eigenvector of the sum of their projectors, repeat until the value
    stops improving.  Each step is monotone, so every restart converges; the
    best over `restarts` seeded starts is returned.  F never exceeds
    d * overlap_target(d) for an unbiased family.
    """
    arr = np.stack([family.bases[i].states for i in family.labels if i != excluded])
    d = family.dim
    best_val = -np.inf
    best_vec: np.ndarray | None = None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        chi = rng.normal(size=d) + 1j * rng.normal(size=d)
        chi /= np.linalg.norm(chi)
        prev = -np.inf
        for _ in range(500):
            overlaps = np.abs(np.einsum("ijm,m->ij", arr.conj(), chi)) ** 2
            selected = overlaps.argmax(axis=1)
            picked = arr[np.arange(arr.shape[0]), selected]
            accum = picked.T @ picked.conj()  # sum of projectors onto the picks
            evals, evecs = np.linalg.eigh(accum)
            chi = evecs[:, -1]
            if evals[-1] - prev < 1e-12:
                break
            prev = evals[-1]
        value = float((np.abs(np.einsum("ijm,m->ij", arr.conj(), chi)) ** 2).max(axis=1).sum())
        if value > best_val:
            best_val = value
            best_vec = chi
    assert best_vec is not None
    return RelaxedMaximum(value=best_val, maximizer=best_vec, restarts=restarts)
