"""Maximal families of mutually unbiased bases (MUBs).

construct_mub builds the d+1 bases for prime d (Z/X/Y eigenbases for d = 2,
a root-of-unity formula for odd primes) and a hand-entered two-qubit family
for d = 4.  certify_family re-checks orthonormality and unbiasedness from
scratch and reports the worst deviation it finds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n**0.5) + 1))


@dataclass
class OrthonormalBasis:
    """An orthonormal basis of C^d; basis states are the rows of `states`."""

    label: int | None
    states: np.ndarray

    def __post_init__(self) -> None:
        self.states = np.ascontiguousarray(self.states, dtype=complex)
        if self.states.ndim != 2 or self.states.shape[0] != self.states.shape[1]:
            raise ValueError(f"expected a square state matrix, got {self.states.shape}")
        self.states.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def state(self, j: int) -> np.ndarray:
        return self.states[j]


def orthonormality_defect(states: np.ndarray) -> float:
    """Largest deviation of the Gram matrix from the identity."""
    gram = states.conj() @ states.T
    return float(np.abs(gram - np.eye(states.shape[0])).max())


@dataclass
class MubFamily:
    """d+1 pairwise unbiased orthonormal bases of C^d, labelled 0..d."""

    dim: int
    bases: tuple[OrthonormalBasis, ...]

    def __post_init__(self) -> None:
        if len(self.bases) != self.dim + 1:
            raise ValueError(
                f"family for dim {self.dim} needs {self.dim + 1} bases, got {len(self.bases)}"
            )

    @cached_property
    def array(self) -> np.ndarray:
        """All states stacked as an array of shape (d+1, d, d)."""
        out = np.stack([b.states for b in self.bases])
        out.setflags(write=False)
        return out

    def state(self, basis: int, j: int) -> np.ndarray:
        return self.bases[basis].states[j]

    @property
    def labels(self) -> range:
        return range(self.dim + 1)


@dataclass
class CertificationReport:
    """Result of re-deriving the MUB properties of a family."""

    dim: int
    passed: bool
    max_orthonormality_deviation: float
    max_unbiasedness_deviation: float
    worst_orthonormality: tuple[int, int, int]  # (basis, j, j')
    worst_unbiasedness: tuple[int, int, int, int]  # (basis a, i, basis b, j)
    atol: float


# Two-qubit family: each row of four states is the set of joint eigenvectors
# of a commuting pair of two-qubit Pauli products, ordered by eigenvalue
# signature (++, +-, -+, --), with the leading amplitude fixed real positive.
# Operator pairs per basis 0..4: (ZI, IZ), (XI, IX), (YI, IY), (XY, YZ),
# (YX, ZY).
_TWO_QUBIT_QUADS: dict[int, list[tuple[complex, complex, complex, complex]]] = {
    1: [(1, 1, 1, 1), (1, -1, 1, -1), (1, 1, -1, -1), (1, -1, -1, 1)],
    2: [(1, 1j, 1j, -1), (1, -1j, 1j, 1), (1, 1j, -1j, 1), (1, -1j, -1j, -1)],
    3: [(1, -1, 1j, 1j), (1, 1, -1j, 1j), (1, 1, 1j, -1j), (1, -1, -1j, -1j)],
    4: [(1, 1j, -1, 1j), (1, -1j, 1, 1j), (1, 1j, 1, -1j), (1, -1j, -1, -1j)],
}


def two_qubit_observable_pairs() -> list[tuple[np.ndarray, np.ndarray]]:
    """The five commuting two-qubit operator pairs behind the d = 4 family."""
    eye = np.eye(2, dtype=complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    k = np.kron
    return [
        (k(sz, eye), k(eye, sz)),
        (k(sx, eye), k(eye, sx)),
        (k(sy, eye), k(eye, sy)),
        (k(sx, sy), k(sy, sz)),
        (k(sy, sx), k(sz, sy)),
    ]


def _qubit_family() -> list[np.ndarray]:
    s = 1 / np.sqrt(2)
    z = np.eye(2, dtype=complex)
    x = np.array([[s, s], [s, -s]], dtype=complex)
    y = np.array([[s, s * 1j], [s, -s * 1j]])
    return [z, x, y]


def _odd_prime_family(d: int) -> list[np.ndarray]:
    # Basis 0 is computational; component k of state j in basis m (1..d) is
    # omega^(j*k + m*k^2) / sqrt(d) with omega the primitive d-th root of unity.
    j = np.arange(d)[:, None]
    k = np.arange(d)[None, :]
    out = [np.eye(d, dtype=complex)]
    for m in range(1, d + 1):
        phase = (j * k + m * k * k) % d
        out.append(np.exp(2j * np.pi * phase / d) / np.sqrt(d))
    return out


def _two_qubit_family() -> list[np.ndarray]:
    out = [np.eye(4, dtype=complex)]
    for m in range(1, 5):
        out.append(np.array(_TWO_QUBIT_QUADS[m], dtype=complex) / 2)
    return out


def construct_mub(d: int) -> MubFamily:
    """Build the maximal family of d+1 mutually unbiased bases of C^d.

    Supported dimensions: primes and 4.  Raises ValueError otherwise.
    """
    if d == 2:
        mats = _qubit_family()
    elif d == 4:
        mats = _two_qubit_family()
    elif is_prime(d):
        mats = _odd_prime_family(d)
    else:
        raise ValueError(f"no construction available for dim {d} (need a prime or 4)")
    bases = tuple(OrthonormalBasis(label=m, states=mat) for m, mat in enumerate(mats))
    return MubFamily(dim=d, bases=bases)


def certify_family(family: MubFamily, *, atol: float | None = None) -> CertificationReport:
    """Re-check orthonormality and pairwise unbiasedness of a family.

    Passes only if every basis is orthonormal and every cross-basis overlap
    satisfies |<a|b>|^2 = 1/d, both within `atol` (default: the comparison
    tolerance).
    """
    atol = DEFAULT.comparison if atol is None else atol
    d = family.dim
    worst_orth = 0.0
    worst_orth_at = (0, 0, 0)
    for basis in family.bases:
        gram = np.abs(basis.states.conj() @ basis.states.T - np.eye(d))
        idx = np.unravel_index(np.argmax(gram), gram.shape)
        if gram[idx] >= worst_orth:
            worst_orth = float(gram[idx])
            worst_orth_at = (basis.label, int(idx[0]), int(idx[1]))
    worst_unb = 0.0
    worst_unb_at = (0, 0, 1, 0)
    for a in family.labels:
        for b in family.labels:
            if a >= b:
                continue
            cross = np.abs(family.bases[a].states.conj() @ family.bases[b].states.T) ** 2
            dev = np.abs(cross - 1.0 / d)
            idx = np.unravel_index(np.argmax(dev), dev.shape)
            if dev[idx] >= worst_unb:
                worst_unb = float(dev[idx])
                worst_unb_at = (a, int(idx[0]), b, int(idx[1]))
    return CertificationReport(
        dim=d,
        passed=(worst_orth <= atol and worst_unb <= atol),
        max_orthonormality_deviation=worst_orth,
        max_unbiasedness_deviation=worst_unb,
        worst_orthonormality=worst_orth_at,
        worst_unbiasedness=worst_unb_at,
        atol=atol,
    )
