"""Central numerical tolerances."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerances shared across the package.

    construction bounds defects in objects the library builds itself
    (norms, orthogonality); comparison is the looser bound used when
    checking derived quantities against expected values.
    """

    construction: float = 1e-12
    comparison: float = 1e-10


DEFAULT = Tolerances()
