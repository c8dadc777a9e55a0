"""Exact success ceilings for the ancilla-free retrodiction game.

The physicist prepares an eigenstate of one of the d+1 unbiased bases,
the king measures in a basis of his choosing, and the physicist must
predict his outcome from a single control measurement.  Without an
ancilla the best possible mean success is

    p(d) = (2 sqrt(d) + d - 1) / (sqrt(d) (1 + d)),

and splitting the bases into r "guessed" and d+1-r "controlled" ones
never helps: the bound is flat at p(d) for every interior split and
strictly worse at the all-or-nothing edges.  This script prints the
ceiling table and checks both facts numerically.
"""

from __future__ import annotations

import numpy as np

from kings import bound_p, bound_report, overlap_target, total_bound


def main() -> None:
    print("ceiling p(d) for the conventional (no-ancilla) game")
    print(f"{'d':>4}  {'p(d)':>8}  {'overlap target':>14}")
    for d in (2, 3, 4, 5, 8, 9):
        print(f"{d:>4}  {bound_p(d):>8.4f}  {overlap_target(d):>14.6f}")

    # the split bound is flat across every interior r and drops at the edges
    print("\nsplit bound vs r (d = 4):")
    for r in range(6):
        rep = bound_report(4, r)
        print(f"  r = {r}:  {rep.value:.6f}  [{rep.formula}]")

    for d in range(2, 10):
        interior = [total_bound(d, r) for r in range(1, d + 1)]
        assert np.allclose(interior, bound_p(d), atol=1e-14)
        edge = total_bound(d, 0)
        assert edge == total_bound(d, d + 1)
        assert edge < bound_p(d)
    print("\nflat-interior and strict-edge checks pass for d = 2..9")

    # the ceiling is the overlap target dressed up: p = (1 + d*t) / (d + 1)
    for d in range(2, 10):
        assert abs(bound_p(d) - (1 + d * overlap_target(d)) / (d + 1)) < 1e-15
    print("ceiling/overlap-target identity holds for d = 2..9")


if __name__ == "__main__":
    main()
