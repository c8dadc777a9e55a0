"""Build and certify the mutually unbiased basis families.

Prime dimensions get the root-of-unity construction; d = 4 uses the
hand-entered two-qubit family whose five bases are joint eigenvectors of
commuting Pauli pairs.  Certification re-derives orthonormality and
unbiasedness from scratch and reports the worst deviation it saw.
"""

from __future__ import annotations

import numpy as np

from kings import certify_family, construct_mub, two_qubit_observable_pairs


def main() -> None:
    for d in (2, 3, 4, 5, 7):
        family = construct_mub(d)
        report = certify_family(family)
        status = "ok" if report.passed else "FAILED"
        print(
            f"d = {d}: {len(family.bases)} bases, "
            f"orthonormality dev {report.max_orthonormality_deviation:.2e}, "
            f"unbiasedness dev {report.max_unbiasedness_deviation:.2e}  [{status}]"
        )

    # the d = 4 family is pinned down by operator pairs: basis a holds the
    # joint eigenvectors of the commuting pair (A_a, B_a), ordered by
    # eigenvalue signature (++, +-, -+, --)
    family = construct_mub(4)
    signatures = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    print("\nd = 4 joint-eigenvector check:")
    for a, (op_a, op_b) in enumerate(two_qubit_observable_pairs()):
        worst = 0.0
        for i, (sa, sb) in enumerate(signatures):
            psi = family.bases[a].states[i]
            worst = max(
                worst,
                float(np.max(np.abs(op_a @ psi - sa * psi))),
                float(np.max(np.abs(op_b @ psi - sb * psi))),
            )
        print(f"  basis {a}: eigen-residual {worst:.2e}")


if __name__ == "__main__":
    main()
