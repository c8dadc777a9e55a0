"""Builders and writers for the five reference tables.

table1  success bound by dimension
table2  the two-qubit unbiased family (basis states)
table3  the 32 equal-overlap signal states (indices and phases)
table4  the 32 orthonormal signal-state quadruples
table5  VAA overlap table for the cube game

Each table writes as table<n>.csv plus a table<n>.json sibling carrying the
same data at full precision.
"""

from __future__ import annotations

import json
import os
from typing import Any

import numpy as np

from .bounds import bound_p
from .cube import collapse_row_labels, make_cube_setup, vaa_overlap_table
from .mub import construct_mub
from .qstate import complex_to_json
from .search import MeasurementBasis4, SignalState, find_measurement_bases, find_signal_states
from .serialize import family_csv_header, family_to_csv_rows, family_to_json, write_csv

TABLE_DIMS = (2, 3, 4, 5, 8, 9)


def bound_summary() -> list[tuple[int, float]]:
    return [(d, bound_p(d)) for d in TABLE_DIMS]


def _signal_rows(signals: list[SignalState]) -> list[list[Any]]:
    rows = []
    for num, s in enumerate(signals, start=1):
        row: list[Any] = [num] + [x + 1 for x in s.indices]
        for z in s.phases:
            z = complex(z)
            row += [z.real, z.imag]
        rows.append(row)
    return rows


def _basis_rows(bases: list[MeasurementBasis4]) -> list[list[int]]:
    return [[num] + [m + 1 for m in b.members] for num, b in enumerate(bases, start=1)]


def write_tables(outdir: str, which: tuple[int, ...] = (1, 2, 3, 4, 5)) -> list[str]:
    """Write the requested tables under outdir; returns the paths written."""
    os.makedirs(outdir, exist_ok=True)
    paths: list[str] = []
    need_search = {3, 4} & set(which)
    if need_search:
        family4 = construct_mub(4)
        signals = find_signal_states(family4)
        bases = find_measurement_bases(signals)

    def emit(name: str, header: list[str], rows: list[list[Any]], payload: dict[str, Any]) -> None:
        csv_path = os.path.join(outdir, f"{name}.csv")
        json_path = os.path.join(outdir, f"{name}.json")
        write_csv(csv_path, header, rows)
        with open(json_path, "w") as fh:
            json.dump(payload, fh, indent=2)
        paths.extend([csv_path, json_path])

    for n in which:
        if n == 1:
            data = bound_summary()
            emit(
                "table1",
                ["d", "success_bound"],
                [[d, f"{v:.4f}"] for d, v in data],
                {"bounds": [{"d": d, "value": v} for d, v in data]},
            )
        elif n == 2:
            family = construct_mub(4)
            emit(
                "table2",
                family_csv_header(4),
                family_to_csv_rows(family),
                family_to_json(family),
            )
        elif n == 3:
            emit(
                "table3",
                ["state", "i", "j", "k", "l", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im"],
                _signal_rows(signals),
                {
                    "states": [
                        {
                            "number": num,
                            "indices": [x + 1 for x in s.indices],
                            "phases": [complex_to_json(z) for z in s.phases],
                        }
                        for num, s in enumerate(signals, start=1)
                    ]
                },
            )
        elif n == 4:
            emit(
                "table4",
                ["basis", "state1", "state2", "state3", "state4"],
                _basis_rows(bases),
                {"bases": [{"number": r[0], "members": r[1:]} for r in _basis_rows(bases)]},
            )
        elif n == 5:
            setup = make_cube_setup()
            table = vaa_overlap_table(setup)
            labels = collapse_row_labels()
            emit(
                "table5",
                ["collapsed_state", "chi1", "chi2", "chi3", "chi4"],
                [[lab] + [f"{x:.6f}" for x in row] for lab, row in zip(labels, table)],
                {
                    "rows": [
                        {"collapsed_state": lab, "overlaps": [float(x) for x in row]}
                        for lab, row in zip(labels, np.asarray(table))
                    ]
                },
            )
        else:
            raise ValueError(f"unknown table {n}")
    return paths
