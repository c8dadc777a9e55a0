"""End-to-end command-line checks: outputs parse with the library's own
readers, manifests land next to artifacts, exit codes follow the contract."""

import json
import os

import numpy as np
import pytest

from kings.bounds import bound_p
from kings.cli import main
from kings.mub import construct_mub
from kings.presets import d2_optimal_strategy
from kings.serialize import (
    basis_to_json,
    family_from_csv,
    family_from_json,
    game_result_from_json,
    read_csv,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_table1(capsys):
    code, out, _ = run_cli(capsys, "bound", "--table1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "d,conventional_bound"
    assert lines[1] == "2,0.9024"
    assert lines[4] == "5,0.6315"
    assert len(lines) == 7


def test_bound_json(capsys):
    code, out, _ = run_cli(capsys, "bound", "--d", "3")
    obj = json.loads(out)
    assert code == 0
    assert obj["value"] == pytest.approx(bound_p(3))
    assert obj["formula"] == "conventional"
    assert obj["manifest"]["command"] == "bound"
    assert obj["manifest"]["version"]


def test_bound_split_report(capsys):
    code, out, _ = run_cli(capsys, "bound", "--d", "4", "--r", "0")
    assert json.loads(out)["formula"] == "all-or-nothing split"
    assert code == 0


def test_bound_needs_d_or_table(capsys):
    code, _, err = run_cli(capsys, "bound")
    assert code == 2
    assert "error" in err


def test_mub_json_round_trips(capsys):
    code, out, _ = run_cli(capsys, "mub", "--d", "3")
    assert code == 0
    obj = json.loads(out)
    family = family_from_json(obj)
    assert np.array_equal(family.array, construct_mub(3).array)
    assert obj["certification"]["passed"] is True


def test_mub_csv_round_trips(capsys):
    code, out, _ = run_cli(capsys, "mub", "--d", "4", "--emit", "csv")
    assert code == 0
    family = family_from_csv(out)
    assert np.array_equal(family.array, construct_mub(4).array)


def test_mub_file_output_with_manifest(capsys, tmp_path):
    out_file = tmp_path / "family.json"
    code, _, _ = run_cli(capsys, "mub", "--d", "2", "--out", str(out_file))
    assert code == 0
    family = family_from_json(json.loads(out_file.read_text()))
    assert family.dim == 2
    manifest = json.loads((tmp_path / "family.manifest.json").read_text())
    assert manifest["command"] == "mub"
    assert manifest["files"] == ["family.json"]


def test_mub_rejects_bad_dimension(capsys):
    code, _, err = run_cli(capsys, "mub", "--d", "6")
    assert code == 2
    assert "error" in err


def test_mub_rejects_unknown_emit(capsys):
    code, _, err = run_cli(capsys, "mub", "--d", "2", "--emit", "xml")
    assert code == 2


def test_eval_builtin_d2(capsys):
    code, out, _ = run_cli(capsys, "eval", "--d", "2", "--control", "builtin")
    obj = json.loads(out)
    assert code == 0
    assert obj["total"] == pytest.approx((4 + np.sqrt(2)) / 6, abs=1e-12)


def test_eval_builtin_d4(capsys):
    code, out, _ = run_cli(capsys, "eval", "--d", "4", "--control", "builtin")
    assert json.loads(out)["total"] == pytest.approx(0.7, abs=1e-9)
    assert code == 0


def test_eval_control_file(capsys, tmp_path):
    control = tmp_path / "control.json"
    control.write_text(json.dumps(basis_to_json(d2_optimal_strategy().control)))
    code, out, _ = run_cli(capsys, "eval", "--d", "2", "--control", str(control))
    assert code == 0
    assert json.loads(out)["total"] == pytest.approx((4 + np.sqrt(2)) / 6, abs=1e-12)


def test_eval_no_builtin_for_d3(capsys):
    code, _, err = run_cli(capsys, "eval", "--d", "3", "--control", "builtin")
    assert code == 2


def test_eval_missing_control_file(capsys):
    code, _, err = run_cli(capsys, "eval", "--d", "2", "--control", "nope.json")
    assert code == 2


def test_eval_malformed_control_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"states": "oops"}')
    code, _, err = run_cli(capsys, "eval", "--d", "2", "--control", str(bad))
    assert code == 2


def test_search_d4_writes_tables(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "search", "--d", "4", "--outdir", str(tmp_path))
    assert code == 0
    _, rows3 = read_csv(os.path.join(tmp_path, "table3.csv"))
    assert len(rows3) == 32
    _, rows4 = read_csv(os.path.join(tmp_path, "table4.csv"))
    assert len(rows4) == 32
    assert rows4[0][1:] == ["1", "11", "22", "32"]
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert set(manifest["files"]) >= {"table3.csv", "table4.csv"}


def test_search_d4_single_table(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "search", "--d", "4", "--outdir", str(tmp_path),
                         "--emit", "table3")
    assert code == 0
    assert (tmp_path / "table3.csv").exists()
    assert not (tmp_path / "table4.csv").exists()


def test_search_d3_impossibility_report(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "search", "--d", "3", "--outdir", str(tmp_path))
    assert code == 0
    report = json.loads((tmp_path / "impossibility-d3.json").read_text())
    assert report["passed"] is True
    assert len(report["tuples"]) == 27
    assert report["gap"] > 0.017
    assert report["worst_min_deviation"] > 1e-3


def test_search_rejects_other_dims(capsys):
    code, _, err = run_cli(capsys, "search", "--d", "5")
    assert code == 2


def test_cube_vaa_stdout(capsys):
    code, out, _ = run_cli(capsys, "cube", "vaa")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "state,chi1,chi2,chi3,chi4"
    assert len(lines) == 9
    first = lines[1].split(",")
    assert first[0] == "+n1+n4"
    assert sum(float(x) for x in first[1:]) == pytest.approx(1.0, abs=1e-5)


def test_cube_vaa_table_files(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "cube", "vaa", "--outdir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "table5.csv").exists()
    assert (tmp_path / "manifest.json").exists()


def test_cube_conventional(capsys):
    code, out, _ = run_cli(capsys, "cube", "conventional", "--grid-deg", "1.0")
    obj = json.loads(out)
    assert code == 0
    assert obj["value"] == pytest.approx((15 + np.sqrt(33)) / 24, abs=1e-9)
    assert abs(obj["angle_to_first_diagonal_deg"] - 100.0) < 0.5
    assert obj["great_circle_partner"] in (2, 3, 4)
    assert obj["baseline"] == pytest.approx(0.75)
    assert obj["rule"]["1"] == 1


def test_simulate_round_trips(capsys):
    code, out, _ = run_cli(capsys, "simulate", "--mode", "d2",
                           "--trials", "20000", "--seed", "5")
    assert code == 0
    obj = json.loads(out)
    result = game_result_from_json(obj)
    assert result.mode == "mub-d2"
    assert result.trials == 20000
    assert result.seed == 5
    assert obj["manifest"]["seed"] == 5
    assert result.successes == round(result.estimate * result.trials)


def test_simulate_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "simulate", "--mode", "cube-vaa",
                         "--trials", "5000", "--seed", "11")
    _, out2, _ = run_cli(capsys, "simulate", "--mode", "cube-vaa",
                         "--trials", "5000", "--seed", "11")
    # manifests differ only by timestamp; the numeric payload must not
    a, b = json.loads(out1), json.loads(out2)
    a.pop("manifest"), b.pop("manifest")
    assert a == b


def test_tables_selected_subset(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "tables", "--which", "1,5", "--outdir", str(tmp_path))
    assert code == 0
    names = sorted(os.listdir(tmp_path))
    assert "table1.csv" in names and "table5.csv" in names
    assert "table2.csv" not in names
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["parameters"]["which"] == [1, 5]
    header, rows = read_csv(os.path.join(tmp_path, "table1.csv"))
    assert rows[3] == ["5", "0.6315"]


def test_tables_rejects_bad_selection(capsys, tmp_path):
    code, _, err = run_cli(capsys, "tables", "--which", "7", "--outdir", str(tmp_path))
    assert code == 2


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_quick_profile(capsys):
    code, out, _ = run_cli(capsys, "verify", "--profile", "quick")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 11  # 10 criteria + summary
    assert all("PASS" in line for line in lines[:-1])
    assert lines[-1].startswith("10/10")
