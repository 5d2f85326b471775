import csv
import hashlib
import json
import subprocess
import sys
from pathlib import Path

import pytest

from kiosksim import ModelConfig, SweepGrid
from kiosksim.cli import (
    BREAKEVEN_COLUMNS,
    SWEEP_COLUMNS,
    config_from_dict,
    config_to_dict,
    main,
    read_sweep_csv,
    write_sweep_csv,
)
from kiosksim.engine import GridAxis, run_sweep

SMALL_CONFIG = {
    "grid": {
        "u": {"start": 0.1, "stop": 0.2, "step": 0.1},
        "pi": {"start": 0.1, "stop": 0.3, "step": 0.1},
        "d": {"start": 0.1, "stop": 0.3, "step": 0.1},
        "margins": [0.3, 0.5],
    },
    "customers_per_cell": 300,
    "master_seed": 11,
}


def _write_config(tmp_path, doc=SMALL_CONFIG):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(doc))
    return path


def _read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


# ---------------------------------------------------------------------------
# sweep


def test_sweep_outputs(tmp_path):
    config = _write_config(tmp_path)
    out = tmp_path / "run"
    assert main(["sweep", "--config", str(config), "--out", str(out), "--parallelism", "1"]) == 0

    rows = _read_rows(out / "sweep.csv")
    assert tuple(rows[0]) == SWEEP_COLUMNS
    assert len(rows) - 1 == 2 * 3 * 3 * 2

    summary_doc = json.loads((out / "summary.json").read_text())
    assert summary_doc["rule"] == "multiplicative"
    assert summary_doc["accounting"] == "discount_all_display_buyers"
    assert summary_doc["totals"]["cells"] == 36
    assert summary_doc["totals"]["customers"] == 36 * 300

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["tool"]["name"] == "kiosksim"
    assert manifest["failed_cells"] == []
    for output in manifest["outputs"]:
        digest = hashlib.sha256((out / output["path"]).read_bytes()).hexdigest()
        assert digest == output["sha256"]
    # the config snapshot reproduces the run
    snapshot_config, snapshot_grid = config_from_dict(manifest["config"])
    original_config, original_grid = config_from_dict(SMALL_CONFIG)
    assert snapshot_config == original_config
    assert snapshot_grid == original_grid


def test_sweep_byte_identical_across_parallelism(tmp_path):
    config = _write_config(tmp_path)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["sweep", "--config", str(config), "--out", str(out1), "--parallelism", "1"]) == 0
    assert main(["sweep", "--config", str(config), "--out", str(out2), "--parallelism", "2"]) == 0
    assert (out1 / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()


def test_sweep_invalid_step_exits_2(tmp_path, capsys):
    doc = json.loads(json.dumps(SMALL_CONFIG))
    doc["grid"]["d"]["step"] = 0
    config = _write_config(tmp_path, doc)
    out = tmp_path / "never"
    assert main(["sweep", "--config", str(config), "--out", str(out)]) == 2
    assert "grid.d" in capsys.readouterr().err
    assert not out.exists()


def test_sweep_unknown_key_exits_2(tmp_path, capsys):
    config = _write_config(tmp_path, {"grid": {"bogus": 1}})
    assert main(["sweep", "--config", str(config), "--out", str(tmp_path / "x")]) == 2
    assert "grid.bogus" in capsys.readouterr().err


def test_sweep_missing_config_exits_2(tmp_path, capsys):
    assert main(["sweep", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path / "x")]) == 2
    assert "not found" in capsys.readouterr().err


def test_sweep_overrides(tmp_path):
    config = _write_config(tmp_path)
    out = tmp_path / "run"
    assert (
        main(
            [
                "sweep",
                "--config",
                str(config),
                "--out",
                str(out),
                "--parallelism",
                "1",
                "--customers",
                "100",
                "--rule",
                "additive",
                "--accounting",
                "discount_incremental_only",
            ]
        )
        == 0
    )
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["customers_per_cell"] == 100
    assert manifest["config"]["rule"] == "additive"
    assert manifest["config"]["accounting"] == "discount_incremental_only"


# ---------------------------------------------------------------------------
# cell


def _run_cell(capsys, extra):
    code = main(["cell", *extra])
    captured = capsys.readouterr()
    assert code == 0, captured.err
    return json.loads(captured.out)


def test_cell_no_display(capsys):
    doc = _run_cell(
        capsys,
        ["--u", "0", "--pi", "0.36", "--d", "0.2", "--m", "0.4", "--customers", "1000", "--seed", "1"],
    )
    assert doc["mc"]["r_customers"] is None
    assert doc["mc"]["r_margin"] is None
    assert doc["margin_sum_baseline"] == doc["margin_sum_display_scenario"]
    assert doc["display_users"] == 0


def test_cell_zero_uplift_identity(capsys):
    doc = _run_cell(
        capsys,
        [
            "--u", "0.5", "--pi", "0.36", "--d", "0.0669014", "--m", "0.4",
            "--customers", "1000", "--seed", "1",
        ],
    )
    assert doc["mc"]["r_customers"] == 1.0


def test_cell_side_by_side_fields(capsys):
    doc = _run_cell(
        capsys,
        ["--u", "0.5", "--pi", "0.1", "--d", "0.7", "--m", "0.3", "--customers", "2000", "--seed", "42"],
    )
    assert doc["analytic"]["r_margin"] == pytest.approx(-8.525333333333334)
    assert doc["rule"] == "multiplicative"
    assert set(doc["mc"]) == {"r_customers", "r_margin"}
    assert doc["seed"] > 0


def test_cell_invalid_flags_exit_2(capsys):
    assert main(["cell", "--u", "0.5", "--pi", "0", "--d", "0.2", "--m", "0.4"]) == 2
    assert "pi" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# breakeven


def test_breakeven_analytic_rows(tmp_path):
    out = tmp_path / "be"
    assert (
        main(
            [
                "breakeven", "--out", str(out), "--margins", "0.5",
                "--pi-start", "0.1", "--pi-stop", "0.1",
            ]
        )
        == 0
    )
    rows = _read_rows(out / "breakeven.csv")
    assert tuple(rows[0]) == BREAKEVEN_COLUMNS
    assert len(rows) == 2
    margin, pi, lo, hi = rows[1]
    assert (float(margin), float(pi)) == (0.5, 0.1)
    assert abs(float(lo) - 0.094117) <= 1e-6
    assert abs(float(hi) - 0.355413) <= 1e-6


def test_breakeven_empty_intervals(tmp_path):
    out = tmp_path / "be"
    assert (
        main(
            [
                "breakeven", "--out", str(out), "--margins", "0.3",
                "--pi-start", "0.1", "--pi-stop", "0.7", "--pi-step", "0.3",
            ]
        )
        == 0
    )
    rows = _read_rows(out / "breakeven.csv")
    assert len(rows) == 4
    for row in rows[1:]:
        assert row[2] == "" and row[3] == ""


def test_breakeven_clamped_upper_endpoint(tmp_path):
    out = tmp_path / "be"
    assert (
        main(
            [
                "breakeven", "--out", str(out), "--margins", "0.5",
                "--pi-start", "0.7", "--pi-stop", "0.7",
            ]
        )
        == 0
    )
    rows = _read_rows(out / "breakeven.csv")
    assert abs(float(rows[1][3]) - 0.15) <= 1e-6


def test_breakeven_empirical(tmp_path):
    config = _write_config(
        tmp_path,
        {
            "grid": {
                "u": {"start": 0.1, "stop": 0.1, "step": 0.1},
                "pi": {"start": 0.1, "stop": 0.3, "step": 0.2},
                "d": {"start": 0.1, "stop": 0.7, "step": 0.02},
                "margins": [0.5],
            },
            "customers_per_cell": 10,
        },
    )
    run_dir = tmp_path / "run"
    assert main(["sweep", "--config", str(config), "--out", str(run_dir), "--parallelism", "1"]) == 0
    out = tmp_path / "be"
    assert (
        main(
            [
                "breakeven", "--method", "empirical", "--in", str(run_dir / "sweep.csv"),
                "--out", str(out), "--margins", "0.5",
            ]
        )
        == 0
    )
    rows = _read_rows(out / "breakeven.csv")
    assert len(rows) == 3  # header + two intention values
    assert abs(float(rows[1][3]) - 0.355413) <= 0.02


def test_breakeven_empirical_requires_input(capsys):
    assert main(["breakeven", "--method", "empirical", "--out", "/tmp/x", "--margins", "0.5"]) == 2
    assert "--in" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# report


@pytest.fixture()
def sweep_dir(tmp_path):
    config = _write_config(tmp_path)
    out = tmp_path / "run"
    assert main(["sweep", "--config", str(config), "--out", str(out), "--parallelism", "1"]) == 0
    return out


def test_report_round_trip(sweep_dir, tmp_path, capsys):
    out = tmp_path / "rep"
    assert main(["report", "--in", str(sweep_dir / "sweep.csv"), "--out", str(out)]) == 0
    names = capsys.readouterr().out.split()
    # two metrics x two axes x two margins
    assert len(names) == 8
    assert sorted(names) == sorted(p.name for p in out.glob("*.csv"))

    rows = _read_rows(out / "r_customers_by_discount_m0.3.csv")
    assert rows[0] == ["d", "mean_r_customers"]
    values = [float(r[1]) for r in rows[1:]]
    assert values == sorted(values)


def test_report_single_margin(sweep_dir, tmp_path):
    out = tmp_path / "rep"
    assert (
        main(
            [
                "report", "--in", str(sweep_dir / "sweep.csv"), "--out", str(out),
                "--margins", "0.5", "--metrics", "r_margin", "--axes", "by_intention",
            ]
        )
        == 0
    )
    assert [p.name for p in out.glob("*.csv")] == ["r_margin_by_intention_m0.5.csv"]


def test_report_empty_input_exits_2(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert main(["report", "--in", str(empty), "--out", str(tmp_path / "rep")]) == 2
    assert "empty" in capsys.readouterr().err


def test_report_schema_mismatch_exits_2(sweep_dir, tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    text = (sweep_dir / "sweep.csv").read_text().splitlines()
    text[0] = text[0].replace("pi_eff", "pi_effective")
    bad.write_text("\n".join(text) + "\n")
    assert main(["report", "--in", str(bad), "--out", str(tmp_path / "rep")]) == 2
    assert "header" in capsys.readouterr().err


def test_report_bad_row_named(sweep_dir, tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    lines = (sweep_dir / "sweep.csv").read_text().splitlines()
    parts = lines[3].split(",")
    parts[2] = "not-a-number"
    lines[3] = ",".join(parts)
    bad.write_text("\n".join(lines) + "\n")
    assert main(["report", "--in", str(bad), "--out", str(tmp_path / "rep")]) == 2
    assert "row 4" in capsys.readouterr().err


def test_report_mc_variant(sweep_dir, tmp_path):
    out = tmp_path / "rep"
    assert (
        main(
            [
                "report", "--in", str(sweep_dir / "sweep.csv"), "--out", str(out),
                "--use-mc", "--metrics", "r_customers", "--axes", "by_discount",
                "--margins", "0.3",
            ]
        )
        == 0
    )
    rows = _read_rows(out / "r_customers_by_discount_m0.3_mc.csv")
    assert rows[0] == ["d", "mean_r_customers_mc"]


# ---------------------------------------------------------------------------
# serialization round trip


def test_sweep_csv_exact_round_trip(tmp_path):
    grid = SweepGrid(
        u=GridAxis(0.0, 0.2, 0.2),  # includes u=0 to exercise missing MC fields
        pi=GridAxis(0.1, 0.3, 0.2),
        d=GridAxis(0.1, 0.3, 0.2),
        margins=(0.4,),
    )
    results, _ = run_sweep(grid, ModelConfig(customers_per_cell=100), parallelism=1)
    path = tmp_path / "sweep.csv"
    write_sweep_csv(path, results)
    assert read_sweep_csv(path) == results


def test_config_snapshot_round_trip():
    config, grid = config_from_dict(SMALL_CONFIG)
    snapshot = config_to_dict(config, grid)
    config2, grid2 = config_from_dict(json.loads(json.dumps(snapshot)))
    assert config2 == config
    assert grid2 == grid


# ---------------------------------------------------------------------------
# entry point


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kiosksim", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "kiosksim" in proc.stdout
