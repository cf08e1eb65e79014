from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, List

import openpyxl
import pytest

from src.cli import UsageError, load_model, parse_grid, parse_n_grid
from src.cli.commands import resolve_sim_config
from src.cli.writers import sidecar_path
from src.engine import EXCEEDANCE_SCHEMA
from src.main import (
    EXIT_CAPACITY_ERROR,
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    build_parser,
    main,
)


def _read_table(path: Path) -> tuple[List[str], List[Dict[str, str]]]:
    lines = path.read_text(encoding="utf-8").splitlines()
    comments = [line for line in lines if line.startswith("#")]
    body = [line for line in lines if not line.startswith("#")]
    return comments, list(csv.DictReader(body))


def test_grid_forms():
    assert parse_grid("lin:0:1:3") == [0.0, 0.5, 1.0]
    assert parse_grid("log2:2:4") == [4.0, 8.0, 16.0]
    assert parse_grid("1, 2,,3") == [1.0, 2.0, 3.0]
    assert parse_n_grid("geom:10:1000:3") == [10, 100, 1000]
    assert parse_n_grid("100,100.2,1000") == [100, 1000]


@pytest.mark.parametrize("spec", ["", "lin:0:1", "geom:0:1:3", "log2:5:2", "abc", "lin:0:1:0", "1,inf"])
def test_grid_errors(spec):
    with pytest.raises(UsageError):
        parse_grid(spec)


def test_load_model_from_preset_and_file(tmp_path):
    assert load_model("chess").name == "chess"
    exact_file = tmp_path / "exact.json"
    exact_file.write_text(
        json.dumps({"denominator": 2, "support": [[0, "1/4"], [1, "1/2"], [2, "1/4"]], "name": "mine"})
    )
    model = load_model(str(exact_file))
    assert model.name == "mine"
    assert model.has_exact_weights
    float_file = tmp_path / "float.json"
    float_file.write_text(json.dumps({"denominator": 1, "support": [[0, 0.5], [1, 0.5]]}))
    assert not load_model(str(float_file)).has_exact_weights
    pairs_file = tmp_path / "pairs.json"
    pairs_file.write_text(json.dumps({"denominator": 1, "support_exact": [[0, [1, 2]], [1, [1, 2]]]}))
    assert load_model(str(pairs_file)).exact_weights() == [Fraction(1, 2), Fraction(1, 2)]
    preset_file = tmp_path / "preset.json"
    preset_file.write_text(json.dumps({"preset": "chess", "draw_probability": "1/3"}))
    assert load_model(str(preset_file)).name == "chess-d1/3"
    with pytest.raises(UsageError):
        load_model("no-such-model")


def test_exact_writes_table_and_sidecar(tmp_path, capsys):
    out = tmp_path / "exact.csv"
    code = main(["exact", "--model", "chess", "--n", "100,1000,10000", "--t=-1,0,1", "--out", str(out)])
    assert code == EXIT_OK
    comments, rows = _read_table(out)
    assert comments[0] == f"# schema: {EXCEEDANCE_SCHEMA}"
    assert comments[1].startswith("# manifest: ")
    manifest = json.loads(comments[1][len("# manifest: "):])
    assert manifest["subcommand"] == "exact"
    assert "started_at" not in manifest and "runtime" not in manifest
    assert len(rows) == 9
    assert [int(row["n"]) for row in rows[:3]] == [100, 100, 100]
    full = json.loads(sidecar_path(out).read_text())
    assert full["started_at"] is not None and full["wall_time"] >= 0
    assert full["runtime"]["out"] == str(out)
    assert "exact: 9 rows" in capsys.readouterr().out


def test_exact_output_ignores_workers(tmp_path):
    serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
    args = ["exact", "--model", "classical", "--n", "64,128", "--t", "0,1"]
    assert main(args + ["--out", str(serial)]) == EXIT_OK
    assert main(args + ["--workers", "2", "--out", str(parallel)]) == EXIT_OK
    assert serial.read_bytes() == parallel.read_bytes()


def test_bounds_table(tmp_path):
    out = tmp_path / "bounds.json"
    code = main(
        ["bounds", "--model", "classical", "--n", "100,1000", "--t=-1,0,1", "--out", str(out), "--format", "json"]
    )
    assert code == EXIT_OK
    document = json.loads(out.read_text())
    assert document["schema"] == "bounds_report/v1"
    assert len(document["rows"]) == 6
    for row in document["rows"]:
        assert row["combined_bound"] >= row["stein_bound"] - 1e-15
        assert row["ratio"] == pytest.approx(row["combined_bound"] / row["rate_envelope"])


def test_exit_code_for_bad_input(tmp_path):
    out = str(tmp_path / "x.csv")
    assert main(["exact", "--model", "chess", "--n", "lin:1:2", "--t", "0", "--out", out]) == EXIT_CONFIG_ERROR
    assert main(["exact", "--model", "chess", "--n", "3", "--t", "0", "--out", out]) == EXIT_CONFIG_ERROR
    lopsided = tmp_path / "lopsided.json"
    lopsided.write_text(json.dumps({"denominator": 1, "support": [[0, 0.3], [1, 0.7]]}))
    assert (
        main(["exact", "--model", str(lopsided), "--n", "10", "--t", "0", "--out", out])
        == EXIT_CONFIG_ERROR
    )


def test_exit_code_for_capacity(tmp_path, monkeypatch):
    monkeypatch.setenv("TOURNAMENT_ATOM_BUDGET", "100")
    code = main(["exact", "--model", "chess", "--n", "1000", "--t", "0", "--out", str(tmp_path / "x.csv")])
    assert code == EXIT_CAPACITY_ERROR


def test_exit_code_for_bad_environment_setting(tmp_path, monkeypatch):
    monkeypatch.setenv("TOURNAMENT_ATOM_BUDGET", "lots")
    code = main(["exact", "--model", "chess", "--n", "10", "--t", "0", "--out", str(tmp_path / "x.csv")])
    assert code == EXIT_CONFIG_ERROR


def test_resolve_sim_config_flags_override_file(tmp_path):
    config = tmp_path / "sim.json"
    config.write_text(
        json.dumps({"model": "classical", "n": 10, "t_grid": [0.0], "replicates": 50, "seed": 4})
    )
    args = build_parser().parse_args(
        ["simulate", "--config", str(config), "--n", "12", "--t=-1,1", "--out", "unused"]
    )
    cfg = resolve_sim_config(args)
    assert cfg.model.name == "classical"
    assert cfg.n == 12
    assert cfg.t_grid == [-1.0, 1.0]
    assert cfg.replicates == 50 and cfg.seed == 4


def test_simulate_is_byte_identical_across_runs_and_workers(tmp_path):
    args = ["simulate", "--model", "chess", "--n", "20", "--t=-1,0,1", "--j", "1", "--replicates", "300", "--seed", "5"]
    assert main(args + ["--out", str(tmp_path / "a")]) == EXIT_OK
    assert main(args + ["--out", str(tmp_path / "b")]) == EXIT_OK
    assert main(args + ["--workers", "2", "--out", str(tmp_path / "c")]) == EXIT_OK
    for suffix in (".json", ".csv", ".order_stats.csv"):
        first = (tmp_path / f"a{suffix}").read_bytes()
        assert first == (tmp_path / f"b{suffix}").read_bytes()
        assert first == (tmp_path / f"c{suffix}").read_bytes()
    report = json.loads((tmp_path / "a.json").read_text())
    assert report["replicates"] == 300
    assert report["manifest"]["config"]["seed"] == 5
    assert (tmp_path / "a.json.manifest.json").is_file()


def test_simulate_records_the_batch_size(tmp_path, monkeypatch):
    args = ["simulate", "--model", "chess", "--n", "12", "--t", "0", "--replicates", "50", "--seed", "3"]
    monkeypatch.setenv("TOURNAMENT_BATCH_SIZE", "16")
    assert main(args + ["--out", str(tmp_path / "env")]) == EXIT_OK
    assert main(args + ["--batch-size", "7", "--out", str(tmp_path / "flag")]) == EXIT_OK
    from_env = json.loads((tmp_path / "env.json").read_text())
    from_flag = json.loads((tmp_path / "flag.json").read_text())
    assert from_env["batch_size"] == 16
    assert from_env["manifest"]["config"]["batch_size"] == 16
    assert from_flag["manifest"]["config"]["batch_size"] == 7
    monkeypatch.setenv("TOURNAMENT_BATCH_SIZE", "0")
    assert main(args + ["--out", str(tmp_path / "zero")]) == EXIT_CONFIG_ERROR


def test_simulate_with_exact_reference(tmp_path):
    out = tmp_path / "sim"
    code = main(
        ["simulate", "--model", "classical", "--n", "30", "--t", "0", "--replicates", "40", "--with-exact", "--out", str(out)]
    )
    assert code == EXIT_OK
    histogram = json.loads((tmp_path / "sim.json").read_text())["w_histograms"][0]
    assert histogram["lambda_exact"] is not None
    assert histogram["tv_poisson_exact"] is not None


def test_simulate_rejects_bad_config(tmp_path):
    code = main(["simulate", "--model", "chess", "--n", "5", "--t", "0", "--j", "5", "--replicates", "10", "--out", str(tmp_path / "s")])
    assert code == EXIT_CONFIG_ERROR


def test_verify_skips_checks_over_budget(tmp_path, capsys):
    out = tmp_path / "verify.json"
    assert main(["verify", "--budget", "1000", "--out", str(out)]) == EXIT_OK
    printed = capsys.readouterr().out
    assert "SKIPPED" in printed
    assert "All checks passed." in printed
    report = json.loads(out.read_text())
    assert report["schema"] == "verification_report/v1"
    by_name = {check["name"]: check for check in report["checks"]}
    assert by_name["marginals/chess/n=6"]["skipped"]
    assert by_name["pair_covariance/chess/n=4"]["passed"]
    assert by_name["nlod_nuod/classical/n=4"]["passed"]


def test_verify_detects_a_broken_engine(monkeypatch, capsys):
    import src.cli.verify as verify

    real = verify.pair_covariance

    def tampered(model, n, threshold, config=None):
        cov, decomposition = real(model, n, threshold, config)
        return -cov + 1e-3, decomposition

    monkeypatch.setattr(verify, "pair_covariance", tampered)
    assert main(["verify", "--budget", "1000"]) == EXIT_VERIFICATION_FAILED
    assert "FAILED: pair_covariance/classical/n=4" in capsys.readouterr().out


def test_limits_table(tmp_path, capsys):
    assert main(["limits", "--n", "100,1000000", "--t", "0"]) == EXIT_OK
    assert "0.3295" in capsys.readouterr().out

    out = tmp_path / "limits.xlsx"
    assert main(["limits", "--n", "100,1000", "--t=-1,0", "--j", "1", "--out", str(out), "--format", "xlsx"]) == EXIT_OK
    workbook = openpyxl.load_workbook(out)
    data = workbook["data"]
    header = [cell.value for cell in data[1]]
    assert header[-2:] == ["limit_cdf_j0", "limit_cdf_j1"]
    assert data.max_row == 5
    provenance = {row[0]: row[1] for row in workbook["manifest"].iter_rows(min_row=2, values_only=True)}
    assert provenance["schema"] == "limits_table/v1"
    assert provenance["subcommand"] == "limits"


def test_limits_small_envelope_is_blank(tmp_path):
    out = tmp_path / "limits.csv"
    assert main(["limits", "--n", "10", "--t", "0", "--out", str(out)]) == EXIT_OK
    _, rows = _read_table(out)
    assert rows[0]["rate_envelope"] == ""


def test_limits_far_below_the_support(capsys):
    assert main(["limits", "--n", "100", "--t=-800"]) == EXIT_OK
    assert "inf" in capsys.readouterr().out
