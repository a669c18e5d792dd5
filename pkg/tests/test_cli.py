"""CLI contract: exit codes, byte-identical reruns, manifests, config files."""

import json
from pathlib import Path

from gapscope.cli import main
from gapscope.claims import format_ledger
from gapscope.ledger import mutated_ledger


def run(args):
    return main(args)


def read(path: Path) -> bytes:
    return Path(path).read_bytes()


def test_gaps_small(tmp_path, capsys):
    out = tmp_path / "o"
    assert run(["gaps", "--limits", "10,100,1000", "--out", str(out)]) == 0
    table = (out / "max_gap_table.csv").read_text()
    assert "10,4,0.60" in table and "100,8,0.45" in table and "1000,20,0.43" in table
    summaries = json.loads((out / "gap_summaries.json").read_text())
    assert summaries[0] == {"x": 10, "count": 4, "max_gap": 4, "sum_gap": 9,
                            "sum_gap_sq": 25}
    assert (out / "manifest.json").exists()


def test_gaps_scientific_literals(tmp_path):
    out = tmp_path / "o"
    assert run(["gaps", "--limits", "1e2", "--out", str(out)]) == 0
    rows = (out / "max_gap_table.csv").read_text().splitlines()
    assert rows[1] == "100,8,0.45"


def test_gaps_large_guard(tmp_path):
    assert run(["gaps", "--limits", "1e12", "--out", str(tmp_path / "o")]) == 2


def test_gaps_stream_csv(tmp_path):
    out = tmp_path / "o"
    assert run(["gaps", "--limits", "50", "--stream-csv",
                "--stream-limit", "50", "--out", str(out)]) == 0
    lines = (out / "gaps.csv").read_text().splitlines()
    assert lines[0] == "p,next,gap"
    assert lines[1] == "2,3,1"
    assert lines[-1] == "47,53,6"  # straddling gap for limit 50


def test_usage_error_exit_1(tmp_path):
    assert run(["gaps", "--limits", "ten", "--out", str(tmp_path / "o")]) == 1
    assert run(["nonsense"]) == 1


def test_identity_command(tmp_path):
    out = tmp_path / "o"
    assert run(["identity", "--x", "50", "--k", "2",
                "--dump-factorizations", "--out", str(out)]) == 0
    rep = json.loads((out / "identity_report.json").read_text())
    assert rep["exact"] and rep["max_residual"] < 1e-9
    dump = json.loads((out / "factorizations.json").read_text())
    assert all(set(d) == {"j", "lengths", "classes", "weight"} for d in dump)


def test_verify_builtin_and_mutated(tmp_path, capsys):
    out = tmp_path / "v"
    assert run(["verify", "--out", str(out)]) == 0
    rep = json.loads((out / "verdicts.json").read_text())
    assert rep["claims"] >= 20 and not rep["failures"]

    bad = tmp_path / "mutated.txt"
    bad.write_text(format_ledger(mutated_ledger()), encoding="utf-8")
    assert run(["verify", "--ledger", str(bad), "--out", str(tmp_path / "v2")]) == 3
    printed = capsys.readouterr().out
    assert "FAIL" in printed and "sigma=" in printed


def test_optimize_nu_command(tmp_path, capsys):
    out = tmp_path / "o"
    assert run(["optimize-nu", "--res", "1/64", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "nu* = 1/4" in printed
    prof = json.loads((out / "nu_profile.json").read_text())
    assert prof["nu_star"] == "1/4"
    assert abs(prof["nu_star_float"] - 0.25) <= 0.005


def test_perron_command(tmp_path):
    out = tmp_path / "o"
    assert run(["perron", "--y", "9", "--tau", "3", "--T0", "200",
                "--factors", "unit:8", "--out", str(out)]) == 0
    rep = json.loads((out / "perron_report.json").read_text())
    assert rep["direct"] == 3
    assert rep["residual"] < 0.05


def test_largevalues_command(tmp_path):
    out = tmp_path / "o"
    assert run(["largevalues", "--experiments", "6", "--out", str(out)]) == 0
    rep = json.loads((out / "largevalues_report.json").read_text())
    assert rep["sandwich_ok"] and rep["montgomery_ok"]
    assert rep["cells"] and "ratios" in rep["cells"][0]


def test_idempotent_reports(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["gaps", "--limits", "10,1000", "--out", str(out)]) == 0
    for name in ("max_gap_table.csv", "gap_summaries.json"):
        assert read(a / name) == read(b / name)


def test_manifest_rerun_reproduces_outputs(tmp_path):
    a = tmp_path / "a"
    assert run(["gaps", "--limits", "10,100", "--out", str(a)]) == 0
    b = tmp_path / "b"
    assert run(["report", "--manifest", str(a / "manifest.json"),
                "--out", str(b)]) == 0
    for name in ("max_gap_table.csv", "gap_summaries.json"):
        assert read(a / name) == read(b / name)


def test_manifest_rerun_optimize(tmp_path):
    a = tmp_path / "a"
    assert run(["optimize-nu", "--res", "1/64", "--out", str(a)]) == 0
    b = tmp_path / "b"
    assert run(["report", "--manifest", str(a / "manifest.json"),
                "--out", str(b)]) == 0
    assert read(a / "nu_profile.json") == read(b / "nu_profile.json")


def test_config_file_and_env_threads(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("limits=10,100\n# comment\nstream-csv=false\n", encoding="utf-8")
    out = tmp_path / "o"
    monkeypatch.setenv("GAPSCOPE_THREADS", "2")
    assert run(["gaps", "--config", str(cfg), "--out", str(out)]) == 0
    rows = (out / "max_gap_table.csv").read_text().splitlines()
    assert rows[1:] == ["10,4,0.60", "100,8,0.45"]
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["options"]["threads"] == 2
