import json
import subprocess
import sys

import pytest

from pdgcalc import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stosic_example(capsys):
    code, out, _ = run(["--suite", "stosic", "--a", "1", "--b", "1", "--n", "1", "--p", "5"], capsys)
    assert code == 0
    assert "EF1₁ = FE1₁ + [1]" in out


def test_symcalc_example(capsys):
    code, out, _ = run(["--suite", "symcalc", "--p", "3", "--max-size", "6"], capsys)
    assert code == 0
    assert "0 fail" in out


def test_matrix_too_big_fails(capsys):
    code, out, _ = run(["--suite", "matrix", "--n", "4", "--p", "3", "--format", "json"], capsys)
    assert code == 1
    rep = json.loads(out)
    (res,) = rep["results"]
    assert res["status"] == "fail"
    assert res["counterexample"] == {"finding": "differential-not-p-nilpotent"}


def test_fail_always_has_counterexample(capsys):
    code, out, _ = run(["--suite", "matrix", "--p", "3,5", "--n", "4", "--format", "json"], capsys)
    rep = json.loads(out)
    for r in rep["results"]:
        assert r["status"] != "fail" or r["counterexample"] is not None


@pytest.mark.parametrize("argv", [
    ["--suite", "symcalc", "--p", "4"],
    ["--suite", "nosuch"],
    ["--suite", "cohomology", "--p", "3", "--cutoff", "3"],
    ["--suite", "symcalc", "--jobs", "0"],
    ["--bogus-flag"],
])
def test_bad_config_exits_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("# small run\nsuite = matrix\np = 3\nn = 4  # too big\nformat = json\n")
    code, out, _ = run(["--config", str(cfgfile)], capsys)
    assert code == 1
    code, out, _ = run(["--config", str(cfgfile), "--n", "2"], capsys)
    assert code == 0
    assert json.loads(out)["config_echo"]["n"] == 2


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("suite matrix\n")
    assert run(["--config", str(bad)], capsys)[0] == 2
    unknown = tmp_path / "unknown.cfg"
    unknown.write_text("colour = blue\n")
    assert run(["--config", str(unknown)], capsys)[0] == 2
    assert run(["--config", str(tmp_path / "missing.cfg")], capsys)[0] == 2


def test_report_files_and_schema(tmp_path, capsys):
    out_dir = tmp_path / "rep"
    code, _, _ = run(["--suite", "nilhecke,matrix", "--p", "3", "--out", str(out_dir)], capsys)
    assert code == 0
    rep = json.loads((out_dir / "report.json").read_text())
    assert set(rep) == {"schema_version", "config_echo", "results", "summary"}
    assert rep["summary"]["total"] == len(rep["results"]) == rep["summary"]["pass"]
    assert all("wall_time" not in r for r in rep["results"])
    keys = [(r["suite"], json.dumps(r["params"], sort_keys=True)) for r in rep["results"]]
    assert keys == sorted(keys)
    assert (out_dir / "report.md").read_text().startswith("# Verification report")


def test_timing_flag_records_wall_time(capsys):
    _, out, _ = run(["--suite", "matrix", "--p", "3", "--format", "json", "--timing"], capsys)
    assert all("wall_time" in r for r in json.loads(out)["results"])


def test_byte_identical_runs(tmp_path, capsys):
    argv = ["--suite", "grasmod,fcfilt-ee,cohomology", "--p", "3", "--max-size", "2"]
    run(argv + ["--out", str(tmp_path / "one")], capsys)
    run(argv + ["--out", str(tmp_path / "two")], capsys)
    assert (tmp_path / "one" / "report.json").read_bytes() == (tmp_path / "two" / "report.json").read_bytes()


def test_jobs_do_not_change_results(capsys):
    argv = ["--suite", "nilhecke,matrix", "--p", "3,5", "--format", "json"]
    one = json.loads(run(argv, capsys)[1])
    two = json.loads(run(argv + ["--jobs", "2"], capsys)[1])
    assert one == two


def test_undetermined_fe_side(capsys):
    code, out, _ = run(["--suite", "stosic", "--a", "1", "--b", "2", "--n", "0", "--p", "3",
                        "--format", "json"], capsys)
    rep = json.loads(out)
    assert {r["status"] for r in rep["results"]} == {"undetermined"}
    assert code == 0


def test_seedless_env(monkeypatch, capsys):
    monkeypatch.setenv("PDG_VERIFIER_SEEDLESS", "1")
    _, out, _ = run(["--suite", "matrix", "--p", "3", "--format", "json"], capsys)
    assert json.loads(out)["config_echo"]["seedless"] is True


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "pdgcalc.cli", "--suite", "matrix", "--n", "4",
                           "--p", "3"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "differential-not-p-nilpotent" in proc.stdout
