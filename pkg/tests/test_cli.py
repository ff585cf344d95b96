import csv
import io
import json
import math
import subprocess
import sys

import pytest

from riesz_sharp.cli import fmt_float, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_constant_regime1(capsys):
    code, out, _ = run_cli(capsys, "constant", "--p", "1.5", "--s", "1.5")
    rep = json.loads(out)
    assert code == 0
    res = rep["result"]
    assert res["regime"] == "sharp" and res["case"] == 1
    assert res["value"] == pytest.approx(2 ** (1 / 3) * math.sin(math.pi / 3), abs=1e-10)
    assert rep["elapsed_ms"] is None and rep["seed"] == 20240917


def test_constant_conjectured_flag(capsys):
    _, out, _ = run_cli(capsys, "constant", "--p", "4", "--s", "2", "--no-check")
    res = json.loads(out)["result"]
    assert res["regime"] == "conjectured" and "sharp_constant" not in res


def test_float_format_round_trips():
    for x in (0.1, 1 / 3, 1e-300, 2.0**0.5):
        assert float(fmt_float(x)) == x


@pytest.mark.parametrize("argv", [
    ["constant", "--p", "1.0", "--s", "2"],
    ["constant", "--p", "1.5"],
    ["verify", "--p", "1.5", "--s", "1.5"],
    ["verify", "--ineq", "eq3", "--p", "3", "--s", "3"],
    ["sweep", "--p-min", "1.1"],
    ["bogus"],
    ["constant", "--p", "abc", "--s", "1"],
    ["constant", "--p", "1.5", "--s", "1.5", "--format", "csv"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2 and out == "" and err


def test_verify_in_regime_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--ineq", "eq3", "--p", "1.5", "--s", "1.5", "--grid", "300x300")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["passed"] and rep["max_gap"] <= 1e-9


def test_verify_out_of_regime_is_advisory(capsys):
    code, out, err = run_cli(capsys, "verify", "--ineq", "eq3", "--p", "1.5", "--s", "1.2", "--grid", "200x200")
    rep = json.loads(out)
    assert code == 0 and "out-of-regime" in err
    assert rep["result"]["advisory"] and not rep["result"]["passed"]


@pytest.mark.parametrize("ineq,p", [("eq4", "9"), ("sec5", "1.5"), ("sec6", "9"), ("r1", "1.5"), ("r1", "10")])
def test_verify_suites(capsys, ineq, p):
    code, out, _ = run_cli(capsys, "verify", "--ineq", ineq, "--p", p, "--grid", "400" if ineq != "eq4" else "300x300")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["passed"]


def test_reports_are_byte_identical(capsys):
    argv = ["verify", "--ineq", "eq4", "--p", "10", "--grid", "200x200"]
    a = run_cli(capsys, *argv)[1]
    b = run_cli(capsys, *argv)[1]
    assert a == b


def test_timing_flag(capsys):
    _, out, err = run_cli(capsys, "constant", "--p", "1.5", "--s", "1.5", "--no-check", "--timing")
    assert json.loads(out)["elapsed_ms"] >= 0 and "elapsed" in err


def test_sweep_csv(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--p-min", "1.1", "--p-max", "2.0", "--p-step", "0.1",
                           "--s-equals-p", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 10
    assert all(r["regime"] == "sharp" for r in rows)
    assert float(rows[0]["p"]) == 1.1 and float(rows[-1]["p"]) == 2.0


def test_sweep_empty_lattice_writes_header(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--p-min", "2", "--p-max", "1.5", "--s-equals-p", "--format", "csv")
    assert code == 0 and out.strip() == "p,s,value,case,t_tilde,regime"


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "constant", "--p", "1.2", "--s", "1.05", "--no-check", "--format", "text")
    assert code == 0 and "result.case: 3" in out


def test_ratio_monte_carlo(capsys):
    code, out, _ = run_cli(capsys, "ratio", "--p", "1.5", "--s", "1.5", "--trials", "50", "--grid", "1024")
    res = json.loads(out)["result"]
    assert code == 0 and res["passed"] and res["max_ratio"] <= res["sharp_constant"]


def test_ratio_family(capsys):
    code, out, _ = run_cli(capsys, "ratio", "--p", "2", "--s", "2", "--family", "--gamma", "1.5", "--grid", "4096")
    res = json.loads(out)["result"]
    assert code == 0 and res["relative_deviation"] < 1e-12


def test_psh(capsys):
    code, out, _ = run_cli(capsys, "psh-test", "--which", "phi2", "--p", "9", "--trials", "200")
    assert code == 0 and json.loads(out)["result"]["passed"]
    code, _, _ = run_cli(capsys, "psh-test", "--which", "phi1", "--p", "9")
    assert code == 2


def test_config_file_matches_flags(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# scan settings\nineq = eq3\np = 1.5\ns = 3\ngrid = 200x200\n")
    a = run_cli(capsys, "verify", "--config", str(cfg))[1]
    b = run_cli(capsys, "verify", "--ineq", "eq3", "--p", "1.5", "--s", "3", "--grid", "200x200")[1]
    assert a == b and json.loads(a)["result"]["passed"]


def test_config_rejects_unknown_keys(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run_cli(capsys, "constant", "--config", str(cfg))[0] == 2


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run_cli(capsys, "constant", "--p", "10", "--s", "2", "--no-check", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["result"]["regime"] == "sharp"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "riesz_sharp.cli", "constant", "--p", "3", "--s", "0.5", "--no-check"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["value"] == 1.0


def test_violation_exits_one(capsys):
    # margins are roundoff-sized negatives; an absurdly tight tolerance flags them
    code, out, err = run_cli(capsys, "psh-test", "--which", "phi1", "--p", "1.5", "--trials", "200",
                             "--tolerance", "1e-30")
    assert code == 1 and not json.loads(out)["result"]["passed"]
