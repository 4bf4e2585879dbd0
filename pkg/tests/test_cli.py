import json
import subprocess
import sys

import pytest

from reglab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


def test_eisenstein_series(capsys):
    code, js, _ = run_json(capsys, "eisenstein", "--N", "5")
    assert code == 0
    assert js["result"]["E3a"]["coefficients"][:2] == ["1", "-9"]
    assert js["result"]["E3b"]["coefficients"][:3] == ["1", "3", "9"]
    assert js["config"]["prec"] == 60 and js["config"]["terms"] == 64


def test_eisenstein_family(capsys):
    code, js, _ = run_json(capsys, "eisenstein", "--j", "1", "--l", "5", "--N", "3")
    assert code == 0
    assert js["result"]["a"][:2] == ["1", "-12/5"]


def test_eisenstein_bad_j(capsys):
    code, _, err = run(capsys, "eisenstein", "--j", "0")
    assert code == 2 and "error" in err
    assert run(capsys, "eisenstein", "--j", "0", "--l", "5")[0] == 2


def test_regulator_l5(capsys):
    code, js, _ = run_json(capsys, "regulator", "--l", "5")
    assert code == 0
    r = js["result"]
    assert r["reg_value_15"] == "0.346139631939354"
    assert r["reg_value"].startswith("0.34613963193935")
    assert r["ext_dim"] == 1 and r["extrapolated"] is False
    assert js["flagged"] is False


def test_regulator_extrapolated_exit_code(capsys):
    code, js, err = run_json(capsys, "regulator", "--l", "11", "--prec", "30")
    assert code == 1
    assert js["result"]["extrapolated"] is True and js["flagged"] is True
    assert "extrapolated" in err
    assert run(capsys, "regulator", "--l", "11", "--prec", "30", "--quiet")[2] == ""


def test_regulator_bad_l(capsys):
    assert run(capsys, "regulator", "--l", "3")[0] == 2
    assert run(capsys, "regulator", "--l", "9")[0] == 2


def test_periods_both(capsys):
    code, js, _ = run_json(capsys, "periods", "--l", "7", "--method", "both")
    assert code == 0
    r = js["result"]
    assert float(r["max_relative_deviation"]) < 1e-9
    assert r["series"]["I"]["6"].startswith("0.055434986135108")
    assert set(r["quadrature"]["J"]) == {str(j) for j in range(1, 7)}
    assert "err_estimate" in r["series"] and "prec" in r["series"]


def test_classify(capsys):
    code, js, _ = run_json(capsys, "classify", "--family", "iii", "--l", "5")
    assert code == 0
    r = js["result"]
    assert (r["h20"], r["b2"], r["fiber_at_0"]) == (1, 22, "I15")
    assert r["fiber_at_inf"] == "IV"


def test_classify_custom_and_invalid(capsys):
    code, js, _ = run_json(capsys, "classify", "--family", "custom", "--g2", "3", "--g3", "1,-2", "--l", "5")
    assert code == 0 and js["result"]["fiber_at_0"] == "I5"
    code, _, err = run(capsys, "classify", "--family", "custom", "--g2", "0", "--g3", "0,1")
    assert code == 2 and "E3" in err
    assert run(capsys, "classify", "--family", "vi")[0] == 2


def test_gm_connection(capsys):
    code, js, _ = run_json(capsys, "gm-connection", "--g2", "0", "--g3", "0,-4")
    assert code == 0 and js["result"]["matches_closed_form"] is True
    assert js["result"]["basis"] == ["omega_1", "omega_1*"]
    code, js, _ = run_json(capsys, "gm-connection", "--f", "1; 0,1; -3; 0; 1")
    assert code == 0 and js["result"]["genus"] == 1
    assert run(capsys, "gm-connection", "--g2", "3")[0] == 2


def test_families_list(capsys):
    code, js, _ = run_json(capsys, "families", "list")
    assert code == 0
    assert [f["name"] for f in js["result"]["families"]][:5] == ["i", "ii", "iii", "iv", "v"]


def test_table_format(capsys):
    code, out, _ = run(capsys, "families", "list", "--format", "table")
    assert code == 0 and "families:" in out and "{" not in out


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "periods", "--l", "5", "--prec", "10")[0] == 2
    assert run(capsys, "periods", "--l", "5", "--terms", "4")[0] == 2
    assert run(capsys, "periods")[0] == 2


def test_global_flags_before_subcommand(capsys):
    code, js, _ = run_json(capsys, "--prec", "30", "eisenstein", "--N", "3")
    assert code == 0 and js["config"]["prec"] == 30


def test_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("REGLAB_PREC", "25")
    code, js, _ = run_json(capsys, "periods", "--l", "5")
    assert code == 0 and js["config"]["prec"] == 25
    # the flag wins over the environment
    _, js, _ = run_json(capsys, "periods", "--l", "5", "--prec", "40")
    assert js["config"]["prec"] == 40


def test_deterministic_bytes():
    cmd = [sys.executable, "-m", "reglab", "periods", "--l", "5", "--method", "both", "--prec", "30"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
