import io
import json

import pytest

from carlitzosc import cli
from carlitzosc.algebra import GF, Laurent, Poly, RatFunc
from carlitzosc.serialize import from_json, parse_scalar


def run(*argv):
    out = io.StringIO()
    rc = cli.main(list(argv), out=out)
    return rc, out.getvalue()


def run_json(*argv):
    rc, text = run(*argv, "--format", "json")
    return rc, json.loads(text)


def test_table_q2_rows():
    rc, text = run("table", "--p", "2", "--gamma", "1", "--imax", "2")
    assert rc == 0
    assert "D_0 = 1" in text and "L_0 = 1" in text
    assert "D_2 = x^8 + x^6 + x^5 + x^3" in text  # (x^4 + x)(x^2 + x)^2


def test_table_json_round_trips():
    rc, doc = run_json("table", "--p", "3", "--imax", "2")
    assert rc == 0
    assert set(doc) == {"config", "rows", "h", "Q"}
    F = GF(3)
    row = doc["rows"][2]
    x = Poly.x(F)
    assert from_json(row["D"], F) == (x**9 - x) * (x**3 - x) ** 3
    f = [from_json(c, F) for c in row["f"]]
    assert len(f) == 3 and all(isinstance(c, RatFunc) for c in f)
    assert doc["config"]["q"] == 3 and doc["config"]["ram_cap"] == 9


def test_verify_single_suite_and_flag_form():
    rc, text = run("verify", "basis", "--imax", "4")
    assert rc == 0 and "overall: pass" in text
    rc2, text2 = run("verify", "--suite", "basis", "--imax", "4")
    assert rc2 == 0 and text2 == text


def test_verify_interpolation_suite_example():
    rc, doc = run_json("verify", "prop2", "--imax", "5")
    assert rc == 0
    names = {c["name"]: c for c in doc["reports"][0]["checks"]}
    assert names["kappa_n = l_n, n < 512"]["passed"] == 512
    assert names["|c_nn| = 1"]["run"] == 32


def test_unknown_suite_is_usage_error(capsys):
    rc, _ = run("verify", "nonsense")
    assert rc == 2
    assert "unknown suite" in capsys.readouterr().err


def test_bad_config_exit_2():
    assert run("table", "--p", "4")[0] == 2
    assert run("table", "--imax", "-1")[0] == 2
    assert run("table", "--ram-cap", "3")[0] == 2
    assert run("table", "--bogus")[0] == 2
    assert run("table", "--gamma", "2", "--modulus", "1,0,1")[0] == 2


def test_exp_domain_error_names_inequality(capsys):
    rc, _ = run("exp", "--z", "x", "--prec", "16")
    assert rc == 2
    assert "|z| >= q^(-1/(q-1))" in capsys.readouterr().err


def test_exp_value_and_precision():
    rc, text = run("exp", "--z", "x^2", "--prec", "16")
    assert rc == 0 and text.startswith("e_C(x^2) = x^2*(1 + x")
    assert "O(x^(16))" in text
    rc, doc = run_json("exp", "--p", "3", "--z", "x", "--prec", "16")
    assert rc == 0 and doc["precision"] == 16
    v = from_json(doc["exp"], GF(3))
    assert isinstance(v, Laurent) and v.valuation() == 1 and v.precision() == 16


def test_exp_accepts_rational_argument():
    rc, doc = run_json("exp", "--p", "3", "--z", "x/(1+x)", "--prec", "12")
    assert rc == 0
    assert from_json(doc["exp"], GF(3)).valuation() == 1


def test_rho_zero():
    rc, text = run("rho", "--zeta", "0")
    assert rc == 0 and text.strip() == "rho(0) = 0"


def test_coherent_example():
    rc, text = run("coherent", "--lambda", "1", "--c0", "x", "--M", "6")
    assert rc == 0
    lines = text.splitlines()
    assert lines[1:7] == ["  c_0 = x"] + [f"  c_{n} = x^{2**n}" for n in range(1, 6)]
    assert "residual a-u - lambda u: 0" in text


def test_coherent_divergent_exit_2():
    rc, _ = run("coherent", "--lambda", "x^(-3)", "--c0", "x", "--M", "4")
    assert rc == 2


def test_wz_two_routes():
    rc, doc = run_json("wz", "--p", "3", "--z", "x+x^2", "--t", "x+1", "--M", "8", "--prec", "40")
    assert rc == 0 and doc["agree"] is True
    assert doc["certified_precision"] == "40"


def test_eval_f_values():
    rc, text = run("eval", "--t", "x", "--M", "3")
    assert rc == 0
    assert text.splitlines() == ["f_0(x) = x", "f_1(x) = 1", "f_2(x) = 0"]
    rc, text = run("eval", "--t", "x+1", "1", "x")
    assert "phi(x + 1) = 1" in text


def test_eval_rejects_non_polynomial_t():
    assert run("eval", "--t", "1/x")[0] == 2


def test_expand_h():
    rc, doc = run_json("expand-h", "9", "--p", "3")
    assert rc == 0
    assert doc["l"] == doc["kappa"] == 4
    assert doc["abs"][-1] == "1"


def test_json_values_reparse():
    rc, doc = run_json("wz", "--p", "2", "--z", "x^2", "--M", "3", "--prec", "20")
    F = GF(2)
    for c in doc["coeffs"]:
        v = from_json(c, F)
        assert from_json(json.loads(json.dumps(cli._json_value(v))), F) == v


def test_text_values_reparse():
    F = GF(3)
    rc, doc = run_json("exp", "--p", "3", "--z", "x", "--prec", "12")
    v = from_json(doc["exp"], F)
    assert parse_scalar(str(v), F) == v


def test_config_file(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 3, "imax": 2, "format": "json"}))
    monkeypatch.setenv("CARLITZ_DEFAULTS", str(cfg))
    rc, text = run("table")
    doc = json.loads(text)
    assert rc == 0 and doc["config"]["p"] == 3 and len(doc["rows"]) == 3
    rc, text = run("table", "--imax", "1", "--format", "text")
    assert rc == 0 and "D_1 = x^3 + 2*x" in text and "i = 2" not in text
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run("table")[0] == 2


def test_verify_deterministic():
    a = run("verify", "all", "--seed", "7", "--format", "json")
    b = run("verify", "all", "--seed", "7", "--format", "json")
    assert a == b and a[0] == 0


def test_timing_flag_adds_wall_time():
    rc, doc = run_json("verify", "coherent", "--timing")
    assert rc == 0 and "wall_time_s" in doc["reports"][0]
    rc, doc = run_json("verify", "coherent")
    assert "wall_time_s" not in doc["reports"][0]


@pytest.mark.parametrize("suite", ["basis", "orthonormal", "prop2"])
def test_corrupted_D2_fails(suite, corrupt_D2):
    rc, doc = run_json("verify", suite)
    assert rc == 1
    rep = doc["reports"][0]
    assert rep["status"] == "fail" and "first_counterexample" in rep
    json.dumps(rep["first_counterexample"])


def test_entry_point_subprocess():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "carlitzosc.cli", "rho", "--zeta", "0"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "rho(0) = 0"
