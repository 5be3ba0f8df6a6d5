import csv
import json

import numpy as np
import pytest

from popuc.cli import (
    EXIT_CHAIN,
    EXIT_FAIL,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_REFUSED,
    EXIT_VERBLUNSKY,
    main,
    to_json,
)
from popuc.reference import Example3


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def cplx(pair):
    return complex(pair[0], pair[1])


def test_generate_level_one(capsys):
    code, out, _ = run(capsys, "generate", "--n", "1", "--c", "1.0", "--d", "0.5")
    assert code == EXIT_OK
    doc = json.loads(out)
    coeffs = [cplx(v) for v in doc["R"]["values"][1]]
    assert coeffs == [1 - 1j, 1 + 1j]


def test_generate_example1_directory(tmp_path, capsys):
    target = tmp_path / "ex1"
    target.mkdir()
    code, _, _ = run(capsys, "generate", "--example", "1", "--c", "0", "--d1", "0.25", "--n", "8", "--out", f"{target}/")
    assert code == EXIT_OK
    with open(target / "quadrature.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["j", "theta", "weight"]
    theta = np.array([float(r["theta"]) for r in rows])
    assert np.allclose(np.diff(theta), np.pi / 4, atol=1e-12)
    assert np.allclose([float(r["weight"]) for r in rows], 0.125, atol=1e-14)
    assert json.loads((target / "generate.json").read_text())["command"] == "generate"


def test_generate_example3_moments(capsys):
    code, out, _ = run(capsys, "generate", "--example", "3", "--lambda", "0.5", "--eta", "1", "--n", "12")
    assert code == EXIT_OK
    mu = json.loads(out)["moments"]["mu_hat"]
    ex = Example3(0.5, 1.0)
    start = mu["start_index"]
    for k, v in enumerate(mu["values"], start=start):
        assert abs(cplx(v) - ex.mu_hat(k)) < 1e-10


def test_generate_is_deterministic(capsys):
    args = ("generate", "--example", "3", "--lambda", "0.5", "--eta", "1", "--n", "6")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_generate_csv_format(capsys):
    code, out, _ = run(capsys, "generate", "--example", "1", "--c", "1", "--n", "4", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "j,theta,weight"
    assert len(out.splitlines()) == 5


def test_generate_chain_violation_and_bad_input(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "--n", "3", "--c", "0,0,0", "--d", "0.25,1.5,0.25")
    assert code == EXIT_CHAIN
    assert "chain" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "generate", "--input", str(bad), "--n", "3")[0] == EXIT_INPUT
    assert run(capsys, "generate", "--n", "0", "--c", "0", "--d", "0.25")[0] == EXIT_INPUT
    assert run(capsys, "bogus")[0] == EXIT_INPUT


def test_transform_applic1_zeros(capsys):
    code, out, _ = run(capsys, "transform", "applic1", "--alpha", "zeros", "--n", "20")
    assert code == EXIT_OK
    doc = json.loads(out)["alpha_hat"]
    vals = [v[0] if isinstance(v, list) else v for v in doc["values"]]
    assert np.allclose(vals, -1 / (np.arange(20) + 2), atol=1e-15)


def test_transform_opuc_to_dg1_real(tmp_path, capsys):
    src = tmp_path / "alpha.json"
    src.write_text(json.dumps([0.3, -0.2, 0.5, 0.1, -0.7]))
    code, out, _ = run(capsys, "transform", "opuc-to-dg1", "--alpha", str(src), "--rho0", "-1", "--n", "4")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert all(v == 0 for v in doc["c"]["values"])
    assert doc["report"]["round_trip_residual"] < 1e-12


def test_transform_t_family_example1(capsys):
    code, out, _ = run(capsys, "transform", "t-family", "--example", "1", "--t", "0.5", "--n", "5")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["c"]["values"][0] == -1.0
    assert np.allclose(doc["d"]["values"], [0.5, 0.25, 0.25, 0.25, 0.25])


def test_transform_exit_codes(capsys):
    assert run(capsys, "transform", "applic1", "--alpha", "[0.5, 1.2, 0.1]", "--n", "2")[0] == EXIT_VERBLUNSKY
    code, out, err = run(capsys, "transform", "applic2", "--alpha", "zeros", "--n", "5")
    assert code == EXIT_REFUSED
    report = json.loads(out)
    assert report["refused"] is True and report["verdict"] == "sppcs"
    assert "refused" in err
    assert run(capsys, "transform", "applic1", "--n", "3")[0] == EXIT_INPUT


def test_transform_applic2_example2(capsys):
    code, out, _ = run(capsys, "transform", "applic2", "--alpha", "example2", "--n", "20")
    assert code == EXIT_OK
    vals = json.loads(out)["alpha_tilde"]["values"]
    assert np.max(np.abs(np.array(vals, dtype=float))) < 1e-9


def test_transform_dg_directions(capsys):
    args = ("--example", "3", "--lambda", "0.5", "--eta", "1", "--n", "6")
    code, out, _ = run(capsys, "transform", "dg1-to-opuc", *args)
    assert code == EXIT_OK
    doc = json.loads(out)
    first = cplx(doc["alpha_hat"]["values"][0])
    assert abs(first - Example3(0.5, 1.0).alpha_hat(1)[0]) < 1e-13
    assert doc["report"]["linkage_residual"] < 1e-12
    code, out, _ = run(capsys, "transform", "dg2-tilde", *args[:-2], "--n", "6", "--d1", "0.2")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "transform", "dg-symmetric", "--alpha", "[0.2, -0.5, 0.1, 0.3]", "--n", "3")
    assert code == EXIT_OK
    assert json.loads(out)["d1"]["values"][0] == pytest.approx(0.6)


def test_verify_commands(capsys):
    code, out, err = run(capsys, "verify", "--example", "1", "--c", "1", "--n", "30")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["passed"] and max(ch["residual"] for ch in doc["checks"]) < 1e-11
    assert "pass" in err
    code, out, _ = run(capsys, "verify", "--example", "3", "--lambda", "-0.75", "--eta", "0", "--n", "50")
    assert code == EXIT_OK
    assert any("sppcs" in ch["detail"] for ch in json.loads(out)["checks"])
    assert run(capsys, "verify", "--n", "5")[0] == EXIT_INPUT


def test_verify_failure_exit(capsys):
    # a tolerance below rounding level forces a named failing check
    code, _, err = run(capsys, "verify", "--example", "3", "--lambda", "0.5", "--eta", "1", "--n", "20", "--tol", "1e-300")
    assert code == EXIT_FAIL
    assert "FAIL" in err
    assert run(capsys, "verify", "--example", "1", "--n", "10", "--tol", "0")[0] == EXIT_INPUT


def test_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("POPUC_TOL", "1e-6")
    _, out, _ = run(capsys, "transform", "applic1", "--alpha", "zeros", "--n", "3")
    assert json.loads(out)["tol"] == 1e-6
    _, out, _ = run(capsys, "transform", "applic1", "--alpha", "zeros", "--n", "3", "--tol", "1e-8")
    assert json.loads(out)["tol"] == 1e-8


def test_json_formatting():
    text = to_json({"a": 1.0, "b": [0.1, 1 + 2j], "c": 3})
    assert text.strip().startswith("{")
    doc = json.loads(text)
    assert doc == {"a": 1.0, "b": [0.1, [1.0, 2.0]], "c": 3}
    assert '"a": 1.0' in text or '"a":1.0' in text
    assert "0.10000000000000001" in text
