from __future__ import annotations

import json

import numpy as np
import pytest

from subdiag.algebra import AlgebraModel, Element, random_element
from subdiag.cli import main
from subdiag.serialize import read_element, write_element


@pytest.fixture
def matrix_file(tmp_path):
    path = tmp_path / "x.json"
    write_element(random_element(AlgebraModel.full_flag(3), "A", 0), path)
    return path


def test_det_identity(tmp_path, capsys):
    path = tmp_path / "one.json"
    write_element(Element.identity(AlgebraModel.torus(2, 1)), path)
    assert main(["det", str(path)]) == 0
    assert float(capsys.readouterr().out) == 1.0


def test_phi_and_norm(matrix_file, tmp_path, capsys):
    out = tmp_path / "d.json"
    assert main(["phi", str(matrix_file), "-o", str(out)]) == 0
    d = read_element(out)
    assert np.count_nonzero(d.matrix - np.diag(np.diagonal(d.matrix))) == 0
    assert main(["norm", str(matrix_file), "-p", "0.5", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["p"] == 0.5


@pytest.mark.parametrize("method", ["qr", "szego", "szego-proj", "inner-outer"])
def test_factor_matrix_methods(method, matrix_file, tmp_path):
    assert main(["factor", method, str(matrix_file), "--out-dir", str(tmp_path)]) == 0
    u, h = read_element(tmp_path / "u.json"), read_element(tmp_path / "h.json")
    x = read_element(matrix_file)
    assert np.allclose(u.matrix @ h.matrix, x.matrix, atol=1e-8)


def test_factor_riesz(matrix_file, tmp_path, capsys):
    code = main(["factor", "riesz", str(matrix_file), "--q", "2", "--r", "2", "--eps", "1e-3", "--out-dir", str(tmp_path), "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["bound_ok"]
    y, z = read_element(tmp_path / "y.json"), read_element(tmp_path / "z.json")
    assert np.allclose(y.matrix @ z.matrix, read_element(matrix_file).matrix, atol=1e-8)


def test_factor_wilson(tmp_path):
    m = AlgebraModel.torus(2, 2, 65)
    q = Element(m, {0: 2 * np.eye(2), 1: [[0.5, 0.1], [0, 0.3]]})
    path = tmp_path / "w.json"
    write_element(q.H @ q, path)
    assert main(["factor", "wilson", str(path), "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "h.json").exists()


def test_outer_test_exit_codes(tmp_path, capsys):
    path = tmp_path / "h.json"
    write_element(Element.identity(AlgebraModel.full_flag(2)), path)
    assert main(["outer-test", str(path), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["outer"] is True


def test_szego_formula(tmp_path, capsys):
    path = tmp_path / "w.json"
    write_element(Element(AlgebraModel.full_flag(2), np.diag([4.0, 1.0])), path)
    assert main(["szego-formula", str(path), "--starts", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["inf_estimate"] - 2.0) < 1e-6


def test_usage_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "matrix",\n  "n": }')
    assert main(["det", str(bad)]) == 2
    assert "bad.json:2:" in capsys.readouterr().err
    assert main(["det", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["norm", str(bad), "-p", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["factor", "riesz", str(bad), "--q", "2"])
    assert main(["verify", "--suite", "jensen", "--set-tol", "oops"]) == 2


def test_numerical_rejection_exits_1(tmp_path, capsys):
    path = tmp_path / "s.json"
    write_element(Element(AlgebraModel.full_flag(2), np.diag([1.0, 0.0])), path)
    assert main(["factor", "qr", str(path), "--out-dir", str(tmp_path)]) == 1
    assert "subdiag:" in capsys.readouterr().err


def test_verify_is_deterministic(tmp_path, capsys):
    args = ["verify", "--suite", "jensen", "--trials", "5", "--seed", "3", "--json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    report = json.loads(first)
    assert report["schema"] == "subdiag.suite-report/1"
    assert "runtime" not in report


def test_verify_failing_tolerance_exits_1(capsys):
    assert main(["verify", "--suite", "jensen", "--trials", "3", "--set-tol", "jensen.matrix=-1"]) == 1
