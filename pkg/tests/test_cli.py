import json
import subprocess
import sys

import pytest

from qaffine.cli import main
from qaffine.scalars import parse_scalar


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--max-m", "12", "--json")
    records = json_lines(out)
    assert code == 0
    assert records[-1]["summary"]["failed"] == 0
    for rec in records[:-1]:
        assert set(rec) >= {"check", "params", "ok"}


def test_verify_relations(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--max-m", "2", "--max-n", "2")
    assert code == 0
    assert out.strip().endswith("(relations)")


def test_verify_determinant_reports(capsys):
    code, out, _ = run(capsys, "verify", "determinant", "--max-m", "2", "--json")
    records = json_lines(out)
    dets = [r for r in records if r.get("check") == "determinant"]
    assert {(r["params"]["m"], r["params"]["n"], r["params"]["l"]) for r in dets} == {(1, 1, 0), (2, 1, 0), (2, 2, 0), (2, 2, 1)}
    for r in dets:
        assert r["subchecks"]["xy_factorization"] and r["subchecks"]["q_power"]
    # the level-one step carries an extra [2]! so the run as a whole reports failure
    bad = [r for r in dets if not r["ok"]]
    assert [(r["params"]["l"]) for r in bad] == [1]
    assert code == 1


def test_verify_threads(capsys, monkeypatch):
    monkeypatch.setenv("QAFFINE_THREADS", "2")
    code, out, _ = run(capsys, "verify", "lemmas", "--max-m", "3")
    assert code == 0


def test_basis_pass(capsys):
    code, out, _ = run(capsys, "basis", "2", "1", "--q", "2", "--x", "3", "--y", "5", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["criterion_pass"] and rep["rank"] == 6


def test_basis_on_hyperplane(capsys):
    code, out, _ = run(capsys, "basis", "1", "1", "--q", "2", "--x", "1", "--y", "1/4", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["failing_j"] == [0] and rep["rank"] < 4


def test_basis_dual_printed_point(capsys):
    code, out, err = run(capsys, "basis", "1", "1", "--dual", "--q", "2", "--x", "1", "--y", "4")
    assert "criterion: fail j=[0]" in out
    # Lambda stays independent here, so criterion and rank disagree
    assert "rank: 4 / 4" in out
    assert "disagree" in err
    assert code == 1


def test_swap_legs(capsys):
    # swapping legs moves the degenerate point to x = y q^-2
    code, out, _ = run(capsys, "basis", "1", "1", "--q", "2", "--x", "1/4", "--y", "1", "--swap-legs", "--json")
    assert json.loads(out)["rank"] < 4


def test_show_alpha(capsys):
    code, out, _ = run(capsys, "show", "alpha", "1", "1", "0")
    assert code == 0 and out.strip() == "q^1 + q^-1"
    assert parse_scalar(out.strip()) == parse_scalar("q^-1 + q^1")


def test_show_matrix(capsys):
    code, out, _ = run(capsys, "show", "matrix", "1", "1", "1", "--norm", "unit", "--json")
    rows = json.loads(out)["rows"]
    assert rows == [["y^1*q^-1", "x^1*q^-2"], ["q^-1", "1"]]


def test_show_omega_degenerate(capsys):
    code, out, err = run(capsys, "show", "omega", "1", "1", "1", "--json")
    data = json.loads(out)
    assert data["degenerate"] and data["value"]["coeffs"] == []
    assert "warning" in err


def test_show_det(capsys):
    code, out, _ = run(capsys, "show", "det", "1", "1", "1")
    assert parse_scalar(out.strip()) == parse_scalar("y^1*q^-1 - x^1*q^-3")


def test_errors(capsys):
    assert run(capsys, "show", "alpha", "1", "1")[0] == 2
    assert run(capsys, "basis", "1", "1", "--q", "1")[0] == 2
    assert run(capsys, "basis", "1", "2")[0] == 2
    with pytest.raises(SystemExit):
        main(["basis", "1", "1", "--q", "abc"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qaffine", "show", "alpha", "2", "2", "1"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.strip() == "q^1 + q^-1"
