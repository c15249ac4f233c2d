"""Command-line interface behavior and exit codes."""

import json
from pathlib import Path

from floersplice.cli import main

DATA = Path(__file__).parent / "data"
TREFOIL = str(DATA / "trefoil.cfk")
MIRROR = str(DATA / "mirror_trefoil.cfk")
FIG8 = str(DATA / "figure_eight.cfk")
UNKNOT = str(DATA / "unknot.cfk")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", TREFOIL)
    assert code == 0
    assert "d_squared_zero: PASS" in out
    assert "tau=1" in out


def test_validate_failure(tmp_path, capsys):
    bad = tmp_path / "bad.cfk"
    bad.write_text("gen x 0\ngen y 0\nd x = y\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert "reduced: FAIL" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cfk"
    bad.write_text("jen x 0\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1
    assert "line 1" in err


def test_cfd_text(capsys):
    code, out, _ = run(capsys, "cfd", TREFOIL, "--framing", "2")
    assert code == 0
    assert "x0 --D12--> x2" in out
    assert "bounded=True" in out


def test_cfd_dot(capsys):
    code, out, _ = run(capsys, "cfd", TREFOIL, "--framing", "0", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_cfa_text(capsys):
    code, out, _ = run(capsys, "cfa", TREFOIL, "--framing", "2")
    assert code == 0
    assert "m2(x1, rho3) = kap1_1" in out


def test_splice_json(capsys):
    code, out, _ = run(capsys, "splice", TREFOIL, "3", TREFOIL, "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] is True
    assert payload["euler_abs"] == 5


def test_splice_text(capsys):
    code, out, _ = run(capsys, "splice", TREFOIL, "0", TREFOIL, "0")
    assert code == 0
    assert "L-space: False" in out
    assert "durable pair shortcut" in out


def test_survey(capsys):
    code, out, _ = run(capsys, "survey", TREFOIL, MIRROR,
                       "--range1", "1..3", "--range2=-3..-1")
    assert code == 0
    assert out.count("n1=") == 9


def test_survey_json(capsys):
    code, out, _ = run(capsys, "survey", TREFOIL, TREFOIL,
                       "--range1", "2..3", "--range2", "2..3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["rows"] == 4
    assert len(payload["rows"]) == 4


def test_durable(capsys):
    code, out, _ = run(capsys, "durable", FIG8, "--framing", "1")
    assert code == 0
    assert "durable: x = x4, D123(x) = kap2_1" in out


def test_durable_weak_only(capsys):
    code, out, _ = run(capsys, "durable", TREFOIL, "--framing", "5")
    assert code == 0
    assert "weak:" in out
    assert "durable: " not in out.replace("weakly durable", "")


def test_predict(capsys):
    code, out, _ = run(capsys, "predict", TREFOIL, "2", TREFOIL, "3")
    assert code == 0
    assert out.strip() == "True"
    code, out, _ = run(capsys, "predict", TREFOIL, "1", UNKNOT, "0")
    assert out.strip() == "out-of-scope"


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/path.cfk")
    assert code == 1
    assert "cannot read" in err


def test_bad_range(capsys):
    code, _, err = run(capsys, "survey", TREFOIL, TREFOIL,
                       "--range1", "3..1", "--range2", "0..1")
    assert code == 1
