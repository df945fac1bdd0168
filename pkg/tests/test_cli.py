"""Command line behavior: exit codes, deterministic JSON, field overrides."""

import json

import pytest

from fanosing.cli import main
from fanosing.corpus import cone, fermat
from fanosing.forms import format_form
from fanosing.linalg import QQ, parse_field


@pytest.fixture
def cone_file(tmp_path):
    X = cone(fermat(2, 3, QQ))
    path = tmp_path / "cone.form"
    path.write_text(format_form(X.P))
    return str(path)


@pytest.fixture
def fermat7_file(tmp_path):
    X = fermat(3, 3, parse_field("Fp:7"))
    path = tmp_path / "fermat7.form"
    path.write_text(format_form(X.P))
    return str(path)


def test_analyze_success(cone_file, capsys):
    code = main(["analyze", cone_file, "--line", "1,-1,0,0;0,0,0,1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "singular point [0:0:0:1]" in out
    assert "multiplicity 2" in out


def test_analyze_line_off_surface(cone_file, capsys):
    code = main(["analyze", cone_file, "--line", "1,0,0,0;0,1,0,0"])
    assert code == 2
    assert "not contained" in capsys.readouterr().out


def test_analyze_json_deterministic(cone_file, tmp_path, capsys):
    j1 = tmp_path / "a.json"
    j2 = tmp_path / "b.json"
    assert main(["analyze", cone_file, "--line", "1,-1,0,0;0,0,0,1",
                 "--json", str(j1)]) == 0
    assert main(["analyze", cone_file, "--line", "1,-1,0,0;0,0,0,1",
                 "--json", str(j2)]) == 0
    assert j1.read_bytes() == j2.read_bytes()
    data = json.loads(j1.read_text())
    assert data["exit"] == 0
    assert data["normal_form"]["s"] == [1]
    assert data["certificate"]["points"][0]["ambient"] == [0, 0, 0, 1]
    assert data["certificate"]["points"][0]["multiplicity"] == 2
    # the input is echoed for replay
    assert data["input"]["line"] == "1,-1,0,0;0,0,0,1"
    assert "field Q" in data["input"]["form"]


def test_lines_enumeration(fermat7_file, capsys):
    code = main(["lines", fermat7_file])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("27 line(s)")
    assert len(out.strip().splitlines()) == 28


def test_lines_budget_exceeded(fermat7_file, capsys):
    assert main(["lines", fermat7_file, "--budget", "100"]) == 4
    assert "2850" in capsys.readouterr().out


def test_lines_through_off_point(fermat7_file, capsys):
    code = main(["lines", fermat7_file, "--through", "[1:0:0:0]"])
    assert code == 2


def test_conjecture_with_field_reduction(cone_file, capsys):
    code = main(["conjecture", cone_file, "--field", "Fp:7"])
    out = capsys.readouterr().out
    assert code == 0
    assert "lines: 9" in out
    assert "[0:0:0:1]" in out
    assert "exceptions: 0" in out


def test_conjecture_refuses_small_characteristic(cone_file, capsys):
    assert main(["conjecture", cone_file, "--field", "Fp:3"]) == 5
    assert "characteristic" in capsys.readouterr().out


def test_field_override_rejects_fp_to_q(fermat7_file, capsys):
    assert main(["analyze", fermat7_file, "--line", "1,0,0,3;0,1,3,0",
                 "--field", "Q"]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_pencil_nf_roundtrip(tmp_path, capsys):
    pfile = tmp_path / "pencil.txt"
    pfile.write_text("field Q\nm 3\nelement 1,0,0;0,-1,0\n")
    code = main(["pencil-nf", str(pfile)])
    out = capsys.readouterr().out
    assert code == 0
    assert "block sizes: (2, 1)" in out


def test_pencil_nf_decomposable(tmp_path, capsys):
    pfile = tmp_path / "bad.txt"
    pfile.write_text("field Q\nm 2\nelement 1,0;0,0\n")
    assert main(["pencil-nf", str(pfile)]) == 3


def test_ruled_with_twist(capsys):
    code = main(["ruled", "--k", "2", "--d1", "1,3", "--d2", "2,5",
                 "--twist-p", "3", "--twist-l", "0,2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "D1.D2 = 7" in out
    assert "cone bound: 4" in out
    assert "twist class: (3, 7)" in out


def test_gen_fermat_parses_back(capsys):
    code = main(["gen", "fermat", "--n", "3", "--d", "3", "--field", "Fp:7"])
    out = capsys.readouterr().out
    assert code == 0
    from fanosing.forms import parse_form
    P = parse_form(out)
    assert P.degree == 3 and P.nvars == 4 and P.field.p == 7


def test_gen_random_with_line_json(tmp_path, capsys):
    j = tmp_path / "g.json"
    code = main(["gen", "random-with-line", "--n", "4", "--d", "3",
                 "--p", "11", "--seed", "5", "--json", str(j)])
    assert code == 0
    data = json.loads(j.read_text())
    assert data["line"] == "1,0,0,0,0;0,1,0,0,0"
    assert data["form"].startswith("field Fp 11")


def test_usage_error_is_exit_one(capsys):
    assert main(["analyze"]) == 1
    assert main(["lines", "/nonexistent/path.form"]) == 1
