import io
import json
import subprocess
import sys

import pytest

from skewgr.cli import run_command


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--json")
    return code, json.loads(out)


WEYL = "@ring p=3 weights=1,1\nx1*x2 - x2*x1 - 1\n"


@pytest.fixture
def relfiles(tmp_path):
    weyl = tmp_path / "weyl.rel"
    weyl.write_text(WEYL)
    bigger = tmp_path / "bigger.rel"
    bigger.write_text(WEYL + "x1\n")
    square = tmp_path / "square.rel"
    square.write_text("@ring p=3 weights=1,1\nx1^2\n")
    single = tmp_path / "single.rel"
    single.write_text("@ring p=3 weights=1,1\nx1\n")
    return {"weyl": str(weyl), "bigger": str(bigger), "square": str(square), "single": str(single)}


def test_dc1_example():
    code, out, _ = run("inv", "dc1", "-p", "3", "--lambda", "1;0", "--lambda2", "0;0", "-k", "0")
    assert code == 0
    rec = json.loads(out)
    assert rec["k"] == 0 and rec["dc1"] == "2*t0/(t1^2)" and rec["separated"] is True


def test_commutator_example():
    assert run("ore", "commutator", "-p", "2", "--lambda", "0;0", "x", "t3")[:2] == (0, "t4\n")


def test_pthroot_example():
    assert run("field", "pthroot", "-p", "2", "t0^2/t1^2")[:2] == (0, "t0/t1\n")


def test_field_commands():
    assert run("field", "eval", "-p", "2", "(t0+t1)^2/t2")[1] == "(t0^2 + t1^2)/t2\n"
    assert run("field", "diff", "-p", "3", "-k", "1", "t0*t1^2")[1] == "2*t0*t1\n"
    assert run("field", "pthroot", "-p", "3", "t0")[:2] == (0, "none\n")
    code, doc = run_json("field", "decompose", "-p", "2", "t0^3 + t1^2")
    assert code == 0 and len(doc["terms"]) == 2


def test_ore_commands():
    assert run("ore", "mul", "-p", "3", "--lambda", "1,2;0", "x", "t0")[1] == "t0*x + t0 + t1\n"
    assert run("ore", "pow", "-p", "2", "--lambda", "1;0", "t0*x", "2")[1] == "t0^2*x^2 + (t0^2 + t0*t1)*x\n"
    code, doc = run_json("ore", "tword", "-p", "3", "--lambda", "1,2;0", "-k", "3")
    assert code == 0 and doc["value"] == "t3"
    assert run("ore", "pthroot", "-p", "3", "--lambda", "0", "t2^3")[1] == "t2\n"
    assert run("ore", "pthroot", "-p", "3", "--lambda", "0", "--strict", "x")[0] == 1


def test_inv_commands():
    code, doc = run_json("inv", "sweep", "-p", "2", "--lambda", ";1", "--lambda2", ";0", "-K", "5")
    assert code == 0 and [r["separated"] for r in doc] == [True] * 6
    code, doc = run_json("inv", "equiv", "-p", "3", "--lambda", "1;0", "--lambda2", ";0")
    assert doc == {"almost_equal": True, "witnesses": [0]}
    code, doc = run_json("inv", "c1", "-p", "3", "--lambda", "2;0", "--lambda2", "1;0", "-k", "0")
    assert doc["c1"] == "(2*t0 + t1)/(t0 + t1)"


def test_gr_commands(relfiles):
    assert run("gr", "dims", "--relations", relfiles["weyl"], "-D", "4")[1] == "1 2 3 4 5\n"
    code, doc = run_json("gr", "compute", "--relations", relfiles["weyl"], "-D", "3", "--basis")
    assert code == 0 and doc["degrees"][2]["basis"] == ["x1*x2 + 2*x2*x1"]
    code, doc = run_json("gr", "gencheck", "--relations", relfiles["weyl"], "-D", "3", "-k", "1")
    assert doc["generated"] == [True] * 4


def test_gr_compare(relfiles, tmp_path):
    code, doc = run_json("gr", "compare", "--relations", relfiles["weyl"], "--relations2", relfiles["bigger"], "-D", "3")
    assert code == 0 and doc["holds"] and doc["degrees"][1]["strict"]
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps({"certificate": [[{"left": "x1", "gen": 0, "right": "1"}]]}))
    code, doc = run_json(
        "gr", "compare", "--relations", relfiles["square"], "--relations2", relfiles["single"],
        "-D", "3", "--certificate", str(cert),
    )
    assert code == 0 and doc["excess"] == 0 and doc["degrees"][1]["strict"]
    code, doc = run_json("gr", "compare", "--relations", relfiles["single"], "--relations2", relfiles["square"], "-D", "2")
    assert code == 1 and doc["error"]["type"] == "domain"


def test_exit_codes():
    assert run("field", "eval", "-p", "3", "t0 t1")[0] == 2
    assert run("field", "eval", "-p", "4", "t0")[0] == 2
    assert run("field", "eval", "-p", "3", "t0/(t1-t1)")[0] == 1
    assert run("field", "pthroot", "-p", "3", "--strict", "t0")[0] == 1
    assert run("ore", "mul", "-p", "3", "--lambda", "1;", "x")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("gr", "dims", "--relations", "/nonexistent/file")[0] == 2


def test_json_errors_are_single_documents():
    code, doc = run_json("field", "eval", "-p", "3", "t0 t1")
    assert code == 2 and doc["error"]["type"] == "parse" and doc["error"]["column"] == 4
    code, doc = run_json("field", "eval", "-p", "3", "1/0")
    assert code == 1 and doc["error"]["type"] == "domain"


def test_human_and_json_agree():
    for argv in (
        ("field", "eval", "-p", "5", "t0/(t1+2) + 3"),
        ("ore", "mul", "-p", "3", "--lambda", "1;2", "x^2", "t1"),
    ):
        code, out, _ = run(*argv)
        assert json.loads(run(*argv, "--json")[1])["value"] == out.strip()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "skewgr", "ore", "commutator", "-p", "2", "--lambda", "0;0", "x", "t3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "t4\n"
