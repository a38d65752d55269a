import json
import subprocess
import sys

import pytest

from diffres.cli import main
from _systems import EX0, EX2, EX2N, LINEAR, NOT_ESSENTIAL, PIPELINE


@pytest.fixture
def run(tmp_path, capsys):
    def _run(argv, text=None):
        if text is not None:
            f = tmp_path / "system.txt"
            f.write_text(text)
            argv = argv + [str(f)]
        code = main(argv)
        out, err = capsys.readouterr()
        return code, out, err
    return _run


def test_essential(run):
    assert run(["essential"], EX2)[0] == 0
    code, out, _ = run(["essential", "--json"], NOT_ESSENTIAL)
    assert code == 3 and json.loads(out)["essential"] is False


def test_super_essential(run):
    code, out, _ = run(["super-essential"], EX2)
    assert code == 0 and out.strip() == "{0,1}"
    code, out, _ = run(["super-essential", "--exact", "--json"], PIPELINE)
    assert json.loads(out) == {"T": [0, 1, 2]}


def test_super_essential_non_essential(run):
    assert run(["super-essential"], NOT_ESSENTIAL)[0] == 3


def test_jacobi(run):
    code, out, _ = run(["jacobi"], EX2N)
    assert code == 0 and "J = (1, 2, -inf)" in out
    code, out, _ = run(["jacobi", "--json"], EX2N)
    assert json.loads(out)["J"] == [1, 2, None]


def test_bounds(run):
    code, out, _ = run(["bounds", "--json"], LINEAR)
    d = json.loads(out)
    assert (d["J"], d["J_tilde"], d["J_under"], d["final"]) == ([2, 1, 1], [0, 0, 0], [1, 0, 0], [1, 0, 0])
    code, out, _ = run(["bounds"], EX2N)
    assert "J_T = (0, 1, -inf)" in out and "T = (0, 1)" in out


@pytest.mark.parametrize("engine", ["ansatz", "reduction"])
def test_resultant_text(run, engine):
    code, out, _ = run(["resultant", "--engine", engine], EX2)
    assert code == 0 and out == "u00@1*u11 - u01@1*u10\n"


def test_resultant_json_engines_identical(run):
    a = run(["resultant", "--json", "--engine", "ansatz"], EX0)[1]
    b = run(["resultant", "--json", "--engine", "reduction"], EX0)[1]
    assert a == b
    d = json.loads(a)
    assert d["orders"] == [1, 0] and d["degree"] == 4 and d["verification"]["passed"]


def test_resultant_engine_from_document(run):
    doc = json.dumps({"system": EX2, "main": ["y1", "y2"], "options": {"engine": "reduction"}})
    assert run(["resultant", "--no-multihomog"], doc)[1] == "u00@1*u11 - u01@1*u10\n"


def test_parse_error_exit_code(run):
    code, _, err = run(["resultant"], "u00 + * y1 ; u10 + u11*y1")
    assert code == 2 and "line 1" in err


def test_non_essential_resultant(run):
    assert run(["resultant"], NOT_ESSENTIAL)[0] == 3


def test_verify(run, tmp_path):
    good = run(["resultant", "--json"], EX2)[1]
    cert = tmp_path / "cert.json"
    cert.write_text(good)
    code, out, _ = run(["verify", "--certificate", str(cert)], EX2)
    assert code == 0 and out.strip() == "passed"
    bad = json.loads(good)
    bad["resultant"][0][0] = -bad["resultant"][0][0]
    cert.write_text(json.dumps(bad))
    code, out, _ = run(["verify", "--certificate", str(cert)], EX2)
    assert code == 5 and out.startswith("failed")


def test_dense_resultant(run):
    code, out, _ = run(["dense-resultant", "--orders", "0,1", "--degrees", "1,1"])
    assert code == 0
    assert out.splitlines()[0] == "u00*u01@1*u11 + u00@1*u01*u12 - u01*u01@1*u10"
    code, out, err = run(["dense-resultant", "--orders", "1,1", "--degrees", "2,2", "--json"])
    rep = json.loads(out)["report"]
    assert code == 4 and "size guard" in err
    assert rep["cap"] == 81 and rep["block_degrees"] == [16, 16] and rep["degree"] == 32


def test_dense_bad_arguments(run):
    assert run(["dense-resultant", "--orders", "0", "--degrees", "1,1"])[0] == 1


def test_mixed_volume(run):
    code, out, _ = run(["mixed-volume", "--polytopes", "[[[0,0],[1,0]],[[0,0],[0,1]]]"])
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(["mixed-volume", "--json"], PIPELINE)
    assert json.loads(out) == {"labels": ["P0@1", "P1@0", "P2@1"], "degrees": [2, 1, 2], "total": 5}


def test_stdin_and_console_script():
    proc = subprocess.run([sys.executable, "-m", "diffres.cli", "super-essential"], input=EX2,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "{0,1}"
