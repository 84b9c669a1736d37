import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from boundary_manifold import cli
from boundary_manifold.laurent import LaurentPoly
from boundary_manifold.presentation import OracleResult

GOLDEN = Path(__file__).parent / "golden"
GOLDEN_CASES = ["F1", "F2", "near-pencil-4", "general-position-4", "pencil-4", "product-2x3", "braid-like"]
F1_DOC = {"lines": [["1", "0", "0"], ["1", "1", "0"], ["-1", "1", "0"], ["0", "1", "1"], ["0", "0", "1"], ["0", "1", "-1"]]}


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("command", list(cli.COMMANDS))
def test_every_command_runs(command, capsys):
    code, out, _ = run([command, "--corpus", "near-pencil-4"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == command and doc["schema"] == "1"
    assert doc["arrangement"]["name"] == "near-pencil-4"


def test_human_output(capsys):
    code, out, _ = run(["classify", "--corpus", "F1", "--human"], capsys)
    assert code == 0 and "class: General" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_corpus_listing(capsys):
    code, out, _ = run(["corpus"], capsys)
    assert code == 0 and "F1" in out.split()


def test_classify_pencil(capsys):
    code, out, _ = run(["classify", "--corpus", "pencil-4"], capsys)
    c = json.loads(out)["classify"]
    assert code == 0
    assert c["class"] == "Pencil" and c["aspherical"] is False
    assert c["alexander_polynomial"] == "0" and "free group" in c["note"]


def test_all_on_f1_file(tmp_path, capsys):
    path = tmp_path / "f1.json"
    path.write_text(json.dumps(F1_DOC))
    code, out, _ = run(["all", str(path)], capsys)
    assert code == 0
    doc = json.loads(out)
    delta = doc["alexander"]["delta"]
    for factor in ["(t1 - 1)^2", "(t5 - 1)^2", "(t1*t2*t3*t4*t5 - 1)^2", "(t3*t4*t5 - 1)^2"]:
        assert factor in delta
    z = doc["bns"]["z_matrix"]
    assert sorted(map(tuple, zip(*z))) == sorted(
        [(2, 0, 0, 0, 0), (0, 2, 0, 0, 0), (0, 0, 2, 0, 0), (0, 0, 0, 2, 0), (0, 0, 0, 0, 2), (2, 2, 2, 2, 2), (0, 0, 2, 2, 2)]
    )
    assert doc["bns"]["poincare"] == [1, 7, 21, 33, 27, 9]
    assert doc["bns"]["components"] == 98
    assert doc["formality"]["verdict"] == "not_formal"


def test_stdin_input(capsys, monkeypatch):
    code, out, _ = run(["classify", "-"], capsys, stdin=json.dumps(F1_DOC), monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["classify"]["class"] == "General"


def test_alexander_oracle_near_pencil(capsys):
    code, out, _ = run(["alexander", "--corpus", "near-pencil-4", "--oracle"], capsys)
    assert code == 0
    a = json.loads(out)["alexander"]
    assert "(t1*t2*t3 - 1)^2" in a["delta"]
    assert a["oracle"]["agrees"] is True
    assert a["oracle"]["value"] == "t1^2*t2^2*t3^2 - 2*t1*t2*t3 + 1"


def test_twisted_option(tmp_path, capsys):
    code, out, _ = run(["alexander", "--corpus", "near-pencil-4", "--twisted", "diagonal:2"], capsys)
    assert code == 0
    tw = json.loads(out)["alexander"]["twisted"]
    assert tw["ball_equivalent"] is True
    rep = tmp_path / "rep.json"
    rep.write_text(json.dumps({"generators": {"x1": [[1, 1], [0, 1]], "g1_2": [[1, 0], [1, 1]]}}))
    code, _, err = run(["alexander", "--corpus", "near-pencil-4", "--twisted", str(rep)], capsys)
    assert code == 1 and "relators" in err


@pytest.mark.parametrize(
    "text,needle",
    [("{\"lines\": [[1, 0, 0],\n [0, 1", "line 2, column"), ("[]", "object"), ("{\"lines\": [[1,0,0],[2,0,0]]}", "duplicate")],
)
def test_input_errors(text, needle, capsys, monkeypatch):
    code, out, err = run(["classify"], capsys, stdin=text, monkeypatch=monkeypatch)
    assert code == 1 and out == ""
    assert needle in err


def test_unknown_corpus_and_missing_file(capsys, tmp_path):
    assert run(["graph", "--corpus", "nope"], capsys)[0] == 1
    assert run(["graph", str(tmp_path / "missing.json")], capsys)[0] == 1


def test_oracle_mismatch_is_exit_2(capsys, monkeypatch):
    monkeypatch.setattr(cli, "alexander_gcd_oracle", lambda pres: OracleResult(LaurentPoly.constant(3, 1), "exhaustive", 0))
    code, out, err = run(["alexander", "--corpus", "near-pencil-4", "--oracle"], capsys)
    assert code == 2 and "oracle" in err


def test_cap_is_exit_3_with_partial_report(capsys):
    code, out, err = run(["holonomy", "--corpus", "general-position-4", "--max-degree", "5", "--cap", "10000"], capsys)
    assert code == 3 and "cap" in err
    h = json.loads(out)["holonomy"]
    assert h["boundary"]["ranks"] == [6, 9, 36]


def test_holonomy_ranks(capsys):
    code, out, _ = run(["holonomy", "--corpus", "general-position-4", "--max-degree", "5"], capsys)
    assert code == 0
    assert json.loads(out)["holonomy"]["boundary"]["ranks"] == [6, 9, 36, 132, 534]


def test_deterministic_bytes(capsys):
    _, a, _ = run(["loci", "--corpus", "F2", "--seed", "5", "--samples", "3"], capsys)
    _, b, _ = run(["loci", "--corpus", "F2", "--seed", "5", "--samples", "3"], capsys)
    assert a == b
    _, c, _ = run(["loci", "--corpus", "F2", "--seed", "6", "--samples", "3"], capsys)
    assert json.loads(c)["loci"]["seed"] == 6


def test_figures(tmp_path, capsys):
    code, out, _ = run(["all", "--corpus", "general-position-4", "--figures", str(tmp_path)], capsys)
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == sorted(f"general-position-4-{k}.png" for k in ("graph", "zonotope", "poincare", "holonomy"))
    for p in tmp_path.iterdir():
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "boundary_manifold.cli", "classify", "--corpus", "near-pencil-5"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["classify"]["class"] == "NearPencil"


@pytest.mark.parametrize("name", GOLDEN_CASES)
def test_golden_reports(name, capsys):
    code, out, _ = run(["all", "--corpus", name], capsys)
    assert code == 0
    path = GOLDEN / f"{name}.json"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()
