import io
import json
import re

import pytest

from mobiuspair.analysis import RawStructure
from mobiuspair.cli import main
from mobiuspair.config import build
from mobiuspair.perm import parse_permutation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_writes_dot(tmp_path, capsys):
    path = tmp_path / "g.dot"
    code, out, _ = run(capsys, "build", "-n", "4", "-p", "(1 2 3 4)", "--dot", str(path))
    assert code == 0
    text = path.read_text()
    assert len(re.findall(r"^\s+[abAB]\d+ \[", text, re.M)) == 16
    assert len(re.findall(r"--", text)) == 32
    assert json.loads(out)["n"] == 4


def test_build_json_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    code, out, _ = run(capsys, "build", "-n", "5", "-p", "(1 2)(3 4 5)", "--json", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["n"] == 5


@pytest.mark.parametrize(
    "argv, msg",
    [
        (["build", "-n", "2", "-p", "(1 2)"], "n >= 3"),
        (["build", "-n", "4", "-p", "(1 5)"], "out of range"),
        (["info", "-n", "4", "-p", "(1 2"], ""),
        (["build", "-n", "4"], ""),
        (["nosuch"], ""),
        (["classes", "-n", "0"], "n must be"),
        (["verify", "--max-n", "2"], "--max-n"),
    ],
)
def test_bad_input_exits_2(capsys, argv, msg):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert msg in err


def test_info_identity(capsys):
    code, out, _ = run(capsys, "info", "-n", "4", "-p", "1 2 3 4")
    data = json.loads(out)
    assert code == 0
    assert data["decompositions"] == 4
    assert data["special_decompositions"] == [[1, 2], [1, 3], [1, 4]]
    assert data["block_cycles"] == [1, 1, 1, 1]
    assert data["cycle_paths"] == []


def test_info_examples(capsys):
    _, out, _ = run(capsys, "info", "-n", "5", "-p", "(1 2)(3 4 5)")
    assert json.loads(out)["subpair_sets"]["3"] == [[1, 2]]
    _, out, _ = run(capsys, "info", "-n", "4", "-p", "(1 2 3 4)")
    data = json.loads(out)
    assert data["block_cycles"] == [4]
    assert data["intersection_profile"]["counts"] == {"1": 8, "2": 20}


def test_iso_isomorphic(capsys):
    code, out, _ = run(capsys, "iso", "-n", "4", "-p1", "(1 2 3)(4)", "-p2", "(2 3 4)(1)")
    data = json.loads(out)
    assert code == 0
    assert data["isomorphic"] and data["conjugate"] and data["oracle_isomorphic"]
    assert len(data["witness"]) == 16


def test_iso_not_isomorphic(capsys):
    code, out, _ = run(capsys, "iso", "-n", "4", "-p1", "1 2 3 4", "-p2", "(1 2)(3 4)")
    data = json.loads(out)
    assert code == 0
    assert not data["isomorphic"] and not data["conjugate"]
    assert data["witness"] is None and data["alpha"] is None


def test_aut_identity(capsys):
    code, out, _ = run(capsys, "aut", "-n", "4", "-p", "1 2 3 4")
    data = json.loads(out)
    assert code == 0
    assert data["oracle_order"] == 192
    assert data["failures"] == []


def test_aut_records_claim_mismatch_without_failing(capsys):
    code, out, _ = run(capsys, "aut", "-n", "4", "-p", "(1 2)(3 4)")
    data = json.loads(out)
    assert code == 0
    assert data["oracle_order"] == 32
    assert data["claimed_order"] == 64
    assert data["claim_matches_oracle"] is False


def test_classes(capsys):
    code, out, _ = run(capsys, "classes", "-n", "6")
    data = json.loads(out)
    assert code == 0
    assert data["p"] == 11 and len(data["reps"]) == 11


def test_pretty_goes_to_stderr(capsys):
    _, out, err = run(capsys, "--pretty", "classes", "-n", "4")
    assert len(json.loads(out)["reps"]) == 5
    assert len(err.strip().splitlines()) == 5


def test_recognize_stdin(capsys, monkeypatch):
    raw = RawStructure.from_pair(build(5, parse_permutation("(1 2)(3 4 5)", 5)))
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"points": raw.points, "blocks": raw.blocks})))
    code, out, _ = run(capsys, "recognize")
    data = json.loads(out)
    assert code == 0 and data["recognized"]
    assert data["cycle_type"] == [2, 3]


def test_recognize_file_errors(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "recognize", "--input", str(path))[0] == 2
    assert run(capsys, "recognize", "--input", str(tmp_path / "missing.json"))[0] == 2
    path.write_text(json.dumps({"points": ["x"], "blocks": [["y"]]}))
    assert run(capsys, "recognize", "--input", str(path))[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["info", "-n", "6", "-p", "(1 2)(3 4 5 6)"],
        ["aut", "-n", "5", "-p", "(1 2)(3 4 5)", "--workers", "2"],
        ["iso", "-n", "5", "-p1", "(1 2 3)", "-p2", "(3 4 5)"],
        ["build", "-n", "4", "-p", "(1 3)", "--dot", "-"],
    ],
)
def test_stdout_is_deterministic(capsys, argv):
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]


def test_verify_small(capsys):
    code, out, err = run(capsys, "verify", "--max-n", "4", "--no-determinism")
    data = json.loads(out)
    assert code == 0
    assert [c["number"] for c in data["criteria"]] == list(range(1, 12))
    assert all(c["internal_ok"] for c in data["criteria"])
    assert len([l for l in err.splitlines() if l.startswith("[")]) == 11
    assert out == run(capsys, "verify", "--max-n", "4", "--no-determinism")[1]
