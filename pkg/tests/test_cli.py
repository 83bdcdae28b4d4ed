import io
import json

import pytest

from ultrametrics.cli import run
from ultrametrics.formats import parse_space, space_from_json


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), io.StringIO(stdin), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    code, dlps, _ = call("construct", "dlps", "--set", "0,1/2,2,3")
    assert code == 0
    (tmp_path / "dlps.json").write_text(dlps)
    (tmp_path / "line.csv").write_text(",a,b,c\na,0,1,2\nb,1,0,1\nc,2,1,0\n")
    (tmp_path / "empty.json").write_text("")
    (tmp_path / "desc.json").write_text('{"head":["0"],"tail":{"rule":"reciprocal","params":{}}}')
    (tmp_path / "desc2.json").write_text('{"head":["0"],"tail":{"rule":"shifted","params":{"shift":"1"}}}')
    (tmp_path / "g.json").write_text(json.dumps({
        "gamma": ["g0", "g1", "g2"], "labels": ["x", "y", "z"],
        "matrix": [["g0", "g1", "g2"], ["g1", "g0", "g1"], ["g2", "g1", "g0"]],
    }))
    return tmp_path


def test_validate_dlps(files):
    code, out, _ = call("validate", "--ultra", str(files / "dlps.json"))
    assert code == 0 and json.loads(out)["verdict"] == "valid"


def test_validate_line(files):
    code, out, _ = call("validate", "--ultra", str(files / "line.csv"))
    report = json.loads(out)
    assert code == 1 and report["witnesses"][0]["points"] == ["a", "c", "b"]


@pytest.mark.parametrize("flag,expected", [("--metric", 0), ("--isosceles", 1), ("--fourpoint", 0), ("--balls", 1)])
def test_validate_modes_on_line(files, flag, expected):
    assert call("validate", flag, str(files / "line.csv"))[0] == expected


def test_empty_file(files):
    code, out, err = call("distset", str(files / "empty.json"))
    assert code == 2 and out == "" and "empty" in err


def test_unknown_verb_and_missing_file(files):
    assert call("frobnicate")[0] == 2
    code, _, err = call("distset", str(files / "missing.json"))
    assert code == 2 and "missing.json" in err


def test_malformed_rational(files):
    (files / "bad.json").write_text('{"labels":["a","b"],"matrix":[["0","x"],["x","0"]]}')
    code, _, err = call("validate", str(files / "bad.json"))
    assert code == 2 and "matrix[0][1]" in err


def test_distset_stdin(files):
    code, out, _ = call("distset", "-", stdin=(files / "dlps.json").read_text())
    assert code == 0 and json.loads(out)["distance_set"] == ["0", "1/2", "2", "3"]


def test_classify_and_tbcheck(files):
    code, out, _ = call("classify", str(files / "desc.json"))
    assert code == 0 and json.loads(out)["order_type"] == "OnePlusOmegaStar"
    assert call("tbcheck", str(files / "desc.json"))[0] == 0
    code, out, _ = call("--format", "text", "tbcheck", str(files / "desc2.json"))
    assert code == 1 and "verdict: invalid" in out


def test_balls_partition_tree(files):
    code, out, _ = call("balls", str(files / "dlps.json"), "--center", "0", "--radius", "1")
    assert code == 0 and json.loads(out)["members"] == ["0", "1/2"]
    code, out, _ = call("partition", str(files / "dlps.json"), "--radius", "1")
    assert [c["members"] for c in json.loads(out)["classes"]] == [["0", "1/2"], ["2"], ["3"]]
    code, out, _ = call("partition", str(files / "dlps.json"), "--radius", "1", "--candidates", "1/2,3")
    assert [c["representative"] for c in json.loads(out)["classes"]] == ["1/2", "3"]
    code, out, _ = call("tree", str(files / "dlps.json"), "--newick")
    assert json.loads(out)["newick"] == "(((0:0,1/2:0):1/2,2:0):2,3:0):3;"
    assert call("tree", str(files / "line.csv"))[0] == 1


def test_construct_verbs_round_trip(files):
    cases = [
        ("construct", "dlps", "--set", "0,1/2,1"),
        ("construct", "partition", "--classes", "a|b,c"),
        ("construct", "modify", str(files / "dlps.json"), "--radius", "1", "--g", "5/4,3/2,7/4"),
        ("construct", "compose", str(files / "dlps.json"), "--f", "step"),
    ]
    for argv in cases:
        code, out, _ = call(*argv)
        assert code == 0
        space = space_from_json(json.loads(out))
        code, text, _ = call("--format", "text", *argv)
        assert parse_space(text) == space


def test_construct_errors(files):
    assert call("construct", "dlps", "--set", "1,2")[0] == 2
    assert call("construct", "modify", str(files / "dlps.json"), "--radius", "1", "--g", "5/4,3/2")[0] == 2
    assert call("construct", "modify", str(files / "dlps.json"), "--radius", "1", "--g", "5/4,3/2,2")[0] == 2
    code, out, _ = call("construct", "compose", str(files / "dlps.json"), "--f", "reflected(1)")
    assert code == 1 and json.loads(out)["witnesses"][0]["law"] == "preserving-zero"


def test_gamma(files):
    code, out, _ = call("gamma", "validate", str(files / "g.json"))
    assert code == 1 and json.loads(out)["witnesses"]
    code, out, _ = call("gamma", "ball", str(files / "g.json"), "--center", "y", "--gamma", "g2")
    assert json.loads(out)["members"] == ["x", "y", "z"]
    assert call("gamma", "ball", str(files / "g.json"), "--center", "y", "--gamma", "g0")[0] == 2


def test_deterministic(files):
    argvs = [
        ("validate", "--balls", str(files / "line.csv")),
        ("tree", str(files / "dlps.json")),
        ("--format", "text", "partition", str(files / "dlps.json"), "--radius", "5/2"),
        ("classify", str(files / "desc2.json")),
        ("gamma", "base", str(files / "g.json")),
    ]
    for argv in argvs:
        assert call(*argv) == call(*argv)
