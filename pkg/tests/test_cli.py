import json

import pytest

from multbound import cli
from multbound.bounds import BoundReport
from multbound.problems import canonical, example, load


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None, err


def test_mult_examples(capsys):
    code, doc, _ = run_json(capsys, "mult", "--example", "parabola", "--poly", "y")
    assert code == 0 and doc["result"] == "exact" and doc["value"] == 2
    code, doc, _ = run_json(capsys, "mult", "--example", "ramanujan", "--poly", "X^2 - Y")
    assert (doc["result"], doc["value"], doc["leading"]) == ("exact", 1, "-288")
    code, doc, _ = run_json(capsys, "mult", "--example", "ramanujan", "--poly", "X - 1")
    assert (doc["value"], doc["leading"]) == (1, "-24")


def test_mult_truncation_order(capsys):
    code, doc, _ = run_json(capsys, "mult", "--example", "parabola", "--poly", "y - x^2", "--order", "10")
    assert code == 0 and doc == {"poly": "y - x^2", "result": "at_least", "source": "regular at (0, 0)",
                                 "value": 11}


def test_mult_inline_field_and_point(capsys):
    code, doc, _ = run_json(capsys, "mult", "--field", "1", "2*x", "--point", "1", "1", "--poly", "y - 1")
    assert code == 0 and doc["value"] == 1
    code, doc, _ = run_json(capsys, "mult", "--example", "parabola", "--point", "1", "1", "--poly", "y - x^2")
    assert doc["source"] == "regular at (1, 1)" and doc["result"] == "zero_suspected"


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("MULTBOUND_MAX_ORDER", "30")
    code, doc, _ = run_json(capsys, "mult", "--example", "linear-diagonal", "--poly", "y - x^2")
    assert doc == {"poly": "y - x^2", "result": "zero_suspected", "source": "regular at (1, 1)", "value": 30}


def test_mult_side_by_side_bound(capsys):
    code, doc, _ = run_json(capsys, "mult", "--example", "ramanujan", "--poly", "X - 1", "--theorem", "toric")
    assert code == 0 and doc["bound"] > doc["value"]
    assert doc["bound_report"]["theorem"] == "toric"


def test_violation_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "pure_bound", lambda n, delta, d, chi: BoundReport("pure", {}, {}, 1))
    code, doc, _ = run_json(capsys, "mult", "--example", "parabola", "--poly", "y", "--theorem", "pure",
                            "--chi", "0")
    assert code == 2 and doc["bound_violation_candidate"] is True


def test_computation_errors(capsys, tmp_path):
    doc = example("ramanujan")
    del doc["fuchsian"]["prescribed"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "mult", "--problem", str(path), "--poly", "X - 1")
    assert code == 1 and "ResonanceError" in err and "k=1" in err
    doc = example("power-a", a=3)
    doc["germs"][0]["components"][1] = [0, 0, 1]
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "mult", "--problem", str(path))
    assert code == 1 and "residual" in err


def test_usage_errors(capsys):
    assert run(capsys, "mult")[0] == 3
    code, _, err = run(capsys, "bound", "--theorem", "pure", "-n", "1")
    assert code == 3 and "d, delta, chi" in err
    assert run(capsys, "example", "nope")[0] == 3
    assert run(capsys, "bound")[0] == 3
    assert run(capsys, "polytope", "ivol")[0] == 3


def test_bound_examples(capsys, tmp_path):
    code, doc, _ = run_json(capsys, "bound", "--theorem", "pure", "-n", "1", "-d", "2", "--delta", "1", "--chi", "0")
    assert code == 0 and doc["value"] == 20
    code, doc, _ = run_json(capsys, "bound", "--theorem", "mixed-multi", "--dz", "1", "--dx", "1", "-q", "3",
                            "--chi", "2")
    assert doc["value"] == 12 and doc["constants"]["beta_1"] == 1
    poly = tmp_path / "poly.json"
    poly.write_text(json.dumps({"dim": 2, "vertices": [[0, 0], [2, 0], [0, 1]]}))
    xi = tmp_path / "xi.json"
    xi.write_text(json.dumps({"variables": ["x", "y"], "field": ["x", "y^2"]}))
    code, doc, _ = run_json(capsys, "bound", "--theorem", "toric", "--delta-file", str(poly), "--field-file",
                            str(xi), "--chi", "2")
    assert code == 0 and doc["theorem"] == "toric" and "mixed_chain" in doc["constants"]
    code, doc, _ = run_json(capsys, "bound", "--theorem", "caseA", "-m", "1", "-D", "2", "--dz", "2", "--dx", "2",
                            "-q", "3", "--chi", "2")
    assert doc["value"] == 4


def test_polytope_commands(capsys, tmp_path):
    box2 = tmp_path / "box2.json"
    box2.write_text(json.dumps({"dim": 2, "vertices": [[-2, -2], [2, -2], [-2, 2], [2, 2]]}))
    assert run_json(capsys, "polytope", "ivol", "--body", str(box2))[1] == {"ivol": 25}
    assert run_json(capsys, "polytope", "volume", "--body", str(box2))[1] == {"volume": 16}
    code, doc, _ = run_json(capsys, "polytope", "mixed-volume", "--bodies", str(box2), "[[0,0],[1,0],[0,1]]")
    assert doc == {"mixed_volume": 4}
    code, doc, _ = run_json(capsys, "polytope", "quermass", "--body", "[[0,0],[2,0],[0,2]]", "-j", "1")
    assert doc["quermassintegral"] == 1
    code, doc, err = run_json(capsys, "--pretty", "polytope", "hull", "--body", "[[0,0],[2,0],[0,2],[1,1]]")
    assert len(doc["vertices"]) == 3 and "(0, 0)" in err
    assert run(capsys, "polytope", "ivol", "--body", str(box2), "--max-box", "3")[0] == 1


def test_verify_command(capsys, tmp_path):
    log = tmp_path / "log.jsonl"
    code, doc, _ = run_json(capsys, "verify", "--suite", "bk", "--seed", "7", "--trials", "100", "--log", str(log))
    assert code == 0 and doc["failed"] == 0 and doc["trials"] == 100
    lines = log.read_text().splitlines()
    assert len(lines) == 100 and json.loads(lines[0])["verdict"] in ("pass", "degenerate")


def test_example_round_trip(capsys):
    for name in ("ramanujan", "parabola", "power-a", "linear-diagonal"):
        code, out, _ = run(capsys, "example", name)
        doc = json.loads(out)
        assert code == 0 and canonical(doc) == out.strip()
        load(doc)
    doc = json.loads(run(capsys, "example", "ramanujan")[1])
    assert doc["chi"] == 2 and doc["fuchsian"]["x0"] == [1, 1, 1]
    doc = json.loads(run(capsys, "example", "power-a", "--a", "5")[1])
    assert doc["germs"][0]["components"][1] == [0, 0, 0, 0, 0, 1]


def test_output_is_byte_identical(capsys):
    argv = ["mult", "--example", "ramanujan", "--theorem", "mixed"]
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]
    argv = ["verify", "--suite", "rolle-order", "--seed", "3", "--trials", "5"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize("command, symbols", [
    ("bound", ["n:", "delta:", "d:", "d_z:", "d_x:", "q:", "chi:", "m:", "D:"]),
    ("mult", ["delta:", "chi:", "N:"]),
    ("verify", ["n:", "delta:", "d:"]),
])
def test_help_names_symbols(capsys, command, symbols):
    assert cli.main([command, "--help"]) == 0
    text = capsys.readouterr().out
    for sym in symbols:
        assert sym in text
