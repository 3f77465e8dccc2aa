import csv
import io
import json

import pytest

from treewalk.cli import run


@pytest.fixture
def p4_file(tmp_path):
    path = tmp_path / "p4.txt"
    path.write_text("4\n0 1\n1 2\n2 3\n")
    return str(path)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_meet(capsys, p4_file):
    code, out, _ = call(capsys, "meet", "--tree", p4_file)
    assert code == 0
    assert json.loads(out) == {"jmax": "35", "tmeet": "35/6", "tmeet_decimal": 35 / 6, "argmax": [0, 3]}
    _, out, _ = call(capsys, "meet", "--tree", p4_file, "--best")
    rec = json.loads(out)
    assert rec["bestmeet"] == "11/6" and rec["argmin"] == [1, 2]


def test_hit_methods_agree(capsys, p4_file):
    _, a, _ = call(capsys, "hit", "--tree", p4_file, "--target", "3")
    _, b, _ = call(capsys, "hit", "--tree", p4_file, "--target", "3", "--method", "solve")
    ha = [json.loads(x)["hitting"] for x in a.splitlines()]
    hb = [json.loads(x)["hitting"] for x in b.splitlines()]
    assert ha == hb == ["9", "8", "5", "0"]
    _, out, _ = call(capsys, "hit", "--tree", p4_file, "--target", "3", "--source", "1")
    assert json.loads(out)["hitting"] == "8"


def test_family_value_and_tree(capsys, tmp_path):
    _, out, _ = call(capsys, "family", "--kind", "broom", "--n", "8", "--d", "3")
    assert json.loads(out) == {"jmax": "295", "tmeet": "295/14", "tmeet_decimal": 295 / 14}
    code, tree_text, _ = call(capsys, "family", "--kind", "path", "--n", "4", "--emit", "tree")
    assert code == 0 and tree_text == "4\n0 1\n1 2\n2 3\n"


def test_csv_output(capsys, p4_file):
    _, out, _ = call(capsys, "--format", "csv", "hit", "--tree", p4_file, "--target", "0")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["hitting"] for r in rows] == ["0", "5", "8", "9"]
    _, out, _ = call(capsys, "--format", "csv", "meet", "--tree", p4_file)
    assert next(csv.DictReader(io.StringIO(out)))["argmax"] == "0;3"


def test_surgery_commands(capsys, tmp_path, p4_file):
    code, out, _ = call(capsys, "surgery", "move", "--tree", p4_file, "--z", "0", "--x", "2")
    rec = json.loads(out)
    assert code == 0 and rec["edges"] == [[0, 2], [1, 2], [2, 3]]
    assert int(rec["jmax_after"]) < int(rec["jmax_before"])
    spider = tmp_path / "spider.txt"
    spider.write_text("8\n0 1\n1 2\n0 3\n3 4\n0 5\n5 6\n6 7\n")
    code, out, _ = call(capsys, "surgery", "sigma", "--tree", str(spider), "--path", "2,1,0,5,6,7", "--y", "4", "--emit", "tree")
    assert code == 0 and "0 4" in out.splitlines()
    cat = tmp_path / "cat.txt"
    cat.write_text("6\n0 1\n1 2\n2 3\n3 4\n2 5\n")
    code, out, _ = call(capsys, "surgery", "tau", "--tree", str(cat), "--move", "2,1")
    assert code == 0 and [1, 5] in json.loads(out)["edges"]


def test_verify_and_enumerate(capsys):
    _, out, _ = call(capsys, "verify", "min", "--n", "8", "--d", "4")
    rec = json.loads(out)
    assert rec["unique"] and rec["expected_family"] == "balanced_near_double_broom" and rec["passed"]
    _, out, _ = call(capsys, "verify", "max", "--n", "6")
    assert [json.loads(x)["d"] for x in out.splitlines()] == [3, 4, 5]
    _, out, _ = call(capsys, "verify", "order", "--n", "6")
    assert [json.loads(x)["kind"] for x in out.splitlines()] == ["order-min", "order-max"]
    _, out, _ = call(capsys, "verify", "rooted", "--n", "5", "--r", "2")
    assert json.loads(out)["passed"]
    _, out, _ = call(capsys, "enumerate", "--n", "10", "--count-only")
    assert json.loads(out)["count"] == 106
    _, out, _ = call(capsys, "enumerate", "--n", "6", "--d", "4")
    assert len(out.splitlines()) == 2


def test_simulate_and_lemmas(capsys, p4_file):
    _, out, _ = call(capsys, "simulate", "--tree", p4_file, "--source", "0", "--target", "3", "--walks", "5000", "--seed", "3")
    rec = json.loads(out)
    assert rec["exact"] == "9" and abs(rec["z_score"]) < 4
    _, out, _ = call(capsys, "lemmas", "--tree", p4_file)
    assert {json.loads(x)["status"] for x in out.splitlines()} == {"pass"}


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["meet"],
        ["verify", "max", "--n", "8", "--r", "3"],
        ["verify", "rooted", "--n", "8", "--d", "3"],
        ["verify", "order", "--n", "8", "--d", "3"],
        ["surgery", "tau", "--tree", "x", "--move", "12"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out == "" and err


@pytest.mark.parametrize(
    "argv",
    [
        ["meet", "--tree", "/nonexistent/tree.txt"],
        ["verify", "max", "--n", "8", "--d", "9"],
        ["family", "--kind", "broom", "--n", "4", "--d", "7"],
        ["verify", "max", "--n", "40", "--d", "5"],
        ["hit", "--tree", "TREE", "--target", "9"],
        ["simulate", "--tree", "TREE", "--source", "0", "--target", "3", "--walks", "0", "--seed", "1"],
    ],
)
def test_computation_errors_exit_1(capsys, argv, p4_file):
    argv = [p4_file if a == "TREE" else a for a in argv]
    code, out, err = call(capsys, *argv)
    assert code == 1 and out == ""
    assert err.startswith("treewalk: error:")


def test_malformed_tree_file(capsys, tmp_path):
    bad = tmp_path / "cycle.txt"
    bad.write_text("3\n0 1\n1 2\n2 0\n")
    code, _, err = call(capsys, "meet", "--tree", str(bad))
    assert code == 1 and "edge count" in err
