import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from hhineq.cli import main
from hhineq.schemas import SCHEMAS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


class TestMeans:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "means", "2", "8")
        assert code == 0
        assert "A = 5" in out and "G = 4" in out and "H = 3.2" in out

    def test_lp(self, capsys):
        code, doc = run_json(capsys, "means", "1", "2", "--p", "2")
        assert code == 0
        assert doc["result"]["Lp"] == pytest.approx(1.5275252316519466689, rel=1e-15)

    def test_bad_interval(self, capsys):
        code, _, err = run(capsys, "means", "2", "1")
        assert code == 2 and "require 0 < a < b" in err

    def test_limit_needs_extension(self, capsys):
        assert run(capsys, "means", "1", "2", "--p", "0")[0] == 2
        code, doc = run_json(capsys, "means", "1", "2", "--p", "0", "--extend")
        assert code == 0 and doc["result"]["Lp"] == doc["result"]["I"]


class TestBound:
    def test_reciprocal(self, capsys):
        code, doc = run_json(capsys, "bound", "--f", "1/x", "--a", "1", "--b", "2")
        r = doc["result"]
        assert code == 0
        assert r["deviation"]["value"] == pytest.approx(-0.39018615277338802392, abs=1e-12)
        t1 = next(b for b in r["bounds"] if b["label"] == "T1")
        assert t1["value"] == pytest.approx(0.484375, rel=1e-15) and t1["holds"]

    def test_saturation(self, capsys):
        code, doc = run_json(capsys, "bound", "--f", "x", "--a", "1", "--b", "3", "--q", "1")
        assert code == 0
        assert [(b["label"], b["margin"]) for b in doc["result"]["bounds"]] == [("T1", 0.0), ("T3", 0.0)]

    def test_concave_function(self, capsys):
        code, doc = run_json(capsys, "bound", "--f", "ln(x)", "--a", "1", "--b", "2", "--classical")
        r = doc["result"]
        assert code == 0
        assert r["bounds"][0]["precondition"]["passed"]
        assert r["hadamard"]["shape"] == "concave" and r["hadamard"]["direction"] == "reversed"
        assert r["hadamard"]["holds"]

    def test_text_mentions_reversal(self, capsys):
        _, out, _ = run(capsys, "bound", "--f", "ln(x)", "--a", "1", "--b", "2")
        assert "reversed" in out

    @pytest.mark.parametrize("argv", [
        ("--f", "1/", "--a", "1", "--b", "2"),
        ("--f", "foo(x)", "--a", "1", "--b", "2"),
        ("--f", "ln(x)", "--a", "-1", "--b", "2"),
        ("--f", "x", "--a", "1", "--b", "2", "--q", "0.5"),
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, "bound", *argv)
        assert code == 2 and err

    def test_violation_exit(self, capsys):
        code, _, _ = run(capsys, "bound", "--f", "x*ln(x)", "--a", "1", "--b", "2", "--shape-tol", "1")
        assert code == 1

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "bound", "--f", "exp(x)", "--a", "1", "--b", "2",
                           "--q", "2", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and [r["label"] for r in rows] == ["T1", "T2", "T3"]


class TestProps:
    def test_default_is_first_proposition(self, capsys):
        code, doc = run_json(capsys, "props", "--a", "1", "--b", "2")
        (r,) = doc["result"]["propositions"]
        assert code == 0 and r["k"] == 1
        assert not r["lhs_discrepancy"] and not r["rhs_discrepancy"]

    def test_all(self, capsys):
        code, doc = run_json(capsys, "props", "--a", "1", "--b", "2", "--all", "--n", "2", "--q", "2")
        flagged = {r["k"] for r in doc["result"]["propositions"] if r["lhs_discrepancy"] or r["rhs_discrepancy"]}
        assert code == 0 and flagged == {2, 3, 5, 8}

    def test_bad_interval(self, capsys):
        assert run(capsys, "props", "--a", "1", "--b", "1")[0] == 2

    def test_bad_q(self, capsys):
        assert run(capsys, "props", "--a", "1", "--b", "2", "--k", "4", "--q", "1")[0] == 2


class TestVerify:
    def test_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--seed", "1", "--count", "50")
        assert code == 0 and out

    def test_rerun_is_byte_identical(self, capsys):
        argv = ("verify", "--seed", "2", "--count", "15", "--json")
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    @pytest.mark.parametrize("argv", [
        ("--count", "0"), ("--range", "3", "1"), ("--q-list", "0.5"),
    ])
    def test_config_errors(self, capsys, argv):
        assert run(capsys, "verify", *argv)[0] == 2


@pytest.mark.parametrize("command,argv", [
    ("means", ("2", "8")),
    ("means", ("1", "2", "--p", "2")),
    ("bound", ("--f", "1/x", "--a", "1", "--b", "2")),
    ("bound", ("--f", "x^3 - 6*x^2", "--a", "1", "--b", "3", "--q", "2", "--classical")),
    ("props", ("--a", "1", "--b", "2", "--all")),
    ("verify", ("--seed", "3", "--count", "5")),
])
def test_json_matches_schema(capsys, command, argv):
    _, doc = run_json(capsys, command, *argv)
    jsonschema.validate(doc, SCHEMAS[command])
    assert set(doc) == {"tool_version", "config", "result"}
    assert len(doc["config"]["digest"]) == 64


def test_precision_does_not_touch_json(capsys):
    base = ("bound", "--f", "exp(x)", "--a", "1", "--b", "2", "--json")
    assert run(capsys, *base, "--precision", "3")[1] == run(capsys, *base, "--precision", "17")[1]


def test_precision_shapes_text(capsys):
    _, out, _ = run(capsys, "means", "1", "2", "--precision", "4")
    assert "G = 1.414\n" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hhineq", "means", "2", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "require 0 < a < b" in proc.stderr
