import json
import subprocess
import sys

import pytest

from flexscheme.cli import main
from flexscheme.oracle import brute_sequence
from flexscheme.perms import Basis
from flexscheme.scheme import Scheme


@pytest.fixture
def s123(tmp_path):
    path = tmp_path / "s123.json"
    assert main(["discover", "--basis", "123", "--max-depth", "8", "--max-gap", "2", "-o", str(path)]) == 0
    return path


def test_discover_writes_scheme(s123):
    scheme = Scheme.load(s123)
    assert set(scheme.rules) == {(), (1,), (1, 2), (2, 1)}
    assert json.loads(s123.read_text())["format"] == "flexscheme-v1"


def test_discover_es_failure_report(capsys):
    assert main(["discover", "--basis", "1423;2314", "--mode", "es"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "failure"
    assert {"3214", "4321"} <= set(report["frontier"])
    assert "wall_time" in report


def test_discover_repeated_basis_flags(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["discover", "--basis", "1423", "--basis", "2314", "-o", str(a)]) == 0
    assert main(["discover", "--basis", "1423;2314", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_discover_timeout_exit_code(tmp_path):
    report = tmp_path / "r.json"
    assert main(["discover", "--basis", "1342", "--time-budget", "0", "--report", str(report)]) == 2
    assert json.loads(report.read_text())["status"] == "timeout"


@pytest.mark.parametrize(
    "argv",
    [
        ["discover", "--basis", ""],
        ["discover"],
        ["discover", "--basis", "12a"],
        ["discover", "--basis", "123", "--max-depth", "0"],
        ["census", "--family", "x"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == 64


def test_enumerate(s123, capsys):
    assert main(["enumerate", "--scheme", str(s123), "-n", "6"]) == 0
    assert capsys.readouterr().out.split() == ["1", "1", "2", "5", "14", "42", "132"]
    assert main(["enumerate", "--scheme", str(s123), "-n", "0"]) == 0
    assert capsys.readouterr().out.split() == ["1"]
    assert main(["enumerate", "--scheme", str(s123), "-n", "3", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["terms"] == [1, 1, 2, 5]


def test_enumerate_missing_file(tmp_path):
    assert main(["enumerate", "--scheme", str(tmp_path / "missing.json")]) == 66


def test_enumerate_malformed_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "other"}')
    assert main(["enumerate", "--scheme", str(bad)]) == 65


def test_verify_ok(s123, capsys):
    assert main(["verify", "--scheme", str(s123), "--n-max", "9"]) == 0
    assert capsys.readouterr().out.strip() == "OK 0..9"


def test_verify_detects_corruption(s123, tmp_path, capsys):
    data = json.loads(s123.read_text())
    for rule in data["rules"]:
        if rule["downfix"] == [2, 1]:
            rule["cases"][-1]["action"] = 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["verify", "--scheme", str(bad), "--n-max", "9"]) == 1
    assert capsys.readouterr().out.startswith("MISMATCH n=4: scheme 16 oracle 14")


def test_verify_cap(s123):
    assert main(["verify", "--scheme", str(s123), "--n-max", "12"]) == 3


def test_oracle_and_symmetries(capsys):
    assert main(["oracle", "--basis", "123;321", "-n", "6"]) == 0
    assert capsys.readouterr().out.split() == ["1", "1", "2", "4", "4", "0", "0"]
    assert main(["symmetries", "--basis", "321"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["representative"] == ["123"] and len(out["class"]) == 2


def test_census_classes_only(capsys):
    assert main(["census", "--family", "4,4", "--classes-only"]) == 0
    assert json.loads(capsys.readouterr().out)["sym_classes"] == 56


def test_census_length3_pairs(capsys):
    assert main(["census", "--family", "3,3"]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    rows, summary = lines[:-1], lines[-1]
    assert len(rows) == 5
    assert summary["sym_classes"] == 5 and summary["es"] == 5 and summary["fs"] == 5


@pytest.mark.parametrize("text", ["123", "1423;2314", "123;231"])
def test_round_trip_matches_oracle(text, tmp_path, capsys):
    path = tmp_path / "s.json"
    assert main(["discover", "--basis", text, "-o", str(path)]) == 0
    assert main(["enumerate", "--scheme", str(path), "-n", "9"]) == 0
    terms = tuple(int(x) for x in capsys.readouterr().out.split())
    assert terms == brute_sequence(Basis.parse(text), 9).terms


def test_module_entry_point_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.json"
        subprocess.run(
            [sys.executable, "-m", "flexscheme", "discover", "--basis", "1423;2314", "-o", str(path)],
            check=True,
        )
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
