import csv
import io
import json
import subprocess
import sys

import pytest

from zecklab import cli, zeckendorf
from zecklab.zeckendorf import BijectionReport


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_decompose():
    code, out, _ = run("decompose", "--spec", "fibonacci", "--n", "100")
    assert code == 0
    data = json.loads(out)
    assert data["coeffs"] == [1, 0, 0, 0, 0, 1, 0, 1, 0, 0]
    assert data["summands"] == 3 and data["value"] == "100"


def test_decompose_big_integer():
    n = 10**60 + 7
    code, out, _ = run("decompose", "--spec", '{"coeffs": [2, 3, 1]}', "--n", str(n))
    assert code == 0 and json.loads(out)["value"] == str(n)


def test_decompose_spec_file(tmp_path):
    path = tmp_path / "s.json"
    path.write_text('{"coeffs": [2, 3, 1]}')
    code, out, _ = run("decompose", "--spec", str(path), "--n", "184")
    assert code == 0 and json.loads(out)["coeffs"] == [1, 2, 3, 0, 1]


def test_dist_csv():
    code, out, _ = run("dist", "--spec", "fibonacci", "--level", "5", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["k", "count"], ["1", "1"], ["2", "3"], ["3", "1"]]


def test_dist_json():
    code, out, _ = run("dist", "--spec", "decimal", "--level", "2")
    data = json.loads(out)
    assert code == 0 and data["delta"] == "90"
    assert sum(int(r["count"]) for r in data["counts"]) == 90


def test_moments():
    code, out, _ = run("moments", "--spec", "decimal", "--level", "3", "--order", "3")
    data = json.loads(out)
    assert code == 0
    assert data["mean"]["exact"] == "14"
    assert set(data["standardized_moments"]) == {"3"}


def test_gaussian():
    code, out, _ = run("gaussian", "--spec", "fibonacci", "--level", "200")
    data = json.loads(out)
    assert code == 0
    assert data["standardized_even_moments"]["6"]["target"] == 15
    assert 0 <= data["ks_distance"] < 0.05


def test_roots():
    code, out, _ = run("roots", "--spec", "fibonacci")
    data = json.loads(out)
    assert code == 0
    re, im = data["roots"][data["dominant"]]
    assert abs(re - 0.6180339887498949) < 1e-12 and im == 0
    assert data["has_multiple_root"] is False


def test_lek():
    code, out, _ = run("lek", "--spec", "decimal", "--from", "10", "--to", "30")
    data = json.loads(out)
    assert code == 0 and data["C"]["exact"] == "9/2"


def test_fardiff():
    code, out, _ = run("fardiff", "decompose", "--n", "2014")
    assert code == 0 and json.loads(out) == [[17, 1], [14, -1], [9, 1], [6, -1], [2, -1]]
    code, out, _ = run("fardiff", "stats", "--level", "10", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["statistic", "value", "exact"]
    assert rows[1] == ["EK", "1.725", "69/40"]


def test_verify_ok():
    code, out, _ = run("verify", "--spec", "[2,3,1]", "--max-level", "6")
    data = json.loads(out)
    assert code == 0 and data["ok"] is True


def test_verify_skips_over_budget():
    code, out, _ = run("verify", "--spec", "decimal", "--max-level", "5", "--budget", "1000")
    data = json.loads(out)
    assert code == 0 and data["skipped"] == [4, 5]


def test_verify_failure_exit_code(monkeypatch):
    def broken(spec, n, budget=None):
        return BijectionReport(spec, n, 1, [n])

    monkeypatch.setattr(zeckendorf, "verify_bijection", broken)
    code, out, err = run("verify", "--spec", "fibonacci", "--max-level", "3")
    assert code == 2
    assert json.loads(out)["ok"] is False
    assert "verification failed" in err


@pytest.mark.parametrize("argv", [
    (),
    ("dist", "--spec", "fibonacci"),
    ("dist", "--spec", "fibonacci", "--level", "0"),
    ("dist", "--spec", "nope", "--level", "3"),
    ("dist", "--spec", "[0, 1]", "--level", "3"),
    ("moments", "--spec", "fibonacci", "--level", "5", "--order", "1"),
    ("roots", "--spec", "fibonacci", "--x", "abc"),
    ("fardiff",),
    ("decompose", "--spec", "fibonacci", "--n", "-3"),
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 1 and out == "" and err


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "zecklab", "fardiff", "stats", "--level", "40"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
