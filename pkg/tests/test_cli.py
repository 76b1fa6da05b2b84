import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from refined_eulerian import cli, exact_core as core
from refined_eulerian.checks import CheckResult

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.dispatch(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def csv_rows(text):
    return list(csv.reader(line for line in text.splitlines() if not line.startswith("#")))


def test_table_csv():
    code, out, _ = run("table", "--n", "6", "--format", "csv")
    assert code == 0
    rows = csv_rows(out)
    assert rows[0] == ["n", "d", "k", "count"]
    assert len(rows) == 37
    sums = {}
    for n, d, k, c in rows[1:]:
        sums[k] = sums.get(k, 0) + int(c)
    assert set(sums.values()) == {120}
    assert "# n=6" in out and "# method=rec3" in out


def test_table_last_side():
    code, doc = run_json("table", "--n", "5", "--side", "last")
    assert code == 0
    want = [[str(core.refined_last(5, d, k)) for k in range(1, 6)] for d in range(5)]
    assert doc["result"]["counts"] == want


def test_table_json_all_strings():
    code, doc = run_json("table", "--n", "25")
    big = doc["result"]["counts"][12][0]
    assert isinstance(big, str) and int(big) == core.refined_first(25, 12, 1)
    assert doc["params"] == {"digits": "12", "format": "json", "method": "rec3", "n": "25",
                             "side": "first"}


def test_verify_core():
    code, doc = run_json("verify", "--suite", "core", "--nmax", "8")
    assert code == 0 and doc["result"]["passed"] is True


@pytest.mark.parametrize("suite", ["moments", "roots", "gf", "stein"])
def test_verify_suites(suite):
    code, doc = run_json("verify", "--suite", suite, "--nmax", "6")
    assert code == 0 and doc["result"]["failures"] == []


def test_verify_failure_exit_code(monkeypatch):
    def broken(nmax):
        r = CheckResult("broken")
        r.cases = 1
        r.fail("sum_d <n,d>_k = (n-1)!", n=4, k=2)
        return r
    monkeypatch.setitem(cli.checks.SUITES, "core", [broken])
    code, doc = run_json("verify", "--suite", "core")
    assert code == 1
    assert doc["result"]["failures"] == [
        {"identity": "sum_d <n,d>_k = (n-1)!", "witness": {"n": "4", "k": "2"}}]


def test_stein_report():
    code, doc = run_json("stein", "--n", "50", "--d", "24", "--samples", "100000", "--seed", "42")
    assert code == 0
    r = doc["result"]
    assert r["exact_target"] == "1/25"
    assert set(r["mean"]) == {"float"}
    assert doc["params"]["seed"] == "42" and doc["params"]["workers"] == "1"


def test_stein_exact_alongside():
    code, doc = run_json("stein", "--n", "6", "--d", "2", "--samples", "2000", "--seed", "1")
    assert doc["result"]["exact_enumerated"] == "1/3"


def test_determinism():
    a = run("stein", "--n", "10", "--d", "4", "--samples", "5000", "--seed", "3", "--workers", "2")
    b = run("stein", "--n", "10", "--d", "4", "--samples", "5000", "--seed", "3", "--workers", "2")
    assert a == b
    assert run("table", "--n", "9", "--format", "csv") == run("table", "--n", "9", "--format", "csv")


def test_moments_and_geom():
    code, doc = run_json("moments", "--n", "3", "--d", "1", "--m", "2")
    r = doc["result"]
    assert r["first_dist"] == ["1/4", "1/2", "1/4"]
    assert r["rising_moments"] == ["1", "2", "13/2"]
    assert r["unimodal"] == {"case": "iv", "holds": True}
    code, doc = run_json("geom", "--n", "2", "--d", "1")
    assert doc["result"]["tvd"] == "3/4" and doc["result"]["tvd_decimal"] == "0.75"


def test_roots():
    code, doc = run_json("roots", "--n", "5", "--k", "2")
    assert code == 0 and doc["result"]["polynomial"] == ["0", "8", "14", "2"]
    assert doc["result"]["verdict"] is True
    code, doc = run_json("roots", "--n", "4", "--k", "3", "--l", "1", "--isolate")
    assert code == 0 and doc["result"]["polynomial"] == ["0", "0", "2"]


def test_gf_modes():
    assert run_json("gf", "--n", "3", "--k", "2")[1]["result"]["polynomial"] == ["0", "2"]
    assert run_json("gf", "--n", "3", "--d", "1")[1]["result"]["polynomial"] == \
        ["0", "1", "2", "1"]
    code, doc = run_json("gf", "--n", "2")
    assert doc["result"]["terms"] == [{"d": "0", "k": "1", "coefficient": "1"},
                                      {"d": "1", "k": "2", "coefficient": "1"}]
    code, doc = run_json("gf", "--pde", "4", "4", "4")
    assert code == 0 and doc["result"]["holds"] is True
    code, doc = run_json("gf", "--numeric", "0.3", "0.5", "0.2")
    assert code == 0 and set(doc["result"]["residual"]) == {"float"}


@pytest.mark.parametrize("argv", [
    ["bogus"], [], ["table"], ["table", "--n", "x"], ["table", "--n", "4", "--bogus"],
    ["table", "--n", "0"], ["moments", "--n", "3", "--d", "3"], ["gf"],
    ["gf", "--n", "3", "--k", "1", "--d", "1"], ["stein", "--n", "5", "--d", "2", "--workers", "0"],
    ["gf", "--numeric", "2", "0.5", "0.2"],
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err


def test_resource_cap_exit_3():
    code, out, err = run("stein", "--n", "12", "--d", "0", "--samples", "10")
    assert code == 3 and "cap" in err
    code, out, err = run("roots", "--n", "45", "--k", "3")
    assert code == 3 and "cap=40" in err


def test_text_format():
    code, out, _ = run("moments", "--n", "5", "--d", "2", "--format", "text")
    assert code == 0 and "expected_first: 3" in out and "# n = 5" in out


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    first = run("table", "--n", "7", "--format", "csv")
    path = cli.cache_path(tmp_path, 7)
    assert path.exists()
    assert run("table", "--n", "7", "--format", "csv") == first
    t = cli._load_cached(path, 7)
    assert t.counts == core.refined_table(7).counts


def test_cache_rejects_corrupt_file(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    path = cli.cache_path(tmp_path, 5)
    run("table", "--n", "5")
    text = path.read_text().replace("5,1,1,11", "5,1,1,12")
    path.write_text(text)
    assert cli._load_cached(path, 5) is None
    code, doc = run_json("table", "--n", "5")
    assert doc["result"]["counts"][1][0] == "11"
    assert cli._load_cached(path, 5) is not None  # rewritten


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "refined_eulerian", "table", "--n", "3",
                        "--format", "csv"], capture_output=True, text=True)
    assert p.returncode == 0
    assert csv_rows(p.stdout)[1:] == [["3", "0", "1", "1"], ["3", "0", "2", "0"],
                                      ["3", "0", "3", "0"], ["3", "1", "1", "1"],
                                      ["3", "1", "2", "2"], ["3", "1", "3", "1"],
                                      ["3", "2", "1", "0"], ["3", "2", "2", "0"],
                                      ["3", "2", "3", "1"]]
