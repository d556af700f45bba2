import csv
import io
import json
from fractions import Fraction as F

import pytest
from click.testing import CliRunner

from eulerpaths.cli import cli, parse_vector
from eulerpaths.errors import MalformedInput
from eulerpaths.identity_suite import IdentityReport


@pytest.fixture
def run():
    try:
        runner = CliRunner(mix_stderr=False)
    except TypeError:  # click >= 8.2 always separates stderr
        runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, list(args))

    return invoke


def test_count_examples(run):
    res = run("count", "--c", "1,1", "--i", "1,1")
    assert res.exit_code == 0 and res.stdout == "4\n"
    res = run("count", "--c", "0,0", "--i", "1,0")
    assert res.exit_code == 0 and res.stdout == "0\n"
    res = run("count", "--c", "1,1", "--i", "3,5", "--bruteforce")
    assert res.stdout.strip() == run("count", "--c", "1,1", "--i", "3,5").stdout.strip()


def test_big_count_is_exact_integer(run):
    res = run("count", "--c", "3,3,3", "--i", "20,20,20")
    assert res.exit_code == 0
    text = res.stdout.strip()
    assert text.isdigit() and len(text) > 30


def test_distinct_exit_codes(run):
    codes = {
        "malformed": run("count", "--c", "1,x", "--i", "1,1").exit_code,
        "dimension": run("count", "--c", "1,1", "--i", "1,1,1").exit_code,
        "budget": run("count", "--c", "1,1", "--i", "9,9", "--bruteforce").exit_code,
        "degenerate": run("bvalue", "--c", "1,0", "--prefix", "0", "--method", "series").exit_code,
        "range": run("poly", "--kind", "delta", "--n", "3", "--k", "5").exit_code,
        "usage": run("count", "--c", "1,1").exit_code,
    }
    assert all(code not in (0, 1) for code in codes.values())
    assert len(set(codes.values())) == len(codes)


def test_error_message_names_bound(run):
    res = run("count", "--c", "1,1", "--i", "9,9", "--bruteforce", "--budget", "10")
    assert res.exit_code == 5
    assert "10" in res.stderr and "budget" in res.stderr.lower()


def test_verify_star_json(run):
    res = run("verify", "--identity", "star", "--max-n", "30", "--format", "json")
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["status"] == "pass" and data["identity"] == "star"
    assert data["counterexample"] is None and isinstance(data["elapsed_ms"], int)
    rep = IdentityReport.from_dict(data)
    assert IdentityReport.from_dict(json.loads(json.dumps(rep.to_dict()))) == rep


def test_verify_several_gives_list(run):
    res = run("verify", "--identity", "known_s1", "--identity", "coefs", "--max-n", "6", "--format", "json")
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert [d["identity"] for d in data] == ["known_s1", "coefs"]


def test_verify_pretty_and_csv(run):
    res = run("verify", "--identity", "colyrel", "--max-n", "5")
    assert res.exit_code == 0 and res.stdout.startswith("PASS")
    res = run("verify", "--identity", "colyrel", "--max-n", "5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(res.stdout)))
    assert rows[0]["status"] == "pass"


def test_out_file(run, tmp_path):
    target = tmp_path / "poly.json"
    res = run("poly", "--kind", "gamma", "--k", "3", "--n", "4", "--format", "json", "--out", str(target))
    assert res.exit_code == 0 and res.stdout == ""
    data = json.loads(target.read_text())
    assert data["coefficients"] == ["16", "-24", "6"]


def test_poly_delta(run):
    res = run("poly", "--kind", "delta", "--n", "3", "--k", "1", "--format", "json")
    assert json.loads(res.stdout)["coefficients"] == ["2", "-3", "1"]


def test_table(run):
    res = run("table", "--kind", "eulerian", "--rows", "4", "--format", "json")
    rows = json.loads(res.stdout)["rows"]
    assert rows[3]["values"] == ["1", "11", "11", "1"]
    res = run("table", "--kind", "stirling1", "--rows", "5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(res.stdout)))
    assert {"kind": "stirling1", "row": "5", "col": "4", "value": "-10"} in rows
    res = run("table", "--kind", "stirling2", "--rows", "3")
    assert res.stdout.splitlines()[-1].split() == ["3:", "1", "3", "1"]


def test_bvalue(run):
    res = run("bvalue", "--c", "1,1,1", "--prefix", "1,1")
    assert res.exit_code == 0 and res.stdout.startswith("54")
    res = run("bvalue", "--c", "1,1,1", "--prefix", "1,1", "--method", "operator", "--format", "json")
    data = json.loads(res.stdout)
    assert data["value"] == "54" and data["provenance"] == "operator_exact"
    res = run("bvalue", "--c", "1,1", "--prefix", "1", "--method", "series", "--trunc", "60", "--format", "json")
    assert abs(F(json.loads(res.stdout)["value"]) - 4) < F(1, 10**12)


def test_limit(run):
    res = run("limit", "--c", "1,1", "--prefix", "1", "--steps", "30", "--tol", "1e-6", "--format", "csv")
    assert res.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(res.stdout)))
    assert len(rows) == 30
    assert F(rows[19]["error"]) == F(23, 2**20)
    res = run("limit", "--c", "1,1", "--prefix", "1", "--steps", "10", "--tol", "1e-6")
    assert res.exit_code == 1 and "FAIL" in res.stdout
    assert run("limit", "--c", "1,1", "--prefix", "1", "--tol", "abc").exit_code == 3


def test_parse_vector():
    assert parse_vector("1,2,3", "c") == (1, 2, 3)
    with pytest.raises(MalformedInput):
        parse_vector("1,-2", "c")
