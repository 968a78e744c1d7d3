import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from bipcage import graphcore, load_schema
from bipcage.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, UsageError, parse_range, run
from bipcage.feasibility import CSV_COLUMNS


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def invoke_json(capsys, verb, *argv):
    code, out, err = invoke(capsys, verb, *argv, "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema(verb))
    return code, payload


# pretty output

def test_poly(capsys):
    code, out, _ = invoke(capsys, "poly", "H", "--k", "7", "--i", "3")
    assert code == EXIT_OK
    assert out.strip() == "H_3(x) = x^3-12x"


def test_cyclotomic(capsys):
    code, out, _ = invoke(capsys, "cyclotomic", "--l", "5")
    assert code == EXIT_OK
    assert out.splitlines() == ["Phi_5(x) = x^4+x^3+x^2+x+1", "f_5(x) = x^2+x-1"]


def test_factor(capsys):
    code, out, _ = invoke(capsys, "factor", "--coeffs", "[-1,-12,0,1]")
    assert code == EXIT_OK
    assert out.startswith("x^3-12x-1: IRREDUCIBLE")
    code, out, _ = invoke(capsys, "factor", "--coeffs", "[2,-12,0,1]")
    assert "Eisenstein at p = 2" in out


def test_moore(capsys):
    assert invoke(capsys, "moore", "--k", "3", "--g", "6")[1] == "14\nexcess-4 order: 18\n"
    assert invoke(capsys, "moore", "--k", "7", "--g", "6")[1] == "86\nexcess-4 order: 90\n"


def test_excess_graph(capsys):
    code, out, _ = invoke(capsys, "excess-graph", "--graph", "mcgee")
    assert code == EXIT_OK and out.strip() == "[4,4,4,4,4,4]"
    assert invoke(capsys, "excess-graph", "--graph", "robertson")[1].strip() == "[12,4,3]"
    assert "EMPTY" in invoke(capsys, "excess-graph", "--graph", "heawood")[1]


def test_verify_pretty(capsys):
    code, out, _ = invoke(capsys, "verify", "--graph", "pappus")
    assert code == EXIT_OK
    assert "excess=4" in out
    for name in ("partition_identity", "path_identity", "quotient_identity", "annihilator"):
        assert f"{name}: HOLDS" in out
    assert "max residual" in out


def test_scan_pretty(capsys):
    code, out, _ = invoke(capsys, "scan", "--k", "7", "--g", "8..10", "--scope", "bicyclic")
    assert code == EXIT_OK
    assert "NONEXISTENT" in out and "NOT_COVERED" in out
    assert out.splitlines()[-1].startswith("summary: ")


# JSON against the shipped schemas

@pytest.mark.parametrize(
    "verb, argv",
    [
        ("poly", ["F", "--k", "5", "--i", "4"]),
        ("cyclotomic", ["--l", "12"]),
        ("cyclotomic", ["--l", "2"]),
        ("factor", ["--coeffs", "[0,-12,0,1]"]),
        ("factor", ["--coeffs", "[2,-12,0,1]"]),
        ("factor", ["--coeffs", "[-1,-12,0,1]"]),
        ("moore", ["--k", "7", "--g", "6"]),
        ("excess-graph", ["--graph", "pappus"]),
        ("excess-graph", ["--graph", "petersen"]),
        ("verify", ["--graph", "heawood"]),
        ("verify", ["--graph", "petersen"]),
        ("verify", ["--graph", "mcgee", "--dump-matrices"]),
        ("scan", ["--k", "6..9", "--g", "8..12", "--scope", "cyclic,bicyclic,general,excess2"]),
    ],
)
def test_json_matches_schema(capsys, verb, argv):
    code, payload = invoke_json(capsys, verb, *argv)
    assert code == EXIT_OK


def test_verify_json_content(capsys):
    _, payload = invoke_json(capsys, "verify", "--graph", "pappus")
    assert payload["ok"] and payload["failed"] == []
    assert payload["profile"]["excess"] == 4
    assert payload["excess_graph"]["cycle_lengths"] == [3] * 6
    assert {r["identity"]: r["status"] for r in payload["identities"]} == {
        "partition_identity": "HOLDS", "path_identity": "HOLDS", "quotient_identity": "HOLDS", "annihilator": "HOLDS",
    }
    assert payload["spectrum"]["max_residual"] <= 1e-8
    assert "matrices" not in payload


def test_verify_not_applicable_is_not_a_failure(capsys):
    code, payload = invoke_json(capsys, "verify", "--graph", "petersen")
    assert code == EXIT_OK
    assert {r["status"] for r in payload["identities"]} == {"NOT_APPLICABLE"}


def test_verify_dump_matrices(capsys):
    _, payload = invoke_json(capsys, "verify", "--graph", "pappus", "--dump-matrices")
    assert len(payload["matrices"]["A"]) == 18
    assert sum(map(sum, payload["matrices"]["E"])) == 36


# CSV and --out

def test_scan_csv(capsys, tmp_path):
    out = tmp_path / "table.csv"
    code, stdout, _ = invoke(
        capsys, "scan", "--k", "6..20", "--g", "8..16", "--scope", "cyclic,bicyclic,general", "--format", "csv",
        "--out", str(out),
    )
    assert code == EXIT_OK and stdout == ""
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 1 + 15 * 5 * 3
    assert rows[1][:4] == ["6", "8", "CYCLIC_EXCESS4", "OPEN"]


def test_out_file_for_json(capsys, tmp_path):
    out = tmp_path / "m.json"
    assert run(["moore", "--k", "3", "--g", "6", "--format", "json", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["moore_bound"] == 14


def test_graph6_file_input(capsys, tmp_path):
    path = tmp_path / "g.g6"
    path.write_text(graphcore.write_graph6(graphcore.petersen()) + "\n" + graphcore.write_graph6(graphcore.pappus()) + "\n")
    code, payload = invoke_json(capsys, "verify", "--graph6-file", str(path), "--index", "1")
    assert code == EXIT_OK
    assert payload["graph"]["name"] == "g.g6" and payload["graph"]["n"] == 18


# exit codes

@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nope"],
        ["poly", "Q", "--k", "7", "--i", "3"],
        ["poly", "H", "--k", "1", "--i", "3"],
        ["factor", "--coeffs", "[1.5]"],
        ["factor", "--coeffs", "[3]"],
        ["moore", "--k", "1", "--g", "6"],
        ["moore", "--k", "3", "--g", "6", "--format", "csv"],
        ["verify"],
        ["verify", "--graph", "nope"],
        ["verify", "--graph", "pappus", "--tol", "0"],
        ["verify", "--graph", "pappus", "--graph6-file", "x.g6"],
        ["verify", "--graph6-file", "/nonexistent/file.g6"],
        ["scan", "--k", "a..b", "--g", "8"],
        ["scan", "--k", "7", "--g", "9"],
        ["scan", "--k", "7", "--g", "8", "--scope", "weird"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert invoke(capsys, *argv)[0] == EXIT_USAGE


def test_graph6_index_out_of_range(capsys, tmp_path):
    path = tmp_path / "one.g6"
    path.write_text("Cr\n")
    code, _, err = invoke(capsys, "verify", "--graph6-file", str(path), "--index", "3")
    assert code == EXIT_USAGE and "out of range" in err


def test_malformed_graph6_is_a_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.g6"
    path.write_text("C\n")
    assert invoke(capsys, "verify", "--graph6-file", str(path))[0] == EXIT_USAGE


def test_verification_failure_exit_1(capsys, monkeypatch):
    from bipcage import spectral

    def broken(g):
        return spectral.IdentityReport("path_identity", spectral.FAILS, (0, 0, 1, 2))

    monkeypatch.setattr(spectral, "verify_path_identity", broken)
    code, out, _ = invoke(capsys, "verify", "--graph", "pappus")
    assert code == EXIT_FAIL
    assert "first discrepancy at [0, 0, 1, 2]" in out and "FAILED: path_identity" in out


def test_help_exits_0(capsys):
    assert invoke(capsys, "--help")[0] == EXIT_OK


def test_parse_range():
    assert parse_range("6..9") == [6, 7, 8, 9]
    assert parse_range("7") == [7]
    assert parse_range("6,8, 10") == [6, 8, 10]
    with pytest.raises(UsageError):
        parse_range("")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bipcage", "moore", "--k", "3", "--g", "6"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "14"
