import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from ehpkit import FGAbGroup, GWElement, run

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_gw_unit_example():
    assert call("gw", "unit", "--a", "3", "--b", "2", "--primes", "2", "--field", "real") == (0, "unit: true\n", "")
    code, out, _ = call("gw", "unit", "--a", "2", "--b", "1", "--primes", "all")
    assert (code, out) == (0, "unit: false\n")


def test_comb_eo_example():
    assert call("comb", "eo", "--s", "2")[:2] == (0, '{"E":2,"O":1}\n')
    assert call("--format", "text", "comb", "eo", "--s", "3")[1] == "E = 8\nO = 7\n"


def test_verify_example():
    code, out, _ = call("verify", "example-6-5")
    assert code == 0
    assert "det = 0" in out and " 3  0  0  0" in out and "rank of the 16x16 matrix = 12" in out
    assert out == (GOLDEN / "cli_verify_example.txt").read_text(encoding="utf-8")


def test_verify_failure_exits_one(monkeypatch):
    import ehpkit.cli as cli

    monkeypatch.setattr(cli, "example_james_hopf_perms", lambda: [(1, 2, 3, 4)])
    code, out, _ = call("verify", "example-6-5")
    assert code == 1 and "det = 1" in out and "FAIL" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["gw", "unit", "--a", "3"],
        ["gw", "unit", "--a", "3", "--b", "1", "--bogus"],
        ["gw", "unit", "--a", "x", "--b", "1"],
        ["gw", "unit", "--a", "3", "--b", "1", "--primes", "4"],
        ["gw", "unit", "--a", "3", "--b", "1", "--field", "complex"],
        ["nosuch"],
        [],
        ["comb", "eo", "--s", "13"],
        ["comb", "eo", "--s", "-1"],
        ["ehp", "table", "--n", "2", "--q", "0", "--v", "0", "--rows", "0"],
        ["ehp", "table", "--n", "1", "--q", "0", "--v", "0"],
        ["--format", "csv", "gw", "unit", "--a", "1", "--b", "0"],
        ["--format", "yaml", "comb", "eo", "--s", "2"],
    ],
)
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err


def test_help_lists_all_groups(capsys):
    code, _, _ = call("--help")
    text = capsys.readouterr().out
    assert code == 0
    for group in ("gw", "comb", "stable", "ss", "james", "ehp", "verify"):
        assert group in text


def test_max_enum(monkeypatch):
    monkeypatch.setenv("EHP_MAX_ENUM", "10")
    assert call("comb", "eo", "--s", "3")[0] == 2
    assert call("comb", "eo", "--s", "2")[0] == 0
    monkeypatch.setenv("EHP_MAX_ENUM", "lots")
    assert call("comb", "eo", "--s", "2")[0] == 2


def test_even_count():
    code, out, _ = call("comb", "even-count", "--x", "4", "--y", "1", "--enumerate")
    assert code == 0 and json.loads(out) == {"x": 4, "y": 1, "even": 3, "enumerated": 3}


def test_stable_commands():
    code, out, _ = call("stable", "invertible", "--n", "2", "--q", "0", "--primes", "all", "--field", "real")
    assert (code, out) == (0, "FailsAt(3)\n")
    code, out, _ = call("--format", "json", "stable", "invertible", "--n", "3", "--primes", "all")
    assert json.loads(out) == {"result": "Invertible"}
    code, out, _ = call("--format", "json", "stable", "diag", "--n", "2", "--q", "1", "--imax", "5")
    entries = json.loads(out)["diagonal"]
    assert GWElement.from_json(entries[5]) == GWElement.from_json({"a": "8", "b": "-7", "primes": [2]})
    assert call("--format", "csv", "stable", "diag", "--n", "2", "--q", "1", "--imax", "10", "--primes", "all")[1] == (
        GOLDEN / "cli_stable_diag.csv"
    ).read_text(encoding="utf-8")


def test_ehp_commands():
    code, out, _ = call("ehp", "condition", "--n", "2", "--q", "0", "--primes", "all", "--field", "real")
    assert (code, out) == (0, "FailsAt(1)\n")
    code, out, _ = call("--format", "json", "ehp", "condition", "--n", "2", "--q", "1", "--primes", "all", "--field", "nonreal")
    assert json.loads(out)["holds"] is True
    code, out, _ = call("ehp", "table", "--n", "2", "--q", "1", "--v", "2", "--rows", "20", "--cols", "10", "--format", "csv")
    assert out == (GOLDEN / "ehp_n2_q1_v2_20x10.csv").read_text(encoding="utf-8")


def test_james_json_schema():
    code, out, _ = call("--format", "json", "james", "homology", "--space", "s2", "--n", "3", "--cap", "6")
    assert out == (GOLDEN / "cli_james_s2_n3.json").read_text(encoding="utf-8")
    data = json.loads(out)
    groups = [FGAbGroup.from_invariants(d["invariants"], d["rank"]) for d in data["degrees"]]
    assert [str(g) for g in groups] == ["Z", "0", "Z", "0", "Z", "0", "Z"]


def test_james_identities_command():
    code, out, _ = call("james", "identities", "--space", "s1", "--n", "2", "--cap", "3")
    assert code == 0 and out.startswith("simplicial identities hold")


def test_ss_commands():
    code, out, _ = call("ss", "page", "--seed", "3", "--r", "2")
    data = json.loads(out)
    assert data["r"] == 2 and all(set(e) == {"i", "j", "invariants", "rank"} for e in data["entries"])
    assert call("ss", "abutment", "--count", "5")[:2] == (0, "E^inf vs graded homology: 5/5 agree\n")
    code, out, _ = call("--format", "json", "ss", "compare", "--count", "5", "--q", "2")
    assert code == 0 and json.loads(out)["violations"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["ehp", "table", "--n", "3", "--q", "1", "--v", "1", "--format", "json"],
        ["--format", "json", "ss", "page", "--seed", "11"],
        ["stable", "diag", "--n", "4", "--q", "3", "--imax", "12"],
    ],
)
def test_deterministic(argv):
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ehpkit", "comb", "eo", "--s", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == '{"E":2,"O":1}\n'
    proc = subprocess.run([sys.executable, "-m", "ehpkit", "gw", "unit"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage:" in proc.stderr
