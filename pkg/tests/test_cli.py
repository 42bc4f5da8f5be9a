import io
import json
import subprocess
import sys

import pytest

from permcodes.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_mindist_json():
    code, out = run("mindist", "--group", "s6", "--tuple", "1,2", "--format", "json", "--bruteforce")
    assert code == EXIT_OK
    res = json.loads(out)
    assert res["delta_formula"] == res["delta_bruteforce"] == 8
    assert res["delta_rep"] == [4, 4]
    assert res["code_size"] == 720


def test_mindist_csv():
    code, out = run("mindist", "--group", "a6", "--reps", "1,2")
    assert code == EXIT_OK
    rows = dict(line.split(",", 1) for line in out.strip().splitlines()[1:])
    assert rows["delta_formula"] == "8"


def test_distribution_csv():
    code, out = run("distribution", "--group", "psl32", "--tuple", "1,2")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "distance,count"
    pairs = [tuple(map(int, l.split(","))) for l in lines[1:]]
    assert pairs[0] == (0, 1)
    assert sum(c for _, c in pairs) == 168


def test_usage_errors(capsys):
    assert run("mindist", "--group", "hs")[0] == EXIT_USAGE
    assert run("mindist", "--group", "s6", "--tuple", "1,3")[0] == EXIT_USAGE
    assert run("mindist", "--group", "s6", "--tuple", "a,b")[0] == EXIT_USAGE
    assert run("frobnicate")[0] == EXIT_USAGE
    assert run("tables", "--only", "nope")[0] == EXIT_USAGE
    assert run("verify", "--suite", "nope")[0] == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_group_file(tmp_path):
    f = tmp_path / "s4.txt"
    f.write_text("degree 4\n(1,2,3,4)\n(1,2)\n")
    code, out = run(
        "mindist", "--group", str(f), "--subgroup", "(1,2,3);(1,2)", "--tuple", "1,2",
        "--format", "json", "--bruteforce",
    )
    assert code == EXIT_OK
    res = json.loads(out)
    assert res["order"] == 24 and res["length"] == 8
    assert res["delta_formula"] == res["delta_bruteforce"]


def test_group_file_bad_subgroup(tmp_path):
    f = tmp_path / "s3.txt"
    f.write_text("degree 3\n(1,2,3)\n")
    assert run("mindist", "--group", str(f), "--subgroup", "(1,2)", "--tuple", "1,2")[0] == EXIT_USAGE


def test_byte_identical_repeat():
    a = run("tables", "--only", "a6", "--format", "json")
    b = run("tables", "--only", "a6", "--format", "json")
    assert a == b and a[0] == EXIT_OK


def test_tables_mismatch_exit(tmp_path):
    from importlib import resources

    src = resources.files("permcodes").joinpath("data", "a6.csv").read_text()
    (tmp_path / "a6.csv").write_text(src.replace("4,4,8", "4,5,9", 1))
    code, out = run("tables", "--only", "a6", "--expected-dir", str(tmp_path))
    assert code == EXIT_MISMATCH
    assert "MISMATCH" in out and "a6: column" in out


def test_verify_selected_suites():
    code, out = run("verify", "--suite", "psl32", "--suite", "determinism", "--format", "json")
    assert code == EXIT_OK
    v = json.loads(out)
    assert v["ok"] and set(v["suites"]) == {"psl32", "determinism"}


def test_asl2r_audit():
    code, out = run("asl2r", "--f", "2", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["ok"]


def test_asl2r_reps_csv():
    code, out = run("asl2r", "--f", "2", "--emit", "reps")
    assert code == EXIT_OK
    assert out.startswith("class,")


def test_neighbours_a6():
    code, out = run("neighbours", "--group", "a6", "--format", "json")
    assert code == EXIT_OK
    res = json.loads(out)
    assert res["orbits_full"] == [21600]


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "permcodes", "mindist", "--group", "s6", "--tuple", "1", "--format", "json"],
        capture_output=True, text=True,
    )
    assert p.returncode == 0
    assert json.loads(p.stdout)["delta_formula"] == 2
