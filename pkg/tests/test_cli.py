"""The command-line frontend: outputs, exit codes, determinism."""
import io
import json
import subprocess
import sys

import pytest

from cremona_involutions.cli import cli_dispatch


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, rep = cli_dispatch(list(argv), stdout=out, stderr=err)
    return code, rep, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, rep, out, _ = run(*argv, "--json")
    return code, json.loads(out[out.index("{"):])


def test_enumerate_eighteen_words():
    code, d = run_json("graph", "enumerate", "--max-sl", "5", "--kind", "delpezzo")
    assert code == 0 and len(d["data"]["words"]) == 18 and d["schema"] == 1


def test_counts_example():
    code, d = run_json("graph", "counts", "--word", "P2 -2,1-> D8 -3,1-> D6", "--q", "2")
    assert code == 0 and d["data"]["counts"] == [7, 5, 3]


def test_identity_has_no_factors():
    code, d = run_json("qform", "factor")
    assert code == 0 and d["data"]["factorizations"][0]["factors"] == []


def test_isotropic_factor_request_fails_checks():
    code, _, out, _ = run("qform", "factor", "--field", "F5", "--random", "2")
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize("argv, field", [
    (["bogus"], "argv"),
    (["field", "--field", "F6"], "--field"),
    (["qform", "factor", "--form", "x^3"], "--form"),
    (["graph", "counts", "--word", "P2 -9,1-> D8", "--q", "2"], "--word"),
    (["graph", "counts", "--word", "P2 -2,1-> D8"], "--q"),
    (["jonq22", "gen", "--L", "x^2+1", "--lambda", "zz"], "--lambda"),
    (["pieces", "show", "nope"], "name"),
    (["reduce", "--word", "P2 -2,1-> D8 -1,2-> P2", "--field", "f3"], "--field"),
])
def test_usage_errors_name_the_field(argv, field):
    code, _, _, err = run(*argv)
    assert code == 2 and err.startswith(f"usage error: {field}")


def test_byte_identical_reports(tmp_path):
    argv = ["qform", "factor", "--field", "F5", "--form", "x^2-2*y^2", "--vars", "x,y", "--random", "4",
            "--seed", "3"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(*argv, "--out", str(a))[0] == 0
    assert run(*argv, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_timing_only_on_request():
    _, d = run_json("pieces", "validate")
    assert "timing" not in d
    code, _, out, _ = run("pieces", "validate", "--json", "--timing")
    assert "timing" in json.loads(out[out.index("{"):])


@pytest.mark.parametrize("argv", [
    ["field", "--field", "F9", "--eval", "t0^2"],
    ["qform", "defect", "--field", "F2", "--form", "x^2+x*y+y^2+z^2"],
    ["qform", "isotropy", "--form", "x^2+y^2-z^2"],
    ["map", "compose", "--f", "y*z;x*z;x*y", "--g", "y*z;x*z;x*y"],
    ["map", "involution", "--f", "y*z;x*z;x*y"],
    ["map", "involution", "--f", "y*z;x*z;2*x*y", "--base-points", "[[1,0,0],[0,1,0],[0,0,1]]"],
    ["fib", "build", "--kind", "2+2", "--field", "F5", "--data", "2,0,1;3,0,1"],
    ["fib", "bridge", "--kind", "4", "--field", "F5", "--samples", "2"],
    ["fib", "factor", "--kind", "4", "--field", "F2", "--samples", "2"],
    ["jonq22", "gen", "--L", "x^2+1", "--Lp", "x^2+1", "--lambda", "th+1"],
    ["jonq22", "check", "--L", "3,0,1", "--char", "5", "--samples", "1"],
    ["graph", "classify", "--word", "P2 -2,1-> D8 -1,2-> P2"],
    ["graph", "validate", "--word", "P2 -I1-> C8 -d,d-> C8 -III1-> P2"],
    ["pieces", "list"],
    ["pieces", "show", "<P2,2,3>"],
    ["reduce", "--word", "P2 -2,1-> D8 -3,1-> D6 -3,3-> D6 -1,3-> D8 -1,2-> P2", "--field", "f2"],
])
def test_subcommands_pass(argv):
    code, d = run_json(*argv)
    assert code == 0 and d["ok"] and d["schema"] == 1
    assert all(r["pass"] for r in d["results"])


def test_rejected_lambda_is_a_check_failure():
    code, d = run_json("jonq22", "gen", "--L", "x^2-2", "--Lp", "x^2-3", "--lambda", "2")
    assert code == 1 and not d["ok"]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "cremona_involutions", "graph", "counts", "--word",
                        "P2 -2,1-> D8 -3,1-> D6", "--q", "2"], capture_output=True, text=True)
    assert p.returncode == 0 and "[7, 5, 3]" in p.stdout
