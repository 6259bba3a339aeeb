from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from dualbreak.cli import EXIT_MATH, EXIT_OK, EXIT_USAGE, main
from dualbreak.codes import Certificate


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_analyze_f5():
    code, out, _ = run("analyze", "--field", "5", "--weight", "euclidean")
    assert code == EXIT_OK
    assert "det = -15" in out and "all hypotheses hold" in out


def test_analyze_f9_fails_distinct_values():
    code, out, _ = run("analyze", "--field", "3^2:2,2,1", "--weight", "cosets:2,1")
    assert code == EXIT_MATH
    assert "q*c_1 = 36, ((q-1)/t)*w_breve^2 = 36" in out
    assert out.rstrip().endswith("hypothesis 'distinct_values' fails")


def test_construct_writes_certificate_and_meta(tmp_path):
    path = tmp_path / "f5.json"
    code, out, _ = run("construct", "--field", "5", "--weight", "0,1,4,4,1", "--out", str(path))
    assert code == EXIT_OK
    assert "rho = 5/8  N = 40  n = 18" in out and "dual A_2 (doubletons): 24 vs 20" in out
    cert = Certificate.from_json(path.read_text())
    assert cert.n == 18
    meta = json.loads((tmp_path / "f5.json.meta.json").read_text())
    assert {"version", "elapsed_s", "created"} <= set(meta)
    # nothing but the two outputs; the temp file was renamed away
    assert sorted(p.name for p in tmp_path.iterdir()) == ["f5.json", "f5.json.meta.json"]

    code, out, _ = run("verify", str(path))
    assert code == EXIT_OK and "certificate verifies" in out


def test_construct_to_stdout_with_options():
    code, out, _ = run("construct", "--field", "5", "--weight", "euclidean", "--rho", "5/4",
                       "--n-scale", "120", "--full-dual")
    assert code == EXIT_OK
    assert "N = 120  n = 60" in out and "first differing dual coefficient: y^2:" in out
    assert out.rstrip().endswith("}")


def test_construct_f9_needs_force():
    args = ("construct", "--field", "3^2:2,2,1", "--weight", "cosets:2,1")
    code, out, _ = run(*args)
    assert code == EXIT_MATH and "rerun with --force" in out
    code, out, _ = run(*args, "--force")
    assert code == EXIT_MATH and "does not separate" in out


def test_construct_from_config(tmp_path):
    ini = tmp_path / "f25.ini"
    ini.write_text("[field]\np = 5\nl = 2\nmodulus = 2,4,1\n[weight]\ncosets = 3,2\n"
                   "[construct]\nrho = 5/6\nforce = true\n")
    code, out, _ = run("construct", "--config", str(ini))
    assert code == EXIT_OK and "n = 62" in out and "1464 vs 864" in out


def test_n_scale_must_be_multiple():
    code, out, _ = run("construct", "--field", "5", "--weight", "euclidean", "--n-scale", "20")
    assert code == EXIT_MATH and "multiple of 40" in out


def test_verify_tampered_and_missing(tmp_path):
    path = tmp_path / "c.json"
    run("construct", "--field", "5", "--weight", "euclidean", "--out", str(path))
    d = json.loads(path.read_text())
    d["witness"]["C"] = 23
    path.write_text(json.dumps(d))
    code, out, _ = run("verify", str(path))
    assert code == EXIT_MATH and "verification failed at 'witness matches claim'" in out
    path.write_text("{}")
    assert run("verify", str(path))[0] == EXIT_MATH
    code, _, err = run("verify", str(tmp_path / "absent.json"))
    assert code == EXIT_USAGE and "cannot read" in err


def test_paper_example_lines():
    code, out, _ = run("paper-example", "t2table")
    assert code == EXIT_OK
    assert "t2table: ok   q = 25: (3/2, 2/3)" in out
    assert out.rstrip().splitlines()[-1].startswith("t2table: all ")
    code, out, _ = run("paper-example", "all")
    assert code == EXIT_OK and "FAIL" not in out
    code, _, err = run("paper-example", "f7")
    assert code == EXIT_USAGE and "unknown example" in err


def test_scan_checkpoint_rerun(tmp_path):
    ck = tmp_path / "ck.json"
    code, out, err = run("scan", "--primes", "5..13", "--ell", "1..3", "--checkpoint", str(ck))
    assert code == EXIT_OK and "12 computed, 0 from checkpoint" in err
    assert out.splitlines()[0] == "p,ell,nondegenerate,c1_ne_c2"
    code, out2, err = run("scan", "--primes", "5..13", "--ell", "1..4", "--checkpoint", str(ck))
    assert "4 computed, 12 from checkpoint" in err
    assert out2.startswith(out.splitlines()[0])
    assert len(json.loads(ck.read_text())["rows"]) == 16
    ck.write_text("not json")
    code, _, err = run("scan", "--primes", "5", "--ell", "1", "--checkpoint", str(ck))
    assert code == EXIT_USAGE and "unreadable checkpoint" in err


def test_scan_json_to_file(tmp_path):
    dest = tmp_path / "scan.json"
    code, out, _ = run("scan", "--primes", "5,7", "--ell", "2", "--format", "json", "--out", str(dest))
    assert code == EXIT_OK and out == ""
    assert len(json.loads(dest.read_text())) >= 1


@pytest.mark.parametrize("argv", [
    ("construct", "--field", "5"),
    ("analyze", "--field", "9", "--weight", "1,1"),
    ("analyze", "--field", "5", "--weight", "0,1,4,4,1", "--config", "/nonexistent.ini"),
    ("scan",),
    ("frobnicate",),
    ("construct", "--field", "5", "--weight", "euclidean", "--rho", "x"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_console_script_version():
    out = subprocess.run([sys.executable, "-m", "dualbreak.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("dualbreak ")
