import io
import json
import subprocess
import sys

import pytest

from k3arith.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    text = out.getvalue()
    return code, (json.loads(text) if text.startswith("{") else text)


def test_eisenstein():
    code, out = call("eisenstein", "--nmax", "2", "--output", "json")
    assert code == 0
    assert out == {"coeffs": [["0", "1"], ["1", "-264"], ["2", "-135432"]]}


def test_weilrep():
    assert call("weilrep", "check", "--d", "1")[0] == 0
    assert call("weilrep", "check", "--d", "3", "--gauss-sign", "-1")[0] == 2


def test_heegner_invariants():
    assert call("heegner", "invariants", "--d", "1", "--a", "1", "--b", "0") == (0, {"n": "-1/4", "gamma": 1})
    assert call("heegner", "invariants", "--d", "1", "--a", "0", "--b", "1")[0] == 1


def test_theta_roundtrip_through_span_test(tmp_path):
    code, th = call("theta", "--d", "1", "--nmax", "4")
    assert code == 0
    path = tmp_path / "forms.json"
    path.write_text(json.dumps([th]))
    code, out = call("heegner", "span-test", "--forms", str(path), "--targets", "1/4:1",
                     "--query", "0:0", "--expect-solvable")
    assert code == 0 and out["coefficients"] == ["1/2"]


def test_span_test_elliptic():
    code, out = call("heegner", "span-test", "--d", "1", "--nmax", "8", "--elliptic", "5", "--query", "0:0")
    assert code == 0 and out["solvable"]


def test_borcherds_scan():
    code, out = call("borcherds-scan", "--d", "2", "--nmax", "6")
    assert code == 0 and out["all_pass"] and out["cells"] > 0
    keys = [(r["n"], r["gamma"]) for r in out["rows"]]
    from fractions import Fraction
    assert keys == sorted(keys, key=lambda k: (Fraction(k[0]), k[1]))


def test_lattice_info():
    code, out = call("lattice", "info", "--d", "3")
    assert code == 0 and out["signature"] == [19, 2] and out["discriminant"]["cyclic_orders"] == [6]


def test_kuga_satake_and_filtration():
    code, out = call("kuga-satake", "verify", "--d", "1")
    assert code == 0 and out["definite_sign"] == -1
    code, out = call("filtration", "check", "--field", "Fp", "--p", "7", "--v", "0,0,1,-1")
    assert code == 0 and out["psp"]["kernel_dim"] == 4


def test_clifford_selftest():
    assert call("clifford", "selftest", "--trials", "5")[0] == 0


def test_usage_errors(tmp_path):
    assert call()[0] == 1
    assert call("theta", "--d", "0", "--nmax", "1")[0] == 1
    assert call("filtration", "check", "--field", "Fp")[0] == 1
    assert call("filtration", "check", "--field", "Fp", "--p", "3")[0] == 1
    assert call("nonsense")[0] == 1


def test_malformed_json_reports_position(tmp_path):
    bad = tmp_path / "lat.json"
    bad.write_text('{"gram": [[0, 1],\n  [1, 0]')
    code, out = call("filtration", "check", "--lattice", str(bad))
    assert code == 1
    assert out["path"] == str(bad) and out["line"] == 2 and out["position"] > 0


def test_table_output():
    code, out = call("lattice", "info", "--d", "1", "--output", "table")
    assert code == 0 and "signature\t[19,2]" in out


def test_determinism_via_subprocess():
    cmd = [sys.executable, "-m", "k3arith", "theta", "--d", "2", "--nmax", "5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["R"] == 8
