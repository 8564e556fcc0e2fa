from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from patchfreq.cli import main
from patchfreq.patchio import parse_patch

from .conftest import FIXTURES

GOLDEN = FIXTURES.parent / "golden"
RING = str(FIXTURES / "diamond_ring.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_freq_ring_line():
    code, out, _ = run("freq", RING)
    assert code == 0
    assert out.strip() == "(34 - 21*tau)/10 = tau^-8/10 ≈ 0.00212862362522"


def test_freq_json_golden():
    code, out, _ = run("freq", RING, "--orbit", "--json")
    assert code == 0
    assert out == (GOLDEN / "freq_diamond_ring.json").read_text()
    doc = json.loads(out)
    assert doc["orbit_total"]["exact"] == "(34 - 21*tau)/1"


@pytest.mark.parametrize("system, name", [("penrose", "catalog_penrose.json"),
                                          ("ammann-beenker", "catalog_ab.json")])
def test_catalog_golden(system, name):
    code, out, _ = run("catalog", "--system", system)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_missing_file_exit_2():
    code, _, err = run("freq", "nonexistent.json")
    assert code == 2
    assert "nonexistent.json" in err


def test_bad_usage_exit_2():
    assert run("freq")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("scan-configs", "--system", "hex", "--radius", "5")[0] == 2


def test_validation_error_exit_1(tmp_path):
    f = tmp_path / "deep.json"
    f.write_text('{"system":"penrose","tiles":[{"class":"RI1","anchor":[1,1,0,0,0]}]}')
    code, _, err = run("freq", str(f))
    assert code == 1
    assert "AnchorNotShallow" in err


def test_schema_error_exit_1(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"system":"penrose"}')
    assert run("freq", str(f))[0] == 1


def test_scan_configs_penrose():
    code, out, _ = run("scan-configs", "--system", "penrose", "--radius", "30")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 10
    assert lines[-1] == "sum of totals = 1 (exact)"
    for nu in ("(5 - 3*tau)/10", "(-8 + 5*tau)/10", "(18 - 11*tau)/10", "(2 - 1*tau)/10",
               "(-3 + 2*tau)/10", "(13 - 8*tau)/10", "(-21 + 13*tau)/10", "(47 - 29*tau)/10"):
        assert sum(f"nu = {nu}" in line for line in lines) == 1


def test_scan_configs_ab_json():
    code, out, _ = run("scan-configs", "--system", "ab", "--radius", "30", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["sum_is_one"] and doc["sum_of_totals"] == "(1 + 0*sqrt2)/1"


def test_generate_then_freq(tmp_path):
    f = tmp_path / "t.json"
    code, out, _ = run("generate", "--system", "penrose", "--radius", "6", "--seed", "2", "-o", str(f))
    assert code == 0
    p = parse_patch(f)
    assert p.meta["radius"] == 6.0 and p.meta["seed"] == 2
    assert len(p) > 20


def test_lift_all(tmp_path):
    code, out, _ = run("lift", str(FIXTURES / "diamond_ring_geom.json"), "--tol", "2e-3")
    assert code == 0
    assert parse_patch(out) is not None


def test_verify():
    code, out, _ = run("verify", RING, "--radius", "40", "--seed", "1")
    assert code == 0
    assert out.startswith("exact     (34 - 21*tau)/10")
    assert "empirical" in out


def test_render(tmp_path):
    svg = tmp_path / "r.svg"
    assert run("render", RING, "--mode", "dual", "-o", str(svg))[0] == 0
    assert svg.read_text().count('class="dual"') == 18


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "patchfreq.cli", "freq", RING],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "tau^-8/10" in out.stdout
