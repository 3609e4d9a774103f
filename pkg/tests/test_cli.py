import json
import random
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _corpus import random_boundary, random_simplicial_fan, random_smooth_fan
from toricmmp import examples as ex
from toricmmp.cli import run_command
from toricmmp.divisor import Divisor
from toricmmp.io import (
    ParseError,
    emit_divisor,
    emit_fan,
    emit_subset,
    parse_divisor,
    parse_fan,
    parse_rational,
    parse_subset,
)
from toricmmp.registry import REGISTRY

DATA = Path(__file__).resolve().parents[1] / "src" / "toricmmp" / "data"
seeds = st.integers(0, 10**6)


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def _strip(report):
    return {k: v for k, v in report.items() if k != "timestamp"}


@given(seeds, st.sampled_from([2, 3]))
@settings(max_examples=20, deadline=None)
def test_fan_and_divisor_round_trip(seed, dim):
    rng = random.Random(seed)
    f = random_simplicial_fan(rng, dim)
    B = random_boundary(rng, f)
    fd = parse_fan(emit_fan(f))
    assert fd.fan == f
    assert parse_divisor(emit_divisor(B), fd) == B
    assert emit_fan(fd.fan) == emit_fan(f)


def test_subset_round_trip():
    Y = ex.two_lines()
    fd = parse_fan(emit_fan(Y.fan))
    assert parse_subset(emit_subset(Y), fd).cones == Y.cones


def test_divisor_by_label():
    doc = {"rays": [[1, 0], [0, 1], [-1, -1]], "cones": [[0, 1], [1, 2], [2, 0]], "labels": ["x", "y", "z"]}
    fd = parse_fan(doc)
    D = parse_divisor({"coeffs": {"x": "1/2", "z": 2}}, fd)
    assert D[(1, 0)] == Fraction(1, 2) and D[(-1, -1)] == 2 and D[(0, 1)] == 0


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", True, None, "1/0"])
def test_rationals_must_be_exact(bad):
    with pytest.raises(ParseError):
        parse_rational(bad, "x")


@pytest.mark.parametrize("doc,location", [
    ({"rays": [[1, 0], [0, 1]], "cones": [[0, 99]]}, "cones[0][1]"),
    ({"rays": [[1, 0], [0, 1, 2]], "cones": [[0, 1]]}, "rays[1]"),
    ({"rays": [[1, 0], [0, 1]]}, "cones"),
    ({"rays": [[2, 0], [0, 1]], "cones": [[0, 1]]}, "rays[0]"),
    ({"rays": [[1, 0], [0, 1], [1, 1], [-1, 2]], "cones": [[0, 1], [2, 3]]}, "cones"),
])
def test_parse_errors_name_the_field(doc, location):
    with pytest.raises(ParseError) as e:
        parse_fan(doc)
    assert e.value.location == location


def test_exported_data_matches_registry():
    for k, rec in REGISTRY.items():
        p = DATA / f"{k}.fan.json"
        assert p.exists(), p
        assert parse_fan(str(p)).fan == rec.documents()["fan"]


def test_validate_and_exit_codes(tmp_path):
    good = str(DATA / "logflip-5.2.fan.json")
    code, report, _ = run_command(["validate", "--fan", good])
    assert code == 0 and report["results"]["interior_walls"] == 1 and not report["results"]["complete"]
    bad = _write(tmp_path, "bad.json", {"rays": [[1, 0], [0, 1]], "cones": [[0, 99]]})
    code, report, text = run_command(["validate", "--fan", bad])
    assert code == 2 and report is None and "cones[0][1]" in text
    assert run_command(["verify", "no-such-example"])[0] == 2
    assert run_command([])[0] == 2
    assert run_command(["mmp"])[0] == 2


def test_mmp_command_on_francia():
    code, report, _ = run_command(["mmp", "--fan", str(DATA / "francia-5.1.fan.json"), "--format", "json"])
    assert code == 0
    assert report["results"]["flips"] == 1
    assert report["results"]["outcome"] == "Mori fiber space"


def test_cohom_command(tmp_path):
    fan = _write(tmp_path, "p1.json", {"rays": [[1], [-1]], "cones": [[0], [1]]})
    div = _write(tmp_path, "d.json", {"coeffs": ["-2", "0"]})
    code, report, _ = run_command(["cohom", "--fan", fan, "--divisor", div])
    assert code == 0 and report["results"]["h"] == [0, 1]
    assert run_command(["cohom", "--fan", fan, "--divisor", div, "--variant", "ideal"])[0] == 2


def test_polyhedron_command(tmp_path):
    fan = _write(tmp_path, "p2.json", emit_fan(ex.p2()))
    sub = _write(tmp_path, "y.json", {"cones": [[0], [1], [2]]})
    div = _write(tmp_path, "d.json", emit_divisor(Divisor(ex.p2(), {(1, 0): 1})))
    code, report, _ = run_command(["polyhedron", "--fan", fan, "--subset", sub, "--divisor", div])
    assert code == 0
    assert report["results"]["h"] == [3, 0, 0]
    assert all(a["passed"] for a in report["assertions"])


@pytest.mark.parametrize("example_id", sorted(REGISTRY))
def test_verify_command(example_id):
    code, report, text = run_command(["verify", example_id])
    assert code == 0, text
    assert report["results"]["passed"] == report["results"]["total"] > 0


@given(seeds)
@settings(max_examples=5, deadline=None)
def test_reports_are_deterministic(seed):
    import tempfile

    rng = random.Random(seed)
    f = random_smooth_fan(rng, 2)
    with tempfile.TemporaryDirectory() as d:
        p = Path(d) / "f.json"
        p.write_text(json.dumps(emit_fan(f)))
        for cmd in (["mori"], ["classify"], ["mmp"]):
            a = run_command(cmd + ["--fan", str(p), "--format", "json"])
            b = run_command(cmd + ["--fan", str(p), "--format", "json"])
            assert a[0] == b[0] == 0
            assert _strip(a[1]) == _strip(b[1])


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "toricmmp.cli", "list-examples", "--format", "json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert set(json.loads(out.stdout)["results"]) == set(REGISTRY)
