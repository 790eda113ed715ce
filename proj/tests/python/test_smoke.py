"""Python smoke tests: the bindings and the CLI binary, driven from the
fixture files."""

import json
import os
import subprocess
import sys

import pytest

sys.path.insert(0, os.environ.get("JFORGE_PYTHON_PATH", ""))

import _jforge as jf  # noqa: E402

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.environ.get("JFORGE_FIXTURES", os.path.join(HERE, "..", "..", "fixtures"))
CLI = os.environ.get("JFORGE_CLI", "")


def fixture(name):
    with open(os.path.join(FIXTURES, name), "r", encoding="utf-8") as f:
        return f.read()


def test_wrapper_package_importable():
    wrapper_dir = os.path.join(os.path.dirname(FIXTURES), "python")
    sys.path.insert(0, wrapper_dir)
    import jforge

    assert jforge.format_version() == "jforge/1"
    rep = json.loads(jforge.check(jforge.load(os.path.join(FIXTURES, "affine_r3.json"))))
    assert rep["pass"] is True


def test_check_and_classify_affine_r3():
    affine_r3 = fixture("affine_r3.json")
    rep = json.loads(jf.check(affine_r3))
    assert rep["pass"] is True
    cls = json.loads(jf.classify(affine_r3))
    assert cls["affine"] == "true"
    assert cls["strongly_affine"] == "false"
    assert cls["witnesses"]["strongly_affine"] == ["x2", "x3"]


def test_round_trip_is_byte_identical():
    affine_r3 = fixture("affine_r3.json")
    back = jf.to_jacobi(jf.to_algebroid(affine_r3))
    canonical = json.loads(affine_r3)
    assert json.loads(back) == canonical


def test_triple_round_trip_and_leaf():
    so3 = fixture("so3_triple.json")
    j = jf.from_triple(so3)
    t_back = jf.extract_triple(j)
    star_in = json.loads(so3)["star"]
    star_out = json.loads(t_back)["star"]
    # section names are presentation only; the data must agree
    for key in ("c", "anchor", "rank", "base_chart", "distinguished"):
        assert star_out[key] == star_in[key]
    geom = json.loads(jf.leaf(so3, ["0", "0", "1"]))
    assert geom["classification"] == "lcs"
    assert geom["omega"] == ["0", "0", "0"]


def test_orbit_conserves_the_casimir():
    so3 = fixture("so3_triple.json")
    casimir = fixture("so3_casimir.json")
    orbit = jf.orbit(so3, [0.0, 0.0, 1.0], steps=200, seed=11, invariants=[casimir])
    assert orbit["rank_constant"] is True
    assert orbit["base_rank"] == 2
    assert max(abs(v - 1.0) for v in orbit["invariants"][0]) < 1e-9


def test_sn_bracket_and_jacobi_bracket():
    affine_r3 = fixture("affine_r3.json")
    x2 = fixture("fn_x2.json")
    x3 = fixture("fn_x3.json")
    out = json.loads(jf.jacobi_bracket(affine_r3, x2, x3))
    assert out["payload"]["components"] == []  # {x2, x3} = 0 on the fixture


def test_precondition_errors_are_typed():
    affine_r3 = fixture("affine_r3.json")
    with pytest.raises(jf.JforgePreconditionError):
        jf.extract_triple(affine_r3)
    with pytest.raises(jf.JforgeParseError):
        jf.check("{}")


@pytest.mark.skipif(not CLI, reason="JFORGE_CLI not set")
def test_cli_exit_codes(tmp_path):
    affine_r3 = os.path.join(FIXTURES, "affine_r3.json")
    r = subprocess.run([CLI, "check", "--input", affine_r3], capture_output=True, text=True)
    assert r.returncode == 0

    r = subprocess.run([CLI, "extract-triple", "--input", affine_r3], capture_output=True, text=True)
    assert r.returncode == 3  # precondition: not strongly-affine

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = subprocess.run([CLI, "check", "--input", str(bad)], capture_output=True, text=True)
    assert r.returncode == 2

    # a failing structure: so(3) bivector plus a constant that breaks Jacobi
    broken = tmp_path / "broken.json"
    data = json.loads(fixture("so3_lie_poisson.json"))
    data["lambda"]["components"][0]["poly"] = [
        {"exponents": [0, 1, 0], "num": "1", "den": "1"}
    ]
    broken.write_text(json.dumps(data))
    r = subprocess.run([CLI, "check", "--input", str(broken)], capture_output=True, text=True)
    assert r.returncode == 1


@pytest.mark.skipif(not CLI, reason="JFORGE_CLI not set")
def test_cli_round_trip(tmp_path):
    affine_r3 = os.path.join(FIXTURES, "affine_r3.json")
    alg = tmp_path / "alg.json"
    back = tmp_path / "back.json"
    subprocess.run([CLI, "to-algebroid", "--input", affine_r3, "--output", str(alg)], check=True)
    subprocess.run([CLI, "to-jacobi", "--input", str(alg), "--output", str(back)], check=True)
    with open(affine_r3) as f1, open(back) as f2:
        assert f1.read() == f2.read()
