import json
import os
import subprocess
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

CLI = os.environ.get("PADICLAB_CLI", "padiclab")
DATA = Path(os.environ.get("PADICLAB_DATA", Path(__file__).resolve().parents[2] / "tools" / "data"))

ENVELOPE = {
    "type": "object",
    "required": ["schema", "command", "parameters", "seed", "status", "result"],
    "properties": {
        "schema": {"type": "string", "pattern": "^padiclab/[a-z-]+/v1$"},
        "command": {"type": "string"},
        "seed": {"type": "integer"},
        "status": {"enum": ["ok", "property-failure", "error"]},
        "result": {"type": ["object", "null"]},
        "timing": {"type": "object"},
    },
}

RADICAL = {
    "type": "object",
    "required": ["exact", "generator", "decimal"],
    "properties": {"exact": {"type": "string"}, "generator": {"type": "string"}, "decimal": {"type": "number"}},
}

INTEGRAL = {
    "type": "object",
    "required": ["lower", "upper", "exact", "bounded", "depth"],
    "properties": {"lower": RADICAL, "exact": {"type": "boolean"}, "bounded": {"type": "boolean"}},
}


def keys(*names):
    return {"type": "object", "required": list(names)}


RESULTS = {
    "integrate": INTEGRAL,
    "pseudonorm": {"type": "object", "required": ["form_check", "pseudonorm"], "properties": {"pseudonorm": INTEGRAL}},
    "equimeasure": keys("equimeasurable", "isometry", "verdicts_agree", "left_measure", "right_measure"),
    "witness": keys("witness", "verification", "fourier_nonvanish"),
    "fourier": keys("function", "values", "inversion_error"),
    "count-points": keys("count", "smoothness"),
    "bounds": keys("profile"),
    "verify-nontrivial": keys("ok", "threshold", "bound_applicable", "section_genus", "surface_points"),
    "corpus": keys("all_passed", "criteria"),
}

CASES = {
    "integrate": ["integrate", "--p", "3", "--r", "1", "--poly", "x", "--depth", "5"],
    "pseudonorm": ["pseudonorm", "--curve", str(DATA / "curve_x5m1.json"), "--depth", "3"],
    "equimeasure": ["equimeasure", "--left", str(DATA / "curve_x5m1.json"), "--right",
                    str(DATA / "curve_x5m1_shift.json"), "--depth", "1", "--window", "1"],
    "witness": ["witness", "--p", "3", "--r", "1"],
    "fourier": ["fourier", "--fn", str(DATA / "step.json"), "--tau", "1/3", "--tau", "0"],
    "count-points": ["count-points", "--field", "5", "--poly", str(DATA / "elliptic_f5.txt"), "--nvars", "3"],
    "bounds": ["bounds", "--profile", "2,4,0", "--ksq", "1", "--genus", "3", "--ci", "3"],
    "verify-nontrivial": ["verify-nontrivial", "--field", "37", "--poly", str(DATA / "fermat_quartic.json")],
    "corpus": ["corpus", "--criteria", "10"],
}


def run(args, check_code=None):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, timeout=300)
    if check_code is not None:
        assert proc.returncode == check_code, proc.stderr
    return proc


def run_json(args, code=0):
    proc = run(args, code)
    return json.loads(proc.stdout)


def exact(x):
    return Fraction(x["exact"]) if isinstance(x, dict) else Fraction(x)


@pytest.mark.parametrize("name", sorted(CASES))
def test_envelope_and_result_schema(name):
    doc = run_json(CASES[name])
    jsonschema.validate(doc, ENVELOPE)
    assert doc["schema"] == f"padiclab/{name}/v1"
    assert doc["command"] == name
    assert doc["status"] == "ok"
    assert "timing" not in doc
    jsonschema.validate(doc["result"], RESULTS[name])


@pytest.mark.parametrize("name", ["integrate", "witness", "count-points", "bounds"])
def test_output_is_reproducible(name):
    first = run(CASES[name], 0).stdout
    second = run(CASES[name], 0).stdout
    assert first == second


def test_timing_is_opt_in():
    doc = run_json([*CASES["witness"], "--timing"])
    assert "timing" in doc
    plain = run_json(CASES["witness"])
    doc.pop("timing")
    assert doc == plain


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    stdout = run(CASES["bounds"], 0).stdout
    run([*CASES["bounds"], "--output", str(target)], 0)
    assert json.loads(target.read_text()) == json.loads(stdout)


def test_usage_errors_name_the_flag():
    proc = run(["integrate", "--r", "1", "--poly", "x"], 1)
    assert "--p" in proc.stderr
    proc = run(["integrate", "--p", "4", "--poly", "x"], 1)
    assert "--p" in proc.stderr
    run(["no-such-command"], 1)
    proc = run(["fourier", "--fn", str(DATA / "step.json")], 1)
    assert "--tau" in proc.stderr


def test_computation_error_envelope():
    proc = run(["integrate", "--p", "3", "--poly", "x^2 - x^2"], 2)
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, ENVELOPE)
    assert doc["status"] == "error"
    assert "zero" in doc["result"]["error"]
    proc = run(["pseudonorm", "--curve", "/nonexistent/curve.json"], 1)
    assert "--curve" in proc.stderr


def test_property_failure_exit_code(tmp_path):
    cone = tmp_path / "cone.json"
    cone.write_text(json.dumps({"poly": "x0^3 + x1^3 + x2^3", "nvars": 4}))
    proc = run(["verify-nontrivial", "--field", "13", "--poly", str(cone)], 3)
    doc = json.loads(proc.stdout)
    assert doc["status"] == "property-failure"
    assert doc["result"]["failed_stage"] == "surface-smoothness"


def test_integrate_values():
    res = run_json(CASES["integrate"])["result"]
    # integral of |x| over Z_3 is (1 - 1/3) / (1 - 1/9) = 3/4
    assert exact(res["lower"]) <= Fraction(3, 4) <= exact(res["upper"])
    res = run_json(["integrate", "--p", "5", "--r", "-1/2", "--poly", "x", "--depth", "3"])["result"]
    assert res["exact"]
    assert res["lower"]["generator"] == "5^(1/2)"
    assert abs(res["lower"]["decimal"] - (1 - 1 / 5) / (1 - 5 ** -0.5)) < 1e-12
    capped = run_json(["integrate", "--p", "5", "--r", "-1/2", "--poly", "x", "--depth", "3", "--no-tails"])
    assert capped["result"]["bounded"] is False
    two = run_json(["integrate", "--p", "3", "--factor", "x0:1", "--factor", "x1:1", "--nvars", "2", "--depth", "4"])
    assert exact(two["result"]["lower"]) <= Fraction(9, 16) <= exact(two["result"]["upper"])
    coset = run_json(["integrate", "--p", "3", "--r", "1", "--poly", "x", "--coset", "1:1", "--depth", "3"])
    assert exact(coset["result"]["lower"]) == Fraction(1, 3)


def test_pseudonorm_values():
    res = run_json(CASES["pseudonorm"])["result"]["pseudonorm"]
    assert exact(res["lower"]) == Fraction(400, 399) == exact(res["upper"])
    res = run_json([*CASES["pseudonorm"], "--form", "1"])["result"]
    assert res["form_check"]["regular"]


def test_equimeasure_verdicts():
    res = run_json(CASES["equimeasure"])["result"]
    assert res["equimeasurable"]["verdict"] == "EQUAL"
    assert res["verdicts_agree"]
    broken = run_json(["equimeasure", "--left", str(DATA / "curve_x5m1.json"), "--right",
                       str(DATA / "curve_x5m1_broken.json"), "--depth", "1", "--window", "1"])
    assert broken["result"]["equimeasurable"]["verdict"] == "NOT-EQUAL"
    assert broken["result"]["verdicts_agree"]


def test_witness_values():
    res = run_json(CASES["witness"])["result"]
    assert res["witness"]["constraint"]["exact"] == "0"
    assert res["fourier_nonvanish"]["found"]
    assert res["fourier_nonvanish"]["tau0"] != "0"
    assert res["fourier_nonvanish"]["magnitude"] >= 1e-6


def test_fourier_values():
    res = run_json(CASES["fourier"])["result"]
    assert res["inversion_error"] <= 1e-9
    assert len(res["values"]) == 2


def test_count_points_values():
    res = run_json(CASES["count-points"])["result"]
    assert res["count"] == 4
    assert res["smoothness"]["verdict"] == "certified-smooth"
    assert res["hasse_weil"]["pass"]
    text = run_json(["count-points", "--field", "5", "--poly", "x1^2*x2 - x0^3 - x0*x2^2", "--nvars", "3"])
    assert text["result"]["count"] == 4
    conic = run_json(["count-points", "--field", "9", "--poly", "x0^2 + x1^2 - x2^2", "--nvars", "3"])
    assert conic["result"]["count"] == 10


def test_bounds_values():
    res = run_json(CASES["bounds"])["result"]
    assert res["profile"]["threshold"] == "36"
    assert res["profile"]["section_genus"] == "3"
    assert res["surface"]["threshold"] == "14400"
    assert res["hasse_weil"]["threshold"] == "36"
    assert res["complete_intersection"]["threshold"] == "288"


def test_verify_nontrivial_values():
    res = run_json(CASES["verify-nontrivial"])["result"]
    assert res["ok"]
    assert res["bound_applicable"]
    assert res["section_genus"] == "3"
    assert res["surface_points"] > 0
