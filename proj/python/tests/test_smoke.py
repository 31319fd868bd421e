from fractions import Fraction

import pytest

import padiclab

CURVE = {"p": 7, "h": "x^5 - 1", "forms": [{"m": 1, "numerator": "1"}, {"m": 1, "numerator": "x"}]}
SHIFTED = {"p": 7, "h": "x^5 + 5*x^4 + 10*x^3 + 10*x^2 + 5*x",
           "forms": [{"m": 1, "numerator": "1"}, {"m": 1, "numerator": "x + 1"}]}


def test_integrate_encloses_closed_form():
    res = padiclab.integrate(3, [("x", 1)], depth=6)
    assert padiclab.exact(res["lower"]) <= Fraction(3, 4) <= padiclab.exact(res["upper"])
    tail = padiclab.integrate(5, [("x", "-1/2")], depth=3)
    assert tail["exact"]
    assert abs(tail["lower"]["decimal"] - (1 - 1 / 5) / (1 - 5 ** -0.5)) < 1e-12
    units = padiclab.integrate(3, [("x", 1)], depth=3, coset=(1, [1]))
    assert padiclab.exact(units["lower"]) == Fraction(1, 3)


def test_errors_raise_value_error():
    with pytest.raises(ValueError):
        padiclab.integrate(3, [("x^2 - x^2", 1)])
    with pytest.raises(padiclab.DomainError):
        padiclab.count_points(12, "x0 + x1")


def test_pseudonorm():
    res = padiclab.pseudonorm(CURVE, depth=4)
    assert res["genus"] == 2
    assert padiclab.exact(res["pseudonorm"]["lower"]) == Fraction(400, 399)


def test_equimeasure():
    assert padiclab.equimeasure(CURVE, SHIFTED)["compare"]["verdict"] == "EQUAL"


def test_witness_and_fourier():
    w = padiclab.witness(3, 1)
    assert w["verification"]["ok"]
    assert w["fourier_nonvanish"]["found"]
    fn = {"p": 3, "cosets": [{"center": 0, "level": 0, "value": 1}]}
    res = padiclab.fourier(fn, ["0", "1/3"])
    assert res["values"][0]["value"]["re"] == pytest.approx(1.0)
    assert abs(res["values"][1]["value"]["abs"]) < 1e-12
    assert res["inversion_error"] <= 1e-9


def test_finite_fields_and_bounds():
    res = padiclab.count_points(5, "x1^2*x2 - x0^3 - x0*x2^2", 3)
    assert res["count"] == 4
    cert = padiclab.verify_nontrivial(37, "x0^4 + x1^4 + x2^4 + x3^4")
    assert cert["ok"]
    assert padiclab.theorem_threshold(2, 3, -3) == 12
    assert padiclab.theorem_threshold(2, 4, 0) == 36
    assert padiclab.surface_threshold(1) == 14400
    assert padiclab.complete_intersection_threshold([3]) == 288
    assert padiclab.hasse_weil_threshold(3) == 36


def test_corpus_single_criterion():
    (row,) = padiclab.corpus([10])
    assert row["passed"]
