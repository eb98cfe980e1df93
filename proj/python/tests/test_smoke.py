import json
import os
import pathlib

import pytest

import sosq

SAMPLES = pathlib.Path(os.environ.get("SOSQ_SAMPLES_DIR", pathlib.Path(__file__).resolve().parents[2] / "samples"))


def load(name):
    return json.loads((SAMPLES / name).read_text())


def test_q_length():
    assert sosq.q_length("7") == 4
    assert sosq.q_length("1/2") == 2
    assert sosq.q_length("0") == 0
    assert sosq.q_length("9") == 1
    assert sosq.q_length("-3") is None


def test_q_sos_witness_sums_back():
    from fractions import Fraction

    for q in ["7", "3/5", "1/2", "1000"]:
        w = [Fraction(c) for c in sosq.q_sos_witness(q)]
        assert sum(c * c for c in w) == Fraction(q)
        assert len(w) == sosq.q_length(q)


def test_rational_roots():
    assert sosq.rational_roots("x^2 - 2") == []
    assert sosq.rational_roots("x^2 - x") == ["0", "1"]
    assert sosq.rational_roots("2*x - 3") == ["3/2"]


def test_square_tests():
    assert sosq.square_test("x^2 + 2*x + 1")
    assert not sosq.square_test("1 + x^2")
    assert not sosq.square_test("1 + x^2", "x^3 - x")
    assert sosq.square_test("x^3 - x", "x^3 - x")


def test_fourth_power_obstruction():
    assert sosq.fourth_power_obstruction("6")
    assert not sosq.fourth_power_obstruction("7")


def test_verify_samples():
    assert sosq.verify(load("plane_two_squares.json"))
    bad = load("plane_two_squares.json")
    bad["entries"][0]["num"] = "x*y"
    assert not sosq.verify(bad)


def test_clear_keeps_irreducible_denominator():
    out = sosq.clear(load("rotation_over_qx.json"))
    assert out["g"] == "x^2 + 1"
    assert len(out["entries"]) == 2
    assert sosq.verify(out)


def test_descend_univariate():
    out = sosq.descend(load("univariate_rotation.json"))
    assert all(e["den"] == "1" for e in out["entries"])
    assert out["denominator_degrees"][-1] == 0


def test_scale_and_gram():
    out = sosq.scale(load("scale_rational_target.json"))
    assert out["target"] == "y^2 + 1"
    g = sosq.gram(load("gram/diagonal.json"))
    assert [e["num"] for e in g["entries"]] == ["1", "x", "x", "x", "x^2"]


def test_certify_seven():
    cert = sosq.certify(load("seven.json"))
    assert cert["exact"] and cert["upper"]["n"] == 4


def test_errors_are_value_errors():
    with pytest.raises(sosq.SosqError):
        sosq.normalize("x^2 + 1.5")
    with pytest.raises(ValueError):
        sosq.verify("{not json")
