from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strandalg.coefficients import CoefficientModel, format_coefficient


def test_mixed_folds_p_into_integers():
    m = CoefficientModel("mixed", 3, ["p", "t"], 3)
    p, t = m.var(0), m.var(1)
    assert p * p == m.const(9)
    assert p ** 4 == m.zero()
    assert (p * t * t * t).is_zero()
    assert p * t * t == m.element({(0, 2): 3})
    assert m.const(-1).terms == (((0, 0), 80),)
    assert m.digits(80, (0, 0)) == [(0, 2), (1, 2), (2, 2), (3, 2)]


def test_equal_truncates_degree():
    m = CoefficientModel("equal", 5, ["s", "u"], 2)
    s, u = m.var(0), m.var(1)
    assert (s * u * s).is_zero()
    assert (s + u) ** 2 == m.element({(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert m.const(7) == m.const(2)


def test_rationals_in_characteristic_zero():
    m = CoefficientModel("equal", 0, ["s"], 3)
    half = m.const(Fraction(1, 2))
    assert half + half == m.one()
    assert format_coefficient(m.element({(1,): Fraction(-3, 2)})) == "-3/2*s"


def test_fraction_inverts_mod_p():
    m = CoefficientModel("equal", 5, ["s"], 1)
    assert m.const(Fraction(1, 2)) * 2 == m.one()
    with pytest.raises(ZeroDivisionError):
        m.const(Fraction(1, 5))


def test_model_validation():
    with pytest.raises(ValueError):
        CoefficientModel("mixed", 0, ["p"], 2)
    with pytest.raises(ValueError):
        CoefficientModel("mixed", 3, [], 2)
    with pytest.raises(ValueError):
        CoefficientModel("equal", 4, ["s"], 2)
    with pytest.raises(ValueError):
        CoefficientModel("equal", 3, ["s", "s"], 2)
    assert CoefficientModel("equal", 0, [], 3).n == 0


def test_order():
    m = CoefficientModel("mixed", 3, ["p", "t"], 4)
    assert m.element({(0, 1): 9}).order() == 3
    assert m.zero().order() == 5


MODELS = [CoefficientModel("equal", 3, ["s", "u"], 3), CoefficientModel("equal", 0, ["s"], 3),
          CoefficientModel("mixed", 3, ["p", "t"], 3), CoefficientModel("mixed", 5, ["p"], 4)]


@st.composite
def coefficients(draw, model):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        exps = tuple(draw(st.integers(0, 2)) for _ in range(model.n))
        terms[exps] = draw(st.integers(-30, 30))
    return model.element(terms)


@st.composite
def model_and_three(draw):
    model = draw(st.sampled_from(MODELS))
    return model, draw(coefficients(model)), draw(coefficients(model)), draw(coefficients(model))


@given(model_and_three())
def test_ring_axioms(data):
    model, a, b, c = data
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == model.zero()


@given(model_and_three())
def test_truncated_regularity(data):
    # s_i * r = 0 at cap D forces r = 0 at cap D - 1
    model, r, _, _ = data
    lower = model.with_degree_cap(model.degree_cap - 1)
    for i in range(model.n):
        if (model.var(i) * r).is_zero():
            assert lower.element(dict(r.terms)).is_zero()
