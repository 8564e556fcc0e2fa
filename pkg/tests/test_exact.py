from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patchfreq.errors import NotInGoldenSubfield, ZeroValue
from patchfreq.exact import (LAMBDA, ONE, SQRT2, SQRT5, TAU, TAU_G, X, X_FLOAT, ZERO,
                             GoldenExact, QuarticReal, SilverExact, decimal_str, field_ops,
                             power_form, sign_of, to_decimal, to_golden)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)
quartics = st.builds(QuarticReal, rationals, rationals, rationals, rationals)
nonzero_quartics = quartics.filter(lambda q: not q.is_zero())
goldens = st.builds(GoldenExact, rationals, rationals)
silvers = st.builds(SilverExact, rationals, rationals)


def test_minimal_polynomial():
    x2 = X * X
    assert x2 * x2 - QuarticReal(5) * x2 + QuarticReal(5) == ZERO
    assert X_FLOAT**4 - 5 * X_FLOAT**2 + 5 == pytest.approx(0, abs=1e-12)
    # (4x^2 - 10)^2 = 20
    t = QuarticReal(4) * x2 - QuarticReal(10)
    assert t * t == QuarticReal(20)


def test_basis_products():
    assert field_ops("mul", X, X).coeffs == (0, 0, 1, 0)
    assert field_ops("mul", X * X * X, X).coeffs == (-5, 0, 5, 0)
    assert field_ops("div", ONE, X).coeffs == (0, 1, 0, Fraction(-1, 5))


def test_signs_of_examples():
    assert sign_of(ZERO) == 0
    assert sign_of(X * X - QuarticReal(3)) == 1
    assert sign_of(X * X - QuarticReal(4)) == -1


def test_golden_subfield():
    assert to_golden(SQRT5) == GoldenExact(-1, 2)
    assert to_golden(TAU) == TAU_G
    with pytest.raises(NotInGoldenSubfield):
        to_golden(X)
    ring = GoldenExact(Fraction(34, 10), Fraction(-21, 10))
    assert to_golden(ring.to_quartic()) == ring


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@given(quartics, quartics, quartics)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(nonzero_quartics)
def test_inverse(a):
    assert a * a.inverse() == ONE


@given(quartics)
def test_sign_matches_float(a):
    f = float(a)
    if abs(f) > 1e-9:
        assert a.sign() == (1 if f > 0 else -1)
    assert (-a).sign() == -a.sign()


@given(quartics, quartics)
def test_sign_antisymmetric(a, b):
    assert (a - b).sign() == -(b - a).sign()


@settings(max_examples=50)
@given(st.integers(1, 40))
def test_sign_near_zero(k):
    # tau^-k is tiny but positive; subtracting its golden form must cancel exactly
    small = TAU_G ** (-k)
    q = small.to_quartic()
    assert q.sign() == 1
    assert (q - small.to_quartic()).sign() == 0


@given(quartics)
def test_quartic_serialize_roundtrip(a):
    assert QuarticReal.parse(a.serialize()) == a


@given(goldens)
def test_golden_serialize_roundtrip(g):
    assert GoldenExact.parse(g.serialize()) == g


@given(silvers)
def test_silver_serialize_roundtrip(s):
    assert SilverExact.parse(s.serialize()) == s


def test_serialize_format():
    assert GoldenExact(Fraction(34, 10), Fraction(-21, 10)).serialize() == "(34 - 21*tau)/10"
    assert SilverExact(-70, 29).serialize() == "(-70 + 29*sqrt2)/1"


@given(goldens.filter(lambda g: not g.is_zero()))
def test_golden_inverse(g):
    assert g * g.inverse() == GoldenExact(1)


@given(silvers.filter(lambda s: not s.is_zero()))
def test_silver_inverse(s):
    assert s * s.inverse() == SilverExact(1)


@pytest.mark.parametrize("value, text", [
    (GoldenExact(5, -3), "tau^-4"),
    (GoldenExact(1, 1), "tau^2"),
    (SilverExact(-41, 29), "lambda^-5"),  # 29*lambda - 70
    (GoldenExact(Fraction(34, 10), Fraction(-21, 10)), "tau^-8/10"),
    (GoldenExact(Fraction(18, 10), Fraction(-11, 10)), "(2*tau-1)/10*tau^-5"),
])
def test_power_form(value, text):
    assert str(power_form(value)) == text


def test_power_form_zero_raises():
    with pytest.raises(ZeroValue):
        power_form(GoldenExact(0))


def test_lambda_units():
    assert LAMBDA * (SQRT2 - SilverExact(1)) == SilverExact(1)
    assert LAMBDA ** 2 == SilverExact(2) * LAMBDA + SilverExact(1)
    assert TAU_G ** 2 == TAU_G + GoldenExact(1)


def test_decimal_is_correct_despite_cancellation():
    v = GoldenExact(2207, -1364)
    exact = to_decimal(v, 40)
    assert decimal_str(v) == f"{exact:.12g}"
    # plain float evaluation loses digits here, which is why decimals go through Decimal
    assert abs(float(v) - float(exact)) / float(exact) > 1e-13


@given(goldens)
def test_decimal_agrees_with_float(g):
    f = float(g)
    d = float(decimal_str(g))
    assert math.isclose(d, f, rel_tol=1e-9, abs_tol=1e-9)
