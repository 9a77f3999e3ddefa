"""Exact field arithmetic over Q and F_p."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grasgk.scalar import (
    FieldMismatchError,
    FieldSpec,
    InvalidFieldError,
    Scalar,
    add,
    inv,
    mul,
)

Q = FieldSpec(0)
F5 = FieldSpec(5)


def test_field_validation():
    FieldSpec(0)
    FieldSpec(3)
    FieldSpec(101)
    for bad in (2, 1, -3, 4, 9, 15):
        with pytest.raises(InvalidFieldError):
            FieldSpec(bad)


def test_rational_arithmetic_exact():
    a = Scalar.of(Q, 1, 3)
    b = Scalar.of(Q, 1, 6)
    assert (a + b).value == Fraction(1, 2)
    assert (a - b).value == Fraction(1, 6)
    assert (a * b).value == Fraction(1, 18)
    assert (a / b).value == 2


def test_modular_arithmetic():
    a = Scalar(F5, 3)
    b = Scalar(F5, 4)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (-a).value == 2
    assert a.inv().value == 2  # 3*2 = 6 = 1 mod 5
    assert (a ** 4).value == 1


def test_fraction_coercion_mod_p():
    # -1/2 mod 5: inverse of 2 is 3, so -3 = 2
    assert Scalar(F5, Fraction(-1, 2)).value == 2
    with pytest.raises(ZeroDivisionError):
        Scalar(F5, Fraction(1, 5))


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        Scalar.one(Q) + Scalar.one(F5)


def test_zero_inverse_rejected():
    with pytest.raises(ZeroDivisionError):
        inv(Scalar.zero(Q))
    with pytest.raises(ZeroDivisionError):
        inv(Scalar.zero(F5))


def test_immutability():
    a = Scalar.one(Q)
    with pytest.raises(AttributeError):
        a.value = 2


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_field_axioms_q(x, y, w):
    a, b, c = (Scalar(Q, v) for v in (x, y, w))
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert (a + b) + c == a + (b + c)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_field_axioms_f5(x, y, w):
    a, b, c = (Scalar(F5, v) for v in (x, y, w))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    if not a.is_zero():
        assert mul(a, a.inv()) == Scalar.one(F5)


@given(st.integers(1, 4), st.integers(-6, 6))
def test_pow_matches_repeated_mul(v, e):
    a = Scalar(F5, v)
    expected = Scalar.one(F5)
    for _ in range(abs(e)):
        expected = expected * (a if e >= 0 else a.inv())
    assert a ** e == expected
