from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qfv.errors import FieldError
from qfv.fields import QQ, Fp, PrimeField, parse_field

F7 = PrimeField(7)


def test_parse_field():
    assert parse_field("Q") is QQ
    assert parse_field("F5") == PrimeField(5)
    assert parse_field("5") == PrimeField(5)
    assert parse_field(3) == PrimeField(3)
    for bad in ("F4", "R", "F1", 2**31 + 11):
        with pytest.raises(FieldError):
            parse_field(bad)


def test_rationals_are_reduced():
    x = QQ("-6/4")
    assert x == Fraction(-3, 2) and x.denominator == 2
    with pytest.raises(FieldError):
        QQ("abc")


def test_prime_field_conversion():
    assert F7("1/2") == Fp(4, 7)
    assert F7(-1) == 6
    with pytest.raises(FieldError):
        F7("1/7")


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        Fp(1, 5) + Fp(1, 7)
    with pytest.raises(FieldError):
        Fp(1, 5) * Fraction(1, 2)
    with pytest.raises(FieldError):
        QQ(Fp(1, 5))
    with pytest.raises(FieldError):
        PrimeField(5)(Fp(1, 7))


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Fp(0, 5).inverse()


@given(st.integers(), st.integers(), st.integers())
def test_fp_ring_laws(a, b, c):
    x, y, z = F7(a), F7(b), F7(c)
    assert (x + y) * z == x * z + y * z
    assert x - y == -(y - x)
    assert (x * y) * z == x * (y * z)
    if y:
        assert (x / y) * y == x
        assert y * y.inverse() == 1


@given(st.integers(min_value=-10**6, max_value=10**6))
def test_fp_pow_matches_fermat(a):
    x = F7(a)
    if x:
        assert x ** 6 == 1


def test_elements_and_random():
    import random
    assert [e.v for e in PrimeField(3).elements()] == [0, 1, 2]
    rng = random.Random(0)
    assert all(F7.random(rng, nonzero=True) for _ in range(100))
    assert all(QQ.random(rng, nonzero=True) for _ in range(100))
