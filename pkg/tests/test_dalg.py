from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from _strategies import scalars
from dnfree.dalg import DiagonalScalar, d_add, d_invert, d_mul, format_rational, parse_rational
from dnfree.errors import DimensionError, NotInvertibleError, ParseError

D = DiagonalScalar.of


def test_add_examples():
    assert d_add(D(1, 2), D(0, 0)) == D(1, 2)
    assert d_add(D(Fraction(1, 2), -1), D(Fraction(1, 2), 1)) == D(1, 0)
    assert d_add(D(Fraction(2, 3), 5), D(Fraction(1, 3), -5)) == D(1, 0)


def test_mul_examples():
    a = D(3, Fraction(-2, 7), 0)
    assert d_mul(DiagonalScalar.one(3), a) == a
    assert d_mul(D(2, 3), D(Fraction(1, 2), Fraction(1, 3))) == D(1, 1)
    assert d_mul(D(0, 5), D(7, 0)) == DiagonalScalar.zero(2)


def test_invert_examples():
    assert d_invert(D(1, 1, 1)) == D(1, 1, 1)
    assert d_invert(D(2, Fraction(-1, 3))) == D(Fraction(1, 2), -3)
    with pytest.raises(NotInvertibleError) as info:
        d_invert(D(1, 0))
    assert info.value.index == 2
    assert "2" in str(info.value)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        D(1, 2) + D(1)
    with pytest.raises(DimensionError):
        D(1, 2) * D(1, 2, 3)


@settings(max_examples=300)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(scalars(n), scalars(n), scalars(n))))
def test_ring_axioms(abc):
    a, b, c = abc
    n = a.N
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + DiagonalScalar.zero(n) == a and a * DiagonalScalar.one(n) == a


@given(st.integers(1, 8).flatmap(lambda n: scalars(n)))
def test_invert_membership_and_involution(a):
    if all(a.entries):
        assert d_invert(d_invert(a)) == a
        assert a * d_invert(a) == DiagonalScalar.one(a.N)
    else:
        with pytest.raises(NotInvertibleError):
            d_invert(a)


@pytest.mark.parametrize("text,value", [("1/2", Fraction(1, 2)), ("-3", Fraction(-3)), ("0", Fraction(0)), (7, Fraction(7))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "2/4", "1/-2", "0.5", "", "-0", "0/3", "abc", 1.5, None, True])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text, "x")


def test_zero_denominator_message_names_field():
    with pytest.raises(ParseError) as info:
        parse_rational("1/0", "components[0].moments[2]")
    assert "components[0].moments[2]" in str(info.value)
    assert "zero denominator" in str(info.value)


@given(rational=st.fractions())
def test_format_parse_roundtrip(rational):
    assert parse_rational(format_rational(rational)) == rational
