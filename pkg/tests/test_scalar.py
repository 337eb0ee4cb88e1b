from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qhk.scalar import Scalar, as_scalar

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)
scalars = st.builds(Scalar, fractions, fractions)


def test_canonical_form():
    assert Scalar(Fraction(2, 4)) == Scalar(Fraction(1, 2))
    assert str(Scalar(Fraction(-3, 6), 2)) == "-1/2+2*i"
    assert str(Scalar(0, -1)) == "-1*i"
    assert str(Scalar(5)) == "5"


def test_float_complex_refused():
    with pytest.raises(TypeError):
        as_scalar(1j)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)


def test_immutable():
    with pytest.raises(AttributeError):
        Scalar(1).re = 2


def test_to_fraction():
    assert Scalar(Fraction(3, 7)).to_fraction() == Fraction(3, 7)
    with pytest.raises(ValueError):
        Scalar(1, 1).to_fraction()


@given(scalars)
def test_parse_roundtrip(s):
    assert Scalar.parse(str(s)) == s


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert (a * b).conj() == a.conj() * b.conj()


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Scalar.parse("1.5")
