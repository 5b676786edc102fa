from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strengthlab.field import (
    conj,
    format_coefficient,
    gauss,
    imag_part,
    is_real,
    parse_coefficient,
    real_part,
    to_field,
)

rationals = st.fractions(min_value=-99, max_value=99, max_denominator=50)
elements = st.builds(lambda a, b: gauss(a, b), rationals, rationals)


def test_lowest_terms_and_positive_denominator():
    z = gauss(Fraction(4, -6), Fraction(3, 9))
    assert real_part(z) == Fraction(-2, 3)
    assert real_part(z).denominator > 0
    assert imag_part(z) == Fraction(1, 3)


def test_real_subfield():
    assert is_real(gauss(5))
    assert not is_real(gauss(0, 1))
    assert gauss(0, 1) * gauss(0, 1) == -1


@given(elements, elements)
def test_field_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a - b) + b == a
    if b:
        assert (a / b) * b == a


@given(elements, elements)
def test_conjugation(a, b):
    assert conj(conj(a)) == a
    assert conj(a * b) == conj(a) * conj(b)
    assert conj(a + b) == conj(a) + conj(b)
    assert is_real(a * conj(a))


@given(elements)
def test_format_roundtrip(a):
    assert parse_coefficient(format_coefficient(a)) == a


@pytest.mark.parametrize("text, value", [("3/2", gauss(Fraction(3, 2))), ("i", gauss(0, 1)), ("-2*i", gauss(0, -2))])
def test_parse_coefficient(text, value):
    assert parse_coefficient(text) == value


def test_to_field_accepts_ints():
    assert to_field(3) == gauss(3)
