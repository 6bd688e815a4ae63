from fractions import Fraction

import pytest
from hypothesis import given

from bianchi.scalar import (GaussianRational, I, as_scalar, exact_sqrt, format_scalar,
                            gaussian_sqrt, parse_scalar, rational_sqrt)

from conftest import gaussians, rationals


@pytest.mark.parametrize("text, value", [
    ("3", Fraction(3)),
    ("-7/4", Fraction(-7, 4)),
    ("1/2+3/4i", GaussianRational(Fraction(1, 2), Fraction(3, 4))),
    ("2-i", GaussianRational(2, -1)),
    ("5/3i", GaussianRational(0, Fraction(5, 3))),
    ("-i", GaussianRational(0, -1)),
    ("4+0i", Fraction(4)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "1.5", "abc", "1/0x", "i2", "1++2i"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_format_canonical():
    assert format_scalar(Fraction(6, 4)) == "3/2"
    assert format_scalar(GaussianRational(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4i"
    assert format_scalar(-I) == "-1i"


@given(rationals)
def test_rational_round_trip(q):
    assert parse_scalar(format_scalar(q)) == q


@given(gaussians)
def test_gaussian_round_trip(z):
    assert parse_scalar(format_scalar(z)) == z


@given(gaussians, gaussians)
def test_field_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a - b) + b == a
    if b != 0:
        assert (a / b) * b == a


def test_real_collapse_and_hash():
    z = GaussianRational(Fraction(2, 3), 0) + 0
    assert isinstance(z, Fraction)
    assert hash(as_scalar(Fraction(2, 3))) == hash(z)
    assert I * I == -1


@given(rationals)
def test_rational_sqrt_of_square(q):
    r = rational_sqrt(q * q)
    assert r == abs(q)


def test_sqrt_irrational_and_negative():
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(9, 2)) is None
    # exact_sqrt stays inside the field of its argument
    assert exact_sqrt(Fraction(-4)) is None
    assert gaussian_sqrt(Fraction(-4)) == 2 * I


@given(gaussians)
def test_gaussian_sqrt_of_square(z):
    r = gaussian_sqrt(z * z)
    assert r is not None and r * r == z * z
    assert r == z or r == -z


def test_gaussian_sqrt_examples():
    assert gaussian_sqrt(GaussianRational(3, 4)) == GaussianRational(2, 1)
    assert gaussian_sqrt(GaussianRational(2, 1)) is None
