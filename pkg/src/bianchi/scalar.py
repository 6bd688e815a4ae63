"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Every structure constant, matrix entry and covector component in the package
is one of these two types.  Arithmetic on :class:`GaussianRational` collapses
back to a plain ``Fraction`` whenever the imaginary part cancels, so a value
is "real" exactly when it is a ``Fraction``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "GaussianRational",
    "Scalar",
    "I",
    "as_scalar",
    "is_real",
    "parse_scalar",
    "format_scalar",
    "rational_sqrt",
    "gaussian_sqrt",
    "exact_sqrt",
    "magnitude",
]


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (int, Rational)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _make(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _make(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _make(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return _make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.re, self.im
        return _make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return _make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self):
        return _make(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, GaussianRational]

I = GaussianRational(0, 1)


def _make(re: Fraction, im: Fraction) -> Scalar:
    if im == 0:
        return re
    return GaussianRational(re, im)


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, Gaussian rationals and exact strings."""
    if isinstance(x, GaussianRational):
        return _make(x.re, x.im)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def is_real(x) -> bool:
    return not isinstance(x, GaussianRational)


_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_IMAG_RE = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?i$")
_COMPLEX_RE = re.compile(rf"^({_RAT})([+-])(\d+(?:/\d+)?)?i$")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p"``, ``"p/q"``, ``"r/si"`` or ``"p/q+r/si"`` exactly.

    A bare ``i`` (optionally signed) stands for the imaginary unit.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if _RAT_RE.match(s):
        return Fraction(s)
    m = _IMAG_RE.match(s)
    if m:
        im = Fraction(m.group(2) or 1)
        return _make(Fraction(0), -im if m.group(1) == "-" else im)
    m = _COMPLEX_RE.match(s)
    if m:
        im = Fraction(m.group(3) or 1)
        return _make(Fraction(m.group(1)), -im if m.group(2) == "-" else im)
    raise ValueError(f"not an exact rational or Gaussian rational: {text!r}")


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar`; canonical textual form."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return _fmt_rat(x)
    if x.re == 0:
        return f"{_fmt_rat(x.im)}i"
    sign = "-" if x.im < 0 else "+"
    return f"{_fmt_rat(x.re)}{sign}{_fmt_rat(abs(x.im))}i"


def _isqrt_exact(n: int):
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_sqrt(q: Fraction):
    """Non-negative rational square root of ``q``, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    a = _isqrt_exact(q.numerator)
    b = _isqrt_exact(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def gaussian_sqrt(z):
    """A square root of ``z`` in Q(i), or None.

    For ``z = a + bi`` a root ``x + yi`` satisfies ``x^2 = (a + |z|)/2`` and
    ``y = b / (2x)``; the returned branch has ``x > 0``, or ``x = 0, y >= 0``.
    """
    z = as_scalar(z)
    if isinstance(z, Fraction):
        if z >= 0:
            return rational_sqrt(z)
        r = rational_sqrt(-z)
        return None if r is None else GaussianRational(0, r)
    a, b = z.re, z.im
    modulus = rational_sqrt(a * a + b * b)
    if modulus is None:
        return None
    x = rational_sqrt((a + modulus) / 2)
    if x is None:
        return None
    if x == 0:
        y = rational_sqrt((modulus - a) / 2)
        return None if y is None else _make(Fraction(0), y)
    return _make(x, b / (2 * x))


def exact_sqrt(z):
    """Square root in the same field as ``z`` (Q for rationals, Q(i) otherwise)."""
    if isinstance(z, Fraction) or isinstance(z, int):
        return rational_sqrt(Fraction(z))
    return gaussian_sqrt(z)


def magnitude(x) -> Fraction:
    """A cheap exact size measure: ``|x|`` for rationals, ``|re| + |im|`` otherwise."""
    if isinstance(x, GaussianRational):
        return abs(x.re) + abs(x.im)
    return abs(Fraction(x))
