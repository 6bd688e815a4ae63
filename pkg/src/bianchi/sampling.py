"""Deterministic pseudo-random exact data for tests, demos and ``bianchi sample``."""

from __future__ import annotations

import random
from fractions import Fraction

from .classify import BianchiType, classify, representative
from .core import Bracket, Covector, FieldMode, GroupElement, Matrix3, SymForm, act_bracket
from .errors import BianchiError
from .scalar import GaussianRational

__all__ = [
    "random_fraction",
    "random_scalar",
    "random_group_element",
    "random_symform",
    "random_covector",
    "random_bracket",
    "sample_brackets",
    "DEFAULT_BOUND",
]

DEFAULT_BOUND = 10 ** 4


def random_fraction(rng: random.Random, bound: int = 100) -> Fraction:
    """p/q with |p| <= bound and 1 <= q <= bound."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_scalar(rng: random.Random, bound: int = 100, mode=FieldMode.REAL):
    if FieldMode.parse(mode) is FieldMode.COMPLEX:
        return GaussianRational(random_fraction(rng, bound), random_fraction(rng, bound)) + 0
    return random_fraction(rng, bound)


def random_group_element(rng: random.Random, bound: int = 100, mode=FieldMode.REAL,
                         integral: bool = False) -> GroupElement:
    """Uniformly drawn entries, redrawn until the determinant is non-zero."""
    complex_mode = FieldMode.parse(mode) is FieldMode.COMPLEX
    while True:
        if integral:
            if complex_mode:
                rows = [[GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound)) + 0
                         for _ in range(3)] for _ in range(3)]
            else:
                rows = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        else:
            rows = [[random_scalar(rng, bound, mode) for _ in range(3)] for _ in range(3)]
        m = Matrix3(tuple(tuple(r) for r in rows))
        if m.det() != 0:
            return GroupElement(m.rows)


def random_symform(rng: random.Random, bound: int = 100, mode=FieldMode.REAL) -> SymForm:
    a = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            a[i][j] = a[j][i] = random_scalar(rng, bound, mode)
    return SymForm(tuple(tuple(r) for r in a))


def random_covector(rng: random.Random, bound: int = 100, mode=FieldMode.REAL) -> Covector:
    return Covector(tuple(random_scalar(rng, bound, mode) for _ in range(3)))


def random_bracket(rng: random.Random, bound: int = 100, mode=FieldMode.REAL) -> Bracket:
    """A generic antisymmetric bracket (almost never a Lie bracket)."""
    return Bracket(tuple(random_scalar(rng, bound, mode) for _ in range(9)))


def _within(x, bound: int) -> bool:
    parts = (x.re, x.im) if isinstance(x, GaussianRational) else (x,)
    return all(abs(p.numerator) <= bound and p.denominator <= bound for p in parts)


def sample_brackets(t: BianchiType, mode=FieldMode.REAL, seed: int = 0, count: int = 1,
                    bound: int = DEFAULT_BOUND, g_range: int = 3) -> list:
    """``count`` brackets of type ``t``: images of its representative under
    random integral group elements (entries in ``[-g_range, g_range]``).

    Draws whose structure constants exceed ``bound`` in numerator or
    denominator are rejected.  Every emitted bracket is re-classified before
    it is returned.
    """
    mode = FieldMode.parse(mode)
    rng = random.Random(seed)
    rep = representative(t, mode)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * max(count, 1):
            raise BianchiError(f"could not draw {count} bounded samples of {t}")
        g = random_group_element(rng, g_range, mode, integral=True)
        C = act_bracket(g, rep)
        if not all(_within(x, bound) for x in C.consts):
            continue
        got = classify(C, mode).type
        if got != t:
            raise BianchiError(f"sample self-check failed: drew {got}, expected {t}")
        out.append(C)
    return out
