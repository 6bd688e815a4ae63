"""Value types on V = K^3 and the three GL_3 actions.

Conventions (0-based internally, 1-based in documentation and files):

* A group element ``g`` acts on vectors by ``a -> g a``, so ``g[i][j]`` is the
  ``i``-th coordinate of ``g e_j``.
* Covectors are row vectors; ``g`` acts by ``nu -> nu g^{-1}``.
* Brackets act by ``(g.C)(a, b) = g C(g^{-1} a, g^{-1} b)``.
* Symmetric forms act with the determinant twist ``A -> det(g)^{-1} g A g^T``.

All containers are immutable.  Entries are exact scalars
(:mod:`bianchi.scalar`); the containers themselves are agnostic, which lets the
witness code reuse them with mpmath numbers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence

from .errors import ModeMismatch, SingularMatrixError
from .scalar import GaussianRational, as_scalar, format_scalar

__all__ = [
    "FieldMode",
    "PAIRS",
    "epsilon",
    "Matrix3",
    "GroupElement",
    "Vector",
    "Covector",
    "Bracket",
    "SymForm",
    "JacobiTensor",
    "act_bracket",
    "act_sym",
    "act_covector",
    "lam",
    "rank",
    "field_mode_of",
    "check_mode",
]


class FieldMode(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"

    @classmethod
    def parse(cls, value) -> "FieldMode":
        if isinstance(value, cls):
            return value
        aliases = {"real": cls.REAL, "rational": cls.REAL, "r": cls.REAL,
                   "complex": cls.COMPLEX, "gaussian": cls.COMPLEX, "c": cls.COMPLEX}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown field mode {value!r}") from None


# index pairs (i, j) with i < j, in storage order
PAIRS = ((0, 1), (0, 2), (1, 2))
_PAIR_INDEX = {p: n for n, p in enumerate(PAIRS)}

_EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
        (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


def epsilon(i: int, j: int, k: int) -> int:
    """Levi-Civita symbol on 0-based indices."""
    return _EPS.get((i, j, k), 0)


def _entry(x):
    if isinstance(x, (str, GaussianRational)) or (
        isinstance(x, (int, Rational)) and not isinstance(x, bool)
    ):
        return as_scalar(x)
    return x


def _is_exact(x) -> bool:
    return isinstance(x, (Fraction, GaussianRational))


def _sum(terms):
    total = Fraction(0)
    for t in terms:
        total = total + t
    return total


@dataclass(frozen=True, eq=False)
class Matrix3:
    """A 3x3 matrix, stored row-major.

    Equality compares entries only, so a :class:`SymForm` equals the plain
    matrix with the same rows.
    """

    rows: tuple

    def __eq__(self, other):
        if not isinstance(other, Matrix3):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __post_init__(self):
        rows = tuple(tuple(_entry(x) for x in row) for row in self.rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Matrix3 needs exactly 3 rows of 3 entries")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls):
        return cls(tuple(tuple(int(i == j) for j in range(3)) for i in range(3)))

    @classmethod
    def diag(cls, *d):
        if len(d) == 1:
            (d,) = d
        return cls(tuple(tuple(d[i] if i == j else 0 for j in range(3)) for i in range(3)))

    @classmethod
    def zero(cls):
        return cls(((0,) * 3,) * 3)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.rows)

    @property
    def T(self) -> "Matrix3":
        return Matrix3(tuple(tuple(self.rows[j][i] for j in range(3)) for i in range(3)))

    def __matmul__(self, other):
        if isinstance(other, Matrix3):
            a, b = self.rows, other.rows
            return Matrix3(tuple(
                tuple(_sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
                for i in range(3)
            ))
        if isinstance(other, Vector):
            return Vector(tuple(_sum(self.rows[i][k] * other[k] for k in range(3)) for i in range(3)))
        return NotImplemented

    def __rmatmul__(self, other):
        if isinstance(other, Covector):
            return Covector(tuple(_sum(other[k] * self.rows[k][j] for k in range(3)) for j in range(3)))
        return NotImplemented

    def __add__(self, other):
        return Matrix3(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        return Matrix3(tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "Matrix3":
        return Matrix3(tuple(tuple(s * x for x in r) for r in self.rows))

    def det(self):
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def adjugate(self) -> "Matrix3":
        m = self.rows

        def cof(i, j):
            r = [x for x in range(3) if x != i]
            c = [y for y in range(3) if y != j]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            return minor if (i + j) % 2 == 0 else -minor

        return Matrix3(tuple(tuple(cof(j, i) for j in range(3)) for i in range(3)))

    def inverse(self) -> "Matrix3":
        d = self.det()
        if d == 0:
            raise SingularMatrixError("matrix is singular")
        return self.adjugate().scale(1 / d)

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i] for i in range(3) for j in range(i + 1, 3))

    def is_exact(self) -> bool:
        return all(_is_exact(x) for r in self.rows for x in r)

    def entries(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def __str__(self):
        return "[" + "; ".join(" ".join(format_scalar(x) if _is_exact(x) else str(x) for x in r)
                               for r in self.rows) + "]"


class GroupElement(Matrix3):
    """An invertible 3x3 matrix; singular input is rejected on construction."""

    def __post_init__(self):
        super().__post_init__()
        if self.det() == 0:
            raise SingularMatrixError("group elements must have non-zero determinant")

    @classmethod
    def of(cls, m: Matrix3) -> "GroupElement":
        return m if isinstance(m, cls) else cls(m.rows)


@dataclass(frozen=True)
class _Triple:
    comps: tuple

    def __post_init__(self):
        comps = tuple(_entry(x) for x in self.comps)
        if len(comps) != 3:
            raise ValueError(f"{type(self).__name__} needs exactly 3 components")
        object.__setattr__(self, "comps", comps)

    @classmethod
    def zero(cls):
        return cls((0, 0, 0))

    def __getitem__(self, i):
        return self.comps[i]

    def __iter__(self):
        return iter(self.comps)

    def __len__(self):
        return 3

    def __add__(self, other):
        return type(self)(tuple(x + y for x, y in zip(self.comps, other.comps)))

    def __sub__(self, other):
        return type(self)(tuple(x - y for x, y in zip(self.comps, other.comps)))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        return type(self)(tuple(s * x for x in self.comps))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.comps)

    def __str__(self):
        return "(" + ", ".join(format_scalar(x) if _is_exact(x) else str(x) for x in self.comps) + ")"


class Vector(_Triple):
    """Element of V (upper index)."""


class Covector(_Triple):
    """Element of V* (lower index)."""

    def pair(self, a: Vector):
        return _sum(x * y for x, y in zip(self.comps, a.comps))


def lam(i: int, coeff=1) -> Covector:
    """``coeff`` times the dual basis covector lambda^i (1-based ``i``)."""
    c = [0, 0, 0]
    c[i - 1] = coeff
    return Covector(tuple(c))


@dataclass(frozen=True)
class Bracket:
    """Antisymmetric bilinear map V x V -> V given by its structure constants.

    ``consts`` holds C_{ij}^k for the pairs in :data:`PAIRS` (i < j), three
    output components each, so antisymmetry holds by construction.
    """

    consts: tuple

    def __post_init__(self):
        consts = tuple(_entry(x) for x in self.consts)
        if len(consts) != 9:
            raise ValueError("a bracket on K^3 has 9 independent structure constants")
        object.__setattr__(self, "consts", consts)

    @classmethod
    def zero(cls) -> "Bracket":
        return cls((0,) * 9)

    @classmethod
    def from_function(cls, f) -> "Bracket":
        """Build from ``f(i, j, k) = C_{ij}^k`` (0-based), read on i < j."""
        return cls(tuple(f(i, j, k) for (i, j) in PAIRS for k in range(3)))

    @classmethod
    def from_products(cls, e12=(0, 0, 0), e23=(0, 0, 0), e31=(0, 0, 0)) -> "Bracket":
        """Build from the three products [e1,e2], [e2,e3], [e3,e1]."""
        e13 = tuple(-_entry(x) for x in e31)
        return cls(tuple(e12) + e13 + tuple(e23))

    @classmethod
    def from_entries(cls, entries: Iterable[Sequence]) -> "Bracket":
        """Build from ``(i, j, k, value)`` items with 1-based indices and i < j.

        Omitted entries are zero; duplicates and bad indices raise ValueError.
        """
        c = [Fraction(0)] * 9
        seen = set()
        for item in entries:
            i, j, k, v = item
            if not all(isinstance(x, int) and 1 <= x <= 3 for x in (i, j, k)):
                raise ValueError(f"indices must be integers in 1..3: {item!r}")
            if i >= j:
                raise ValueError(f"entries need i < j: {item!r}")
            if (i, j, k) in seen:
                raise ValueError(f"duplicate entry for C_{i}{j}^{k}")
            seen.add((i, j, k))
            c[3 * _PAIR_INDEX[(i - 1, j - 1)] + (k - 1)] = as_scalar(v)
        return cls(tuple(c))

    def c(self, i: int, j: int, k: int):
        """C_{ij}^k with 0-based indices."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.consts[3 * _PAIR_INDEX[(i, j)] + k]
        return -self.consts[3 * _PAIR_INDEX[(j, i)] + k]

    def product(self, i: int, j: int) -> Vector:
        """[e_i, e_j] (0-based)."""
        return Vector(tuple(self.c(i, j, k) for k in range(3)))

    def __call__(self, a: Vector, b: Vector) -> Vector:
        out = []
        for k in range(3):
            out.append(_sum(a[i] * b[j] * self.c(i, j, k)
                            for i in range(3) for j in range(3) if i != j))
        return Vector(tuple(out))

    def entries(self) -> list:
        """Non-zero ``(i, j, k, value)`` items, 1-based, in storage order."""
        out = []
        for n, (i, j) in enumerate(PAIRS):
            for k in range(3):
                v = self.consts[3 * n + k]
                if v != 0:
                    out.append((i + 1, j + 1, k + 1, v))
        return out

    def __add__(self, other):
        return Bracket(tuple(x + y for x, y in zip(self.consts, other.consts)))

    def __sub__(self, other):
        return Bracket(tuple(x - y for x, y in zip(self.consts, other.consts)))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "Bracket":
        return Bracket(tuple(s * x for x in self.consts))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.consts)

    def is_exact(self) -> bool:
        return all(_is_exact(x) for x in self.consts)

    def __str__(self):
        def vec(v):
            return "(" + ", ".join(format_scalar(x) if _is_exact(x) else str(x) for x in v) + ")"
        return (f"[e1,e2]={vec(self.product(0, 1))} [e2,e3]={vec(self.product(1, 2))} "
                f"[e3,e1]={vec(self.product(2, 0))}")


class SymForm(Matrix3):
    """Symmetric matrix A = (a^{ij}) describing M in Lambda^3 V* (x) S^2 V."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_symmetric():
            raise ValueError("SymForm must be symmetric")

    @classmethod
    def of(cls, m: Matrix3) -> "SymForm":
        return m if isinstance(m, cls) else cls(m.rows)


class JacobiTensor(_Triple):
    """Components J^k = <lambda^k, J_C(e1, e2, e3)>."""


def _as_group(g) -> GroupElement:
    if isinstance(g, GroupElement):
        return g
    if isinstance(g, Matrix3):
        return GroupElement(g.rows)
    return GroupElement(tuple(g))


def act_bracket(g, C: Bracket) -> Bracket:
    """(g.C)(a, b) = g C(g^{-1} a, g^{-1} b)."""
    g = _as_group(g)
    gi = g.inverse()
    G, H = g.rows, gi.rows
    t = [[[C.c(i, j, k) for k in range(3)] for j in range(3)] for i in range(3)]
    # contract the output index with g first, then both inputs with g^{-1}
    t1 = [[[_sum(G[k][l] * t[i][j][l] for l in range(3)) for k in range(3)]
           for j in range(3)] for i in range(3)]
    t2 = [[[_sum(H[m][i] * t1[m][j][k] for m in range(3)) for k in range(3)]
           for j in range(3)] for i in range(3)]

    def f(i, j, k):
        return _sum(H[n][j] * t2[i][n][k] for n in range(3))

    return Bracket.from_function(f)


def act_sym(g, A: Matrix3) -> SymForm:
    """det(g)^{-1} g A g^T."""
    g = _as_group(g)
    return SymForm((g @ A @ g.T).scale(1 / g.det()).rows)


def act_covector(g, nu: Covector) -> Covector:
    """nu g^{-1}."""
    g = _as_group(g)
    return nu @ g.inverse()


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a matrix (list of rows) by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def field_mode_of(values: Iterable) -> FieldMode:
    """COMPLEX if any value has a non-zero imaginary part, else REAL."""
    return FieldMode.COMPLEX if any(isinstance(v, GaussianRational) for v in values) else FieldMode.REAL


def check_mode(mode: FieldMode, values: Iterable, what: str = "input") -> None:
    """Reject Gaussian-rational data in real mode."""
    if FieldMode.parse(mode) is FieldMode.REAL and field_mode_of(values) is FieldMode.COMPLEX:
        raise ModeMismatch(f"{what} has non-real entries but the field mode is real")
