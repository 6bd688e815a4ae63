"""Bianchi type decision over R (rational input) and C (Gaussian-rational input).

The decision only uses exact data: the rank and absolute signature of the
unimodular part under the twisted action, whether the trace part vanishes, and
for the two one-parameter families the exact value of h^2 recovered from the
adjugate invariant ``adj(A) = c nu (x) nu``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from .core import (Bracket, Covector, FieldMode, SymForm, Vector, check_mode, lam, rank)
from .decomp import Decomposition, Tr_embed, compose, decompose, j_embed, jacobian_tensor, trace_map
from .errors import JacobiViolation, ModeMismatch, PreconditionError
from .linalg import congruence_diagonalize
from .scalar import GaussianRational, Scalar, as_scalar, exact_sqrt, format_scalar, gaussian_sqrt

__all__ = [
    "LABELS",
    "A_CLASS",
    "BianchiType",
    "RankSig",
    "ClassificationReport",
    "rank_signature",
    "invariant_c",
    "classify",
    "representative",
    "derived_algebra_dim",
    "is_unimodular",
    "structure_label",
    "allowed_labels",
]

LABELS = ("I", "II", "IV", "V", "VI0", "VIh", "VII0", "VIIh", "VIII", "IX")
A_CLASS = frozenset({"I", "II", "VI0", "VII0", "VIII", "IX"})
FAMILIES = frozenset({"VIh", "VIIh"})
_COMPLEX_LABELS = frozenset({"I", "II", "IV", "V", "VII0", "VIIh", "IX"})

_ALIASES = {
    "I": "I", "II": "II", "IV": "IV", "V": "V", "VIII": "VIII", "IX": "IX",
    "VI0": "VI0", "VI_0": "VI0", "VIH": "VIh", "VI_H": "VIh",
    "VII0": "VII0", "VII_0": "VII0", "VIIH": "VIIh", "VII_H": "VIIh",
}

# (rank, |signature|) -> A-class label in real mode
_REAL_A = {(0, 0): "I", (1, 1): "II", (2, 0): "VI0", (2, 2): "VII0", (3, 1): "VIII", (3, 3): "IX"}
_COMPLEX_A = {0: "I", 1: "II", 2: "VII0", 3: "IX"}

# diagonal of the unimodular part of each representative
_A_DIAG = {"I": (0, 0, 0), "II": (1, 0, 0), "VI0": (1, -1, 0), "VII0": (1, 1, 0),
           "VIII": (1, 1, -1), "IX": (1, 1, 1)}


def allowed_labels(mode=FieldMode.REAL) -> tuple:
    mode = FieldMode.parse(mode)
    return LABELS if mode is FieldMode.REAL else tuple(x for x in LABELS if x in _COMPLEX_LABELS)


@dataclass(frozen=True)
class BianchiType:
    """A Bianchi isomorphism type.

    ``h_squared`` is set exactly for the families ``VIh`` and ``VIIh`` and is
    ``None`` otherwise.  III is not a separate label: it is ``VIh`` with
    ``h_squared == 1`` (see :attr:`presented_as`).
    """

    label: str
    h_squared: Optional[Scalar] = None

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown Bianchi label {self.label!r}")
        if self.label in FAMILIES:
            if self.h_squared is None:
                raise ValueError(f"{self.label} needs h_squared")
            h2 = as_scalar(self.h_squared)
            if h2 == 0:
                raise ValueError(f"{self.label} needs h^2 != 0 (h = 0 is {self.label[:-1]}0)")
            if self.label == "VIh" and (isinstance(h2, GaussianRational) or h2 < 0):
                raise ValueError("VIh needs a positive rational h^2")
            object.__setattr__(self, "h_squared", h2)
        elif self.h_squared is not None:
            raise ValueError(f"{self.label} takes no h parameter")

    @classmethod
    def parse(cls, text: str, h_squared=None) -> "BianchiType":
        """Parse labels like ``IX``, ``VI_0``, ``VIh``, ``III``.

        ``III`` is read as ``VIh`` with ``h^2 = 1``.
        """
        key = text.strip().replace(" ", "").upper()
        if key == "III":
            if h_squared is not None and as_scalar(h_squared) != 1:
                raise ValueError("III is VI_h with h^2 = 1")
            return cls("VIh", Fraction(1))
        try:
            label = _ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown Bianchi label {text!r}") from None
        if label in FAMILIES:
            if h_squared is None:
                raise ValueError(f"{label} needs an h^2 value")
            return cls(label, as_scalar(h_squared))
        if h_squared is not None:
            raise ValueError(f"{label} takes no h parameter")
        return cls(label)

    @property
    def is_unimodular(self) -> bool:
        return self.label in A_CLASS

    @property
    def bianchi_class(self) -> str:
        return "A" if self.is_unimodular else "B"

    @property
    def presented_as(self) -> Optional[str]:
        if self.label == "VIh" and self.h_squared == 1:
            return "III"
        return None

    @property
    def h_exact(self):
        """h with the usual sign convention, when h^2 is an exact square."""
        if self.h_squared is None:
            return None
        # VII_h with h^2 < 0 only exists over C, where h = i sqrt(-h^2)
        root = gaussian_sqrt if self.label == "VIIh" else exact_sqrt
        r = root(self.h_squared)
        if r is None:
            return None
        return -r if self.label == "VIh" else r

    def h_value(self, prec: int = 128):
        """h as an mpmath number (``h <= 0`` for VI, ``h >= 0`` / principal root for VII)."""
        if self.h_squared is None:
            return None
        with mpmath.workprec(prec):
            h2 = self.h_squared
            if isinstance(h2, GaussianRational):
                r = mpmath.sqrt(mpmath.mpc(_mpf(h2.re), _mpf(h2.im)))
            else:
                r = mpmath.sqrt(_mpf(h2))
            return -r if self.label == "VIh" else r

    def display(self) -> str:
        """One-line label, e.g. ``VI_h h^2=9/2 (h≈-2.121320343560)``."""
        if self.label not in FAMILIES:
            return {"VI0": "VI_0", "VII0": "VII_0"}.get(self.label, self.label)
        base = "VI_h" if self.label == "VIh" else "VII_h"
        h = self.h_value()
        if isinstance(h, mpmath.mpc):
            shown = f"{float(h.real):.12f}{'-' if h.imag < 0 else '+'}{abs(float(h.imag)):.12f}i"
        else:
            shown = f"{float(h):.12f}"
        text = f"{base} h^2={format_scalar(self.h_squared)} (h≈{shown})"
        if self.presented_as:
            text = f"{self.presented_as} = {text}"
        return text

    def __str__(self):
        return self.display()


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class RankSig:
    """Rank and absolute signature; ``abs_signature`` is None over C."""

    rank: int
    abs_signature: Optional[int] = None


@dataclass(frozen=True)
class ClassificationReport:
    type: BianchiType
    mode: FieldMode
    decomposition: Decomposition
    rank_sig: RankSig
    invariant_c: Optional[Scalar]
    h_squared: Optional[Scalar]
    h_approx: object = field(compare=False)
    unimodular: bool
    bianchi_class: str
    derived_dim: int
    structure_labels: frozenset
    orbit_dim: int
    aut: object = field(compare=False)

    def invariant_fields(self) -> tuple:
        """The isomorphism-invariant part of the report."""
        return (self.mode, self.type, self.h_squared, self.rank_sig, self.unimodular,
                self.bianchi_class, self.derived_dim, self.structure_labels, self.orbit_dim,
                self.aut.dimension)


def rank_signature(A, mode=FieldMode.REAL) -> RankSig:
    """Exact rank and |signature| via congruence diagonalization."""
    mode = FieldMode.parse(mode)
    check_mode(mode, SymForm.of(A).entries(), "symmetric form")
    _, D = congruence_diagonalize(A)
    diag = [D[i, i] for i in range(3)]
    r = sum(1 for x in diag if x != 0)
    if mode is FieldMode.COMPLEX:
        return RankSig(r, None)
    s = sum(1 for x in diag if x > 0) - sum(1 for x in diag if x < 0)
    return RankSig(r, abs(s))


def invariant_c(A, nu: Covector) -> Scalar:
    """The scalar ``c`` with ``adj(A) = c nu (x) nu``.

    Requires rank(A) = 2, nu != 0 and A nu = 0.  Invariant under the
    simultaneous twisted action on ``A`` and the contragredient action on ``nu``.
    """
    A = SymForm.of(A)
    if rank(A.rows) != 2:
        raise PreconditionError("invariant_c needs a rank-2 form")
    if nu.is_zero():
        raise PreconditionError("invariant_c needs a non-zero trace part")
    Anu = [sum((A[i, j] * nu[j] for j in range(3)), Fraction(0)) for i in range(3)]
    if any(x != 0 for x in Anu):
        raise JacobiViolation([2 * x for x in Anu])
    adj = A.adjugate()
    k = next(i for i in range(3) if nu[i] != 0)
    c = adj[k, k] / (nu[k] * nu[k])
    assert all(adj[i, j] == c * nu[i] * nu[j] for i in range(3) for j in range(3))
    return c


def derived_algebra_dim(C: Bracket) -> int:
    """dim [L, L] = rank of the columns [e1,e2], [e2,e3], [e3,e1]."""
    return rank([C.product(0, 1).comps, C.product(1, 2).comps, C.product(2, 0).comps])


def is_unimodular(C: Bracket) -> bool:
    return trace_map(C).is_zero()


def _basis(vectors) -> list:
    out = []
    for v in vectors:
        if rank([w.comps for w in out] + [v.comps]) > len(out):
            out.append(v)
    return out


def _bracket_span(C: Bracket, U, W) -> list:
    return _basis(C(u, w) for u in U for w in W)


def structure_label(C: Bracket) -> str:
    """The most specific of abelian, nilpotent, simple, solvable."""
    if C.is_zero():
        return "abelian"
    full = [Vector(tuple(int(i == k) for k in range(3))) for i in range(3)]
    derived = _bracket_span(C, full, full)
    if len(derived) == 3:
        return "simple"
    lower = derived
    while lower:
        nxt = _bracket_span(C, full, lower)
        if len(nxt) == len(lower):
            break
        lower = nxt
    if not lower:
        return "nilpotent"
    return "solvable"


def _decide(d: Decomposition, rs: RankSig, mode: FieldMode) -> tuple:
    """Return ``(type, c)`` from an exact decomposition known to satisfy Jacobi."""
    if d.nu.is_zero():
        label = _REAL_A[(rs.rank, rs.abs_signature)] if mode is FieldMode.REAL else _COMPLEX_A[rs.rank]
        return BianchiType(label), None
    if rs.rank == 0:
        return BianchiType("V"), None
    if rs.rank == 1:
        return BianchiType("IV"), None
    if rs.rank == 2:
        c = invariant_c(d.M, d.nu)
        if mode is FieldMode.COMPLEX or rs.abs_signature == 2:
            return BianchiType("VIIh", 1 / c), c
        return BianchiType("VIh", -1 / c), c
    raise AssertionError("non-degenerate unimodular part with a trace part violates Jacobi")


def classify(C: Bracket, mode=FieldMode.REAL) -> ClassificationReport:
    """Full classification report of a Lie bracket on K^3."""
    from .orbits import aut_info, orbit_dimension

    mode = FieldMode.parse(mode)
    check_mode(mode, C.consts, "bracket")
    J = jacobian_tensor(C)
    if not J.is_zero():
        raise JacobiViolation(J.comps)
    d = decompose(C)
    rs = rank_signature(d.M, mode)
    t, c = _decide(d, rs, mode)
    aut = aut_info(t, mode)
    orbit_dim = orbit_dimension(C)
    assert orbit_dim == 9 - aut.dimension, (t, orbit_dim, aut)
    h = t.h_value(64)
    return ClassificationReport(
        type=t,
        mode=mode,
        decomposition=d,
        rank_sig=rs,
        invariant_c=c,
        h_squared=t.h_squared,
        h_approx=None if h is None else (complex(h) if isinstance(h, mpmath.mpc) else float(h)),
        unimodular=d.nu.is_zero(),
        bianchi_class="A" if d.nu.is_zero() else "B",
        derived_dim=derived_algebra_dim(C),
        structure_labels=frozenset({structure_label(C)}),
        orbit_dim=orbit_dim,
        aut=aut,
    )


def representative(t: BianchiType, mode=FieldMode.REAL) -> Bracket:
    """Exact representative bracket of type ``t`` on the canonical basis.

    For the families, ``h`` is placed on ``lambda^3`` when it is an exact
    square root of ``h^2`` (the textbook form).  Otherwise the rational form
    ``compose(diag(1, -+1/h^2, 0), lambda^3)``, which lies in the same orbit, is
    returned.
    """
    mode = FieldMode.parse(mode)
    if t.label not in allowed_labels(mode):
        raise ModeMismatch(f"type {t.label} does not exist over the complex numbers"
                           if mode is FieldMode.COMPLEX else f"type {t.label} invalid")
    if mode is FieldMode.REAL and isinstance(t.h_squared, GaussianRational):
        raise ModeMismatch("non-real h^2 needs complex mode")
    if mode is FieldMode.REAL and t.label == "VIIh" and t.h_squared < 0:
        raise ModeMismatch("VII_h needs h^2 > 0 over the reals")
    if t.label in _A_DIAG:
        return Tr_embed(SymForm.diag(*_A_DIAG[t.label]))
    if t.label == "V":
        return j_embed(lam(3))
    if t.label == "IV":
        return compose(SymForm.diag(1, 0, 0), lam(3))
    sign = -1 if t.label == "VIh" else 1
    h = t.h_exact
    if h is not None:
        return compose(SymForm.diag(1, sign, 0), lam(3, h))
    return compose(SymForm.diag(1, sign / t.h_squared, 0), lam(3))
