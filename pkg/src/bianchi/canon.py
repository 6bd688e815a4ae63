"""Normal forms and explicit isomorphism witnesses.

:func:`canonicalize` builds a group element moving a Lie bracket onto the
textbook representative of its type:

1. congruence-diagonalize the unimodular part ``A`` (exact Lagrange reduction),
2. rescale the diagonal to entries in {1, -1, 0} and fix the sign and order,
   absorbing the determinant twist by passing from ``u`` to ``u / det(u)``,
3. use the stabilizer of the resulting diagonal form to move the trace part
   onto ``h lambda^3``.

Step 2 needs square roots.  The pipeline first runs in exact arithmetic and
falls back to 128-bit mpmath numbers when a root is irrational, so witnesses
are exact whenever possible and carry a certified residual otherwise.  The
type decision itself never touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath.ctx_mp import MPContext

from .classify import BianchiType, classify, representative
from .core import (Bracket, Covector, FieldMode, GroupElement, Matrix3, SymForm,
                   act_bracket, act_covector, check_mode)
from .decomp import compose, decompose, jacobian_tensor
from .errors import BianchiError, JacobiViolation
from .linalg import congruence_diagonalize
from .scalar import GaussianRational, exact_sqrt, gaussian_sqrt, magnitude

__all__ = [
    "WitnessResult",
    "PRECISION_BITS",
    "DEFAULT_TOLERANCE",
    "congruence_diagonalize",
    "canonical_form",
    "canonicalize",
    "witness",
    "isomorphic",
]

PRECISION_BITS = 128
DEFAULT_TOLERANCE = 1e-9

_ctx = MPContext()
_ctx.prec = PRECISION_BITS


class _Irrational(Exception):
    pass


@dataclass(frozen=True)
class WitnessResult:
    """Group element ``g`` (high precision) with ``residual = max |g.C1 - C2|``.

    ``exact_g`` is set when every rescaling was rational; ``g.C1 == C2`` then
    holds exactly and ``residual`` is 0.
    """

    g: Matrix3
    residual: float
    exact_g: Optional[GroupElement] = None

    def as_floats(self) -> list:
        return [[complex(x) if _is_complex(x) else float(x) for x in row] for row in self.g.rows]


def _is_complex(x) -> bool:
    return isinstance(x, GaussianRational) or type(x).__name__ == "mpc"


def _to_mp(x):
    if isinstance(x, GaussianRational):
        return _ctx.mpc(_ctx.mpf(x.re.numerator) / x.re.denominator,
                        _ctx.mpf(x.im.numerator) / x.im.denominator)
    if isinstance(x, Fraction):
        return _ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return _ctx.mpf(x)
    return _ctx.convert(x)


def _mp_matrix(m: Matrix3) -> Matrix3:
    return Matrix3(tuple(tuple(_to_mp(x) for x in r) for r in m.rows))


def _mp_bracket(C: Bracket) -> Bracket:
    return Bracket(tuple(_to_mp(x) for x in C.consts))


def residual(g: Matrix3, C1: Bracket, C2: Bracket) -> float:
    """max-norm of g.C1 - C2 evaluated at 128 bits."""
    image = act_bracket(_mp_matrix(g), _mp_bracket(C1))
    return float(max(abs(x - _to_mp(y)) for x, y in zip(image.consts, C2.consts)))


def canonical_form(t: BianchiType, mode=FieldMode.REAL) -> Bracket:
    """Textbook representative, with ``h`` on ``lambda^3`` even when irrational.

    Exact when ``h`` is rational (then equal to :func:`representative`),
    otherwise with 128-bit mpmath entries.
    """
    mode = FieldMode.parse(mode)
    rep = representative(t, mode)
    if t.h_squared is None or t.h_exact is not None:
        return rep
    with _ctx.workprec(PRECISION_BITS):
        h = _ctx.convert(t.h_value(PRECISION_BITS))
    sign = -1 if t.label == "VIh" else 1
    A = SymForm.diag(*(_to_mp(x) for x in (1, sign, 0)))
    return _mp_bracket(compose(A, Covector((_to_mp(0), _to_mp(0), h))))


def _size(x):
    if isinstance(x, (Fraction, GaussianRational)):
        return float(magnitude(x))
    return float(abs(x))


def _sqrt_factory(exact: bool, mode: FieldMode):
    def sqrt_abs(d):
        # 1/sqrt(|d|) over R, 1/sqrt(d) over C
        x = d if mode is FieldMode.COMPLEX else abs(d)
        if exact:
            r = gaussian_sqrt(x) if mode is FieldMode.COMPLEX else exact_sqrt(x)
            if r is None:
                raise _Irrational
            return 1 / r
        return 1 / _ctx.sqrt(_to_mp(x))
    return sqrt_abs


def _pipeline(A: SymForm, nu: Covector, t: BianchiType, mode: FieldMode, exact: bool) -> Matrix3:
    P, D = congruence_diagonalize(A)
    diag = [D[i, i] for i in range(3)]
    inv_sqrt = _sqrt_factory(exact, mode)
    scale = [inv_sqrt(d) if d != 0 else 1 for d in diag]
    if mode is FieldMode.COMPLEX:
        signs = [0 if d == 0 else 1 for d in diag]
    else:
        signs = [0 if d == 0 else (1 if d > 0 else -1) for d in diag]
    k, l = signs.count(1), signs.count(-1)
    sigma = -1 if l > k else 1
    flipped = [sigma * s for s in signs]
    order = sorted(range(3), key=lambda i: ({1: 0, -1: 1, 0: 2}[flipped[i]], i))
    S = Matrix3.diag(*scale)
    Q = Matrix3(tuple(tuple(int(j == order[i]) for j in range(3)) for i in range(3)))
    if not exact:
        S, P = _mp_matrix(S), _mp_matrix(P)
    u = Q @ S @ P
    g = u.scale(sigma / u.det())

    if nu.is_zero():
        return g
    nu1 = act_covector(g, nu if exact else Covector(tuple(_to_mp(x) for x in nu)))
    r = k + l
    if r == 0:
        # A = 0: any g with third row nu1 sends nu1 to lambda^3
        p = max(range(3), key=lambda i: (_size(nu1[i]), -i))
        others = [i for i in range(3) if i != p]
        rows = [tuple(int(j == others[0]) for j in range(3)),
                tuple(int(j == others[1]) for j in range(3)),
                tuple(nu1.comps)]
        return Matrix3(tuple(rows)) @ g
    if r == 1:
        # stabilizer of diag(1,0,0): [[det(g2), 0], [0, g2]]; second row of g2 = (nu2, nu3)
        a, b = nu1[1], nu1[2]
        top = (1, 0) if _size(b) >= _size(a) else (0, 1)
        g2 = ((top[0], top[1]), (a, b))
        det2 = g2[0][0] * g2[1][1] - g2[0][1] * g2[1][0]
        s = Matrix3(((det2, 0, 0), (0, g2[0][0], g2[0][1]), (0, g2[1][0], g2[1][1])))
        return s @ g
    if r == 2:
        h = _to_mp(t.h_value(PRECISION_BITS))
        v = _to_mp(nu1[2])
        if abs(v + h) < abs(v - h):
            return Matrix3.diag(-1, 1, -1) @ g
        return g
    raise AssertionError("rank-3 unimodular part with non-zero trace part")


def canonicalize(C: Bracket, mode=FieldMode.REAL) -> tuple[BianchiType, WitnessResult]:
    """Type of ``C`` and a group element moving ``C`` onto :func:`canonical_form`."""
    mode = FieldMode.parse(mode)
    check_mode(mode, C.consts, "bracket")
    J = jacobian_tensor(C)
    if not J.is_zero():
        raise JacobiViolation(J.comps)
    t = classify(C, mode).type
    d = decompose(C)
    target = canonical_form(t, mode)
    try:
        g = _pipeline(d.M, d.nu, t, mode, exact=True)
    except _Irrational:
        g = None
    if g is not None:
        g = GroupElement.of(g)
        if act_bracket(g, C) != target:
            raise BianchiError(f"exact canonicalization failed for {t}")
        return t, WitnessResult(g, 0.0, g)
    with _ctx.workprec(PRECISION_BITS):
        gm = _pipeline(d.M, d.nu, t, mode, exact=False)
        res = residual(gm, C, target)
    return t, WitnessResult(gm, res, None)


def witness(C1: Bracket, C2: Bracket, mode=FieldMode.REAL,
            tolerance: float = DEFAULT_TOLERANCE) -> Optional[WitnessResult]:
    """A group element ``g`` with ``g.C1 = C2``, or None if the types differ."""
    mode = FieldMode.parse(mode)
    r1, r2 = classify(C1, mode), classify(C2, mode)
    if r1.invariant_fields() != r2.invariant_fields():
        return None
    _, w1 = canonicalize(C1, mode)
    _, w2 = canonicalize(C2, mode)
    if w1.exact_g is not None and w2.exact_g is not None:
        g = GroupElement.of(w2.exact_g.inverse() @ w1.exact_g)
        if act_bracket(g, C1) != C2:
            raise BianchiError("exact witness composition failed")
        return WitnessResult(g, 0.0, g)
    with _ctx.workprec(PRECISION_BITS):
        gm = _mp_matrix(w2.g).inverse() @ _mp_matrix(w1.g)
        res = residual(gm, C1, C2)
    if res > tolerance:
        raise BianchiError(f"witness residual {res:.3e} exceeds tolerance {tolerance:g}")
    return WitnessResult(gm, res, None)


def isomorphic(C1: Bracket, C2: Bracket, mode=FieldMode.REAL) -> bool:
    """Exact isomorphism decision by comparing classification invariants."""
    mode = FieldMode.parse(mode)
    return classify(C1, mode).invariant_fields() == classify(C2, mode).invariant_fields()
