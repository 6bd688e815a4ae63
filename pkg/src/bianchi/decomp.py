"""The equivariant maps tr, j, p, Tr and the Jacobi identity.

Every bracket splits uniquely as ``C = Tr(M) + j(nu)`` with ``M = p(C)/2`` and
``nu = -tr(C)/2``.  The Jacobian tensor of such a bracket is ``2 A nu`` (with
``A`` the matrix of ``M``), which gives a linear-algebra Jacobi test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Bracket, Covector, JacobiTensor, SymForm, Vector, epsilon

__all__ = [
    "Decomposition",
    "trace_map",
    "j_embed",
    "p_project",
    "Tr_embed",
    "decompose",
    "compose",
    "jacobian_tensor",
    "jacobian_via_theorem",
    "is_jacobi",
]

_HALF = Fraction(1, 2)
_CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


@dataclass(frozen=True)
class Decomposition:
    """Unimodular part ``M`` (as its matrix) and trace part ``nu``."""

    M: SymForm
    nu: Covector

    def compose(self) -> Bracket:
        return compose(self.M, self.nu)


def trace_map(C: Bracket) -> Covector:
    """<tr(C), a> = sum_i <lambda^i, C(e_i, a)>; zero iff C is unimodular."""
    return Covector(tuple(sum((C.c(i, a, i) for i in range(3)), Fraction(0)) for a in range(3)))


def j_embed(alpha: Covector) -> Bracket:
    """j(alpha)(a, b) = <alpha, a> b - <alpha, b> a."""
    return Bracket.from_function(
        lambda i, j, k: alpha[i] * (j == k) - alpha[j] * (i == k)
    )


def p_project(C: Bracket) -> SymForm:
    r"""Matrix of p(C)(e1, e2, e3)(lambda^i, lambda^j).

    Sum over cyclic (a, b, c) of C_{ab}^i delta_c^j + C_{ab}^j delta_c^i.
    """
    rows = [[Fraction(0)] * 3 for _ in range(3)]
    for a, b, c in _CYCLIC:
        for i in range(3):
            v = C.c(a, b, i)
            rows[i][c] = rows[i][c] + v
            rows[c][i] = rows[c][i] + v
    return SymForm(tuple(tuple(r) for r in rows))


def Tr_embed(A) -> Bracket:
    """Bracket with C_{ij}^l = sum_k eps_{ijk} a^{kl}.

    For diagonal ``A = diag(mu)`` this is [e_i, e_j] = sum_k eps_{ijk} mu_k e_k.
    """
    A = SymForm.of(A)
    return Bracket.from_function(
        lambda i, j, l: sum((epsilon(i, j, k) * A[k, l] for k in range(3)), Fraction(0))
    )


def decompose(C: Bracket) -> Decomposition:
    """Return ``(M, nu) = (p(C)/2, -tr(C)/2)``."""
    return Decomposition(SymForm(p_project(C).scale(_HALF).rows), trace_map(C).scale(-_HALF))


def compose(M, nu: Covector) -> Bracket:
    """Tr(M) + j(nu)."""
    return Tr_embed(M) + j_embed(nu)


def jacobian_tensor(C: Bracket) -> JacobiTensor:
    """Cyclic sum C(C(e1,e2),e3) + C(C(e2,e3),e1) + C(C(e3,e1),e2)."""
    e = [Vector(tuple(int(i == k) for k in range(3))) for i in range(3)]
    total = Vector.zero()
    for a, b, c in _CYCLIC:
        total = total + C(C.product(a, b), e[c])
    return JacobiTensor(total.comps)


def jacobian_via_theorem(M, nu: Covector) -> JacobiTensor:
    """2 i_nu M, i.e. the components of 2 A nu."""
    return JacobiTensor(tuple(
        2 * sum((M[i, j] * nu[j] for j in range(3)), Fraction(0)) for i in range(3)
    ))


def is_jacobi(C: Bracket) -> bool:
    """True iff the Jacobi identity holds.

    Decided through the decomposition; the direct cyclic sum is asserted to
    agree unless Python runs with ``-O``.
    """
    d = decompose(C)
    J = jacobian_via_theorem(d.M, d.nu)
    assert J == jacobian_tensor(C), "J_C = 2 i_nu M failed"
    return J.is_zero()
