"""Exact symmetric congruence diagonalization (Lagrange reduction)."""

from __future__ import annotations

from fractions import Fraction

from .core import GroupElement, SymForm
from .scalar import GaussianRational, magnitude

__all__ = ["congruence_diagonalize", "sign_class"]


def sign_class(x) -> int:
    """Sort key for diagonal entries: positives, negatives, zeros.

    Non-real entries only occur over Q(i), where no ordering exists; they sort
    with the positives (every non-zero complex entry is "non-degenerate").
    """
    if x == 0:
        return 2
    if isinstance(x, GaussianRational):
        return 0
    return 0 if x > 0 else 1


def _row_op(m, dst, src, f):
    m[dst] = [a + f * b for a, b in zip(m[dst], m[src])]


def _col_op(m, dst, src, f):
    for r in m:
        r[dst] = r[dst] + f * r[src]


def congruence_diagonalize(A) -> tuple[GroupElement, SymForm]:
    """Find invertible ``P`` with ``P A P^T = D`` diagonal.

    Pivots are taken largest-magnitude first (ties to the lowest index).  When
    every remaining diagonal entry vanishes but some ``a_ij != 0``, the move
    ``e_i -> e_i + e_j`` creates the pivot ``2 a_ij``.  The result is then
    permuted so that ``D`` lists positive entries, then negative ones, then
    zeros, keeping index order inside each group.
    """
    A = SymForm.of(A)
    a = [list(r) for r in A.rows]
    p = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    remaining = [0, 1, 2]
    while remaining:
        nonzero = [i for i in remaining if a[i][i] != 0]
        if not nonzero:
            pair = next(((i, j) for i in remaining for j in remaining
                         if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            _row_op(a, i, j, 1)
            _col_op(a, i, j, 1)
            _row_op(p, i, j, 1)
            nonzero = [i]
        piv = max(nonzero, key=lambda i: (magnitude(a[i][i]), -i))
        d = a[piv][piv]
        for q in remaining:
            if q == piv or a[q][piv] == 0:
                continue
            f = -a[q][piv] / d
            _row_op(a, q, piv, f)
            _col_op(a, q, piv, f)
            _row_op(p, q, piv, f)
        remaining.remove(piv)
    order = sorted(range(3), key=lambda i: (sign_class(a[i][i]), i))
    P = GroupElement(tuple(tuple(p[i]) for i in order))
    D = SymForm.diag(*(a[i][i] for i in order))
    return P, D
