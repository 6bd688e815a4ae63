"""Automorphism groups, orbit dimensions and orbit closures on the Lie variety.

Group elements follow the convention of :mod:`bianchi.core`: ``g[i][j]`` is
the ``i``-th coordinate of ``g e_j`` and covectors are rows acted on by
``g^{-1}`` from the right.  Block descriptions below are stated in that
convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .classify import A_CLASS, BianchiType, _A_DIAG, allowed_labels, representative
from .core import Bracket, FieldMode, GroupElement, Matrix3, PAIRS, act_bracket, rank
from .decomp import jacobian_tensor
from .errors import JacobiViolation, ModeMismatch

__all__ = [
    "AutGroupInfo",
    "ClosurePoset",
    "ORBIT_DIMS",
    "STABILIZER_DIMS",
    "UNION_VI",
    "UNION_VII",
    "stabilizer_membership",
    "orbit_dimension",
    "stabilizer_dimension",
    "linearized_action_matrix",
    "aut_info",
    "closure_set",
    "closure_poset",
    "node_dimension",
]

ORBIT_DIMS = {"I": 0, "II": 3, "IV": 5, "V": 3, "VIh": 5, "VI0": 5,
              "VIIh": 5, "VII0": 5, "VIII": 6, "IX": 6}
STABILIZER_DIMS = {k: 9 - v for k, v in ORBIT_DIMS.items()}

UNION_VI = "U_VIh"
UNION_VII = "U_VIIh"
_UNION_DIMS = {UNION_VI: 6, UNION_VII: 6}


@dataclass(frozen=True)
class AutGroupInfo:
    """Automorphism (= stabilizer) group of a Bianchi type.

    ``provided`` is False where only the dimension is known (complex B-class);
    ``name`` is then None.
    """

    name: Optional[str]
    dimension: int
    description: str
    provided: bool = True


_REAL_AUT = {
    "I": AutGroupInfo("GL₃ℝ", 9, "all invertible 3x3 matrices"),
    "II": AutGroupInfo(
        "GL₂ℝ⋉ℝ² (block)", 6,
        "g = [[det(g2), h], [0, g2]] with g2 in GL₂ℝ and h a 1x2 row"),
    "VI0": AutGroupInfo(
        "CO(1,1)⋉ℝ² (block)", 4,
        "g = [[g1, h], [0, s]] with g1 in CO(1,1), g1 diag(1,-1) g1ᵀ = det(g1) s diag(1,-1), "
        "s = ±1, h a 2x1 column"),
    "VII0": AutGroupInfo(
        "CO(2)⋉ℝ² (block)", 4,
        "g = [[g1, h], [0, sgn det(g1)]] with g1 in CO(2), h a 2x1 column"),
    "VIII": AutGroupInfo("SO(2,1)", 3, "g diag(1,1,-1) gᵀ = diag(1,1,-1), det(g) = 1"),
    "IX": AutGroupInfo("SO(3)", 3, "g gᵀ = 1, det(g) = 1"),
    "V": AutGroupInfo(
        "Aff₂(ℝ)", 6, "g = [[g1, h], [0, 1]] with g1 in GL₂ℝ and h a 2x1 column"),
    "IV": AutGroupInfo(
        "ℝ*⋉ℝ³ (block)", 4,
        "g = [[mu, h1, h2], [0, mu, h3], [0, 0, 1]] with mu != 0"),
    "VIh": AutGroupInfo(
        "CO(1,1)⋉ℝ²", 4,
        "g = [[g1, h], [0, 1]] with g1 diag(1,-1) g1ᵀ = det(g1) diag(1,-1); "
        "index 2 in the VI_0 stabilizer"),
    "VIIh": AutGroupInfo(
        "CO(2)⋉ℝ²", 4,
        "g = [[g1, h], [0, 1]] with g1 g1ᵀ = det(g1) 1, det(g1) > 0"),
}

_COMPLEX_AUT = {
    "I": AutGroupInfo("GL₃ℂ", 9, "all invertible 3x3 complex matrices"),
    "II": AutGroupInfo(
        "GL₂ℂ⋉ℂ² (block)", 6,
        "g = [[det(g2), h], [0, g2]] with g2 in GL₂ℂ and h a 1x2 row"),
    "VII0": AutGroupInfo(
        "CO(2,ℂ)⋉ℂ² (block)", 4,
        "g = [[g1, h], [0, s]] with g1 g1ᵀ = det(g1) s 1, s = ±1"),
    "IX": AutGroupInfo("SO(3,ℂ)", 3, "g gᵀ = 1, det(g) = 1"),
}
_NOT_PROVIDED = "stabilizer group of complex B-class types not provided; dimension from the linearized action"


def aut_info(t, mode=FieldMode.REAL) -> AutGroupInfo:
    """Static automorphism-group table lookup."""
    mode = FieldMode.parse(mode)
    label = _node(t)
    if label not in allowed_labels(mode):
        raise ModeMismatch(f"type {label} does not exist in {mode.value} mode")
    if mode is FieldMode.REAL:
        return _REAL_AUT[label]
    if label in _COMPLEX_AUT:
        return _COMPLEX_AUT[label]
    return AutGroupInfo(None, STABILIZER_DIMS[label], _NOT_PROVIDED, provided=False)


def _det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    return Matrix3(tuple(tuple(r) for r in rows)).det()


def stabilizer_membership(g, t: BianchiType, mode=FieldMode.REAL) -> bool:
    """Is ``g`` an automorphism of the representative of ``t``?

    A-class types use the block criterion: ``g = [[g1, h], [0, g2]]`` with
    ``g1 1_{k,l} g1^T = det(g1) det(g2) 1_{k,l}``.  B-class types are checked
    directly by ``g.rep == rep``.
    """
    g = GroupElement.of(g) if isinstance(g, Matrix3) else GroupElement(tuple(g))
    if t.label not in A_CLASS:
        rep = representative(t, mode)
        return act_bracket(g, rep) == rep
    d = _A_DIAG[t.label]
    k, l = d.count(1), d.count(-1)
    n = k + l
    if any(g[i, j] != 0 for i in range(n, 3) for j in range(n)):
        return False
    g1 = [[g[i, j] for j in range(n)] for i in range(n)]
    g2 = [[g[i, j] for j in range(n, 3)] for i in range(n, 3)]
    signs = [1] * k + [-1] * l
    lam = _det(g1) * _det(g2)
    for i in range(n):
        for j in range(n):
            lhs = sum((g1[i][a] * signs[a] * g1[j][a] for a in range(n)), Fraction(0))
            rhs = lam * signs[i] if i == j else 0
            if lhs != rhs:
                return False
    return True


def linearized_action_matrix(C: Bracket) -> list:
    """9x9 matrix of xi -> xi.C on gl_3, columns indexed by elementary xi = E_ab.

    (xi.C)(a, b) = xi C(a, b) - C(xi a, b) - C(a, xi b).
    """
    cols = []
    for a in range(3):
        for b in range(3):
            # xi e_b = e_a
            col = []
            for (i, j) in PAIRS:
                for k in range(3):
                    v = C.c(i, j, b) if k == a else Fraction(0)
                    if i == b:
                        v = v - C.c(a, j, k)
                    if j == b:
                        v = v - C.c(i, a, k)
                    col.append(v)
            cols.append(col)
    return [[cols[c][r] for c in range(9)] for r in range(9)]


def orbit_dimension(C: Bracket) -> int:
    """Dimension of the GL_3 orbit of ``C``: rank of the linearized action."""
    J = jacobian_tensor(C)
    if not J.is_zero():
        raise JacobiViolation(J.comps)
    return rank(linearized_action_matrix(C))


def stabilizer_dimension(C: Bracket) -> int:
    return 9 - orbit_dimension(C)


# strict-and-reflexive closure sets, keyed by node
_REAL_CLOSURE = {
    "I": {"I"},
    "II": {"II", "I"},
    "VI0": {"VI0", "II", "I"},
    "VII0": {"VII0", "II", "I"},
    "VIII": {"VIII", "VI0", "VII0", "II", "I"},
    "IX": {"IX", "VI0", "VII0", "II", "I"},
    "V": {"V", "I"},
    "IV": {"IV", "II", "V", "I"},
    "VIh": {"VIh", "II", "I"},
    "VIIh": {"VIIh", "II", "I"},
    UNION_VI: {UNION_VI, "VIh", "IV", "V", "VI0", "II", "I"},
    UNION_VII: {UNION_VII, "VIIh", "IV", "V", "VII0", "II", "I"},
}

_COMPLEX_CLOSURE = {
    "I": {"I"},
    "II": {"II", "I"},
    "VII0": {"VII0", "II", "I"},
    "IX": {"IX", "VII0", "II", "I"},
    "V": {"V", "I"},
    "IV": {"IV", "II", "V", "I"},
    "VIIh": {"VIIh", "II", "I"},
    UNION_VII: {UNION_VII, "VIIh", "IV", "V", "VII0", "II", "I"},
}


def _node(t) -> str:
    if isinstance(t, BianchiType):
        return t.label
    s = str(t).strip()
    if s in _REAL_CLOSURE:
        return s
    aliases = {"U_VI_H": UNION_VI, "U_VII_H": UNION_VII, "UVIH": UNION_VI, "UVIIH": UNION_VII}
    key = s.upper().replace(" ", "")
    if key in aliases:
        return aliases[key]
    if key == "III":
        return "VIh"
    return BianchiType.parse(s, 1 if key.endswith("H") else None).label


def node_dimension(node: str) -> int:
    return _UNION_DIMS.get(node, ORBIT_DIMS.get(node))


def closure_set(t, mode=FieldMode.REAL) -> frozenset:
    """Node labels lying in the orbit closure of ``t`` (``t`` included).

    ``t`` may be a :class:`BianchiType`, a label, or one of the family-union
    nodes :data:`UNION_VI` / :data:`UNION_VII`.  A single ``VIh`` or ``VIIh``
    orbit closes onto II and I only; the unions over all ``h`` also reach IV,
    V and the corresponding ``h = 0`` orbit.
    """
    mode = FieldMode.parse(mode)
    table = _REAL_CLOSURE if mode is FieldMode.REAL else _COMPLEX_CLOSURE
    node = _node(t)
    if node not in table:
        raise ModeMismatch(f"{node} is not an orbit type in {mode.value} mode")
    return frozenset(table[node])


@dataclass(frozen=True)
class ClosurePoset:
    """Orbit-closure partial order.

    ``edges`` holds every strict relation ``(upper, lower)`` meaning ``lower``
    lies in the closure of ``upper``; ``nodes`` are sorted by orbit dimension,
    then label.
    """

    nodes: tuple
    edges: frozenset
    dims: dict

    def closure(self, node: str) -> frozenset:
        return frozenset({node} | {b for a, b in self.edges if a == node})

    def hasse_edges(self) -> list:
        """Covering relations (transitive reduction), in node order."""
        out = []
        for a, b in sorted(self.edges, key=lambda e: (self.nodes.index(e[0]), self.nodes.index(e[1]))):
            if not any((a, m) in self.edges and (m, b) in self.edges for m in self.nodes):
                out.append((a, b))
        return out

    def is_acyclic(self) -> bool:
        return not any((b, a) in self.edges for a, b in self.edges)


def closure_poset(mode=FieldMode.REAL) -> ClosurePoset:
    mode = FieldMode.parse(mode)
    table = _REAL_CLOSURE if mode is FieldMode.REAL else _COMPLEX_CLOSURE
    dims = {n: node_dimension(n) for n in table}
    nodes = tuple(sorted(table, key=lambda n: (dims[n], n)))
    edges = frozenset((a, b) for a in table for b in table[a] if a != b)
    return ClosurePoset(nodes, edges, dims)
