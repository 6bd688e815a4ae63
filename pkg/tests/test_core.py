from fractions import Fraction

import pytest
from hypothesis import given

import oracles
from bianchi import (Bracket, FieldMode, GroupElement, I, Matrix3, ModeMismatch,
                     SingularMatrixError, SymForm, Vector, act_bracket, act_covector, act_sym, lam)
from bianchi.core import check_mode, epsilon, rank

from conftest import brackets, covectors, group_elements, symforms


def test_levi_civita():
    for i in range(3):
        for j in range(3):
            for k in range(3):
                assert epsilon(i, j, k) == oracles.eps(i, j, k)


def test_from_entries_and_products():
    C = Bracket.from_entries([(2, 3, 1, "1"), (1, 3, 2, "-1"), (1, 2, 3, 1)])
    e1, e2, e3 = (Vector(tuple(int(i == k) for k in range(3))) for i in range(3))
    assert C(e2, e3) == e1
    assert C(e3, e1) == e2
    assert C(e1, e2) == e3
    assert C(e2, e1) == -e3
    assert C == Bracket.from_products(e12=(0, 0, 1), e23=(1, 0, 0), e31=(0, 1, 0))


@pytest.mark.parametrize("entries", [
    [(1, 1, 2, "1")],
    [(2, 1, 3, "1")],
    [(1, 2, 4, "1")],
    [(1, 2, 3, "1"), (1, 2, 3, "2")],
])
def test_from_entries_rejects(entries):
    with pytest.raises(ValueError):
        Bracket.from_entries(entries)


def test_singular_group_element():
    with pytest.raises(SingularMatrixError):
        GroupElement(((1, 2, 3), (2, 4, 6), (0, 0, 1)))
    with pytest.raises(SingularMatrixError):
        Matrix3.zero().inverse()


def test_symform_must_be_symmetric():
    with pytest.raises(ValueError):
        SymForm(((1, 2, 0), (0, 1, 0), (0, 0, 1)))


def test_minus_identity_acts_by_minus_one():
    # oracle: (-1).C (a, b) = -C(-a, -b) = -C(a, b)
    C = Bracket.from_products(e12=(1, 2, 3), e23=(0, -1, 5), e31=(Fraction(1, 2), 0, 0))
    g = GroupElement(Matrix3.diag(-1, -1, -1).rows)
    assert act_bracket(g, C) == C.scale(-1)
    assert act_sym(g, Matrix3.identity()) == SymForm.diag(-1, -1, -1)
    assert act_covector(g, lam(1)) == lam(1, -1)


def test_mode_check():
    check_mode(FieldMode.COMPLEX, [Fraction(1)])
    with pytest.raises(ModeMismatch):
        check_mode(FieldMode.REAL, [I])


@given(group_elements(), brackets())
def test_act_bracket_matches_bilinear_expansion(g, C):
    expected = oracles.act([list(r) for r in g.rows], oracles.tensor(C))
    assert act_bracket(g, C) == oracles.from_tensor(expected)


@given(group_elements(), group_elements(), brackets())
def test_bracket_action_is_a_group_action(g, h, C):
    assert act_bracket(g @ h, C) == act_bracket(g, act_bracket(h, C))
    assert act_bracket(Matrix3.identity(), C) == C


@given(group_elements(), group_elements(), symforms())
def test_sym_action_is_a_group_action(g, h, A):
    assert act_sym(g @ h, A) == act_sym(g, act_sym(h, A))


@given(group_elements(), group_elements(), covectors())
def test_covector_action_is_a_group_action(g, h, nu):
    assert act_covector(g @ h, nu) == act_covector(g, act_covector(h, nu))


@given(group_elements(), covectors())
def test_pairing_is_invariant(g, nu):
    v = Vector((1, Fraction(-2, 3), 5))
    assert act_covector(g, nu).pair(g @ v) == nu.pair(v)


@given(symforms())
def test_rank_matches_oracle(A):
    assert rank(A.rows) == oracles.rank(A.rows)


@given(group_elements())
def test_inverse_and_det(g):
    assert g @ g.inverse() == Matrix3.identity()
    assert g.det() == oracles.det(g.rows)
