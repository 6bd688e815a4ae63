"""Exact classification of three-dimensional Lie algebras over Q and Q(i).

A bracket on K^3 splits into a symmetric form A and a covector nu; the
isomorphism type follows from the rank and signature of A, whether nu
vanishes, and one scalar invariant for the two one-parameter families.
"""

__version__ = "0.1.0"

from .scalar import GaussianRational, I, format_scalar, parse_scalar
from .errors import BianchiError, JacobiViolation, ModeMismatch, PreconditionError, SingularMatrixError
from .core import (Bracket, Covector, FieldMode, GroupElement, JacobiTensor, Matrix3, SymForm,
                   Vector, act_bracket, act_covector, act_sym, lam)
from .decomp import (Decomposition, Tr_embed, compose, decompose, is_jacobi, j_embed,
                     jacobian_tensor, jacobian_via_theorem, p_project, trace_map)
from .classify import (BianchiType, ClassificationReport, RankSig, classify, derived_algebra_dim,
                       invariant_c, is_unimodular, rank_signature, representative)
from .canon import WitnessResult, canonical_form, canonicalize, congruence_diagonalize, isomorphic, witness
from .orbits import (AutGroupInfo, ClosurePoset, aut_info, closure_poset, closure_set,
                     orbit_dimension, stabilizer_dimension, stabilizer_membership)

__all__ = [name for name in dir() if not name.startswith("_")]
