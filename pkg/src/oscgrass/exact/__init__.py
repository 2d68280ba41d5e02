"""Exact arithmetic: scalar fields, polynomials in t, jets and linear algebra."""

from .fields import DEFAULT_PRIME, QQ, PrimeField, RationalField, get_field
from .jet import Jet
from .linalg import (
    FrameMatrix,
    RankDisagreement,
    bareiss_det,
    bareiss_rank,
    nullspace,
    rank,
    rank_mod_p,
    rank_poly,
    rank_sparse_mod_p,
    rref,
    solve_homogeneous,
)
from .poly import PolyT

__all__ = [
    "DEFAULT_PRIME", "QQ", "PrimeField", "RationalField", "get_field", "Jet",
    "FrameMatrix", "RankDisagreement", "bareiss_det", "bareiss_rank", "nullspace",
    "rank", "rank_mod_p", "rank_poly", "rank_sparse_mod_p", "rref",
    "solve_homogeneous", "PolyT",
]
