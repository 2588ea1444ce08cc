"""Exact Hermitian sum-of-squares tools for rank gaps of polynomial sphere maps."""

from .gaussian import GaussianRational
from .polynomial import PolyMap, Polynomial
from .hermitian import (
    HermitianForm,
    IdentityFailure,
    NotDivisible,
    check_sos_identity,
    divide_by_norm,
    is_sos,
    multiply_by_norm,
    signature_decompose,
)
from .rank import linear_rank, rank_of, tensor_product, tensor_with_z
from .gaps import classify_rank, gap_table, kappa0
from .sphere_maps import BallMap, NotProper, affine_image_dimension, is_proper_ball_map
from .search import SearchConfig, SearchSpaceTooLarge, exhaustive_scan, falsify, gen_gh_instance

__version__ = "0.1.0"

__all__ = [
    "BallMap",
    "GaussianRational",
    "HermitianForm",
    "IdentityFailure",
    "NotDivisible",
    "NotProper",
    "PolyMap",
    "Polynomial",
    "SearchConfig",
    "SearchSpaceTooLarge",
    "affine_image_dimension",
    "check_sos_identity",
    "classify_rank",
    "divide_by_norm",
    "exhaustive_scan",
    "falsify",
    "gap_table",
    "gen_gh_instance",
    "is_proper_ball_map",
    "is_sos",
    "kappa0",
    "linear_rank",
    "multiply_by_norm",
    "rank_of",
    "signature_decompose",
    "tensor_product",
    "tensor_with_z",
]
