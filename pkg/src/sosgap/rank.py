"""Linear rank of polynomial maps, tensor products, and subspace containment."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from . import linalg
from .hermitian import a_t_family, is_sos, multiply_by_norm
from .polynomial import DimensionMismatch, PolyMap, coefficient_matrix, poly_mul


class ContainmentViolated(ValueError):
    """V_{G (x) z} is not contained in V_{F (x) z}."""


@dataclass(frozen=True)
class RankReport:
    rank: int
    basis: PolyMap  # reduced row echelon rows, spanning V_P


def linear_rank(P: PolyMap) -> RankReport:
    """Dimension of the span of the components, with an echelon basis of that span."""
    basis, rows = coefficient_matrix(P)
    red, piv = linalg.rref(rows)
    return RankReport(len(piv), PolyMap.from_rows(P.n, basis, red))


def rank_of(P: PolyMap) -> int:
    return linalg.rank(coefficient_matrix(P)[1])


def tensor_product(F: PolyMap, H: PolyMap) -> PolyMap:
    """All products F^j H^k, ordered with j outer and k inner."""
    if F.n != H.n:
        raise DimensionMismatch(f"dimension mismatch: {F.n} vs {H.n}")
    return PolyMap(F.n, [poly_mul(f, h) for f in F.components for h in H.components])


def tensor_with_z(F: PolyMap) -> PolyMap:
    return tensor_product(F, PolyMap.identity(F.n))


def subspace_contained(A: PolyMap, B: PolyMap) -> bool:
    """True iff V_A is a subspace of V_B."""
    if A.n != B.n:
        raise DimensionMismatch(f"dimension mismatch: {A.n} vs {B.n}")
    return rank_of(A.stack(B)) == rank_of(B)


def specrk_bounds(F: PolyMap, G: PolyMap) -> tuple[int, int]:
    """(dim V_{F(x)z} - dim V_{G(x)z}, dim V_{F(x)z}), the admissible range of the rank r."""
    fz, gz = tensor_with_z(F), tensor_with_z(G)
    if not subspace_contained(gz, fz):
        raise ContainmentViolated("V_{G(x)z} is not contained in V_{F(x)z}")
    upper = rank_of(fz)
    return upper - rank_of(gz), upper


def family_rank_profile(F: PolyMap, G: PolyMap, t_samples: Sequence) -> list[tuple[mpq, int]]:
    """SOS certificate rank of (||F||^2 - t||G||^2)||z||^2 for each sampled t.

    Raises ValueError when the t = 1 member is not a sum of squares.
    Nothing is assumed about monotonicity; the ranks are only reported.
    """
    top = is_sos(multiply_by_norm(a_t_family(F, G, 1)))
    if not top:
        raise ValueError("A_1 ||z||^2 is not a sum of squares")
    profile = []
    for t in t_samples:
        cert = is_sos(multiply_by_norm(a_t_family(F, G, t)))
        if not cert:
            raise ArithmeticError(f"A_t ||z||^2 is not SOS at t={t} although A_1 ||z||^2 is")
        profile.append((mpq(t), cert.rank))
    return profile


def generic_rank_violations(F: PolyMap, G: PolyMap, profile) -> list:
    """Samples with 0 < t < 1 whose rank falls short of dim V_{F(x)z}."""
    target = rank_of(tensor_with_z(F))
    return [(t, r) for t, r in profile if 0 < t < 1 and r != target]
