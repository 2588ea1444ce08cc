import math
import random

import pytest
from gmpy2 import mpq

from conftest import rand_map, z
from sosgap import linalg
from sosgap.gaussian import GaussianRational
from sosgap.hermitian import is_sos, squared_norm_form
from sosgap.polynomial import PolyMap, Polynomial
from sosgap.rank import (
    ContainmentViolated,
    family_rank_profile,
    generic_rank_violations,
    linear_rank,
    rank_of,
    specrk_bounds,
    subspace_contained,
    tensor_product,
    tensor_with_z,
)


def test_linear_rank_examples():
    z1, z2 = z(2, 0), z(2, 1)
    assert linear_rank(PolyMap(2, [z1, z2, z1 + z2])).rank == 2
    assert linear_rank(PolyMap(2, [])).rank == 0
    assert linear_rank(PolyMap(2, [z1 * z1, z1 * z2, z1 * z2, z2 * z2])).rank == 3


def test_rank_report_basis_spans_components():
    rng = random.Random(1)
    for _ in range(100):
        P = rand_map(rng, rng.randint(1, 3))
        rep = linear_rank(P)
        assert rep.basis.q == rep.rank
        # stacking components onto the basis adds nothing, and vice versa
        assert rank_of(P.stack(rep.basis)) == rep.rank == rank_of(P)


def test_tensor_examples():
    z1, z2 = z(2, 0), z(2, 1)
    assert tensor_product(PolyMap(2, [z1]), PolyMap(2, [z2])) == PolyMap(2, [z1 * z2])
    T = tensor_with_z(PolyMap(2, [z1, z2]))
    assert T == PolyMap(2, [z1 * z1, z1 * z2, z2 * z1, z2 * z2])
    assert rank_of(T) == 3
    assert tensor_product(PolyMap(2, [z1]), PolyMap(2, [])).q == 0
    assert tensor_with_z(PolyMap(3, [Polynomial.constant(3)])) == PolyMap.identity(3)
    assert tensor_with_z(PolyMap(3, [])).q == 0


def test_subspace_examples():
    z1, z2 = z(2, 0), z(2, 1)
    B = PolyMap(2, [z1 * z1, z1 * z2])
    assert subspace_contained(PolyMap(2, []), B)
    assert not subspace_contained(PolyMap(2, [z1 * z2, z2 * z2]), B)
    assert subspace_contained(B, B)


def test_specrk_examples():
    F = PolyMap.identity(2)
    assert specrk_bounds(F, PolyMap(2, [])) == (3, 3)
    for n in (2, 3, 4):
        d = math.comb(n + 1, 2)
        assert specrk_bounds(PolyMap.identity(n), PolyMap(n, [])) == (d, d)
    assert specrk_bounds(F, F) == (0, 3)
    with pytest.raises(ContainmentViolated):
        specrk_bounds(PolyMap(2, [z(2, 0)]), PolyMap(2, [z(2, 1)]))


def test_tensor_rank_bounds_500():
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(1, 4)
        F = rand_map(rng, n, max_degree=2, max_q=3)
        r = rank_of(tensor_with_z(F))
        assert r <= F.q * n
        monos = {e for p in tensor_with_z(F).components for e in p.monomials()}
        assert r <= len(monos)


def test_three_paths_agree_for_g_zero():
    rng = random.Random(9)
    for _ in range(150):
        n = rng.randint(1, 3)
        F = rand_map(rng, n, max_degree=2, max_q=3)
        lo, hi = specrk_bounds(F, PolyMap(n, []))
        cert = is_sos(squared_norm_form(tensor_with_z(F)))
        assert lo == hi == cert.rank


def test_rank_invariant_under_recombination():
    rng = random.Random(13)
    for _ in range(100):
        P = rand_map(rng, rng.randint(1, 3), max_q=4)
        if not P.q:
            continue
        m = [[GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(P.q)] for _ in range(P.q)]
        if linalg.rank(m) < P.q:
            continue
        assert rank_of(P.recombine(m)) == rank_of(P)


def test_norm_certificate_rank_is_linear_rank():
    rng = random.Random(15)
    for _ in range(200):
        P = rand_map(rng, rng.randint(1, 4), max_degree=3)
        assert is_sos(squared_norm_form(P)).rank == linear_rank(P).rank


def test_family_profile():
    z1, z2 = z(2, 0), z(2, 1)
    F = PolyMap(2, [z1 * z1, z2 * z2])
    ts = [mpq(k, 10) for k in range(11)]
    prof = family_rank_profile(F, PolyMap(2, []), ts)
    target = rank_of(tensor_with_z(F))
    assert all(r == target for _, r in prof)
    G = PolyMap(2, [z1 * z2])
    prof = family_rank_profile(F, G, ts)
    assert prof[0] == (0, target)
    assert generic_rank_violations(F, G, prof) == []
    # at t = 1 the cross term cancels, the rank drops
    assert prof[-1][1] < target
    with pytest.raises(ValueError):
        family_rank_profile(PolyMap(2, [z1]), PolyMap(2, [z2]), ts)
