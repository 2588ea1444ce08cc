import itertools

import pytest

from sosgap import gaps
from sosgap.degeneracy import (
    DegeneracySequence,
    HypothesisViolated,
    NoValidK,
    enumerate_sequences,
    g,
    minimal_k,
    minimal_k_sequence,
    replay_main_theorem,
    theorem_affine_dim,
    verify_k_claim,
)


def test_g_examples():
    assert (g(5, 0), g(5, 4), g(5, 7)) == (5, 1, 0)


def test_minimal_k_examples():
    r = minimal_k_sequence(DegeneracySequence(4, (0, 4, 7)))
    assert r.k_l == [1, 0] and r.k == 1
    r = minimal_k_sequence(DegeneracySequence(5, (0, 1, 3, 7)))
    assert r.k == 0
    r = minimal_k_sequence(DegeneracySequence(3, (0, 3, 6)))
    assert r.k_l == [1, 1] and r.k == 2
    assert r.m_l == [0, 1, 2]


def test_no_valid_k():
    # increments up to n + (n-1) + ... + 1 - 1 are allowed
    assert minimal_k(3, 5) == 2
    with pytest.raises(NoValidK):
        minimal_k(3, 6)


def test_sequence_validation():
    with pytest.raises(ValueError):
        DegeneracySequence(3, (1, 2))
    with pytest.raises(ValueError):
        DegeneracySequence(3, (0, 2, 2))


def test_minimal_k_brute_force():
    for n in range(1, 8):
        for inc in range(0, n * (n + 1) // 2):
            k = minimal_k(n, inc)
            ok = [kk for kk in range(n) if inc < sum(n - j for j in range(kk + 1))]
            assert k == min(ok)


def test_k_claim_examples():
    c = verify_k_claim(DegeneracySequence(7, (0, 7, 14)), 3)
    assert c.kreport.k == 2 and c.claim_holds
    for n in range(2, 8):
        for d in range(0, n):
            c = verify_k_claim(DegeneracySequence(n, (0, d) if d else (0,)), 1)
            assert c.kreport.k == 0
    with pytest.raises(HypothesisViolated):
        verify_k_claim(DegeneracySequence(4, (0, 4)), 1)


def test_affine_dim_examples():
    assert theorem_affine_dim(2, 0, 0) == 3
    assert theorem_affine_dim(7, 14, 2) == 24
    assert theorem_affine_dim(4, 4, 1) == 10
    with pytest.raises(HypothesisViolated):
        theorem_affine_dim(3, 0, 3)


def test_replay_examples():
    r = replay_main_theorem(7, 24, DegeneracySequence(7, (0, 7, 14)))
    assert r.flat_codim == 16 == r.hjy_bound and r.bound_holds and r.N0 == 23
    r = replay_main_theorem(2, 3, DegeneracySequence(2, (0,)))
    assert r.flat_codim == 0 and r.bound_holds
    r = replay_main_theorem(4, 10, DegeneracySequence(4, (0, 4)))
    assert (r.d, r.k, r.flat_codim, r.hjy_bound) == (4, 1, 5, 5)
    with pytest.raises(HypothesisViolated):
        replay_main_theorem(4, 8, DegeneracySequence(4, (0,)))  # codim 4 lies in no interval
    with pytest.raises(HypothesisViolated):
        replay_main_theorem(5, 13, DegeneracySequence(5, (0, 6)))  # d > (kappa-1) n


def test_exhaustive_claim_n_le_6():
    checked = 0
    for n in range(2, 7):
        for kappa in range(1, gaps.kappa0(n) + 1):
            bound = gaps.partial_sum(n, kappa) - 1
            for seq in enumerate_sequences(n, bound):
                c = verify_k_claim(seq, kappa)
                assert c.telescoped == seq.d
                assert c.lower_sum >= c.collapsed_sum
                assert c.shifted_sum <= c.lower_sum
                assert c.penultimate_ok
                assert c.claim_holds
                checked += 1
    assert checked > 1000


def test_shift_inequality_brute_force():
    for n in range(1, 7):
        for length in range(1, 5):
            for ks in itertools.product(range(n), repeat=length):
                if sum(ks) > 12:
                    continue
                k = sum(ks)
                lhs = sum(g(n, j) for kl in ks for j in range(kl))
                assert lhs >= sum(g(n, i) for i in range(k))


def test_enumeration_complete_small():
    seqs = {s.dims for s in enumerate_sequences(3, 4)}
    expected = set()
    for r in range(0, 5):
        for rest in itertools.combinations(range(1, 5), r):
            dims = (0,) + rest
            if all(b - a < 6 for a, b in zip(dims, dims[1:])):
                expected.add(dims)
    assert seqs == expected
