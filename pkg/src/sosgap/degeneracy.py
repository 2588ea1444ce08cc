"""Degeneracy sequences 0 = d_1 < d_2 < ... < d_l0 and the k-bound argument.

Given the increments d_l - d_{l-1}, each k_l is the least integer with
d_l - d_{l-1} < n + (n-1) + ... + (n-k_l).  The claim replayed here is that
the total k = sum k_l stays at most kappa - 1 whenever
d <= n + (n-1) + ... + (n-kappa+1) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import gaps


class NoValidK(ValueError):
    """An increment is too large for any k_l <= n-1."""


class HypothesisViolated(ValueError):
    pass


def g(n: int, j: int) -> int:
    """n - j for 0 <= j < n, else 0 (non-increasing in j)."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return n - j if j < n else 0


def _psum(n: int, k: int) -> int:
    # sum_{j=0}^{k-1} (n - j); zero for k = 0
    return sum(n - j for j in range(k))


@dataclass(frozen=True)
class DegeneracySequence:
    n: int
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if self.n < 1:
            raise ValueError("n must be positive")
        if not dims or dims[0] != 0:
            raise ValueError("a degeneracy sequence starts with d_1 = 0")
        if any(b <= a for a, b in zip(dims, dims[1:])):
            raise ValueError(f"dims must be strictly increasing: {dims}")

    @property
    def d(self) -> int:
        return self.dims[-1]

    @property
    def l0(self) -> int:
        return len(self.dims)

    def increments(self) -> list[int]:
        return [b - a for a, b in zip(self.dims, self.dims[1:])]


@dataclass(frozen=True)
class KReport:
    n: int
    dims: tuple
    increments: list
    k_l: list
    k: int
    m_l: list  # m_2, ..., m_{l0+1}; the last entry equals k
    kappa: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "dims": list(self.dims),
            "increments": self.increments,
            "k_l": self.k_l,
            "k": self.k,
            "m_l": self.m_l,
            "kappa": self.kappa,
        }


def minimal_k(n: int, increment: int) -> int:
    """Least k in 0..n-1 with increment < sum_{j=0}^{k} (n-j)."""
    for k in range(n):
        if increment < _psum(n, k + 1):
            return k
    raise NoValidK(
        f"increment {increment} is at least {_psum(n, n)}; no k_l <= {n - 1} satisfies the bound"
    )


def minimal_k_sequence(seq: DegeneracySequence, kappa: Optional[int] = None) -> KReport:
    inc = seq.increments()
    ks = [minimal_k(seq.n, x) for x in inc]
    shifts = [0]
    for k in ks:
        shifts.append(shifts[-1] + k)
    return KReport(seq.n, seq.dims, inc, ks, sum(ks), shifts, kappa)


@dataclass(frozen=True)
class KClaimReport:
    kreport: KReport
    kappa: int
    d: int
    hypothesis_bound: int  # sum_{i<kappa}(n-i) - 1
    telescoped: int  # sum of increments
    lower_sum: int  # sum_l sum_{j<k_l} g(j)
    shifted_sum: int  # sum_l sum_{j<k_l} g(j + m_l)
    collapsed_sum: int  # sum_{i<k} g(i)
    penultimate_ok: bool  # sum_{i<k}(n-i) <= d
    claim_holds: bool  # k <= kappa - 1

    def as_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "kreport"}
        out["kreport"] = self.kreport.as_dict()
        return out


def verify_k_claim(seq: DegeneracySequence, kappa: int) -> KClaimReport:
    """Replay the telescoping argument step by step and check k <= kappa - 1."""
    n = seq.n
    k0 = gaps.kappa0(n)
    if not 1 <= kappa <= k0:
        raise HypothesisViolated(f"kappa={kappa} must lie in 1..kappa0({n})={k0}")
    bound = gaps.partial_sum(n, kappa) - 1
    if seq.d > bound:
        raise HypothesisViolated(f"d={seq.d} exceeds {bound} = sum_(i<kappa)(n-i) - 1")
    rep = minimal_k_sequence(seq, kappa)
    for x, kl in zip(rep.increments, rep.k_l):
        assert _psum(n, kl) <= x < _psum(n, kl + 1), "minimality of k_l"
    telescoped = sum(rep.increments)
    lower = sum(g(n, j) for kl in rep.k_l for j in range(kl))
    shifted = sum(g(n, j + m) for kl, m in zip(rep.k_l, rep.m_l) for j in range(kl))
    collapsed = sum(g(n, i) for i in range(rep.k))
    return KClaimReport(
        kreport=rep,
        kappa=kappa,
        d=seq.d,
        hypothesis_bound=bound,
        telescoped=telescoped,
        lower_sum=lower,
        shifted_sum=shifted,
        collapsed_sum=collapsed,
        penultimate_ok=_psum(n, rep.k) <= seq.d,
        claim_holds=rep.k <= kappa - 1,
    )


def theorem_affine_dim(n: int, d: int, k: int) -> int:
    """Dimension n + d + k + 1 of the affine subspace containing the image (needs k < n)."""
    if k >= n:
        raise HypothesisViolated(f"k={k} must be smaller than n={n}")
    return n + d + k + 1


@dataclass(frozen=True)
class TheoremReplay:
    n: int
    N: int
    codim: int
    kappa: int
    d: int
    sos_assumed: bool
    sos_consequence: bool  # d <= (kappa-1) n
    k: int
    claim: KClaimReport
    affine_dim: int
    N0: int
    flat_codim: int  # N0 - n = d + k
    hjy_bound: int
    bound_holds: bool

    def as_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "claim"}
        out["claim"] = self.claim.as_dict()
        return out


def replay_main_theorem(n: int, N: int, seq: DegeneracySequence, sos_assumed: bool = True) -> TheoremReplay:
    """Walk from a codimension in a gap to the flat-codimension bound d + k.

    With ``sos_assumed`` the rank consequence d <= (kappa-1) n is taken as
    given; a sequence contradicting it is rejected.
    """
    if seq.n != n:
        raise ValueError(f"sequence is for n={seq.n}, not n={n}")
    codim = N - n
    kappa = gaps.gap_membership(n, codim)
    if kappa is None:
        raise HypothesisViolated(f"codimension {codim} lies in no gap interval for n={n}")
    if seq.d > codim:
        raise HypothesisViolated(f"d={seq.d} exceeds the codimension {codim}")
    claim = verify_k_claim(seq, kappa)
    consequence = seq.d <= (kappa - 1) * n
    if sos_assumed and not consequence:
        raise HypothesisViolated(
            f"d={seq.d} > (kappa-1)n={(kappa - 1) * n}: incompatible with the assumed rank consequence"
        )
    k = claim.kreport.k
    dim = theorem_affine_dim(n, seq.d, k)
    bound = gaps.hjy_bound(n, kappa)
    return TheoremReplay(
        n=n,
        N=N,
        codim=codim,
        kappa=kappa,
        d=seq.d,
        sos_assumed=sos_assumed,
        sos_consequence=consequence,
        k=k,
        claim=claim,
        affine_dim=dim,
        N0=dim - 1,
        flat_codim=seq.d + k,
        hjy_bound=bound,
        bound_holds=seq.d + k <= bound,
    )


def enumerate_sequences(n: int, max_d: int):
    """All valid sequences 0 = d_1 < ... with d_l0 <= max_d whose increments admit a k_l."""
    limit = _psum(n, n)

    def rec(prefix):
        yield DegeneracySequence(n, tuple(prefix))
        last = prefix[-1]
        for nxt in range(last + 1, max_d + 1):
            if nxt - last < limit:
                yield from rec(prefix + [nxt])

    yield from rec([0])
