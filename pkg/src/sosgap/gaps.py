"""Integer combinatorics of the gap intervals I_kappa and the rank bands.

For n >= 2 the kappa-th interval is [(kappa-1)n + kappa, n + (n-1) + ... + (n-kappa+1) - 1]
and kappa_0(n) is the largest kappa for which it is non-empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


def _need_n(n: int):
    if n < 2:
        raise ValueError(f"gap tables need n >= 2, got n={n}")


def partial_sum(n: int, kappa: int) -> int:
    """n + (n-1) + ... + (n-kappa+1)."""
    return kappa * n - kappa * (kappa - 1) // 2


def _nontrivial(n: int, kappa: int) -> bool:
    return (kappa - 1) * n + kappa <= partial_sum(n, kappa) - 1


def kappa0(n: int) -> int:
    """Largest kappa with a non-empty interval I_kappa (direct scan)."""
    _need_n(n)
    k = 1
    while _nontrivial(n, k + 1):
        k += 1
    return k


def _interval(n: int, kappa: int) -> tuple[int, int]:
    return (kappa - 1) * n + kappa, partial_sum(n, kappa) - 1


def gap_interval(n: int, kappa: int) -> tuple[int, int]:
    k0 = kappa0(n)
    if not 1 <= kappa <= k0:
        raise ValueError(f"kappa={kappa} outside 1..{k0} for n={n}")
    return _interval(n, kappa)


def d_max(n: int) -> int:
    """D_n = kappa0 n - kappa0(kappa0-1)/2 - 1."""
    k = kappa0(n)
    return k * n - k * (k - 1) // 2 - 1


def gap_membership(n: int, codim: int) -> Optional[int]:
    if codim < 0:
        raise ValueError("codimension must be non-negative")
    for kappa in range(1, kappa0(n) + 1):
        a, b = _interval(n, kappa)
        if a <= codim <= b:
            return kappa
    return None


def hjy_bound(n: int, kappa: int) -> int:
    """Largest flat codimension N0 - n allowed for a map with codimension in I_kappa."""
    a, _ = gap_interval(n, kappa)
    return a - 1


def band(n: int, kappa: int) -> tuple[int, int]:
    """Rank band [n kappa - kappa(kappa-1)/2, kappa n] (defined for every kappa >= 1)."""
    return n * kappa - kappa * (kappa - 1) // 2, kappa * n


def rmax(n: int) -> int:
    """Lower threshold (kappa0+1) n - kappa0(kappa0+1)/2 - 1 of the large-rank regime."""
    k = kappa0(n)
    return (k + 1) * n - k * (k + 1) // 2 - 1


@dataclass(frozen=True)
class RankClass:
    tag: str  # "zero" | "band" | "gap" | "above-max"
    kappa: Optional[int] = None
    above_max: bool = False

    def label(self) -> str:
        if self.tag == "band":
            return f"band:{self.kappa}" + ("+above-max" if self.above_max else "")
        return self.tag

    def __str__(self):
        if self.tag == "band":
            return f"Band({self.kappa})" + (" [above max]" if self.above_max else "")
        return {"zero": "Zero", "gap": "Gap", "above-max": "AboveMax"}[self.tag]


def classify_rank(n: int, r: int) -> RankClass:
    _need_n(n)
    if r < 0:
        raise ValueError("rank must be non-negative")
    if r == 0:
        return RankClass("zero")
    above = r >= rmax(n)
    for kappa in range(1, kappa0(n) + 1):
        lo, hi = band(n, kappa)
        if lo <= r <= hi:
            return RankClass("band", kappa, above)
    return RankClass("above-max", None, True) if above else RankClass("gap")


def first_band_overlap(n: int) -> int:
    """Smallest kappa whose band meets the band of kappa + 1 (scan)."""
    _need_n(n)
    kappa = 1
    while True:
        lo1, hi1 = band(n, kappa)
        lo2, hi2 = band(n, kappa + 1)
        if max(lo1, lo2) <= min(hi1, hi2):
            return kappa
        kappa += 1


@dataclass(frozen=True)
class GapTable:
    n: int
    kappa0: int
    intervals: list = field(default_factory=list)
    d_max: int = 0

    def rows(self) -> list[dict]:
        return [
            {"n": self.n, "kappa": k, "a": a, "b": b, "D_n": self.d_max, "kappa0": self.kappa0}
            for k, (a, b) in enumerate(self.intervals, start=1)
        ]


def gap_table(n: int) -> GapTable:
    k0 = kappa0(n)
    return GapTable(n, k0, [_interval(n, k) for k in range(1, k0 + 1)], d_max(n))
