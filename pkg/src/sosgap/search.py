"""Instance generators and falsification searches around the SOS identity.

Every instance is a polynomial map P (optionally with positive weights w, for
instances built from an exact SOS certificate) such that
sum w_k |P^k|^2 = A ||z||^2 for a Hermitian A.  The harness derives A by
division, ranks P, classifies the rank, decomposes A by signature, and flags
instances that would contradict the targeted statement.
"""

from __future__ import annotations

import itertools
import math
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmpy2 import mpq

from . import gaps, linalg
from .gaussian import ZERO, GaussianRational
from .hermitian import (
    HermitianForm,
    NotDivisible,
    _reduce,
    divide_by_norm,
    evaluate_hermitian,
    is_sos,
    multiply_by_norm,
    signature_decompose,
    squared_norm_form,
    weighted_norm_form,
)
from .io import form_to_doc, polymap_to_doc
from .polynomial import PolyMap, Polynomial, evaluate, monomials_of_degree, monomials_up_to
from .rank import rank_of, tensor_with_z

TARGETS = {
    "sos": "sos",
    "sosconjecture": "sos",
    "weak-sos": "weak-sos",
    "weaksos": "weak-sos",
    "huang": "huang",
    "huanglemma": "huang",
    "gh-band": "gh-band",
    "ghband": "gh-band",
}


def canonical_target(name: str) -> str:
    key = name.strip().lower().replace("_", "-")
    if key not in TARGETS and key.replace("-", "") in TARGETS:
        key = key.replace("-", "")
    try:
        return TARGETS[key]
    except KeyError:
        raise ValueError(f"unknown target {name!r}; choose from sos, weak-sos, huang, gh-band") from None


class SearchSpaceTooLarge(ValueError):
    def __init__(self, size: int, ceiling: int):
        self.size = size
        super().__init__(f"search space has {size} maps, above the ceiling {ceiling}")


@dataclass(frozen=True)
class SearchConfig:
    n: int
    max_degree: int
    target: str = "huang"
    mode: str = "random"  # "random" | "exhaustive"
    trials: int = 100
    seed: int = 0
    coefficient_set: tuple = ()
    max_components: int = 2
    ceiling: int = 10**9
    kappa: Optional[int] = None  # gh-band only; None draws kappa in 1..kappa0(n)

    def __post_init__(self):
        object.__setattr__(self, "target", canonical_target(self.target))
        object.__setattr__(
            self, "coefficient_set", tuple(GaussianRational.coerce(c) for c in self.coefficient_set)
        )
        if self.mode not in ("random", "exhaustive"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n < 2:
            raise ValueError("rank classification needs n >= 2")
        if self.mode == "exhaustive" and self.max_components < 1:
            raise ValueError("exhaustive mode needs a positive component bound")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "target": self.target,
            "mode": self.mode,
            "trials": self.trials,
            "seed": self.seed,
            "coefficient_set": [str(c) for c in self.coefficient_set],
            "max_components": self.max_components,
            "ceiling": self.ceiling,
            "kappa": self.kappa,
        }


@dataclass
class InstanceReport:
    id: str
    family: str
    P: PolyMap
    weights: Optional[list]
    A: HermitianForm
    F: PolyMap
    G: PolyMap
    r: int
    classification: gaps.RankClass
    verdict: str  # "consistent" | "counterexample-candidate"
    kappa_F: Optional[int] = None
    timing: float = 0.0

    @property
    def signature(self) -> tuple[int, int]:
        return self.F.q, self.G.q

    def as_record(self, include_timing: bool = False) -> dict:
        rec = {
            "record": "instance",
            "id": self.id,
            "family": self.family,
            "P": polymap_to_doc(self.P),
            "weights": None if self.weights is None else [str(w) for w in self.weights],
            "A": form_to_doc(self.A),
            "F": polymap_to_doc(self.F),
            "G": polymap_to_doc(self.G),
            "q_plus": self.F.q,
            "q_minus": self.G.q,
            "r": self.r,
            "class": self.classification.label(),
            "verdict": self.verdict,
            "kappa_F": self.kappa_F,
        }
        if include_timing:
            rec["timing"] = round(self.timing, 6)
        return rec


# ---------------------------------------------------------------- generators

_SMALL = [GaussianRational(a, b) for a in range(-2, 3) for b in range(-1, 2) if (a, b) != (0, 0)]


def random_polynomial(rng: random.Random, n: int, degree: int, max_terms: int = 3,
                      min_degree: int = 0, coeffs: Sequence = _SMALL) -> Polynomial:
    monos = [e for d in range(min_degree, degree + 1) for e in monomials_of_degree(n, d)]
    k = rng.randint(1, min(max_terms, len(monos)))
    picks = rng.sample(monos, k)
    return Polynomial(n, {e: rng.choice(coeffs) for e in picks})


def random_polymap(rng: random.Random, n: int, degree: int, components: int, **kw) -> PolyMap:
    return PolyMap(n, [random_polynomial(rng, n, degree, **kw) for _ in range(components)])


def random_unitary(rng: random.Random, q: int) -> list:
    """Gaussian-rational unitary matrix (I - S)(I + S)^-1 for a random skew-Hermitian S."""
    s = [[ZERO] * q for _ in range(q)]
    for i in range(q):
        s[i][i] = GaussianRational(0, mpq(rng.randint(-2, 2), rng.randint(1, 3)))
        for j in range(i + 1, q):
            v = GaussianRational(mpq(rng.randint(-2, 2), rng.randint(1, 3)), mpq(rng.randint(-2, 2), rng.randint(1, 3)))
            s[i][j] = v
            s[j][i] = -v.conjugate()
    eye = linalg.identity(q)
    minus = [[eye[i][j] - s[i][j] for j in range(q)] for i in range(q)]
    plus = [[eye[i][j] + s[i][j] for j in range(q)] for i in range(q)]
    return linalg.matmul(minus, linalg.inverse(plus))


def gen_gh_instance(n: int, kappa: int, degree: int, seed, tries: int = 2000) -> tuple[PolyMap, PolyMap]:
    """Random F of linear rank exactly kappa (degree <= degree) and P = F (x) z."""
    if kappa < 1:
        raise ValueError("kappa must be positive")
    if degree < 1:
        raise ValueError("degree must be at least 1")
    available = len(monomials_up_to(n, degree))
    if kappa > available:
        raise ValueError(f"rank {kappa} unreachable with {available} monomials of degree <= {degree}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(tries):
        comps = kappa + rng.randint(0, 1)
        F = random_polymap(rng, n, degree, comps)
        if rank_of(F) == kappa:
            return F, tensor_with_z(F)
    raise ValueError(f"rank target {kappa} not reached after {tries} attempts")


def _tensor_family(rng, n, degree):
    F = random_polymap(rng, n, max(degree - 1, 0), rng.randint(1, 3))
    P = tensor_with_z(F)
    if rng.random() < 0.5 and P.q > 1:
        P = P.recombine(random_unitary(rng, P.q))
    return P, None


def _form_family(rng, n, degree):
    d = rng.randint(1, max(degree - 1, 1))
    F = PolyMap(n, [Polynomial.monomial(e) for e in monomials_of_degree(n, d)])
    g = random_polynomial(rng, n, d, max_terms=2, min_degree=d)
    c = mpq(rng.randint(1, 4), rng.randint(1, 4))
    A = squared_norm_form(F) - squared_norm_form(PolyMap(n, [g])).scale(c)
    cert = is_sos(multiply_by_norm(A))
    if not cert:
        return None, None
    return cert.factor, list(cert.weights)


def _raw_family(rng, n, degree):
    return random_polymap(rng, n, degree, rng.randint(1, 4), min_degree=1), None


FAMILIES = (("tensor", _tensor_family, 5), ("form", _form_family, 3), ("raw", _raw_family, 2))


def _draw_family(rng):
    names, fns, w = zip(*FAMILIES)
    i = rng.choices(range(len(names)), weights=w)[0]
    return names[i], fns[i]


# ---------------------------------------------------------------- evaluation


def _verdict(target: str, n: int, r: int, cls: gaps.RankClass, G: PolyMap, kappa_F) -> str:
    bad = False
    if target == "sos":
        bad = cls.tag == "gap"
    elif target == "weak-sos":
        bad = G.q > 0 and r > 0 and r < gaps.rmax(n)
    elif target == "huang":
        bad = 0 < r < n
    elif target == "gh-band":
        lo, hi = gaps.band(n, kappa_F)
        bad = not lo <= r <= hi
    return "counterexample-candidate" if bad else "consistent"


def evaluate_instance(iid: str, family: str, P: PolyMap, weights, target: str,
                      kappa_F: Optional[int] = None) -> Optional[InstanceReport]:
    """Full pipeline for one map; None when the SOS identity fails."""
    start = time.perf_counter()
    H = squared_norm_form(P) if weights is None else weighted_norm_form(P, weights)
    try:
        A = divide_by_norm(H)
    except NotDivisible:
        return None
    r = rank_of(P)
    cls = gaps.classify_rank(P.n, r)
    dec = signature_decompose(A)
    verdict = _verdict(target, P.n, r, cls, dec.G, kappa_F)
    return InstanceReport(iid, family, P, weights, A, dec.F, dec.G, r, cls, verdict, kappa_F,
                          time.perf_counter() - start)


def _random_point(rng, n):
    return [GaussianRational(mpq(rng.randint(-9, 9), rng.randint(1, 7)),
                             mpq(rng.randint(-9, 9), rng.randint(1, 7))) for _ in range(n)]


def recheck(rep: InstanceReport, rng: random.Random, points: int = 50) -> bool:
    """Independent confirmation of a candidate: point evaluation and re-ranking.

    The identity sum w|P^k|^2 = A ||z||^2 is checked at random points without
    expanding any product, and the rank is recomputed from a matrix of point
    values instead of coefficients.
    """
    P, n = rep.P, rep.P.n
    weights = rep.weights or [1] * P.q
    for _ in range(points):
        pt = _random_point(rng, n)
        lhs = sum((mpq(w) * evaluate(p, pt).abs2() for p, w in zip(P.components, weights)), mpq(0))
        rhs = evaluate_hermitian(rep.A, pt) * sum((x.abs2() for x in pt), mpq(0))
        if lhs != rhs:
            return False
    monos = {e for p in P.components for e, _ in p.items()}
    samples = [_random_point(rng, n) for _ in range(len(monos) + 8)]
    value_matrix = [[evaluate(p, pt) for pt in samples] for p in P.components]
    return linalg.rank(value_matrix) == rep.r


# ---------------------------------------------------------------- random mode


def _trial(config: SearchConfig, t: int):
    rng = random.Random(f"{config.seed}:{t}")
    iid = f"t{t:07d}"
    kappa_F = None
    if config.target == "gh-band":
        kappa = config.kappa or rng.randint(1, gaps.kappa0(config.n))
        F, P = gen_gh_instance(config.n, kappa, config.max_degree, rng)
        family, weights, kappa_F = "gh", None, kappa
    else:
        family, gen = _draw_family(rng)
        P, weights = gen(rng, config.n, config.max_degree)
        if P is None:
            return family, None, rng
    rep = evaluate_instance(iid, family, P, weights, config.target, kappa_F)
    return family, rep, rng


def _run_chunk(args):
    config, indices = args
    stats = Counter()
    hist = Counter()
    reports, candidates = [], []
    for t in indices:
        family, rep, rng = _trial(config, t)
        stats[f"family:{family}"] += 1
        if rep is None:
            stats["no_identity"] += 1
            continue
        stats["identity_instances"] += 1
        hist[rep.classification.label()] += 1
        if rep.G.q:
            stats["weak_sos_relevant"] += 1
        if rep.verdict == "counterexample-candidate":
            if recheck(rep, rng):
                candidates.append(rep)
            else:
                stats["discrepancies"] += 1
                rep.verdict = "consistent"
        reports.append(rep)
    return stats, hist, reports, candidates


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("SOSGAP_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class SearchResult:
    config: SearchConfig
    reports: list
    candidates: list
    statistics: dict = field(default_factory=dict)
    histogram: dict = field(default_factory=dict)

    @property
    def counterexample(self) -> Optional[InstanceReport]:
        return self.candidates[0] if self.candidates else None


def falsify(config: SearchConfig, workers: Optional[int] = None) -> SearchResult:
    """Seeded random trials; candidates are re-verified before being reported."""
    if config.mode != "random":
        raise ValueError("falsify needs random mode")
    workers = workers or _workers()
    indices = list(range(config.trials))
    if workers > 1 and config.trials > 1:
        size = math.ceil(len(indices) / workers)
        chunks = [(config, indices[i : i + size]) for i in range(0, len(indices), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, chunks))
    else:
        parts = [_run_chunk((config, indices))]
    return _merge(config, parts)


def _merge(config, parts) -> SearchResult:
    stats, hist = Counter(), Counter()
    reports, candidates = [], []
    for s, h, r, c in parts:
        stats.update(s)
        hist.update(h)
        reports.extend(r)
        candidates.extend(c)
    reports.sort(key=lambda r: r.id)
    candidates.sort(key=lambda r: r.id)
    stats["trials"] = config.trials
    stats["candidates"] = len(candidates)
    stats.setdefault("discrepancies", 0)
    return SearchResult(config, reports, candidates, dict(sorted(stats.items())), dict(sorted(hist.items())))


# ---------------------------------------------------------------- exhaustive mode


def search_space_size(config: SearchConfig) -> tuple[int, int]:
    """(number of nonzero candidate components, number of maps up to permutation)."""
    coeffs = set(config.coefficient_set)
    m_monos = len(monomials_up_to(config.n, config.max_degree))
    if not coeffs:
        return 0, 0
    m = len(coeffs) ** m_monos - (1 if ZERO in coeffs else 0)
    total = sum(math.comb(m + k - 1, k) for k in range(1, config.max_components + 1))
    return m, total


def _residue_key(p: Polynomial) -> frozenset:
    """Remainder of |p|^2 modulo ||z||^2: zero exactly for multiples, and additive."""
    _, rem = _reduce(squared_norm_form(PolyMap(p.n, [p])).full_terms(), p.n, 0)
    return frozenset(rem.items())


def _add_keys(acc: dict, key) -> dict:
    out = dict(acc)
    for k, v in key:
        s = out.get(k, ZERO) + v
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def exhaustive_scan(config: SearchConfig) -> SearchResult:
    """All maps with components from the coefficient/monomial budget, up to permutation.

    Only maps satisfying the SOS identity produce reports.  A map satisfies it
    exactly when the remainders of its components' squared moduli sum to zero,
    so tuples are completed by a hash lookup on the negated partial remainder
    instead of testing every tuple.
    """
    if config.mode != "exhaustive":
        raise ValueError("exhaustive_scan needs exhaustive mode")
    m, size = search_space_size(config)
    if size > config.ceiling:
        raise SearchSpaceTooLarge(size, config.ceiling)
    stats = Counter({"search_space": size, "components": m})
    if m == 0:
        return SearchResult(config, [], [], dict(stats), {})
    monos = monomials_up_to(config.n, config.max_degree)
    coeffs = sorted(set(config.coefficient_set), key=lambda c: (c.re, c.im))
    polys: list[Polynomial] = []
    for combo in itertools.product(coeffs, repeat=len(monos)):
        if all(c.is_zero() for c in combo):
            continue
        polys.append(Polynomial(config.n, {e: c for e, c in zip(monos, combo) if not c.is_zero()}))
    keys = [_residue_key(p) for p in polys]
    lookup: dict = {}
    for i, k in enumerate(keys):
        lookup.setdefault(k, []).append(i)

    hits: list[tuple[int, ...]] = []
    for k in range(1, config.max_components + 1):
        for prefix in itertools.combinations_with_replacement(range(len(polys)), k - 1):
            acc: dict = {}
            for i in prefix:
                acc = _add_keys(acc, keys[i])
            need = frozenset((kk, -v) for kk, v in acc.items())
            lo = prefix[-1] if prefix else 0
            for j in lookup.get(need, ()):
                if j >= lo:
                    hits.append(prefix + (j,))

    reports, candidates = [], []
    hist = Counter()
    rng = random.Random(f"exhaustive:{config.seed}")
    for idx in hits:
        P = PolyMap(config.n, [polys[i] for i in idx])
        iid = "x" + "-".join(str(i) for i in idx)
        rep = evaluate_instance(iid, "exhaustive", P, None, config.target)
        if rep is None:  # the residue test and the division disagree
            stats["discrepancies"] += 1
            continue
        stats["identity_instances"] += 1
        hist[rep.classification.label()] += 1
        if rep.verdict == "counterexample-candidate":
            if recheck(rep, rng):
                candidates.append(rep)
            else:
                stats["discrepancies"] += 1
                rep.verdict = "consistent"
        reports.append(rep)
    reports.sort(key=lambda r: r.id)
    stats["candidates"] = len(candidates)
    stats.setdefault("discrepancies", 0)
    return SearchResult(config, reports, candidates, dict(sorted(stats.items())), dict(sorted(hist.items())))
