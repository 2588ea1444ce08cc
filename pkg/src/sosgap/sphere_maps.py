"""Polynomial maps of the unit sphere S^n in C^(n+1) into S^N in C^(N+1).

A polynomial map f sends the sphere into the sphere exactly when
||f||^2 - 1 is divisible by ||z||^2 - 1; the quotient is a Hermitian form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from . import gaps, linalg
from .gaussian import GaussianRational
from .hermitian import HermitianForm, divide_by_sphere, squared_norm_form
from .polynomial import PolyMap, Polynomial, coefficient_matrix


@dataclass(frozen=True)
class BallMap:
    """f: S^n -> S^N given by N+1 polynomials in n+1 variables."""

    map: PolyMap

    def __post_init__(self):
        if self.map.n < 1:
            raise ValueError("a ball map needs at least one source variable")
        if self.map.q < 1:
            raise ValueError("a ball map needs at least one component")

    @property
    def source_cr_dim(self) -> int:
        return self.map.n - 1

    @property
    def target_cr_dim(self) -> int:
        return self.map.q - 1

    @property
    def codim(self) -> int:
        return self.target_cr_dim - self.source_cr_dim


class NotProper(ArithmeticError):
    """||f||^2 != 1 somewhere on the sphere; carries such a rational point."""

    def __init__(self, point, value):
        self.point = point
        self.value = value
        shown = "(" + ", ".join(str(x) for x in point) + ")" if point is not None else "?"
        super().__init__(f"||f||^2 = {value} != 1 at sphere point {shown}")


def sphere_point(rng: random.Random, ambient: int) -> list[GaussianRational]:
    """A rational point of the unit sphere in C^ambient via inverse stereographic projection."""
    real_dim = 2 * ambient
    t = [mpq(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(real_dim - 1)]
    s = sum(x * x for x in t)
    x = [2 * ti / (s + 1) for ti in t] + [(s - 1) / (s + 1)]
    return [GaussianRational(x[2 * j], x[2 * j + 1]) for j in range(ambient)]


def _norm2(values) -> mpq:
    return sum((v.abs2() for v in values), mpq(0))


def is_proper_ball_map(f: BallMap, seed: int = 0, tries: int = 200) -> HermitianForm:
    """Exact quotient q with ||f||^2 - 1 = q (||z||^2 - 1); raises :class:`NotProper`."""
    n = f.map.n
    H = squared_norm_form(f.map) - HermitianForm.constant(n, 1)
    q, rem = divide_by_sphere(H)
    if not rem:
        return q
    rng = random.Random(seed)
    for _ in range(tries):
        p = sphere_point(rng, n)
        val = _norm2(f.map(*p))
        if val != 1:
            raise NotProper(p, val)
    raise NotProper(None, "unknown")


def standard_linear_embedding(n: int, N: int) -> BallMap:
    """z -> (z, 0, ..., 0) from S^n into S^N."""
    if N < n:
        raise ValueError(f"target dimension N={N} is smaller than n={n}")
    return BallMap(PolyMap.identity(n + 1).pad(N - n))


def identity_map(n: int) -> BallMap:
    return standard_linear_embedding(n, n)


def whitney_map(n: int) -> BallMap:
    """(z_1, ..., z_n, z_1 z_{n+1}, ..., z_n z_{n+1}, z_{n+1}^2): S^n -> S^(2n)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = n + 1
    z = [Polynomial.variable(m, i) for i in range(m)]
    last = z[-1]
    return BallMap(PolyMap(m, z[:-1] + [zi * last for zi in z[:-1]] + [last * last]))


def compose_linear(f: BallMap, N: int) -> BallMap:
    """L o f for the standard embedding L: S^(current N) -> S^N."""
    extra = N - f.target_cr_dim
    if extra < 0:
        raise ValueError("cannot embed into a smaller sphere")
    return BallMap(f.map.pad(extra))


@dataclass(frozen=True)
class AffineHull:
    dim: int  # complex dimension of the affine hull of f(S^n)
    evaluations: int
    ambient_rank: int  # same quantity from the coefficient matrix on all of C^(n+1)


def affine_image_dimension(f: BallMap, seed: int = 0) -> AffineHull:
    """Dimension of the smallest complex affine subspace containing f(S^n).

    Evaluates f at 4(N+2) seeded rational sphere points and ranks the
    differences to the first value.  The coefficient rank of the non-constant
    part (the hull of f over all of C^(n+1)) is reported alongside.
    """
    N = f.target_cr_dim
    count = 4 * (N + 2)
    rng = random.Random(seed)
    values = [f.map(*sphere_point(rng, f.map.n)) for _ in range(count)]
    base = values[0]
    diffs = [[v - b for v, b in zip(row, base)] for row in values[1:]]
    dim = linalg.rank(diffs)
    basis, rows = coefficient_matrix(f.map)
    keep = [j for j, e in enumerate(basis) if any(e)]
    ambient = linalg.rank([[row[j] for j in keep] for row in rows]) if keep else 0
    return AffineHull(dim, count, ambient)


@dataclass(frozen=True)
class GapReport:
    n: int
    N: int
    codim: int
    kappa: Optional[int]
    hull_dim: int
    N0: int
    flat_codim: int
    bound: Optional[int]
    status: str  # "outside-gaps" | "consistent" | "VIOLATION" | "undefined-n<2"
    evaluations: int
    quotient: str

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def check_gap_conclusion(f: BallMap, seed: int = 0) -> GapReport:
    """Instance-level check that a flat codimension respects the gap bound.

    A "VIOLATION" status means the map contradicts the conjectured bound:
    either an internal error or a genuine counterexample.
    """
    q = is_proper_ball_map(f, seed=seed)
    n, N = f.source_cr_dim, f.target_cr_dim
    hull = affine_image_dimension(f, seed=seed)
    N0 = max(hull.dim - 1, n)
    kappa, bound = None, None
    if n < 2:
        status = "undefined-n<2"
    else:
        kappa = gaps.gap_membership(n, N - n)
        if kappa is None:
            status = "outside-gaps"
        else:
            bound = gaps.hjy_bound(n, kappa)
            status = "consistent" if N0 - n <= bound else "VIOLATION"
    return GapReport(n, N, N - n, kappa, hull.dim, N0, N0 - n, bound, status, hull.evaluations, str(q))
