"""Hermitian polynomials sum c_ab z^a conj(z)^b, their Gram matrices, and SOS tests.

A form is stored canonically: only pairs (a, b) with a <= b in the monomial
order are kept, and diagonal coefficients are real.  The Gram matrix of a form
in its monomial basis is unique, so a form is a sum of (weighted) squared
moduli exactly when that matrix is positive semidefinite.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from gmpy2 import mpq

from . import linalg
from .gaussian import ONE, ZERO, GaussianRational
from .polynomial import (
    DimensionMismatch,
    Exponent,
    PolyMap,
    Polynomial,
    coefficient_matrix,
    monomial_key,
    sort_monomials,
    unit_vector,
)

Pair = tuple[Exponent, Exponent]


def _le(a: Exponent, b: Exponent) -> bool:
    return monomial_key(a) <= monomial_key(b)


class HermitianForm:
    """Real-valued polynomial in z and conj(z) with Hermitian coefficient symmetry."""

    __slots__ = ("n", "_terms", "_full")

    def __init__(self, n: int, terms=None):
        """``terms`` maps (a, b) to the coefficient of z^a conj(z)^b.

        Either orientation of an off-diagonal pair may be given; if both are,
        they must be conjugate to each other.  Diagonal entries must be real.
        """
        self.n = n
        self._full = None
        canon: dict[Pair, GaussianRational] = {}
        seen: dict[Pair, GaussianRational] = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != n or len(b) != n:
                raise DimensionMismatch(f"exponent pair {(a, b)} does not have length {n}")
            if any(x < 0 for x in a + b):
                raise ValueError(f"negative exponent in {(a, b)}")
            c = GaussianRational.coerce(c)
            if (a, b) in seen:
                raise ValueError(f"duplicate entry for {(a, b)}")
            seen[(a, b)] = c
            if a == b:
                if not c.is_real():
                    raise ValueError(f"diagonal coefficient of {(a, b)} is not real: {c}")
                key, val = (a, b), c
            elif _le(a, b):
                key, val = (a, b), c
            else:
                key, val = (b, a), c.conjugate()
            if key in canon:
                if canon[key] != val:
                    raise ValueError(f"coefficients of {key} and its transpose are not conjugate")
                continue
            canon[key] = val
        self._terms = {k: v for k, v in canon.items() if not v.is_zero()}

    @classmethod
    def _from_full(cls, n: int, full: dict) -> "HermitianForm":
        """Build from a dict holding both orientations (trusted to be Hermitian)."""
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = {(a, b): c for (a, b), c in full.items() if not c.is_zero() and _le(a, b)}
        obj._full = None
        return obj

    @classmethod
    def zero(cls, n: int) -> "HermitianForm":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c=1) -> "HermitianForm":
        z = (0,) * n
        return cls(n, {(z, z): c})

    @classmethod
    def norm_squared(cls, n: int) -> "HermitianForm":
        """||z||^2 = sum |z_i|^2."""
        return cls(n, {(unit_vector(n, i), unit_vector(n, i)): 1 for i in range(n)})

    @property
    def terms(self) -> dict[Pair, GaussianRational]:
        """Canonical (a <= b) coefficients."""
        return dict(self._terms)

    def full_terms(self) -> dict[Pair, GaussianRational]:
        if self._full is None:
            full = {}
            for (a, b), c in self._terms.items():
                full[(a, b)] = c
                if a != b:
                    full[(b, a)] = c.conjugate()
            self._full = full
        return dict(self._full)

    def coefficient(self, a: Sequence[int], b: Sequence[int]) -> GaussianRational:
        a, b = tuple(a), tuple(b)
        if _le(a, b):
            return self._terms.get((a, b), ZERO)
        return self._terms.get((b, a), ZERO).conjugate()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def bidegrees(self) -> list[tuple[int, int]]:
        return sorted({(sum(a), sum(b)) for (a, b) in self.full_terms()})

    def _check(self, other: "HermitianForm"):
        if self.n != other.n:
            raise DimensionMismatch(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "HermitianForm") -> "HermitianForm":
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return HermitianForm._from_canonical(self.n, out)

    def __neg__(self):
        return HermitianForm._from_canonical(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, t) -> "HermitianForm":
        """Multiply by a real rational."""
        t = mpq(t)
        return HermitianForm._from_canonical(
            self.n, {k: c * GaussianRational(t) for k, c in self._terms.items()}
        )

    def __mul__(self, other: "HermitianForm") -> "HermitianForm":
        if not isinstance(other, HermitianForm):
            return self.scale(other)
        self._check(other)
        out: dict[Pair, GaussianRational] = defaultdict(lambda: ZERO)
        for (a1, b1), c1 in self.full_terms().items():
            for (a2, b2), c2 in other.full_terms().items():
                a = tuple(x + y for x, y in zip(a1, a2))
                b = tuple(x + y for x, y in zip(b1, b2))
                if _le(a, b):
                    out[(a, b)] = out[(a, b)] + c1 * c2
        return HermitianForm._from_canonical(self.n, dict(out))

    @classmethod
    def _from_canonical(cls, n, canon):
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = {k: v for k, v in canon.items() if not v.is_zero()}
        obj._full = None
        return obj

    def __eq__(self, other):
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        return f"HermitianForm(n={self.n}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"

        def mono(e, bar):
            v = "zb" if bar else "z"
            return "*".join(f"{v}{i + 1}" if x == 1 else f"{v}{i + 1}^{x}" for i, x in enumerate(e) if x)

        parts = []
        for (a, b) in sorted(self._terms, key=lambda p: (monomial_key(p[0]), monomial_key(p[1]))):
            c = self._terms[(a, b)]
            m = "*".join(s for s in (mono(a, False), mono(b, True)) if s) or "1"
            if a == b:
                parts.append(f"({c})*{m}")
            else:
                parts.append(f"2Re[({c})*{m}]")
        return " + ".join(parts)

    def gram_matrix(self) -> "GramMatrix":
        basis = sort_monomials(e for pair in self._terms for e in pair)
        entries = [[self.coefficient(a, b) for b in basis] for a in basis]
        return GramMatrix(basis, entries)


@dataclass(frozen=True)
class GramMatrix:
    """Hermitian coefficient matrix: form = sum_ij entries[i][j] basis_i conj(basis_j)."""

    basis: list
    entries: list

    @property
    def size(self) -> int:
        return len(self.basis)

    def to_form(self, n: int) -> HermitianForm:
        terms = {}
        for i, a in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                if i <= j and not self.entries[i][j].is_zero():
                    terms[(a, b)] = self.entries[i][j]
        return HermitianForm(n, terms)

    def rank(self) -> int:
        return linalg.rank(self.entries)


@dataclass(frozen=True)
class SosCertificate:
    """form == sum_k weights[k] * |factor[k]|^2 with positive rational weights."""

    factor: PolyMap
    weights: list
    rank: int

    ok = True

    def __bool__(self):
        return True

    def reconstruct(self) -> HermitianForm:
        return weighted_norm_form(self.factor, self.weights)


@dataclass(frozen=True)
class NotSos:
    """Witness v (in the Gram basis) with v^H Gram v < 0."""

    basis: list
    witness: list
    value: mpq

    ok = False

    def __bool__(self):
        return False


@dataclass(frozen=True)
class SignatureDecomposition:
    """form == sum wplus_j |F^j|^2 - sum wminus_k |G^k|^2, components jointly independent."""

    F: PolyMap
    wplus: list
    G: PolyMap
    wminus: list

    @property
    def signature(self) -> tuple[int, int]:
        return len(self.wplus), len(self.wminus)

    def reconstruct(self) -> HermitianForm:
        return weighted_norm_form(self.F, self.wplus) - weighted_norm_form(self.G, self.wminus)


class NotDivisible(ArithmeticError):
    """Raised when a form is not a multiple of the divisor; carries the offending block."""

    def __init__(self, block, remainder: dict):
        self.block = block
        self.remainder = remainder
        shown = ", ".join(f"{a}{b}:{c}" for (a, b), c in list(sorted(remainder.items()))[:4])
        super().__init__(f"not divisible: bidegree block {block} leaves remainder {{{shown}}}")


class IdentityFailure(NotDivisible):
    """||P||^2 is not of the form A(z, conj z) ||z||^2."""


def squared_norm_form(P: PolyMap) -> HermitianForm:
    """sum_k |P^k(z)|^2 expanded exactly."""
    return weighted_norm_form(P, [1] * P.q)


def weighted_norm_form(P: PolyMap, weights: Sequence) -> HermitianForm:
    out: dict[Pair, GaussianRational] = defaultdict(lambda: ZERO)
    for p, w in zip(P.components, weights):
        w = GaussianRational(mpq(w))
        items = list(p.items())
        for a, ca in items:
            wca = w * ca
            for b, cb in items:
                if _le(a, b):
                    out[(a, b)] = out[(a, b)] + wca * cb.conjugate()
    return HermitianForm._from_canonical(P.n, dict(out))


def _factor_from_vecs(n: int, basis, vecs) -> PolyMap:
    return PolyMap(n, [Polynomial(n, {e: c for e, c in zip(basis, v) if not c.is_zero()}) for v in vecs])


def is_sos(H: HermitianForm, strategy: str = "first"):
    """Decide positive semidefiniteness of the Gram matrix exactly.

    Returns a :class:`SosCertificate` whose reconstruction is exactly H, or a
    :class:`NotSos` carrying a rational witness vector.
    """
    gram = H.gram_matrix()
    cong = linalg.hermitian_congruence(gram.entries, strategy=strategy, psd_only=True)
    if cong.witness is not None:
        value = linalg.quad_form(gram.entries, cong.witness)
        return NotSos(gram.basis, cong.witness, value.re)
    factor = _factor_from_vecs(H.n, gram.basis, cong.vecs)
    return SosCertificate(factor, list(cong.weights), len(cong.weights))


def signature_decompose(H: HermitianForm, strategy: str = "first") -> SignatureDecomposition:
    """Split H into weighted positive and negative squared norms (exact congruence)."""
    gram = H.gram_matrix()
    cong = linalg.hermitian_congruence(gram.entries, strategy=strategy)
    fp, wp, gm, wm = [], [], [], []
    for w, v in zip(cong.weights, cong.vecs):
        if w > 0:
            fp.append(v)
            wp.append(w)
        else:
            gm.append(v)
            wm.append(-w)
    return SignatureDecomposition(
        _factor_from_vecs(H.n, gram.basis, fp), wp, _factor_from_vecs(H.n, gram.basis, gm), wm
    )


def multiply_by_norm(A: HermitianForm) -> HermitianForm:
    """A * ||z||^2."""
    out: dict[Pair, GaussianRational] = defaultdict(lambda: ZERO)
    n = A.n
    for (a, b), c in A.full_terms().items():
        for i in range(n):
            a2 = a[:i] + (a[i] + 1,) + a[i + 1 :]
            b2 = b[:i] + (b[i] + 1,) + b[i + 1 :]
            if _le(a2, b2):
                out[(a2, b2)] = out[(a2, b2)] + c
    return HermitianForm._from_canonical(n, dict(out))


def _reduce(full: dict, n: int, constant: int):
    """Divide a (z, zbar)-polynomial by ||z||^2 - constant.

    The divisor is taken with leading term |z1|^2 (lex order with z1 and
    zbar1 first).  A single polynomial is a Groebner basis of the ideal it
    generates, so the remainder is zero exactly when the divisor divides.
    Each reduction step lowers the z1-exponent, so levels are processed from
    the top down.  Returns (quotient, remainder) as full dicts.
    """
    if n == 0:
        return {}, {k: v for k, v in full.items() if not v.is_zero()}
    levels: dict[int, dict] = defaultdict(dict)
    for (a, b), c in full.items():
        if not c.is_zero():
            levels[a[0]][(a, b)] = c
    quotient: dict[Pair, GaussianRational] = {}
    remainder: dict[Pair, GaussianRational] = {}
    for lev in range(max(levels, default=-1), -1, -1):
        bucket = levels.pop(lev, None)
        if not bucket:
            continue
        below = levels.setdefault(lev - 1, {}) if lev > 0 else None
        for (a, b), c in bucket.items():
            if c.is_zero():
                continue
            if lev == 0 or b[0] == 0:
                remainder[(a, b)] = c
                continue
            a1 = (a[0] - 1,) + a[1:]
            b1 = (b[0] - 1,) + b[1:]
            quotient[(a1, b1)] = quotient.get((a1, b1), ZERO) + c
            for i in range(1, n):
                a2 = a1[:i] + (a1[i] + 1,) + a1[i + 1 :]
                b2 = b1[:i] + (b1[i] + 1,) + b1[i + 1 :]
                below[(a2, b2)] = below.get((a2, b2), ZERO) - c
            if constant:
                below[(a1, b1)] = below.get((a1, b1), ZERO) + c * GaussianRational(constant)
    quotient = {k: v for k, v in quotient.items() if not v.is_zero()}
    return quotient, remainder


def divide_by_norm(H: HermitianForm) -> HermitianForm:
    """The unique A with A * ||z||^2 == H; raises :class:`NotDivisible` otherwise.

    Bidegree blocks are independent (the divisor is bihomogeneous), so each
    block (r, s) is solved on its own for A's block (r-1, s-1).  Within a
    block the unknowns are triangular with respect to the z1-exponent and are
    found by back substitution.
    """
    blocks: dict[tuple[int, int], dict] = defaultdict(dict)
    for (a, b), c in H.full_terms().items():
        blocks[(sum(a), sum(b))][(a, b)] = c
    quotient: dict[Pair, GaussianRational] = {}
    for block in sorted(blocks):
        q, rem = _reduce(blocks[block], H.n, 0)
        if rem:
            raise NotDivisible(block, rem)
        quotient.update(q)
    return HermitianForm._from_full(H.n, quotient)


def divide_by_sphere(H: HermitianForm) -> tuple[HermitianForm, dict]:
    """Quotient and remainder of H by ||z||^2 - 1."""
    q, rem = _reduce(H.full_terms(), H.n, 1)
    return HermitianForm._from_full(H.n, q), rem


def check_sos_identity(P: PolyMap) -> HermitianForm:
    """The Hermitian A with ||P||^2 == A ||z||^2; raises :class:`IdentityFailure`."""
    try:
        return divide_by_norm(squared_norm_form(P))
    except NotDivisible as exc:
        raise IdentityFailure(exc.block, exc.remainder) from None


def evaluate_hermitian(H: HermitianForm, point: Sequence) -> mpq:
    """Exact (real) value of H at a point of C^n."""
    if len(point) != H.n:
        raise DimensionMismatch(f"point has length {len(point)}, form has n={H.n}")
    pt = [GaussianRational.coerce(x) for x in point]
    cache: dict[Exponent, GaussianRational] = {}

    def mono(e):
        v = cache.get(e)
        if v is None:
            v = ONE
            for x, k in zip(pt, e):
                for _ in range(k):
                    v = v * x
            cache[e] = v
        return v

    total = ZERO
    for (a, b), c in H._terms.items():
        t = c * mono(a) * mono(b).conjugate()
        total = total + (t if a == b else GaussianRational(2 * t.re))
    if not total.is_real():
        raise ArithmeticError("Hermitian form evaluated to a non-real value")
    return total.re


def a_t_family(F: PolyMap, G: PolyMap, t) -> HermitianForm:
    """||F||^2 - t ||G||^2 for rational t in [0, 1]."""
    if F.n != G.n:
        raise DimensionMismatch(f"dimension mismatch: {F.n} vs {G.n}")
    t = mpq(t)
    if t < 0 or t > 1:
        raise ValueError(f"t={t} is outside [0, 1]")
    return squared_norm_form(F) - squared_norm_form(G).scale(t)


def gram_of_map(P: PolyMap) -> tuple[list, list]:
    """(basis, C^T conj(C)) for C = coefficient_matrix(P): the Gram matrix of ||P||^2."""
    basis, c = coefficient_matrix(P)
    m = len(basis)
    g = [[ZERO] * m for _ in range(m)]
    for row in c:
        for i in range(m):
            if row[i].is_zero():
                continue
            for j in range(m):
                if not row[j].is_zero():
                    g[i][j] = g[i][j] + row[i] * row[j].conjugate()
    return basis, g


def float_psd_verdict(entries, dead_zone: float = 1e-6) -> tuple[Optional[bool], float]:
    """Floating-point cross-check: (PSD?, lambda_min), verdict None inside the dead zone."""
    if not entries:
        return True, 0.0
    arr = np.array([[complex(x) for x in row] for row in entries], dtype=complex)
    lam = float(np.linalg.eigvalsh(arr).min())
    if abs(lam) <= dead_zone:
        return None, lam
    return lam > 0, lam
