"""Sparse holomorphic polynomials over the Gaussian rationals, and tuples of them.

Exponent vectors are plain tuples of non-negative ints.  The global monomial
order is graded lexicographic with ``z1 > z2 > ... > zn``: lower total degree
first, and within a degree ``z1**2 < z1*z2 < z2**2`` in list position (i.e. the
larger power of an earlier variable comes first).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from typing import Optional

from .gaussian import ONE, ZERO, GaussianRational

Exponent = tuple[int, ...]


class DimensionMismatch(ValueError):
    """Raised when objects living in different ambient dimensions are combined."""


def monomial_key(e: Exponent) -> tuple:
    """Sort key for the graded lexicographic order."""
    return (sum(e), tuple(-x for x in e))


def sort_monomials(monomials: Iterable[Exponent]) -> list[Exponent]:
    return sorted(set(monomials), key=monomial_key)


def monomials_of_degree(n: int, d: int) -> list[Exponent]:
    """All exponent vectors of length n and total degree d, in monomial order."""
    out: list[Exponent] = []

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for first in range(left, -1, -1):
            rec(prefix + [first], left - first, slots - 1)

    if n == 0:
        return [()] if d == 0 else []
    rec([], d, n)
    return out


def monomials_up_to(n: int, d: int) -> list[Exponent]:
    out: list[Exponent] = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n, k))
    return out


def unit_vector(n: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(n))


def _check_exponent(e, n: int) -> Exponent:
    e = tuple(e)
    if len(e) != n:
        raise DimensionMismatch(f"exponent vector {e} has length {len(e)}, expected {n}")
    if any((not isinstance(x, int)) or x < 0 for x in e):
        raise ValueError(f"exponent vector {e} must hold non-negative integers")
    return e


class Polynomial:
    """A polynomial in z_1..z_n stored as ``{exponent: coefficient}`` with no zero entries."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Optional[Mapping] = None, *, _trusted: bool = False):
        if n < 0:
            raise ValueError("ambient dimension must be non-negative")
        self.n = n
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean: dict[Exponent, GaussianRational] = {}
        for e, c in (terms or {}).items():
            e = _check_exponent(e, n)
            c = GaussianRational.coerce(c)
            c = clean.get(e, ZERO) + c
            if c.is_zero():
                clean.pop(e, None)
            else:
                clean[e] = c
        self._terms = clean

    # construction helpers
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n, {}, _trusted=True)

    @classmethod
    def constant(cls, n: int, c=1) -> "Polynomial":
        c = GaussianRational.coerce(c)
        return cls(n, {(0,) * n: c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "Polynomial":
        e = tuple(e)
        return cls(len(e), {e: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        """The coordinate z_{i+1} (0-based index i)."""
        return cls(n, {unit_vector(n, i): ONE}, _trusted=True)

    @property
    def terms(self) -> Mapping[Exponent, GaussianRational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, e: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(e), ZERO)

    def monomials(self) -> list[Exponent]:
        return sort_monomials(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def _same_n(self, other: "Polynomial"):
        if self.n != other.n:
            raise DimensionMismatch(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        self._same_n(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, ZERO) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.n, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return Polynomial.zero(self.n)
        return Polynomial(self.n, {e: c * v for e, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        return poly_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = Polynomial.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate_coefficients(self) -> "Polynomial":
        return Polynomial(self.n, {e: c.conjugate() for e, c in self._terms.items()}, _trusted=True)

    def __call__(self, *point):
        return evaluate(self, point)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.n}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in self.monomials():
            c = self._terms[e]
            mono = "*".join(
                f"z{i + 1}" if x == 1 else f"z{i + 1}^{x}" for i, x in enumerate(e) if x
            )
            if not mono:
                parts.append(f"({c})")
            elif c == ONE:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._same_n(b)
    out: dict[Exponent, GaussianRational] = {}
    for ea, ca in a._terms.items():
        for eb, cb in b._terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e)
            out[e] = ca * cb if s is None else s + ca * cb
    return Polynomial(a.n, {e: c for e, c in out.items() if not c.is_zero()}, _trusted=True)


def evaluate(p: Polynomial, point: Sequence) -> GaussianRational:
    """Exact value of p at ``point`` (a sum over terms, no Horner scheme)."""
    if len(point) != p.n:
        raise DimensionMismatch(f"point has length {len(point)}, polynomial has n={p.n}")
    pt = [GaussianRational.coerce(x) for x in point]
    total = ZERO
    for e, c in p._terms.items():
        v = c
        for x, k in zip(pt, e):
            for _ in range(k):
                v = v * x
        total = total + v
    return total


class PolyMap:
    """An ordered tuple of polynomials in the same n variables (possibly empty)."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Iterable[Polynomial] = ()):
        comps = tuple(components)
        for k, p in enumerate(comps):
            if not isinstance(p, Polynomial):
                raise TypeError(f"component {k} is not a Polynomial")
            if p.n != n:
                raise DimensionMismatch(f"component {k} has n={p.n}, map has n={n}")
        self.n = n
        self.components = comps

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        """The coordinate map z -> (z_1, ..., z_n)."""
        return cls(n, [Polynomial.variable(n, i) for i in range(n)])

    @classmethod
    def from_rows(cls, n: int, basis: Sequence[Exponent], rows) -> "PolyMap":
        """Inverse of :func:`coefficient_matrix`."""
        comps = []
        for row in rows:
            comps.append(Polynomial(n, {e: c for e, c in zip(basis, row) if c}))
        return cls(n, comps)

    @property
    def q(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, k):
        return self.components[k]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    @property
    def degree(self) -> int:
        return max((p.degree for p in self.components), default=-1)

    def __call__(self, *point):
        return [evaluate(p, point) for p in self.components]

    def stack(self, other: "PolyMap") -> "PolyMap":
        if self.n != other.n:
            raise DimensionMismatch(f"dimension mismatch: {self.n} vs {other.n}")
        return PolyMap(self.n, self.components + other.components)

    def pad(self, zeros: int) -> "PolyMap":
        """Append ``zeros`` zero components."""
        return PolyMap(self.n, self.components + (Polynomial.zero(self.n),) * zeros)

    def recombine(self, matrix) -> "PolyMap":
        """Components ``sum_k matrix[j][k] * P^k`` for each row j."""
        comps = []
        for row in matrix:
            acc = Polynomial.zero(self.n)
            for c, p in zip(row, self.components):
                acc = acc + p.scale(c)
            comps.append(acc)
        return PolyMap(self.n, comps)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self):
        return hash((self.n, self.components))

    def __repr__(self):
        return f"PolyMap(n={self.n}, [{', '.join(str(p) for p in self.components)}])"


def coefficient_matrix(m: PolyMap) -> tuple[list[Exponent], list[list[GaussianRational]]]:
    """Basis (sorted union of occurring monomials) and the q x M coefficient matrix."""
    basis = sort_monomials(e for p in m.components for e in p._terms)
    rows = [[p._terms.get(e, ZERO) for e in basis] for p in m.components]
    return basis, rows
