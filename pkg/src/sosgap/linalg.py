"""Exact linear algebra over the Gaussian rationals.

Matrices are lists of rows of :class:`GaussianRational`.  Nothing here uses
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from gmpy2 import mpq

from .gaussian import ONE, ZERO, GaussianRational

Matrix = list[list[GaussianRational]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def conj_transpose(a: Matrix, cols: Optional[int] = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [[a[i][j].conjugate() for i in range(len(a))] for j in range(len(a[0]))]


def transpose(a: Matrix, cols: Optional[int] = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(inner):
            x = row[k]
            if x.is_zero():
                continue
            brow = b[k]
            for j in range(cols):
                y = brow[j]
                if not y.is_zero():
                    orow[j] = orow[j] + x * y
    return out


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.  Input is not modified."""
    m = [list(r) for r in a]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv if not x.is_zero() else x for x in m[r]]
        prow = m[r]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y if not y.is_zero() else x for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return m[: len(pivots)], pivots


def rank(a: Matrix) -> int:
    """Rank by forward elimination."""
    m = [list(r) for r in a if any(not x.is_zero() for x in r)]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        inv = ONE / prow[c]
        for i in range(r + 1, rows):
            x = m[i][c]
            if x.is_zero():
                continue
            f = x * inv
            m[i] = [u - f * v if not v.is_zero() else u for u, v in zip(m[i], prow)]
        r += 1
    return r


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + idrow for row, idrow in zip(a, identity(n))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def solve(a: Matrix, b: Sequence[GaussianRational]) -> Optional[list[GaussianRational]]:
    """One solution of ``a x = b`` (free variables set to zero), or None if inconsistent."""
    cols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug)
    if piv and piv[-1] == cols:
        return None
    x = [ZERO] * cols
    for row, c in zip(red, piv):
        x[c] = row[cols]
    return x


def is_hermitian(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i].conjugate() for i in range(n) for j in range(i, n))


def quad_form(a: Matrix, v: Sequence[GaussianRational]) -> GaussianRational:
    """``v^H a v``."""
    total = ZERO
    for i, vi in enumerate(v):
        if vi.is_zero():
            continue
        s = ZERO
        for j, vj in enumerate(v):
            if not vj.is_zero() and not a[i][j].is_zero():
                s = s + a[i][j] * vj
        total = total + vi.conjugate() * s
    return total


@dataclass(frozen=True)
class Congruence:
    """``gram = sum_k weights[k] * vecs[k] vecs[k]^H`` with nonzero rational weights.

    The vectors are linearly independent and their count is the rank.
    When ``witness`` is set the elimination stopped early (PSD mode) and
    ``witness^H gram witness < 0``.
    """

    weights: list
    vecs: list
    witness: Optional[list] = None

    @property
    def signature(self) -> tuple[int, int]:
        pos = sum(1 for w in self.weights if w > 0)
        return pos, len(self.weights) - pos


def _pick_pivot(s: Matrix, alive: list[int], strategy: str):
    diag = [i for i in alive if not s[i][i].is_zero()]
    if diag:
        if strategy == "first":
            return ("diag", diag[0])
        if strategy == "last":
            return ("diag", diag[-1])
        if strategy == "maxabs":
            return ("diag", max(diag, key=lambda i: abs(s[i][i].re)))
        raise ValueError(f"unknown pivot strategy {strategy!r}")
    order = alive if strategy != "last" else list(reversed(alive))
    for i in order:
        for j in order:
            if i != j and not s[i][j].is_zero():
                return ("pair", (i, j))
    return None


def hermitian_congruence(gram: Matrix, strategy: str = "first", psd_only: bool = False) -> Congruence:
    """Exact congruence diagonalization of a Hermitian matrix by rank-one reductions.

    Each step picks x (a unit vector on a nonzero diagonal entry, or
    ``e_i - conj(s_ij) e_j`` when every remaining diagonal entry vanishes),
    sets ``delta = x^H S x`` and replaces S by ``S - (S x)(S x)^H / delta``.
    With ``psd_only`` the first negative direction found is turned into a
    witness vector for the original matrix instead of being eliminated.
    """
    size = len(gram)
    s = [list(r) for r in gram]
    alive = list(range(size))
    weights: list = []
    vecs: list = []
    pivots: list[int] = []
    while True:
        alive = [i for i in alive if any(not s[i][j].is_zero() for j in alive)]
        if not alive:
            break
        if psd_only:
            neg = next((i for i in alive if s[i][i].re < 0), None)
            if neg is not None:
                x = [ZERO] * size
                x[neg] = ONE
                return Congruence(weights, vecs, _lift_witness(x, vecs, pivots))
        choice = _pick_pivot(s, alive, strategy)
        if choice is None:
            break
        kind, where = choice
        x = [ZERO] * size
        if kind == "diag":
            x[where] = ONE
        if kind == "pair":
            i, j = where
            x[i] = ONE
            x[j] = -s[i][j].conjugate()
            if psd_only:
                # every remaining diagonal entry is zero, so x^H S x = -2|s_ij|^2 < 0
                return Congruence(weights, vecs, _lift_witness(x, vecs, pivots))
            pivots.append(-1)
        else:
            pivots.append(where)
        sx = [ZERO] * size
        for r in alive:
            acc = ZERO
            row = s[r]
            for c in alive:
                if not x[c].is_zero() and not row[c].is_zero():
                    acc = acc + row[c] * x[c]
            sx[r] = acc
        delta = ZERO
        for r in alive:
            if not x[r].is_zero():
                delta = delta + x[r].conjugate() * sx[r]
        d = delta.re  # Hermitian: imaginary part is zero
        if d == 0:
            raise ArithmeticError("degenerate pivot in congruence elimination")
        inv = mpq(1) / d
        vec = [v * GaussianRational(inv) if not v.is_zero() else v for v in sx]
        for r in alive:
            if vec[r].is_zero():
                continue
            a = sx[r]
            row = s[r]
            for c in alive:
                if not sx[c].is_zero():
                    row[c] = row[c] - a * vec[c].conjugate()
        weights.append(d)
        vecs.append(vec)
    return Congruence(weights, vecs, None)


def _lift_witness(x: list, vecs: list, pivots: list[int]) -> list:
    """Extend a witness for the residual matrix to one for the original matrix.

    Chooses the pivot coordinates so that ``vec_k^H v = 0`` for every
    eliminated vector; then ``v^H G v`` equals the residual form at ``x``.
    vec_k is 1 at its own pivot and 0 at earlier pivots, so back substitution
    from the last vector works.  Only valid when every pivot was diagonal.
    """
    v = list(x)
    for vec, p in zip(reversed(vecs), reversed(pivots)):
        acc = ZERO
        for i, val in enumerate(vec):
            if i != p and not val.is_zero() and not v[i].is_zero():
                acc = acc + val.conjugate() * v[i]
        v[p] = -acc / vec[p].conjugate()
    return v
