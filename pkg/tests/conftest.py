from gmpy2 import mpq
from hypothesis import strategies as st

from sosgap.gaussian import GaussianRational
from sosgap.hermitian import HermitianForm
from sosgap.polynomial import PolyMap, Polynomial, monomials_up_to

small_q = st.builds(mpq, st.integers(-6, 6), st.integers(1, 4))
gaussians = st.builds(GaussianRational, small_q, small_q)


@st.composite
def polynomials(draw, n=None, max_degree=3, max_terms=5):
    n = n if n is not None else draw(st.integers(1, 3))
    monos = monomials_up_to(n, max_degree)
    picks = draw(st.lists(st.sampled_from(monos), max_size=max_terms, unique=True))
    return Polynomial(n, {e: draw(gaussians) for e in picks})


@st.composite
def polymaps(draw, n=None, max_degree=3, max_q=4):
    n = n if n is not None else draw(st.integers(1, 4))
    q = draw(st.integers(0, max_q))
    return PolyMap(n, [draw(polynomials(n=n, max_degree=max_degree, max_terms=4)) for _ in range(q)])


def rand_gauss(rng, lo=-5, hi=5):
    return GaussianRational(mpq(rng.randint(lo, hi), rng.randint(1, 4)), mpq(rng.randint(lo, hi), rng.randint(1, 4)))


def rand_poly(rng, n, max_degree=3, max_terms=5):
    monos = monomials_up_to(n, max_degree)
    picks = rng.sample(monos, rng.randint(0, min(max_terms, len(monos))))
    return Polynomial(n, {e: rand_gauss(rng) for e in picks})


def rand_map(rng, n, max_degree=3, max_q=4):
    return PolyMap(n, [rand_poly(rng, n, max_degree) for _ in range(rng.randint(0, max_q))])


def rand_form(rng, n, max_degree=2, max_terms=6):
    """Random Hermitian form with a few canonical terms (not necessarily homogeneous)."""
    monos = monomials_up_to(n, max_degree)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        a, b = rng.choice(monos), rng.choice(monos)
        if a == b:
            terms[(a, a)] = GaussianRational(mpq(rng.randint(-5, 5), rng.randint(1, 3)))
        else:
            c = rand_gauss(rng)
            terms[(a, b)] = c
            terms[(b, a)] = c.conjugate()
    return HermitianForm(n, terms)


def rand_point(rng, n):
    return [rand_gauss(rng, -7, 7) for _ in range(n)]


def z(n, i):
    return Polynomial.variable(n, i)
