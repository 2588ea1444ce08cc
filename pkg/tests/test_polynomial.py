import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import gaussians, polynomials, rand_map, rand_point, rand_poly, z
from sosgap import linalg
from sosgap.gaussian import I, GaussianRational, parse_rational
from sosgap.io import InstanceFormatError, polymap_from_doc, polymap_to_doc
from sosgap.polynomial import (
    DimensionMismatch,
    PolyMap,
    Polynomial,
    coefficient_matrix,
    evaluate,
    monomials_of_degree,
    poly_mul,
)


def test_gaussian_arithmetic_reduces():
    a = GaussianRational("2/4", "-6/8")
    assert str(a.re) == "1/2" and str(a.im) == "-3/4"
    assert a * a.conjugate() == GaussianRational(a.abs2())
    assert (a / a) == GaussianRational(1)
    assert I * I == GaussianRational(-1)


@pytest.mark.parametrize("text,re,im", [
    ("3", "3", "0"), ("-1/2", "-1/2", "0"), ("i", "0", "1"), ("-i", "0", "-1"),
    ("2/3i", "0", "2/3"), ("1-2i", "1", "-2"), ("1/2+3/4*i", "1/2", "3/4"),
])
def test_gaussian_parse(text, re, im):
    g = GaussianRational.parse(text)
    assert (g.re, g.im) == (parse_rational(re), parse_rational(im))


@pytest.mark.parametrize("bad", ["0.5", "1/0", "1e3", "", "two", "1//2", "nan"])
def test_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_floats_rejected_as_coefficients():
    with pytest.raises(TypeError):
        GaussianRational.coerce(0.5)


def test_product_examples():
    z1, z2 = z(2, 0), z(2, 1)
    assert poly_mul(z1, z2) == Polynomial.monomial((1, 1))
    assert (z1 + z2) * (z1 - z2) == z1 * z1 - z2 * z2


def test_product_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        poly_mul(z(2, 0), z(3, 0))


def test_product_matches_point_evaluation():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 3)
        a, b = rand_poly(rng, n), rand_poly(rng, n)
        ab = poly_mul(a, b)
        if a and b:
            assert ab.degree == a.degree + b.degree
        for _ in range(20):
            pt = rand_point(rng, n)
            assert evaluate(ab, pt) == evaluate(a, pt) * evaluate(b, pt)


def test_evaluate_examples():
    assert evaluate(Polynomial.monomial((2, 1)), [2, 3]) == GaussianRational(12)
    p = Polynomial(2, {(0, 0): GaussianRational(5, 1), (1, 1): 3})
    assert evaluate(p, [0, 0]) == GaussianRational(5, 1)
    assert evaluate(z(2, 0) + z(2, 1).scale(I), [1, 1]) == GaussianRational(1, 1)
    with pytest.raises(DimensionMismatch):
        evaluate(p, [1])


def test_zero_polynomial_conventions():
    zero = Polynomial.zero(3)
    assert zero.degree == -1 and not zero.terms
    assert (z(3, 0) - z(3, 0)) == zero
    assert PolyMap(3, []).q == 0


def test_coefficient_matrix_examples():
    z1, z2 = z(2, 0), z(2, 1)
    basis, m = coefficient_matrix(PolyMap(2, [z1, z2]))
    assert basis == [(1, 0), (0, 1)]
    assert m == linalg.identity(2)
    _, m = coefficient_matrix(PolyMap(2, [z1 + z2, z1 + z2]))
    assert linalg.rank(m) == 1
    basis, m = coefficient_matrix(PolyMap(2, [z1 * z1, z1 * z2, z1 * z2, z2 * z2]))
    assert basis == [(2, 0), (1, 1), (0, 2)]
    assert len(m) == 4 and linalg.rank(m) == 3


def test_graded_lex_order():
    assert monomials_of_degree(3, 2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_ring_axioms(data):
    n = data.draw(st.integers(1, 3))
    a, b, c = (data.draw(polynomials(n=n)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Polynomial.zero(n)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_evaluation_is_homomorphism(data):
    n = data.draw(st.integers(1, 3))
    a, b = data.draw(polynomials(n=n)), data.draw(polynomials(n=n))
    pt = [data.draw(gaussians) for _ in range(n)]
    assert evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt)
    assert evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt)


def test_rank_invariant_under_permutation_and_recombination():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 3)
        P = rand_map(rng, n)
        if P.q == 0:
            continue
        r = linalg.rank(coefficient_matrix(P)[1])
        perm = list(P.components)
        rng.shuffle(perm)
        assert linalg.rank(coefficient_matrix(PolyMap(n, perm))[1]) == r
        while True:
            m = [[GaussianRational(rng.randint(-3, 3), rng.randint(-1, 1)) for _ in range(P.q)] for _ in range(P.q)]
            if linalg.rank(m) == P.q:
                break
        assert linalg.rank(coefficient_matrix(P.recombine(m))[1]) == r


def test_instance_roundtrip_and_rejections():
    rng = random.Random(2)
    for _ in range(50):
        P = rand_map(rng, rng.randint(1, 3))
        assert polymap_from_doc(polymap_to_doc(P)) == P
    bad_rat = {"n": 2, "components": [[{"e": [1, 0], "re": "1.5", "im": "0"}]]}
    with pytest.raises(InstanceFormatError) as exc:
        polymap_from_doc(bad_rat)
    assert exc.value.field == "components[0][0].re"
    bad_len = {"n": 2, "components": [[{"e": [1], "re": "1", "im": "0"}]]}
    with pytest.raises(InstanceFormatError) as exc:
        polymap_from_doc(bad_len)
    assert exc.value.field == "components[0][0].e"
    with pytest.raises(InstanceFormatError):
        polymap_from_doc({"n": 2, "components": [[{"e": [-1, 0], "re": "1"}]]})
