import random
from fractions import Fraction

import pytest

from foliatk.errors import DimensionMismatch
from foliatk.polynomials import MultiPoly, euler_degree_check
from helpers import rand_point, rand_poly


def test_zero_coefficients_are_dropped():
    p = MultiPoly(2, {(1, 0): Fraction(0), (0, 1): Fraction(3)})
    assert (1, 0) not in p.terms
    assert p == MultiPoly(2, {(0, 1): 3})


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        MultiPoly(2, {(1, 0): 0.5})


def test_constructors():
    z = MultiPoly.zero(3)
    assert z.is_zero and z.total_degree() is None
    c = MultiPoly.constant(3, Fraction(5, 2))
    assert c.total_degree() == 0
    x1 = MultiPoly.variable(3, 1)
    assert x1.terms == {(0, 1, 0): Fraction(1)}
    m = MultiPoly.monomial(3, (2, 0, 1))
    assert m.total_degree() == 3


def test_ring_laws_randomized():
    rng = random.Random(11)
    for _ in range(60):
        dim = rng.randint(1, 4)
        p = rand_poly(rng, dim)
        q = rand_poly(rng, dim)
        r = rand_poly(rng, dim)
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert p * (q + r) == p * q + p * r
        assert p - p == MultiPoly.zero(dim)


def test_pow_matches_repeated_multiplication():
    rng = random.Random(12)
    for _ in range(20):
        dim = rng.randint(1, 3)
        p = rand_poly(rng, dim, max_degree=1, terms=2)
        acc = MultiPoly.constant(dim, 1)
        for k in range(5):
            assert p ** k == acc
            acc = acc * p


def test_dimension_mismatch_raises():
    p = MultiPoly.variable(2, 0)
    q = MultiPoly.variable(3, 0)
    with pytest.raises(DimensionMismatch):
        p + q


def test_homogeneity_detection():
    dim = 3
    h = MultiPoly(dim, {(2, 0, 0): 1, (0, 1, 1): -2})
    assert h.homogeneity() == ("homogeneous", 2)
    mixed = MultiPoly(dim, {(2, 0, 0): 1, (0, 1, 0): 1})
    assert mixed.homogeneity().kind == "inhomogeneous"
    assert MultiPoly.zero(dim).homogeneity().kind == "zero"


def test_partial_derivative_leibniz_and_symmetry():
    rng = random.Random(13)
    for _ in range(40):
        dim = rng.randint(2, 4)
        p = rand_poly(rng, dim)
        q = rand_poly(rng, dim)
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        prod = p * q
        assert prod.partial_derivative(i) == p.partial_derivative(i) * q + p * q.partial_derivative(i)
        assert p.partial_derivative(i).partial_derivative(j) == p.partial_derivative(j).partial_derivative(i)


def test_euler_identity_for_homogeneous():
    rng = random.Random(14)
    from helpers import rand_homogeneous

    for _ in range(30):
        dim = rng.randint(1, 4)
        degree = rng.randint(1, 4)
        p = rand_homogeneous(rng, dim, degree)
        assert euler_degree_check(p)


def test_evaluate_is_ring_homomorphism():
    rng = random.Random(15)
    for _ in range(40):
        dim = rng.randint(1, 4)
        p = rand_poly(rng, dim)
        q = rand_poly(rng, dim)
        pt = rand_point(rng, dim)
        assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
        assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)


def test_evaluate_exact_for_rational_points():
    p = MultiPoly(2, {(2, 0): Fraction(1, 3), (0, 1): 1})
    v = p.evaluate([Fraction(1, 2), Fraction(-1, 4)])
    assert isinstance(v, Fraction)
    assert v == Fraction(1, 3) * Fraction(1, 4) - Fraction(1, 4)


def test_evaluate_complex_points():
    p = MultiPoly(1, {(2,): 1})
    v = p.evaluate([1j])
    assert isinstance(v, complex)
    assert v == -1 + 0j


def test_substitute_composes_with_evaluate():
    rng = random.Random(16)
    for _ in range(30):
        dim = rng.randint(1, 3)
        inner_dim = rng.randint(1, 3)
        p = rand_poly(rng, dim, max_degree=2, terms=2)
        images = [rand_poly(rng, inner_dim, max_degree=1, terms=2) for _ in range(dim)]
        pt = rand_point(rng, inner_dim)
        composed = p.substitute(images)
        assert composed.evaluate(pt) == p.evaluate([g.evaluate(pt) for g in images])


def test_sorted_terms_descending_lex():
    p = MultiPoly(2, {(0, 2): 1, (1, 1): 1, (2, 0): 1, (0, 0): 1})
    keys = [k for k, _ in p.sorted_terms()]
    assert keys == [(2, 0), (1, 1), (0, 2), (0, 0)]


def test_to_str_pinned():
    p = MultiPoly(2, {(2, 0): 3, (0, 1): 6})
    assert p.to_str() == "3*x0^2 + 6*x1"
    q = MultiPoly(2, {(1, 0): Fraction(-1, 2), (0, 0): 1})
    assert q.to_str() == "-1/2*x0 + 1"
    assert MultiPoly.zero(2).to_str() == "0"


def test_hash_consistent_with_eq():
    a = MultiPoly(2, {(1, 0): Fraction(2, 4)})
    b = MultiPoly(2, {(1, 0): Fraction(1, 2)})
    assert a == b and hash(a) == hash(b)


def test_involved_variables():
    p = MultiPoly(4, {(1, 0, 0, 0): 1, (0, 0, 2, 0): 1})
    assert p.involved_variables() == frozenset({0, 2})
