"""Seeded random generators shared across test modules."""

from fractions import Fraction
from itertools import combinations

from foliatk.forms import DiffForm
from foliatk.polynomials import MultiPoly


def rand_coeff(rng):
    num = rng.randint(-6, 6)
    den = rng.choice([1, 1, 1, 2, 3])
    return Fraction(num, den)


def rand_poly(rng, dim, max_degree=2, terms=3):
    out = {}
    for _ in range(terms):
        exps = [0] * dim
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(dim)] += 1
        key = tuple(exps)
        out[key] = out.get(key, Fraction(0)) + rand_coeff(rng)
    return MultiPoly(dim, out)


def rand_homogeneous(rng, dim, degree, terms=3):
    out = {}
    for _ in range(terms):
        exps = [0] * dim
        for _ in range(degree):
            exps[rng.randrange(dim)] += 1
        key = tuple(exps)
        out[key] = out.get(key, Fraction(0)) + rand_coeff(rng)
    poly = MultiPoly(dim, out)
    if poly.is_zero:
        # keep the generator total: pin one deterministic monomial
        poly = MultiPoly.monomial(dim, (degree,) + (0,) * (dim - 1))
    return poly


def rand_form(rng, dim, degree, entries=2, max_coeff_degree=2, coeff_terms=2):
    slots = list(combinations(range(dim), degree))
    coeffs = {}
    for _ in range(entries):
        idx = slots[rng.randrange(len(slots))]
        coeffs[idx] = rand_poly(rng, dim, max_coeff_degree, coeff_terms)
    return DiffForm(dim, degree, coeffs)


def rand_point(rng, dim):
    return [Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2])) for _ in range(dim)]
