import random

import pytest

from foliatk.distribution import (
    ContactDistribution,
    DistributionSpec,
    build_contact_type,
    class_of,
    kupka_test_distribution,
    validate_class,
    verify_darboux_identities,
)
from foliatk.errors import DegreeMismatch, ValidationError
from foliatk.foliation import total_differential
from foliatk.forms import DiffForm, PolyVectorField, interior_product
from foliatk.polynomials import MultiPoly
from helpers import rand_homogeneous


def linear_contact(r, dim=None):
    dim = 2 * r if dim is None else dim
    return build_contact_type([MultiPoly.variable(dim, i) for i in range(2 * r)])


def test_class_of_pinned():
    x0 = MultiPoly.variable(3, 0)
    x1 = MultiPoly.variable(3, 1)
    pencil = DiffForm(3, 1, {(0,): -x1, (1,): x0})
    assert class_of(pencil) == 1
    assert class_of(linear_contact(2).omega) == 2
    assert class_of(linear_contact(3).omega) == 3
    with pytest.raises(DegreeMismatch):
        class_of(DiffForm.zero(3, 2))
    with pytest.raises(ValidationError):
        class_of(DiffForm.zero(3, 1))


def test_validate_class_cross_check():
    omega = linear_contact(2).omega
    assert validate_class(DistributionSpec(omega, declared_class=2)) == 2
    with pytest.raises(ValidationError):
        validate_class(DistributionSpec(omega, declared_class=1))


def test_build_contact_type_pinned():
    contact = linear_contact(2)
    assert contact.r == 2 and contact.generator_degree == 1
    assert contact.omega.to_str() == "-x2*dx0 - x3*dx1 + x0*dx2 + x1*dx3"


def test_build_contact_type_rejections():
    x = [MultiPoly.variable(4, i) for i in range(4)]
    with pytest.raises(ValidationError):
        build_contact_type(x[:3])
    with pytest.raises(ValidationError):
        build_contact_type(x, r=1)
    with pytest.raises(DegreeMismatch):
        build_contact_type([x[0], x[1], x[2], x[3] * x[3]])
    with pytest.raises(DegreeMismatch):
        build_contact_type([MultiPoly.constant(4, 1)] * 4)
    with pytest.raises(ValidationError):
        build_contact_type([x[0], x[0]])  # omega collapses to zero


def test_darboux_identities_linear_and_quadratic():
    linear = verify_darboux_identities(linear_contact(2))
    assert linear.d_omega_ok and linear.radial_ok
    assert linear.degree_d == 0 and linear.generator_degree == 1

    squares = build_contact_type([MultiPoly.monomial(4, tuple(2 if j == i else 0 for j in range(4))) for i in range(4)])
    quadratic = verify_darboux_identities(squares)
    assert quadratic.d_omega_ok and quadratic.radial_ok
    assert quadratic.degree_d == 2 and quadratic.generator_degree == 2


def test_darboux_identities_randomized():
    rng = random.Random(61)
    checked = 0
    while checked < 20:
        r = rng.randint(1, 2)
        dim = rng.randint(2 * r, 2 * r + 2)
        degree = rng.randint(1, 2)
        gens = [rand_homogeneous(rng, dim, degree) for _ in range(2 * r)]
        try:
            contact = build_contact_type(gens)
        except ValidationError:
            continue
        report = verify_darboux_identities(contact)
        assert report.d_omega_ok and report.radial_ok
        assert report.degree_d == 2 * degree - 2
        checked += 1


def test_top_power_constant_for_linear_contact():
    # (d omega)^r on 2r variables is (-1)^(r(r-1)/2) * r! * 2^r times the
    # volume form
    expected = {1: 2, 2: -8, 3: -48}
    for r, constant in expected.items():
        dim = 2 * r
        omega = linear_contact(r).omega
        domega = omega.exterior_derivative()
        power = DiffForm.from_poly(MultiPoly.constant(dim, 1))
        for _ in range(r):
            power = power.wedge(domega)
        top = tuple(range(dim))
        assert power.coeffs == {top: MultiPoly.constant(dim, constant)}


def test_kupka_test_distribution_verdicts():
    contact = linear_contact(2, dim=5)
    spec = DistributionSpec(contact.omega)
    kupka = kupka_test_distribution(spec, [0, 0, 0, 0, 1])
    assert kupka.classification == "Kupka"
    assert kupka.mode == "exact" and kupka.scale_consistent
    regular = kupka_test_distribution(spec, [1, 0, 0, 0, 0])
    assert regular.classification == "Regular"

    # an exact 1-form has d omega = 0, so its zeros are never Kupka
    closed = total_differential(MultiPoly.variable(3, 0) * MultiPoly.variable(3, 1))
    degenerate = kupka_test_distribution(DistributionSpec(closed), [0, 0, 1])
    assert degenerate.classification == "NonKupkaSingular"

    numeric = kupka_test_distribution(spec, [1e-12, 0.0, 0.0, 0.0, 1.0])
    assert numeric.classification == "Kupka" and numeric.mode == "numeric"

    with pytest.raises(ValidationError):
        kupka_test_distribution(spec, [0, 0, 0, 0, 0])


def test_contact_form_contracts_radially():
    rng = random.Random(62)
    for _ in range(10):
        r = rng.randint(1, 3)
        dim = 2 * r + rng.randint(0, 1)
        gens = [rand_homogeneous(rng, dim, rng.randint(1, 2)) for _ in range(2 * r)]
        try:
            contact = build_contact_type(gens)
        except ValidationError:
            continue
        radial = PolyVectorField.radial(dim)
        assert interior_product(radial, contact.omega).is_zero
        assert isinstance(contact, ContactDistribution)
