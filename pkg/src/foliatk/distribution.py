"""Class analysis of distributions presented by 1-forms.

The class of a 1-form ``omega`` is the largest ``r`` with
``omega ^ (d omega)^(r-1) != 0``; a completely integrable form (Frobenius)
has class 1 and a contact-type form on ``2r``-space has class ``r``.

The model constructions here use ``2r`` homogeneous generators of one
common degree ``m``::

    omega = sum_{i=0}^{r-1} (f_i df_{i+r} - f_{i+r} df_i)

for which ``omega`` contracts to zero against the Euler field,
``d omega = 2 sum_i df_i ^ df_{i+r}``, and ``iota_R d omega = (d+2) omega``
with ``d = (coefficient degree of omega) - 1 = 2m - 2``.  Kupka-type
points of a class-``r`` distribution are zeros of ``omega`` where
``(d omega)^r`` survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DegreeMismatch,
    DimensionMismatch,
    EngineError,
    InhomogeneousCoefficients,
    ValidationError,
)
from .foliation import KupkaVerdict, classify_point, total_differential
from .forms import DiffForm, PolyVectorField, interior_product
from .polynomials import MultiPoly


@dataclass(frozen=True)
class DistributionSpec:
    """A 1-form with an optional caller-declared class to cross-check."""

    omega: DiffForm
    declared_class: int | None = None


def class_of(omega: DiffForm) -> int:
    """Largest ``r`` with ``omega ^ (d omega)^(r-1)`` not identically zero."""
    if omega.degree != 1:
        raise DegreeMismatch("class is defined for 1-forms")
    if omega.is_zero:
        raise ValidationError("the zero form has no class")
    domega = omega.exterior_derivative()
    r = 0
    current = omega
    while not current.is_zero:
        r += 1
        current = current.wedge(domega)
    return r


def validate_class(spec: DistributionSpec) -> int:
    computed = class_of(spec.omega)
    if spec.declared_class is not None and spec.declared_class != computed:
        raise ValidationError(
            f"declared class {spec.declared_class} but computed {computed}"
        )
    return computed


@dataclass(frozen=True)
class ContactDistribution:
    """Contact-type presentation built from equal-degree generators."""

    omega: DiffForm
    generators: tuple[MultiPoly, ...]
    r: int
    generator_degree: int


def build_contact_type(polys: Sequence[MultiPoly], r: int | None = None) -> ContactDistribution:
    """Assemble ``sum_i (f_i df_{i+r} - f_{i+r} df_i)`` from ``2r`` generators.

    All generators must be homogeneous of one common positive degree; the
    pair count fixes ``r`` when it is not given explicitly.
    """
    if len(polys) < 2 or len(polys) % 2:
        raise ValidationError(f"contact construction needs 2r generators, got {len(polys)}")
    pairs = len(polys) // 2
    if r is None:
        r = pairs
    elif r != pairs:
        raise ValidationError(f"declared r={r} but {len(polys)} generators give r={pairs}")
    dim = polys[0].ambient_dim
    degree = None
    for f in polys:
        if f.ambient_dim != dim:
            raise DimensionMismatch("generators live in different spaces")
        kind, deg = f.homogeneity()
        if kind != "homogeneous":
            raise InhomogeneousCoefficients("generator is not homogeneous")
        if degree is None:
            degree = deg
        elif deg != degree:
            raise DegreeMismatch(f"generator degrees differ: {degree} vs {deg}")
    if degree < 1:
        raise DegreeMismatch("generators must have positive degree")
    omega = DiffForm.zero(dim, 1)
    for i in range(r):
        front, back = polys[i], polys[i + r]
        omega = omega + total_differential(back) * front - total_differential(front) * back
    if omega.is_zero:
        raise ValidationError("generators are dependent; the contact form vanishes")
    radial = interior_product(PolyVectorField.radial(dim), omega)
    if not radial.is_zero:
        raise EngineError("contact construction failed to contract against the Euler field")
    return ContactDistribution(
        omega=omega, generators=tuple(polys), r=r, generator_degree=degree
    )


@dataclass(frozen=True)
class DarbouxReport:
    """Outcome of the exact structure checks on a contact construction."""

    d_omega_ok: bool
    radial_ok: bool
    degree_d: int
    generator_degree: int


def verify_darboux_identities(contact: ContactDistribution) -> DarbouxReport:
    """Check ``d omega = 2 sum df_i ^ df_{i+r}`` and
    ``iota_R d omega = (d+2) omega`` exactly, with ``d`` read off from the
    coefficient degree of ``omega``."""
    omega = contact.omega
    domega = omega.exterior_derivative()
    expected = DiffForm.zero(omega.ambient_dim, 2)
    for i in range(contact.r):
        dfront = total_differential(contact.generators[i])
        dback = total_differential(contact.generators[i + contact.r])
        expected = expected + dfront.wedge(dback) * 2
    d_omega_ok = domega == expected
    coeff_degrees = {
        poly.homogeneity().degree for poly in omega.coeffs.values()
    }
    if len(coeff_degrees) != 1 or None in coeff_degrees:
        raise InhomogeneousCoefficients("contact form has mixed coefficient degrees")
    degree_d = coeff_degrees.pop() - 1
    contracted = interior_product(PolyVectorField.radial(omega.ambient_dim), domega)
    radial_ok = contracted == omega * (degree_d + 2)
    return DarbouxReport(
        d_omega_ok=d_omega_ok,
        radial_ok=radial_ok,
        degree_d=degree_d,
        generator_degree=contact.generator_degree,
    )


def kupka_test_distribution(
    spec: DistributionSpec, point: Sequence, tol: float = 1e-9
) -> KupkaVerdict:
    """Classify a point against ``omega`` and ``(d omega)^r``.

    Regular when ``omega(p) != 0``; Kupka when ``omega(p) = 0`` while
    ``(d omega)^r(p) != 0``; otherwise NonKupkaSingular.  The class ``r``
    is recomputed (and checked against any declared value); evaluation
    mode and the doubling consistency check behave as in the foliation
    test.
    """
    omega = spec.omega
    if len(point) != omega.ambient_dim:
        raise DimensionMismatch(
            f"point has {len(point)} coordinates, expected {omega.ambient_dim}"
        )
    if all(v == 0 for v in point):
        raise ValidationError("the origin is not a projective point")
    r = validate_class(spec)
    domega = omega.exterior_derivative()
    power = DiffForm.from_poly(MultiPoly.constant(omega.ambient_dim, 1))
    for _ in range(r):
        power = power.wedge(domega)
    label, mode = classify_point(omega, power, point, tol)
    doubled = [v * 2 for v in point]
    label2, _ = classify_point(omega, power, doubled, tol)
    return KupkaVerdict(
        classification=label, mode=mode, tol=tol, scale_consistent=label == label2
    )
