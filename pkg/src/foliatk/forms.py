"""Polynomial differential forms and vector fields in exact arithmetic.

A ``p``-form on affine ``ambient_dim``-space is a map from strictly
increasing index tuples ``(i1 < ... < ip)`` to nonzero coefficient
polynomials; the tuple stands for ``dx{i1} ^ ... ^ dx{ip}``.  The empty
tuple carries the single coefficient of a 0-form.  Wedge products are
normalized to this basis with the sign of the sorting permutation, so
structural equality of the stored maps is equality of forms.

Degrees are clamped to the ambient dimension: any operation whose result
would exceed the top degree returns the zero form (stored at top degree).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DegreeMismatch, DimensionMismatch
from .polynomials import MultiPoly, Scalar, coerce_scalar

IndexTuple = tuple[int, ...]


def _merge_sign(left: IndexTuple, right: IndexTuple) -> tuple[int, IndexTuple] | None:
    """Sign and sorted tuple for ``left + right``; None if an index repeats."""
    if set(left) & set(right):
        return None
    inversions = 0
    for a in left:
        for b in right:
            if a > b:
                inversions += 1
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(left + right))


class DiffForm:
    """Homogeneous-degree differential form with MultiPoly coefficients."""

    __slots__ = ("ambient_dim", "degree", "coeffs")

    def __init__(
        self,
        ambient_dim: int,
        degree: int,
        coeffs: Mapping[IndexTuple, MultiPoly] | None = None,
    ):
        if not isinstance(ambient_dim, int) or ambient_dim < 1:
            raise ValueError(f"ambient_dim must be a positive integer, got {ambient_dim!r}")
        if not isinstance(degree, int) or not 0 <= degree <= ambient_dim:
            raise DegreeMismatch(
                f"form degree {degree!r} outside [0, {ambient_dim}]"
            )
        clean: dict[IndexTuple, MultiPoly] = {}
        if coeffs:
            for idx, poly in coeffs.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise DegreeMismatch(f"index tuple {idx} has length {len(idx)}, degree is {degree}")
                if any(not 0 <= i < ambient_dim for i in idx):
                    raise DimensionMismatch(f"covector index out of range in {idx}")
                if any(idx[t] >= idx[t + 1] for t in range(len(idx) - 1)):
                    raise ValueError(f"index tuple {idx} is not strictly increasing")
                if not isinstance(poly, MultiPoly):
                    raise TypeError("coefficients must be MultiPoly")
                if poly.ambient_dim != ambient_dim:
                    raise DimensionMismatch("coefficient polynomial lives in a different space")
                if not poly.is_zero:
                    acc = clean.get(idx)
                    poly = poly if acc is None else acc + poly
                    if poly.is_zero:
                        clean.pop(idx, None)
                    else:
                        clean[idx] = poly
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("DiffForm is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ambient_dim: int, degree: int) -> "DiffForm":
        return cls(ambient_dim, min(degree, ambient_dim))

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "DiffForm":
        return cls(poly.ambient_dim, 0, {(): poly})

    @classmethod
    def basis_covector(cls, ambient_dim: int, index: int) -> "DiffForm":
        """The constant 1-form ``dx{index}``."""
        if not 0 <= index < ambient_dim:
            raise DimensionMismatch(f"covector index {index} outside [0, {ambient_dim})")
        return cls(ambient_dim, 1, {(index,): MultiPoly.constant(ambient_dim, 1)})

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def sorted_coeffs(self) -> list[tuple[IndexTuple, MultiPoly]]:
        return [(idx, self.coeffs[idx]) for idx in sorted(self.coeffs)]

    def _check_compatible(self, other: "DiffForm") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    # -- linear structure --------------------------------------------------

    def __add__(self, other) -> "DiffForm":
        if not isinstance(other, DiffForm):
            return NotImplemented
        self._check_compatible(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise DegreeMismatch(f"cannot add a {self.degree}-form and a {other.degree}-form")
        merged = dict(self.coeffs)
        for idx, poly in other.coeffs.items():
            acc = merged.get(idx)
            acc = poly if acc is None else acc + poly
            if acc.is_zero:
                merged.pop(idx, None)
            else:
                merged[idx] = acc
        return DiffForm(self.ambient_dim, self.degree, merged)

    def __neg__(self) -> "DiffForm":
        return DiffForm(self.ambient_dim, self.degree, {i: -p for i, p in self.coeffs.items()})

    def __sub__(self, other) -> "DiffForm":
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "DiffForm":
        """Multiply by an exact scalar or a polynomial (not another form)."""
        if isinstance(other, (int, Fraction)):
            c = coerce_scalar(other)
            if c == 0:
                return DiffForm.zero(self.ambient_dim, self.degree)
            return DiffForm(
                self.ambient_dim, self.degree, {i: p * c for i, p in self.coeffs.items()}
            )
        if isinstance(other, MultiPoly):
            return DiffForm(
                self.ambient_dim, self.degree, {i: p * other for i, p in self.coeffs.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        # zero forms compare equal across degrees: clamping makes the stored
        # degree of a zero bookkeeping, not content
        if not isinstance(other, DiffForm):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim:
            return False
        if self.is_zero and other.is_zero:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        degree = -1 if self.is_zero else self.degree
        return hash((self.ambient_dim, degree, frozenset(self.coeffs.items())))

    # -- graded operations -------------------------------------------------

    def wedge(self, other: "DiffForm") -> "DiffForm":
        self._check_compatible(other)
        total = self.degree + other.degree
        if total > self.ambient_dim:
            return DiffForm.zero(self.ambient_dim, total)
        out: dict[IndexTuple, MultiPoly] = {}
        for ia, pa in self.coeffs.items():
            for ib, pb in other.coeffs.items():
                merged = _merge_sign(ia, ib)
                if merged is None:
                    continue
                sign, idx = merged
                term = pa * pb
                if sign < 0:
                    term = -term
                acc = out.get(idx)
                term = term if acc is None else acc + term
                if term.is_zero:
                    out.pop(idx, None)
                else:
                    out[idx] = term
        return DiffForm(self.ambient_dim, total, out)

    def exterior_derivative(self) -> "DiffForm":
        if self.degree >= self.ambient_dim:
            return DiffForm.zero(self.ambient_dim, self.degree + 1)
        out: dict[IndexTuple, MultiPoly] = {}
        for idx, poly in self.coeffs.items():
            for i in range(self.ambient_dim):
                dpoly = poly.partial_derivative(i)
                if dpoly.is_zero:
                    continue
                merged = _merge_sign((i,), idx)
                if merged is None:
                    continue
                sign, new_idx = merged
                term = dpoly if sign > 0 else -dpoly
                acc = out.get(new_idx)
                term = term if acc is None else acc + term
                if term.is_zero:
                    out.pop(new_idx, None)
                else:
                    out[new_idx] = term
        return DiffForm(self.ambient_dim, self.degree + 1, out)

    # -- evaluation and printing ------------------------------------------

    def evaluate(self, point: Sequence) -> dict[IndexTuple, Fraction | complex]:
        """Coefficient values at a point, keyed by index tuple (sorted order)."""
        return {idx: poly.evaluate(point) for idx, poly in self.sorted_coeffs()}

    def max_modulus_at(self, point: Sequence) -> Fraction | float:
        """Largest coefficient magnitude at the point; 0 for the zero form."""
        values = [abs(v) for v in self.evaluate(point).values()]
        if not values:
            return Fraction(0)
        return max(values)

    def to_str(self, var_names: Sequence[str] | None = None) -> str:
        """Canonical text form using ``^^`` for the wedge, e.g.
        ``x0*dx1 - x1*dx0`` or ``(x0^2 - x1)*dx0^^dx2``."""
        if not self.coeffs:
            return "0"
        if var_names is None:
            var_names = [f"x{i}" for i in range(self.ambient_dim)]
        pieces = []
        for idx, poly in self.sorted_coeffs():
            basis = "^^".join(f"d{var_names[i]}" for i in idx)
            text = poly.to_str(var_names)
            if not basis:
                pieces.append(text)
            elif text == "1":
                pieces.append(basis)
            elif text == "-1":
                pieces.append(f"-{basis}")
            elif len(poly.terms) == 1:
                pieces.append(f"{text}*{basis}")
            else:
                pieces.append(f"({text})*{basis}")
        out = pieces[0]
        for text in pieces[1:]:
            if text.startswith("-"):
                out += f" - {text[1:]}"
            else:
                out += f" + {text}"
        return out

    def __repr__(self) -> str:
        return f"DiffForm({self.ambient_dim}, deg={self.degree}, {self.to_str()!r})"


class PolyVectorField:
    """Polynomial vector field ``sum_i X_i * d/dx_i``."""

    __slots__ = ("ambient_dim", "components")

    def __init__(self, components: Sequence[MultiPoly]):
        if not components:
            raise ValueError("vector field needs at least one component")
        dim = components[0].ambient_dim
        if len(components) != dim:
            raise DimensionMismatch(
                f"{len(components)} components for ambient dimension {dim}"
            )
        for comp in components:
            if not isinstance(comp, MultiPoly):
                raise TypeError("components must be MultiPoly")
            if comp.ambient_dim != dim:
                raise DimensionMismatch("components live in different spaces")
        object.__setattr__(self, "ambient_dim", dim)
        object.__setattr__(self, "components", tuple(components))

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("PolyVectorField is immutable")

    @classmethod
    def radial(cls, ambient_dim: int) -> "PolyVectorField":
        """The Euler field ``sum_i x_i d/dx_i``."""
        return cls([MultiPoly.variable(ambient_dim, i) for i in range(ambient_dim)])

    @classmethod
    def diagonal(cls, weights: Sequence[Scalar]) -> "PolyVectorField":
        """The linear field ``sum_i w_i x_i d/dx_i``."""
        dim = len(weights)
        return cls([MultiPoly.variable(dim, i) * coerce_scalar(w) for i, w in enumerate(weights)])

    def jacobian(self) -> list[list[MultiPoly]]:
        return [
            [comp.partial_derivative(j) for j in range(self.ambient_dim)]
            for comp in self.components
        ]

    def jacobian_trace(self) -> MultiPoly:
        acc = MultiPoly.zero(self.ambient_dim)
        for i, comp in enumerate(self.components):
            acc = acc + comp.partial_derivative(i)
        return acc

    def __repr__(self) -> str:
        body = "; ".join(c.to_str() for c in self.components)
        return f"PolyVectorField({body})"


def interior_product(field: PolyVectorField, form: DiffForm) -> DiffForm:
    """Contraction ``iota_X omega``; an antiderivation of degree -1."""
    if field.ambient_dim != form.ambient_dim:
        raise DimensionMismatch("vector field and form live in different spaces")
    if form.degree == 0:
        raise DegreeMismatch("cannot contract a 0-form")
    out: dict[IndexTuple, MultiPoly] = {}
    for idx, poly in form.coeffs.items():
        for t, i in enumerate(idx):
            reduced = idx[:t] + idx[t + 1:]
            term = field.components[i] * poly
            if t % 2:
                term = -term
            acc = out.get(reduced)
            term = term if acc is None else acc + term
            if term.is_zero:
                out.pop(reduced, None)
            else:
                out[reduced] = term
    return DiffForm(form.ambient_dim, form.degree - 1, out)


def pullback(images: Sequence[MultiPoly], form: DiffForm) -> DiffForm:
    """Pull ``form`` back along the polynomial map ``x_j -> images[j]``.

    ``images`` has one entry per target variable; all entries live in the
    source space, where the result lives too.  Coefficients are substituted
    and each ``dx_j`` is replaced by the total differential of ``images[j]``.
    """
    if len(images) != form.ambient_dim:
        raise DimensionMismatch(
            f"map needs {form.ambient_dim} component polynomials, got {len(images)}"
        )
    source_dim = images[0].ambient_dim
    for g in images:
        if g.ambient_dim != source_dim:
            raise DimensionMismatch("map components live in different spaces")
    differentials = [
        DiffForm(
            source_dim,
            1,
            {(j,): g.partial_derivative(j) for j in range(source_dim)},
        )
        for g in images
    ]
    result = DiffForm.zero(source_dim, min(form.degree, source_dim))
    for idx, poly in form.sorted_coeffs():
        term = DiffForm.from_poly(poly.substitute(images))
        for i in idx:
            term = term.wedge(differentials[i])
        result = result + term if not term.is_zero else result
    return result
