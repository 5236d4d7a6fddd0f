import random
from fractions import Fraction

import pytest

from foliatk.errors import DegreeMismatch, ExprSyntaxError, UnknownVariable, ValidationError
from foliatk.parser import (
    Add,
    Covector,
    Lit,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    Wedge,
    expr_to_str,
    parse_expr,
    parse_polynomial,
    to_form,
)
from foliatk.polynomials import MultiPoly


def rand_ast(rng, dim, depth):
    """Any shape the printer can emit; literals stay non-negative because
    the grammar spells negatives with unary minus."""
    if depth == 0:
        pick = rng.randrange(3)
        if pick == 0:
            return Lit(Fraction(rng.randint(0, 9), rng.randint(1, 4)))
        if pick == 1:
            return Var("x", rng.randrange(dim))
        return Covector("x", rng.randrange(dim))
    pick = rng.randrange(6)
    if pick == 0:
        return Neg(rand_ast(rng, dim, depth - 1))
    if pick == 1:
        return Add(rand_ast(rng, dim, depth - 1), rand_ast(rng, dim, depth - 1))
    if pick == 2:
        return Sub(rand_ast(rng, dim, depth - 1), rand_ast(rng, dim, depth - 1))
    if pick == 3:
        return Mul(rand_ast(rng, dim, depth - 1), rand_ast(rng, dim, depth - 1))
    if pick == 4:
        return Wedge(rand_ast(rng, dim, depth - 1), rand_ast(rng, dim, depth - 1))
    return Pow(rand_ast(rng, dim, depth - 1), rng.randint(0, 4))


def test_round_trip_randomized():
    rng = random.Random(71)
    for _ in range(200):
        node = rand_ast(rng, rng.randint(1, 4), rng.randint(0, 4))
        dim = 4
        text = expr_to_str(node)
        assert parse_expr(text, dim) == node


def test_parse_pinned_forms():
    omega = to_form(parse_expr("x0*dx1 - x1*dx0", 3), 3)
    assert omega.degree == 1
    assert omega.to_str() == "-x1*dx0 + x0*dx1"
    two = to_form(parse_expr("2*dx0^^dx1", 3), 3)
    assert two.degree == 2 and two.coeffs[(0, 1)] == MultiPoly.constant(3, 2)
    poly = parse_polynomial("(x0 + x1)^2", 3)
    assert poly == (MultiPoly.variable(3, 0) + MultiPoly.variable(3, 1)) ** 2
    assert parse_polynomial("3/4*x0", 2) == MultiPoly.variable(2, 0) * Fraction(3, 4)
    assert parse_polynomial("-x0 - -x1", 2) == (
        MultiPoly.variable(2, 1) - MultiPoly.variable(2, 0)
    )


def test_syntax_error_positions():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("x0 +", 2)
    assert (info.value.line, info.value.col) == (1, 5)
    assert "end of input" in str(info.value)

    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("x0 +\n  $", 2)
    assert info.value.line == 2

    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("x0^x1", 2)
    assert "exponent" in info.value.expected

    with pytest.raises(ExprSyntaxError):
        parse_expr("1/0", 2)
    with pytest.raises(ExprSyntaxError):
        parse_expr("(x0", 2)
    with pytest.raises(ExprSyntaxError):
        parse_expr("x0 x1", 2)


def test_unknown_variable_errors():
    with pytest.raises(UnknownVariable) as info:
        parse_expr("x9", 3)
    assert info.value.name == "x9" and info.value.col == 1
    with pytest.raises(UnknownVariable):
        parse_expr("x01", 3)  # leading zero
    with pytest.raises(UnknownVariable):
        parse_expr("t1", 3)  # blow-up names need blow-up mode
    with pytest.raises(UnknownVariable):
        parse_expr("y0", 3)


def test_blow_up_scope():
    node = parse_expr("x0^2*dt1", 2, blow_up=True)
    form = to_form(node, 2)
    assert form.to_str(["x0", "t1"]) == "x0^2*dt1"
    with pytest.raises(UnknownVariable):
        parse_expr("x1", 2, blow_up=True)
    with pytest.raises(UnknownVariable):
        parse_expr("t0", 2, blow_up=True)
    with pytest.raises(UnknownVariable):
        parse_expr("t2", 2, blow_up=True)


def test_to_form_degree_rules():
    with pytest.raises(ValidationError):
        to_form(parse_expr("dx0*dx1", 2), 2)
    with pytest.raises(ValidationError):
        to_form(parse_expr("dx0^2", 2), 2)
    with pytest.raises(DegreeMismatch):
        to_form(parse_expr("x0 + dx0", 2), 2)
    mixed = to_form(parse_expr("(dx0 + dx1)^^dx1", 2), 2)
    assert mixed.degree == 2
    assert mixed.coeffs == {(0, 1): MultiPoly.constant(2, 1)}


def test_parse_polynomial_rejects_covectors():
    with pytest.raises(ValidationError):
        parse_polynomial("dx0", 2)
    assert parse_polynomial("0", 2).is_zero


def test_engine_strings_reparse():
    rng = random.Random(72)
    from helpers import rand_form

    for _ in range(40):
        dim = rng.randint(2, 4)
        form = rand_form(rng, dim, rng.randint(0, dim))
        text = form.to_str()
        if text == "0":
            continue
        assert to_form(parse_expr(text, dim), dim) == form
