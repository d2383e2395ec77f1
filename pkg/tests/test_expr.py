"""Parser, printer, differentiation, and evaluation of the expression engine."""

import math
import random

import numpy as np
import pytest

from pdmsusy.expr import (Binary, Const, DomainError, ParseError, Pow, Unary,
                          UnknownIdentifierError, Var, differentiate, evaluate,
                          evaluate_grid, parse, to_text)

FAMILY = "((2+z^2)/(1+z^2))^2"


def test_parse_basic_values():
    m = parse(FAMILY)
    assert evaluate(m, 0.0) == pytest.approx(4.0, abs=1e-15)
    assert evaluate(m, 1.0) == pytest.approx(2.25, abs=1e-15)


def test_first_derivative_value():
    dm = differentiate(parse(FAMILY))
    assert evaluate(dm, 1.0) == pytest.approx(-1.5, abs=1e-12)
    assert evaluate(dm, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_second_derivative_value():
    d2m = differentiate(differentiate(parse(FAMILY)))
    assert evaluate(d2m, 0.0) == pytest.approx(-8.0, abs=1e-12)
    assert evaluate(d2m, 1.0) == pytest.approx(2.0, abs=1e-12)


def test_precedence_and_associativity():
    assert evaluate(parse("2+3*4"), 0.0) == 14.0
    assert evaluate(parse("2*3^2"), 0.0) == 18.0
    assert evaluate(parse("-2^2"), 0.0) == -4.0  # unary minus binds looser than ^
    assert evaluate(parse("2-3-4"), 0.0) == -5.0
    assert evaluate(parse("24/4/2"), 0.0) == 3.0
    assert evaluate(parse("2^3"), 0.0) == 8.0


def test_functions_evaluate():
    assert evaluate(parse("exp(0)"), 0.0) == 1.0
    assert evaluate(parse("ln(exp(1))"), 0.0) == pytest.approx(1.0, abs=1e-15)
    assert evaluate(parse("sin(z)^2 + cos(z)^2"), 0.7) == pytest.approx(1.0, abs=1e-15)
    assert evaluate(parse("sqrt(z)"), 9.0) == 3.0
    assert evaluate(parse("atan(1)"), 0.0) == pytest.approx(math.pi / 4, abs=1e-15)


def test_constant_exponent_folding():
    e = parse("z^(1+1)")
    assert isinstance(e, Pow) and e.exponent == 2.0
    e = parse("z^(-1/2)")
    assert isinstance(e, Pow) and e.exponent == -0.5


def test_variable_exponent_rejected():
    with pytest.raises(ParseError, match="constant"):
        parse("z^z")
    with pytest.raises(ParseError, match="constant"):
        parse("2^(z+1)")


def test_parse_error_offsets():
    with pytest.raises(ParseError) as err:
        parse("2*+")
    assert err.value.offset == 2
    with pytest.raises(ParseError) as err:
        parse("(1+2")
    assert err.value.offset == 4
    with pytest.raises(ParseError) as err:
        parse("1 + 2 )")
    assert err.value.offset == 6
    with pytest.raises(ParseError):
        parse("")


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as err:
        parse("2*q + 1")
    assert err.value.name == "q"
    with pytest.raises(UnknownIdentifierError) as err:
        parse("sinh(z)")
    assert err.value.name == "sinh"


def test_domain_errors_raise():
    with pytest.raises(DomainError):
        evaluate(parse("1/z"), 0.0)
    with pytest.raises(DomainError):
        evaluate(parse("sqrt(z)"), -1.0)
    with pytest.raises(DomainError):
        evaluate(parse("ln(z)"), 0.0)
    with pytest.raises(DomainError):
        evaluate(parse("z^0.5"), -4.0)
    # overflow must never leak a silent inf
    with pytest.raises(DomainError):
        evaluate(parse("exp(exp(z))"), 10.0)


def test_domain_error_carries_location():
    with pytest.raises(DomainError) as err:
        evaluate(parse("1/(z-3)"), 3.0)
    assert err.value.z == 3.0


def test_evaluate_grid_matches_scalar():
    e = parse("sin(z)*exp(-z^2/4) + z^3/(1+z^2)")
    zs = np.linspace(-5.0, 5.0, 401)
    vals = evaluate_grid(e, zs)
    for i in (0, 57, 200, 400):
        assert vals[i] == pytest.approx(evaluate(e, zs[i]), abs=1e-15)


def test_evaluate_grid_reports_bad_point():
    e = parse("1/z")
    with pytest.raises(DomainError) as err:
        evaluate_grid(e, np.array([1.0, 0.0, 2.0]))
    assert err.value.z == 0.0


def test_differentiate_base_cases():
    assert differentiate(Const(5.0)) == Const(0.0)
    assert differentiate(Var()) == Const(1.0)


def test_differentiate_chain_rule_values():
    # d/dz exp(sin(z)) = cos(z) exp(sin(z))
    d = differentiate(parse("exp(sin(z))"))
    z = 0.8
    assert evaluate(d, z) == pytest.approx(math.cos(z) * math.exp(math.sin(z)), rel=1e-14)
    # d/dz atan(z^2) = 2z/(1+z^4)
    d = differentiate(parse("atan(z^2)"))
    assert evaluate(d, 1.3) == pytest.approx(2 * 1.3 / (1 + 1.3**4), rel=1e-14)


# --- randomized cross-checks -----------------------------------------------------

_UNARY = ["sin", "cos", "atan", "exp", "sqrt", "ln", "neg"]
_BINARY = ["add", "sub", "mul", "div"]


def _random_tree(rng, depth):
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Var()
        return Const(round(rng.uniform(-3.0, 3.0), 3))
    roll = rng.random()
    if roll < 0.45:
        return Binary(rng.choice(_BINARY), _random_tree(rng, depth - 1),
                      _random_tree(rng, depth - 1))
    if roll < 0.8:
        return Unary(rng.choice(_UNARY), _random_tree(rng, depth - 1))
    return Pow(_random_tree(rng, depth - 1), float(rng.choice([2, 3, -1, 0.5, -0.5])))


def test_round_trip_parse_print():
    # Printing a parsed tree and reparsing must reproduce the tree exactly;
    # raw constructed trees may first normalize (e.g. folded double negation).
    rng = random.Random(20240901)
    checked = 0
    for _ in range(400):
        tree = _random_tree(rng, 4)
        normalized = parse(to_text(tree))
        text = to_text(normalized)
        assert parse(text) == normalized
        # the normalization must not change values where both are defined
        z = rng.uniform(0.2, 2.0)
        try:
            a = evaluate(tree, z)
        except DomainError:
            continue
        assert evaluate(normalized, z) == pytest.approx(a, rel=1e-12, abs=1e-12)
        checked += 1
    assert checked > 150


def _richardson(e, z, h=1e-5):
    def fd(step):
        return (evaluate(e, z + step) - evaluate(e, z - step)) / (2 * step)

    return (4 * fd(h / 2) - fd(h)) / 3


def test_derivative_against_finite_differences():
    rng = random.Random(77123)
    checked = 0
    while checked < 300:
        tree = _random_tree(rng, 3)
        d = differentiate(tree)
        z = rng.uniform(-2.0, 2.0)
        try:
            sym = evaluate(d, z)
            num = _richardson(tree, z)
        except DomainError:
            continue
        if not (math.isfinite(sym) and math.isfinite(num)):
            continue
        if abs(sym) > 1e6:  # steep spots amplify FD truncation error
            continue
        assert num == pytest.approx(sym, abs=1e-5 * (1.0 + abs(sym)))
        checked += 1


def test_printer_output_is_plain_text():
    text = to_text(parse("-(2*z + 1)/(z^2 - z + 4)"))
    reparsed = parse(text)
    for z in (-1.5, 0.0, 2.25):
        assert evaluate(reparsed, z) == pytest.approx(
            -(2 * z + 1) / (z * z - z + 4), rel=1e-14)
