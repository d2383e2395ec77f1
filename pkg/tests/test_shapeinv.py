"""Constant-gap and Morse-like constructions: closed forms against quadrature."""

import math

import numpy as np
import pytest

from pdmsusy.expr import evaluate, evaluate_grid, parse
from pdmsusy.mass import mass_profile, quotient_square_mass
from pdmsusy.numerics import (Grid, GridFunction, adaptive_simpson, discretize,
                              lowest_eigenpairs, normalize)
from pdmsusy.shapeinv import (ClosedFormUnavailableError, morse_coefficients,
                              morse_f0_quadrature, morse_like_model,
                              morse_superpotential_closed_form,
                              morse_superpotential_expression,
                              morse_superpotential_general, pct_coordinate,
                              si_spectrum, uniform_shift_ground_state,
                              uniform_shift_model, uniform_shift_spectrum,
                              uniform_shift_superpotential)


# --- the point-canonical coordinate ---------------------------------------------------

def test_pct_coordinate_closed_form():
    # integral of sqrt(M) = z + (a-1) atan z for the built-in family
    p = quotient_square_mass(2.0)
    assert pct_coordinate(p, 1.0) == pytest.approx(1.0 + math.atan(1.0), abs=1e-12)
    assert pct_coordinate(p, 0.0) == 0.0
    assert pct_coordinate(p, -2.0) == pytest.approx(-2.0 - math.atan(2.0), abs=1e-12)


def test_pct_coordinate_matches_adaptive_quadrature():
    p = mass_profile("1 + exp(-z^2)", domain=(-6.0, 6.0))
    for z in (-3.0, -0.7, 1.3, 4.0):
        ref = adaptive_simpson(
            lambda t: math.sqrt(1.0 + math.exp(-t * t)), 0.0, z, tol=1e-12)
        assert pct_coordinate(p, z) == pytest.approx(ref, abs=1e-9)


def test_pct_coordinate_constant_mass():
    p = mass_profile("4")
    assert pct_coordinate(p, 2.0, zref=0.5) == pytest.approx(2.0 * 1.5, abs=1e-13)


# --- uniform-shift construction -------------------------------------------------------

def test_uniform_shift_frozen_values():
    p = quotient_square_mass(2.0)
    model = uniform_shift_model(p, 2.0)
    # closed form: W0 = -(1/2) g' + (eps/2) zbar at z = 1
    assert model.w0_closed is not None
    assert evaluate(model.w0_closed, 1.0) == pytest.approx(1.6742870522863371, abs=1e-12)
    # the quadrature route agrees on grid nodes
    g = Grid(-4.0, 4.0, 1601)
    w0 = model.w0_on(g)
    closed = evaluate_grid(model.w0_closed, g.nodes())
    assert np.max(np.abs(w0 - closed)) < 1e-9


def test_uniform_shift_ground_state_value():
    p = quotient_square_mass(2.0)
    model = uniform_shift_model(p, 2.0)
    # M(0)^(1/4) e^0 = sqrt(2)
    assert uniform_shift_ground_state(model, 0.0) == pytest.approx(
        math.sqrt(2.0), abs=1e-12)


def test_uniform_shift_spectrum_is_a_ladder():
    for n in range(6):
        assert uniform_shift_spectrum(2.0, n) == pytest.approx(2.0 * n + 1.0)
        assert uniform_shift_spectrum(0.5, n) == pytest.approx(0.5 * n + 0.25)
    p = quotient_square_mass(2.0)
    model = uniform_shift_model(p, 2.0)
    assert model.e0 == pytest.approx(1.0)
    assert model.energy(3) == pytest.approx(7.0)


def test_uniform_shift_requires_positive_epsilon():
    p = quotient_square_mass(2.0)
    with pytest.raises(ValueError):
        uniform_shift_model(p, 0.0)
    with pytest.raises(ValueError):
        uniform_shift_model(p, -1.0)


def test_shift_identity_residual():
    # 2 W' g - g g'' = epsilon identically for the total superpotential
    p = quotient_square_mass(2.0)
    model = uniform_shift_model(p, 2.0)
    res = model.shift_identity_residual()
    zs = np.linspace(-8.0, 8.0, 1024)
    assert np.max(np.abs(evaluate_grid(res, zs))) < 1e-8


def test_partner_gap_equals_epsilon():
    # v2 - v1 for the total W, evaluated on a grid, must be the constant epsilon
    from pdmsusy.susy import partner_potentials
    p = quotient_square_mass(2.0)
    model = uniform_shift_model(p, 2.0)
    w = model.superpotential().total
    pair = partner_potentials(w, p)
    zs = np.linspace(-6.0, 6.0, 601)
    gap = evaluate_grid(pair.v2, zs) - evaluate_grid(pair.v1, zs)
    assert np.max(np.abs(gap - 2.0)) < 1e-8


def test_superpotential_closed_form_requires_family():
    p = mass_profile("1 + exp(-z^2)", domain=(-6.0, 6.0))
    model = uniform_shift_model(p, 1.0)
    with pytest.raises(ClosedFormUnavailableError):
        model.superpotential()
    # grid evaluation still works through quadrature
    g = Grid(-4.0, 4.0, 101)
    assert np.all(np.isfinite(model.w0_on(g)))


def test_uniform_shift_superpotential_helper():
    p = quotient_square_mass(2.0)
    decomp = uniform_shift_superpotential(p, 2.0)
    total = decomp.total
    # W_total = (1/2) g' + (eps/2) zbar is ordering independent; at z = 0 it vanishes
    assert evaluate(total, 0.0) == pytest.approx(0.0, abs=1e-13)
    # dW at z = 1: g' = d(1/sqrt(M)) = 2 z (a-1)/(a+z^2)^2 -> 2/9
    assert evaluate(decomp.dw, 1.0) == pytest.approx(2.0 / 9.0, abs=1e-13)


def test_excited_states_are_orthonormal():
    p = quotient_square_mass(2.0)
    model = uniform_shift_model(p, 2.0)
    g = Grid(-10.0, 10.0, 2000)
    states = [normalize(GridFunction(g, model.excited_state_on(g, n))).values
              for n in range(4)]
    for i in range(4):
        for j in range(4):
            overlap = g.h * float(np.sum(states[i] * states[j]))
            assert overlap == pytest.approx(1.0 if i == j else 0.0, abs=1e-6)


def test_excited_state_zero_is_ground_state():
    p = quotient_square_mass(2.0)
    model = uniform_shift_model(p, 2.0)
    g = Grid(-6.0, 6.0, 500)
    a = normalize(GridFunction(g, model.ground_state_on(g))).values
    b = normalize(GridFunction(g, model.excited_state_on(g, 0))).values
    assert np.max(np.abs(a - b)) < 1e-12


# --- Morse-like construction ----------------------------------------------------------

def test_morse_coefficients_values():
    p = quotient_square_mass(2.0)
    b1, b2 = morse_coefficients(p, 1.0)
    # b1 = lambda sqrt(M): 2 at the origin, 1.5 at z = 1
    assert evaluate(b1, 0.0) == pytest.approx(2.0, abs=1e-13)
    assert evaluate(b1, 1.0) == pytest.approx(1.5, abs=1e-13)
    # b2 = -[(lambda/2) sqrt(M) g' + (1/2) g'']; at z = 0: g' = 0, g'' = 1/2
    assert evaluate(b2, 0.0) == pytest.approx(-0.25, abs=1e-13)


def test_morse_f0_quadrature_against_closed_form():
    # f0 = C e^(-lambda zbar) - (1/2) g' for any mass; frozen value at z = 1
    p = quotient_square_mass(2.0, domain=(-8.0, 8.0))
    g = Grid(-8.0, 8.0, 16383)
    f0 = morse_f0_quadrature(p, 1.0, 1.0, 0.0, g)
    zs = g.nodes()
    zbar = zs + (2.0 - 1.0) * np.arctan(zs)
    gp = 2.0 * zs * (2.0 - 1.0) / (2.0 + zs**2) ** 2
    closed = np.exp(-zbar) - 0.5 * gp
    assert np.max(np.abs(f0.values - closed)) < 1e-8
    i = int(np.argmin(np.abs(zs - 1.0)))
    assert zs[i] == pytest.approx(1.0, abs=1e-10)
    assert closed[i] == pytest.approx(0.05661915254018, abs=1e-11)
    # the documented reference value is correct to its printed precision
    assert abs(closed[i] - 0.0566198) < 1e-5


def test_morse_superpotential_closed_point_values():
    model = morse_like_model(1.0, 1.0, 1.0, 2.0)
    w1 = morse_superpotential_closed_form(model, 1.0)
    assert w1 == pytest.approx(1.2788413747624, abs=1e-10)
    # the documented reference value is correct to its printed precision
    assert abs(w1 - 1.2788424) < 3e-6
    expr = morse_superpotential_expression(model)
    assert evaluate(expr, 1.0) == pytest.approx(w1, abs=1e-12)


def test_morse_general_matches_closed_form():
    p = quotient_square_mass(2.0, domain=(-8.0, 8.0))
    g = Grid(-8.0, 8.0, 16383)
    w = morse_superpotential_general(p, 1.0, 1.0, 1.0, 0.0, g)
    model = morse_like_model(1.0, 1.0, 1.0, 2.0, domain=(-8.0, 8.0))
    closed = evaluate_grid(morse_superpotential_expression(model), g.nodes())
    assert np.max(np.abs(w.values - closed)) < 1e-8


def test_si_spectrum_values():
    # remainders r_k = A_{k-1}^2 - A_k^2 with A_k = A - k lambda
    big_a, lam = 4.0, 1.0
    r = [(big_a - k * lam) ** 2 - (big_a - (k + 1) * lam) ** 2 for k in range(4)]
    assert si_spectrum(r, 0.0, 0) == 0.0
    assert si_spectrum(r, 0.0, 1) == pytest.approx(7.0)
    assert si_spectrum(r, 0.0, 2) == pytest.approx(12.0)
    assert si_spectrum(r, 0.0, 3) == pytest.approx(15.0)
    assert si_spectrum(r, 2.5, 2) == pytest.approx(14.5)
    with pytest.raises(IndexError):
        si_spectrum(r, 0.0, 5)
    with pytest.raises(ValueError):
        si_spectrum(r, 0.0, -1)


def test_constant_mass_morse_levels_match_grid_solver():
    # M = 1, W = A + C e^(-lambda z) with C < 0 binds A^2 - (A - n lambda)^2
    big_a, c, lam = 4.0, -4.0, 1.0
    p = mass_profile("1", domain=(-6.0, 30.0))
    g = Grid(-6.0, 30.0, 6000)
    zs = g.nodes()
    w = big_a + c * np.exp(-lam * zs)
    wp = -lam * c * np.exp(-lam * zs)
    v1 = w**2 - wp
    H = discretize(p, lambda _: v1, g)
    spec = lowest_eigenpairs(H, 4)
    r = [(big_a - k * lam) ** 2 - (big_a - (k + 1) * lam) ** 2 for k in range(4)]
    ladder = [si_spectrum(r, 0.0, n) for n in range(4)]
    assert np.max(np.abs(spec.eigenvalues - np.array(ladder))) < 1e-3


def test_morse_like_model_validation():
    with pytest.raises(ValueError):
        morse_like_model(1.0, 1.0, 0.0, 2.0)
    with pytest.raises(ValueError):
        morse_like_model(1.0, 1.0, -2.0, 2.0)
