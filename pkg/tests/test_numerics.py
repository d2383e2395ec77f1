"""Grids, quadrature, the flux-form discretization, and the eigensolver."""

import math

import numpy as np
import pytest

from pdmsusy.expr import evaluate_grid, parse
from pdmsusy.mass import mass_profile, quotient_square_mass
from pdmsusy.numerics import (Grid, GridFunction, TridiagonalHamiltonian,
                              ZeroFunctionError, adaptive_simpson,
                              convergence_order, cumulative_integral,
                              discretize, lowest_eigenpairs, normalize,
                              sturm_count_below)


def test_grid_layout():
    g = Grid(-1.0, 1.0, 3)
    assert g.h == pytest.approx(0.5)
    assert np.allclose(g.nodes(), [-0.5, 0.0, 0.5])
    assert np.allclose(g.midpoints(), [-0.75, -0.25, 0.25, 0.75])
    with pytest.raises(ValueError):
        Grid(-1.0, 1.0, 2)
    with pytest.raises(ValueError):
        Grid(1.0, -1.0, 5)


def test_cumulative_integral_exact_on_cubics():
    # the per-interval rule uses midpoints, so cubics integrate exactly
    g = Grid(-3.0, 5.0, 197)
    zs = g.nodes()
    f = lambda z: 2.0 * z**3 - z**2 + 4.0 * z - 1.0
    exact = lambda z: 0.5 * z**4 - z**3 / 3.0 + 2.0 * z**2 - z
    got = cumulative_integral(f, g, zref=0.0)
    assert got.grid is g
    assert np.max(np.abs(got.values - (exact(zs) - exact(0.0)))) < 1e-12


def test_cumulative_integral_offset_reference():
    # zref between nodes: the stub panel to the first node uses the same rule
    g = Grid(0.0, 2.0, 99)
    zs = g.nodes()
    got = cumulative_integral(np.cos, g, zref=0.5)
    assert np.max(np.abs(got.values - (np.sin(zs) - np.sin(0.5)))) < 1e-9
    with pytest.raises(ValueError):
        cumulative_integral(np.cos, g, zref=-1.0)


def test_cumulative_integral_fourth_order():
    errs = []
    for n in (100, 200, 400):
        g = Grid(0.0, 3.0, n)
        got = cumulative_integral(np.exp, g, zref=0.0)
        errs.append(np.max(np.abs(got.values - (np.exp(g.nodes()) - 1.0))))
    order1 = math.log2(errs[0] / errs[1])
    order2 = math.log2(errs[1] / errs[2])
    assert order1 > 3.7 and order2 > 3.7


def test_adaptive_simpson_values():
    assert adaptive_simpson(np.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-10)
    assert adaptive_simpson(lambda z: 1.0 / (1.0 + z * z), 0.0, 1.0) == pytest.approx(
        math.pi / 4.0, abs=1e-10)
    assert adaptive_simpson(np.exp, 1.0, 1.0) == 0.0
    # reversed limits flip the sign
    assert adaptive_simpson(np.exp, 1.0, 0.0) == pytest.approx(1.0 - math.e, abs=1e-10)


def test_discretize_constant_mass_toeplitz():
    # -u'' with M = 1 on Dirichlet nodes has eigenvalues (2 - 2 cos(k pi/(n+1)))/h^2
    p = mass_profile("1", domain=(0.0, 1.0))
    n = 50
    g = Grid(0.0, 1.0, n)
    H = discretize(p, lambda zs: np.zeros_like(zs), g)
    spec = lowest_eigenpairs(H, 6)
    exact = (2.0 - 2.0 * np.cos(np.arange(1, 7) * math.pi / (n + 1))) / g.h**2
    assert np.max(np.abs(spec.eigenvalues - exact)) < 1e-10 * np.max(exact)


def test_discretize_is_symmetric_flux_form():
    p = quotient_square_mass(2.0)
    g = Grid(-4.0, 4.0, 64)
    H = discretize(p, lambda zs: 0.1 * zs**2, g)
    # tridiagonal symmetric by construction: one off-diagonal array
    assert H.diag.shape == (64,)
    assert H.offdiag.shape == (63,)
    # matvec against the dense reference
    rng = np.random.default_rng(4321)
    v = rng.standard_normal(64)
    dense = np.diag(H.diag) + np.diag(H.offdiag, 1) + np.diag(H.offdiag, -1)
    assert np.allclose(H.matvec(v), dense @ v, atol=1e-12)


def _char_poly_count(diag, off, t):
    # brute-force reference: count roots of det(H - x I) below t via the
    # tridiagonal determinant recurrence turned into polynomial coefficients
    n = len(diag)
    polys = [np.array([1.0]), np.array([diag[0], -1.0])]
    for i in range(1, n):
        a = np.polynomial.polynomial.polymul(np.array([diag[i], -1.0]), polys[-1])
        b = off[i - 1] ** 2 * polys[-2]
        b = np.concatenate([b, np.zeros(len(a) - len(b))])
        polys.append(a - b)
    roots = np.roots(polys[-1][::-1])
    return int(np.sum(roots.real < t))


def test_sturm_count_against_char_poly():
    rng = np.random.default_rng(20240917)
    for _ in range(60):
        n = int(rng.integers(3, 8))
        diag = rng.uniform(-3.0, 3.0, n)
        off = rng.uniform(-2.0, 2.0, n - 1)
        H = TridiagonalHamiltonian(diag, off, Grid(0.0, 1.0, n))
        t = float(rng.uniform(-4.0, 4.0))
        assert sturm_count_below(H, t) == _char_poly_count(diag, off, t)


def test_sturm_count_monotone_and_bounded():
    p = quotient_square_mass(2.0)
    g = Grid(-6.0, 6.0, 200)
    H = discretize(p, lambda zs: zs**2, g)
    lo, hi = H.gershgorin()
    assert sturm_count_below(H, lo) == 0
    assert sturm_count_below(H, hi + 1.0) == 200
    counts = [sturm_count_below(H, t) for t in np.linspace(lo, hi, 12)]
    assert all(b >= a for a, b in zip(counts, counts[1:]))


def test_eigenpair_residuals():
    p = quotient_square_mass(2.0)
    g = Grid(-8.0, 8.0, 400)
    H = discretize(p, lambda zs: 0.5 * zs**2, g)
    spec = lowest_eigenpairs(H, 5)
    scale = H.inf_norm()
    for lam, vec in zip(spec.eigenvalues, spec.eigenvectors):
        r = H.matvec(vec.values) - lam * vec.values
        assert np.max(np.abs(r)) < 1e-8 * scale
    # eigenvalues sorted ascending and distinct
    assert np.all(np.diff(spec.eigenvalues) > 0)


def test_eigenpairs_match_dense_solver():
    p = quotient_square_mass(3.0)
    g = Grid(-7.0, 7.0, 180)
    H = discretize(p, lambda zs: 0.3 * zs**2, g)
    spec = lowest_eigenpairs(H, 6)
    dense = np.diag(H.diag) + np.diag(H.offdiag, 1) + np.diag(H.offdiag, -1)
    ref = np.linalg.eigvalsh(dense)[:6]
    assert np.max(np.abs(spec.eigenvalues - ref)) < 1e-9 * max(1.0, abs(ref[-1]))


def test_lowest_eigenpairs_validates_k():
    p = mass_profile("1", domain=(0.0, 1.0))
    H = discretize(p, lambda zs: np.zeros_like(zs), Grid(0.0, 1.0, 10))
    with pytest.raises(ValueError):
        lowest_eigenpairs(H, 0)
    with pytest.raises(ValueError):
        lowest_eigenpairs(H, 11)


def test_normalize_invariants():
    g = Grid(0.0, 1.0, 101)
    f = GridFunction(g, np.sin(math.pi * g.nodes()))
    u = normalize(f)
    assert g.h * np.sum(u.values**2) == pytest.approx(1.0, abs=1e-13)
    # idempotent
    again = normalize(u)
    assert np.allclose(again.values, u.values, atol=1e-14)
    # sign convention: the largest-magnitude component comes out positive
    flipped = normalize(GridFunction(g, -f.values))
    assert np.allclose(flipped.values, u.values, atol=1e-14)
    with pytest.raises(ZeroFunctionError):
        normalize(GridFunction(g, np.zeros(101)))


def test_convergence_order_synthetic():
    est = convergence_order(lambda h: 3.7 + 2.5 * h**2, [0.1, 0.05, 0.025, 0.0125])
    assert est.order == pytest.approx(2.0, abs=0.01)
    assert not est.saturated
    assert len(est.differences) == 3


def test_convergence_order_saturation():
    est = convergence_order(lambda h: 1.0, [0.1, 0.05, 0.025])
    assert est.saturated
    assert math.isnan(est.order)


def test_convergence_order_requires_halving():
    with pytest.raises(ValueError):
        convergence_order(lambda h: h, [0.1, 0.05])
    with pytest.raises(ValueError):
        convergence_order(lambda h: h, [0.1, 0.07, 0.05])


def test_ground_energy_insensitive_to_domain_tail():
    # the confined ground state must not feel a doubling of the box
    from pdmsusy.shapeinv import uniform_shift_model
    vals = []
    for half in (10.0, 20.0):
        p = quotient_square_mass(2.0, domain=(-half, half))
        model = uniform_shift_model(p, 2.0)
        g = Grid(-half, half, int(800 * half / 10))
        H = discretize(p, lambda zs: model.effective_potential_on(g), g)
        vals.append(lowest_eigenpairs(H, 1).eigenvalues[0])
    assert abs(vals[1] - vals[0]) < 1e-6
