"""Grids, quadrature, the flux-form tridiagonal discretization, and its eigensolver.

The Hamiltonian -d/dz (1/M) d/dz + V with Dirichlet walls is discretized in flux
form (harmonic-free: 1/M is sampled at cell midpoints), which keeps the matrix
symmetric and the scheme second order for smooth M.  Eigenvalues come from
Sturm-sequence bisection inside the Gershgorin interval and eigenvectors from
inverse iteration -- deterministic, no dense solver involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

__all__ = [
    "Grid", "GridFunction", "TridiagonalHamiltonian", "Spectrum",
    "cumulative_integral", "adaptive_simpson", "discretize", "sturm_count_below",
    "lowest_eigenpairs", "normalize", "convergence_order", "ConvergenceEstimate",
    "ZeroFunctionError", "ConvergenceFailure",
]


class ZeroFunctionError(ValueError):
    """Attempted to normalize the zero grid function."""


class ConvergenceFailure(RuntimeError):
    def __init__(self, index: int, residual: float):
        super().__init__(f"inverse iteration stalled for eigenpair {index} "
                         f"(residual {residual:.3e})")
        self.index = index
        self.residual = residual


@dataclass(frozen=True)
class Grid:
    """n interior nodes of a uniform Dirichlet grid on [z_min, z_max].

    h = (z_max - z_min)/(n + 1); the walls themselves carry no unknowns.
    """

    z_min: float
    z_max: float
    n: int

    def __post_init__(self):
        if not self.z_min < self.z_max:
            raise ValueError(f"empty grid interval ({self.z_min}, {self.z_max})")
        if self.n < 3:
            raise ValueError(f"need at least 3 interior nodes, got {self.n}")

    @property
    def h(self) -> float:
        return (self.z_max - self.z_min) / (self.n + 1)

    def nodes(self) -> np.ndarray:
        return self.z_min + self.h * np.arange(1, self.n + 1)

    def midpoints(self) -> np.ndarray:
        """The n+1 cell midpoints straddling the interior nodes."""
        return self.z_min + self.h * (np.arange(self.n + 1) + 0.5)


@dataclass(frozen=True)
class GridFunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.grid.n:
            raise ValueError(f"value array of length {len(self.values)} on a grid "
                             f"with {self.grid.n} nodes")


# --- quadrature ------------------------------------------------------------------

def _simpson_panels(f, a: float, b: float, panels: int) -> float:
    """Composite Simpson with midpoints over `panels` equal panels of [a, b]."""
    if a == b:
        return 0.0
    edges = np.linspace(a, b, panels + 1)
    mids = (edges[:-1] + edges[1:]) / 2.0
    fe = f(edges)
    fm = f(mids)
    width = (b - a) / panels
    return float(np.sum((fe[:-1] + 4.0 * fm + fe[1:]) * (width / 6.0)))


def cumulative_integral(f, grid: Grid, zref: float = 0.0) -> GridFunction:
    """F_i = integral of f from zref to each node, by cumulative composite Simpson.

    Each inter-node panel is integrated with the three-point Simpson rule using
    the panel midpoint, so the cumulative values are O(h^4) accurate (exact for
    cubics).  zref may sit anywhere inside [z_min, z_max]; the stub integral from
    zref to the first node is done with the same rule on subdivided panels.
    """
    if not grid.z_min <= zref <= grid.z_max:
        raise ValueError(f"zref = {zref} outside the grid interval "
                         f"[{grid.z_min}, {grid.z_max}]")
    zs = grid.nodes()
    h = grid.h
    mids = (zs[:-1] + zs[1:]) / 2.0
    fn = f(zs)
    fm = f(mids)
    segments = (fn[:-1] + 4.0 * fm + fn[1:]) * (h / 6.0)
    from_first = np.concatenate(([0.0], np.cumsum(segments)))
    panels = max(2, int(np.ceil(abs(zs[0] - zref) / h)))
    offset = _simpson_panels(f, zref, float(zs[0]), panels)
    return GridFunction(grid, offset + from_first)


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10,
                     max_depth: int = 50) -> float:
    """Recursive adaptive Simpson with the standard 15x error estimate."""
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m = (a + b) / 2.0
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adapt(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _adapt(f, a, b, fa, fm, fb, whole, tol, depth):
    m = (a + b) / 2.0
    lm, rm = (a + m) / 2.0, (m + b) / 2.0
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return (_adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + _adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1))


# --- discretization ------------------------------------------------------------------

@dataclass(frozen=True)
class TridiagonalHamiltonian:
    """Symmetric tridiagonal matrix: main diagonal and the (n-1) off-diagonal entries."""

    diag: np.ndarray
    offdiag: np.ndarray
    grid: Grid

    def __post_init__(self):
        if len(self.diag) != self.grid.n or len(self.offdiag) != self.grid.n - 1:
            raise ValueError("diagonal/off-diagonal lengths do not match the grid")

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def inf_norm(self) -> float:
        row = np.abs(self.diag).copy()
        row[:-1] += np.abs(self.offdiag)
        row[1:] += np.abs(self.offdiag)
        return float(np.max(row))

    def gershgorin(self) -> tuple[float, float]:
        radius = np.zeros_like(self.diag)
        radius[:-1] += np.abs(self.offdiag)
        radius[1:] += np.abs(self.offdiag)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))


def discretize(p, veff, grid: Grid) -> TridiagonalHamiltonian:
    """Flux-form matrix for -d/dz (1/M) d/dz + veff with Dirichlet walls.

    `p` is a MassProfile; `veff` is a vectorized callable returning the potential
    at the grid nodes.  1/M is sampled at the n+1 cell midpoints, so row i reads
    [-k_{i-1/2}, (k_{i-1/2}+k_{i+1/2}) + h^2 V_i, -k_{i+1/2}] / h^2.
    """
    from .expr import evaluate_grid
    from .mass import NonPositiveMassError

    zs = grid.nodes()
    mids = grid.midpoints()
    if mids[0] < p.domain[0] - 1e-12 or mids[-1] > p.domain[1] + 1e-12:
        raise ValueError(f"grid [{grid.z_min}, {grid.z_max}] exceeds the mass domain {p.domain}")
    m_mid = evaluate_grid(p.m, mids)
    bad = m_mid <= 0.0
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NonPositiveMassError(float(mids[i]), float(m_mid[i]))
    kappa = 1.0 / m_mid
    h2 = grid.h ** 2
    v = np.asarray(veff(zs), dtype=float)
    diag = (kappa[:-1] + kappa[1:]) / h2 + v
    offdiag = -kappa[1:-1] / h2
    return TridiagonalHamiltonian(diag, offdiag, grid)


# --- eigensolver -----------------------------------------------------------------------

def sturm_count_below(H: TridiagonalHamiltonian, t) -> np.ndarray | int:
    """Number of eigenvalues strictly below each shift t (Sturm sequence count).

    Vectorized over an array of shifts: the LDL^T pivot recurrence runs once over
    the matrix while all shifts advance in lockstep.
    """
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    diag, off2 = H.diag, H.offdiag ** 2
    scale = max(1.0, float(np.max(np.abs(diag))), float(np.max(off2, initial=0.0)))
    pivmin = 1e-292 * scale
    d = diag[0] - ts
    d = np.where(np.abs(d) < pivmin, -pivmin, d)
    count = (d < 0.0).astype(np.int64)
    for i in range(1, H.grid.n):
        d = (diag[i] - ts) - off2[i - 1] / d
        d = np.where(np.abs(d) < pivmin, -pivmin, d)
        count += d < 0.0
    return count if np.ndim(t) else int(count[0])


def _bisect_eigenvalues(H: TridiagonalHamiltonian, k: int, tol: float) -> np.ndarray:
    """The k smallest eigenvalues, each bracketed to width <= tol by bisection."""
    lo_bound, hi_bound = H.gershgorin()
    lo = np.full(k, lo_bound)
    hi = np.full(k, hi_bound)
    want = np.arange(1, k + 1)  # eigenvalue j present once count >= j+1
    for _ in range(250):
        if np.max(hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        counts = sturm_count_below(H, mid)
        go_left = counts >= want
        hi = np.where(go_left, mid, hi)
        lo = np.where(go_left, lo, mid)
    return 0.5 * (lo + hi)


def _inverse_iteration(H: TridiagonalHamiltonian, lam: float, index: int,
                       found: list[np.ndarray], max_iter: int = 50) -> np.ndarray:
    """One eigenvector by inverse iteration at the bisected shift lam.

    Deterministically seeded start vector; re-orthogonalized every sweep against
    the eigenvectors already found so clustered levels stay separated.
    """
    n = H.grid.n
    ab = np.zeros((3, n))
    ab[0, 1:] = H.offdiag
    ab[1, :] = H.diag - lam
    ab[2, :-1] = H.offdiag
    scale = H.inf_norm()
    v = np.random.default_rng(987654321 + index).standard_normal(n)
    v /= np.linalg.norm(v)
    residual = np.inf
    for _ in range(max_iter):
        try:
            w = solve_banded((1, 1), ab, v)
        except np.linalg.LinAlgError:  # exactly singular shift: nudge once
            ab[1, :] += 1e-12 * scale
            w = solve_banded((1, 1), ab, v)
        if not np.all(np.isfinite(w)):  # overflow through a near-zero pivot
            ab[1, :] += 1e-12 * scale
            continue
        for u in found:
            w -= (u @ w) * u
        norm = np.linalg.norm(w)
        if norm == 0.0:
            raise ConvergenceFailure(index, residual)
        v = w / norm
        rho = v @ H.matvec(v)
        residual = float(np.linalg.norm(H.matvec(v) - rho * v))
        if residual <= 1e-10 * scale:
            return v
    if residual <= 1e-8 * scale:
        return v
    raise ConvergenceFailure(index, residual)


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues and L2-normalized eigenvectors (dominant component > 0)."""

    eigenvalues: np.ndarray
    eigenvectors: list = field(default_factory=list)


def lowest_eigenpairs(H: TridiagonalHamiltonian, k: int, tol: float = 1e-10) -> Spectrum:
    """The k lowest eigenpairs of the tridiagonal Hamiltonian.

    Eigenvalues by Sturm bisection to absolute width tol; eigenvectors by inverse
    iteration with residual || H v - rho v ||_2 <= 1e-8 * ||H||_inf guaranteed.
    """
    if not 1 <= k <= H.grid.n:
        raise ValueError(f"need 1 <= k <= {H.grid.n}, got k = {k}")
    lams = _bisect_eigenvalues(H, k, tol)
    vectors = []
    for j in range(k):
        vectors.append(_inverse_iteration(H, float(lams[j]), j, vectors))
    functions = [normalize(GridFunction(H.grid, v)) for v in vectors]
    return Spectrum(lams, functions)


def normalize(psi: GridFunction) -> GridFunction:
    """Scale to unit trapezoid-rule L2 norm; largest-magnitude component positive.

    With Dirichlet walls the trapezoid rule over [z_min, z_max] reduces to
    h * sum(psi^2) because the wall values vanish.  The sign convention keys
    off the dominant component rather than the leading tail entry, which for
    localized states is solver noise of arbitrary sign.
    """
    values = np.asarray(psi.values, dtype=float)
    norm = float(np.sqrt(psi.grid.h * np.sum(values ** 2)))
    if norm == 0.0:
        raise ZeroFunctionError("cannot normalize the zero function")
    out = values / norm
    if out[int(np.argmax(np.abs(out)))] < 0.0:
        out = -out
    return GridFunction(psi.grid, out)


# --- convergence-order estimation ----------------------------------------------------

@dataclass(frozen=True)
class ConvergenceEstimate:
    """Richardson order estimate; `saturated` flags error below the noise floor."""

    order: float
    saturated: bool
    differences: tuple


def convergence_order(quantity, h_values) -> ConvergenceEstimate:
    """Estimate the convergence order of quantity(h) over successively halved h.

    `h_values` must decrease by a factor of 2 each step (at least three values).
    The order is the mean of log2 |q(h) - q(h/2)| / |q(h/2) - q(h/4)| over the
    available triples.  When successive differences fall below the floor
    1e-13 * scale the estimate is flagged as saturated instead of fabricated.
    """
    hs = [float(h) for h in h_values]
    if len(hs) < 3:
        raise ValueError("need at least three spacings h, h/2, h/4")
    for a, b in zip(hs, hs[1:]):
        if abs(b - a / 2.0) > 1e-9 * a:
            raise ValueError(f"spacings must halve: got {a} then {b}")
    qs = [float(quantity(h)) for h in hs]
    diffs = tuple(abs(q1 - q0) for q0, q1 in zip(qs, qs[1:]))
    floor = 1e-13 * max(1.0, max(abs(q) for q in qs))
    if any(d <= floor for d in diffs):
        return ConvergenceEstimate(float("nan"), True, diffs)
    orders = [np.log2(d0 / d1) for d0, d1 in zip(diffs, diffs[1:])]
    return ConvergenceEstimate(float(np.mean(orders)), False, diffs)
