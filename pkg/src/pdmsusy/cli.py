"""Command-line interface: delimited reports (CSV/JSON) plus optional figure files.

Subcommands
    potential      tabulate M, its derivatives, the ordering term U, and V_eff
    identities     verify the factorization identities; non-zero residual -> exit 1
    uniform-shift  the constant-gap family: profile table, spectrum vs (n+1/2) eps
    morse          Morse-like f0 and W: quadrature route vs closed form
    spectrum       assemble V_eff = V0 + U for an ordering and diagonalize

Every run is deterministic: identical inputs produce byte-identical output.
Exit codes: 0 success, 1 a verification gate failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import expr as ex
from .expr import DomainError, ParseError
from .mass import (MassProfile, NonPositiveMassError, OrderingParameters,
                   mass_profile, modification_term, named_ordering,
                   ordering_from_alpha_gamma, quotient_square_mass)
from .numerics import (ConvergenceFailure, Grid, GridFunction, discretize,
                       lowest_eigenpairs, normalize)
from .shapeinv import (morse_f0_quadrature, morse_like_model,
                       morse_superpotential_expression,
                       morse_superpotential_general, uniform_shift_model,
                       uniform_shift_spectrum)
from .susy import duality_check, grid_max_abs, modification_residual, partner_potentials

__all__ = ["main", "RunConfig", "ReportRow"]

USAGE_ERROR, VERIFY_ERROR = 2, 1

DEFAULT_DOMAIN = (-12.0, 12.0)
DEFAULT_POINTS = 4000
DEFAULT_LEVELS = 4
DEFAULT_IDENTITY_TOL = 1e-9
DEFAULT_SPECTRUM_TOL = 1e-3
DEFAULT_MORSE_TOL = 1e-6


class UsageError(ValueError):
    """Bad flags, bad config, bad input expressions: exit code 2."""


@dataclass
class RunConfig:
    """Merged options for one subcommand run (config file first, flags win)."""

    command: str
    mass: str | None = None
    v0: str = "0"
    w: str = "z"
    ordering: OrderingParameters = field(default_factory=lambda: named_ordering("zk"))
    ordering_label: str = "zk"
    epsilon: float | None = None
    lam: float = 1.0
    big_a: float = 1.0
    c: float = 1.0
    a: float | None = None
    domain: tuple[float, float] = DEFAULT_DOMAIN
    points: int = DEFAULT_POINTS
    levels: int = DEFAULT_LEVELS
    tol: float | None = None
    zref: float = 0.0
    fmt: str = "csv"
    output: str | None = None
    plot: str | None = None
    compare_orderings: bool = False
    eigenvectors: bool = False


@dataclass(frozen=True)
class ReportRow:
    """One row of the delimited report."""

    cells: tuple


def _format_float(x) -> str:
    return "%.17g" % float(x)


def _format_cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return _format_float(x)
    return str(x)


def _write_csv(columns, rows, stream):
    stream.write(",".join(columns) + "\n")
    for row in rows:
        cells = row.cells if isinstance(row, ReportRow) else row
        stream.write(",".join(_format_cell(c) for c in cells) + "\n")


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [float(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(cfg: RunConfig, columns, rows, summary: dict):
    """Write the report in the chosen format to --output or stdout."""
    if cfg.fmt == "csv":
        if cfg.output:
            with open(cfg.output, "w") as fh:
                _write_csv(columns, rows, fh)
        else:
            _write_csv(columns, rows, sys.stdout)
    else:
        payload = dict(summary)
        payload["columns"] = list(columns)
        payload["rows"] = _jsonable([list(r.cells if isinstance(r, ReportRow) else r)
                                     for r in rows])
        text = json.dumps(_jsonable(payload), indent=2) + "\n"
        if cfg.output:
            with open(cfg.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _note(cfg: RunConfig, line: str):
    """Human-readable progress line; kept off stdout unless it is free of payload."""
    stream = sys.stdout if cfg.output else sys.stderr
    stream.write(line + "\n")


# --- option plumbing ---------------------------------------------------------------

_CONFIG_KEYS = {
    "mass", "v0", "w", "ordering", "alpha", "gamma", "epsilon", "lambda",
    "A", "C", "a", "domain", "points", "levels", "tol", "format", "output",
    "zref", "plot",
}


def _read_config(path: str) -> dict:
    values = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
                key, _, value = line.partition("=")
                key, value = key.strip(), value.strip()
                if key not in _CONFIG_KEYS:
                    raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
                values[key] = value
    except OSError as err:
        raise UsageError(f"cannot read config file {path}: {err}") from None
    return values


def _parse_domain(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"domain must be MIN:MAX, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageError(f"domain must be numeric MIN:MAX, got {text!r}") from None
    if not lo < hi:
        raise UsageError(f"domain is empty: {text!r}")
    return lo, hi


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdmsusy", allow_abbrev=False,
        description="SUSY diagnostics and spectra for 1-D position-dependent-mass models")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, spectral=False):
        p.add_argument("--config", help="key=value file; explicit flags win")
        p.add_argument("--mass", help="mass expression M(z) > 0, e.g. '((2+z^2)/(1+z^2))^2'")
        p.add_argument("--a", type=float,
                       help="shape parameter of the built-in mass ((a+z^2)/(1+z^2))^2")
        p.add_argument("--ordering", choices=["bdd", "bastard", "zk", "likuhn"],
                       help="named kinetic ordering (default zk)")
        p.add_argument("--alpha", type=float, help="ordering exponent alpha (with --gamma)")
        p.add_argument("--gamma", type=float, help="ordering exponent gamma (with --alpha)")
        p.add_argument("--domain", help="grid interval MIN:MAX (default -12:12)")
        p.add_argument("--points", type=int, help=f"interior grid points (default {DEFAULT_POINTS})")
        p.add_argument("--tol", type=float, help="verification tolerance for this command")
        p.add_argument("--zref", type=float, help="lower limit for indefinite integrals (default 0)")
        p.add_argument("--format", choices=["csv", "json"], dest="fmt",
                       help="report format (default csv)")
        p.add_argument("--output", help="write the report to this file instead of stdout")
        p.add_argument("--plot", help="render a figure of the report to this file (png/pdf)")
        if spectral:
            p.add_argument("--levels", type=int, help=f"levels to compute (default {DEFAULT_LEVELS})")

    p_pot = sub.add_parser("potential", allow_abbrev=False, help="tabulate M, M', M'', U, and V_eff")
    common(p_pot)
    p_pot.add_argument("--v0", help="real potential profile V0(z) (default 0)")

    p_id = sub.add_parser("identities", allow_abbrev=False, help="verify factorization identities on a grid")
    common(p_id)
    p_id.add_argument("--w", help="superpotential used by the W-dependent identities (default z)")
    p_id.add_argument("--epsilon", type=float,
                      help="also check the constant-gap identity at this epsilon")

    p_us = sub.add_parser("uniform-shift", allow_abbrev=False, help="constant-gap family: W0, dW, V_eff, spectrum")
    common(p_us, spectral=True)
    p_us.add_argument("--epsilon", type=float, required=False, help="level spacing epsilon > 0")
    p_us.add_argument("--compare-orderings", action="store_true",
                      help="also diagonalize the BenDaniel-Duke assembly and compare")

    p_mo = sub.add_parser("morse", allow_abbrev=False, help="Morse-like family: f0 and W, quadrature vs closed form")
    common(p_mo)
    p_mo.add_argument("--lambda", type=float, dest="lam", help="decay rate lambda > 0 (default 1)")
    p_mo.add_argument("--A", type=float, dest="big_a", help="superpotential offset A (default 1)")
    p_mo.add_argument("--C", type=float, dest="c", help="integration constant C (default 1)")

    p_sp = sub.add_parser("spectrum", allow_abbrev=False, help="diagonalize -d/dz (1/M) d/dz + V0 + U")
    common(p_sp, spectral=True)
    p_sp.add_argument("--v0", help="real potential profile V0(z) (default 0)")
    p_sp.add_argument("--eigenvectors", action="store_true",
                      help="tabulate eigenvectors over z instead of the level list")

    return parser


def _merge(args: argparse.Namespace) -> RunConfig:
    """Fold config-file values under the explicit flags and validate the result."""
    config = _read_config(args.config) if getattr(args, "config", None) else {}

    def pick(flag: str, key: str | None = None, convert=str):
        explicit = getattr(args, flag, None)
        if explicit is not None:
            return explicit
        key = key or flag
        if key in config:
            try:
                return convert(config[key])
            except ValueError as err:
                raise UsageError(f"config key {key}: {err}") from None
        return None

    cfg = RunConfig(command=args.command)
    cfg.mass = pick("mass")
    cfg.v0 = pick("v0") or "0"
    cfg.w = pick("w") or "z"
    alpha = pick("alpha", convert=float)
    gamma = pick("gamma", convert=float)
    name = pick("ordering")
    if (alpha is None) != (gamma is None):
        raise UsageError("--alpha and --gamma must be given together")
    if alpha is not None:
        if name is not None:
            raise UsageError("give either --ordering or --alpha/--gamma, not both")
        try:
            cfg.ordering = ordering_from_alpha_gamma(alpha, gamma)
        except ValueError as err:
            raise UsageError(str(err)) from None
        cfg.ordering_label = f"alpha={alpha:g},gamma={gamma:g}"
    elif name is not None:
        cfg.ordering = named_ordering(name)
        cfg.ordering_label = name
    epsilon = pick("epsilon", convert=float)
    if epsilon is not None:
        cfg.epsilon = epsilon
    cfg.lam = pick("lam", key="lambda", convert=float) or 1.0
    big_a = pick("big_a", key="A", convert=float)
    cfg.big_a = 1.0 if big_a is None else big_a
    c = pick("c", key="C", convert=float)
    cfg.c = 1.0 if c is None else c
    cfg.a = pick("a", convert=float)
    domain = pick("domain")
    if domain is not None:
        cfg.domain = _parse_domain(domain)
    points = pick("points", convert=int)
    if points is not None:
        if points < 3:
            raise UsageError(f"--points must be at least 3, got {points}")
        cfg.points = points
    levels = pick("levels", convert=int)
    if levels is not None:
        if levels < 1:
            raise UsageError(f"--levels must be at least 1, got {levels}")
        cfg.levels = levels
    cfg.tol = pick("tol", convert=float)
    zref = pick("zref", convert=float)
    if zref is not None:
        cfg.zref = zref
    cfg.fmt = pick("fmt", key="format") or "csv"
    if cfg.fmt not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {cfg.fmt!r}")
    cfg.output = pick("output")
    cfg.plot = pick("plot")
    cfg.compare_orderings = bool(getattr(args, "compare_orderings", False))
    cfg.eigenvectors = bool(getattr(args, "eigenvectors", False))
    return cfg


def _profile_from(cfg: RunConfig) -> MassProfile:
    """Mass profile from --a (quotient-square family) or a --mass expression."""
    if cfg.a is not None:
        if cfg.mass is not None:
            raise UsageError("give either --a or --mass, not both")
        return quotient_square_mass(cfg.a, cfg.domain)
    if cfg.mass is None:
        raise UsageError("a mass is required: --mass EXPR or --a SHAPE")
    return mass_profile(cfg.mass, cfg.domain)


def _grid(cfg: RunConfig) -> Grid:
    return Grid(cfg.domain[0], cfg.domain[1], cfg.points)


# --- subcommands -----------------------------------------------------------------------

def cmd_potential(cfg: RunConfig) -> int:
    p = _profile_from(cfg)
    v0 = ex.parse(cfg.v0)
    u = modification_term(p, cfg.ordering)
    zs = np.linspace(cfg.domain[0], cfg.domain[1], cfg.points)
    m_vals = ex.evaluate_grid(p.m, zs)
    dm_vals = ex.evaluate_grid(p.dm, zs)
    d2m_vals = ex.evaluate_grid(p.d2m, zs)
    u_vals = ex.evaluate_grid(u, zs)
    veff_vals = ex.evaluate_grid(v0, zs) + u_vals
    columns = ("z", "M", "Mp", "Mpp", "U", "Veff")
    rows = [ReportRow((zs[i], m_vals[i], dm_vals[i], d2m_vals[i], u_vals[i], veff_vals[i]))
            for i in range(len(zs))]
    summary = {
        "command": "potential",
        "mass": ex.to_text(p.m),
        "v0": cfg.v0,
        "ordering": {"label": cfg.ordering_label, "alpha": cfg.ordering.alpha,
                     "beta": cfg.ordering.beta, "gamma": cfg.ordering.gamma},
        "domain": list(cfg.domain),
        "points": cfg.points,
    }
    _emit(cfg, columns, rows, summary)
    if cfg.plot:
        from .plotting import potential_figure, save_figure
        save_figure(potential_figure(zs, m_vals, u_vals, veff_vals), cfg.plot)
        _note(cfg, f"figure written to {cfg.plot}")
    return 0


def cmd_identities(cfg: RunConfig) -> int:
    p = _profile_from(cfg)
    w = ex.parse(cfg.w)
    tol = DEFAULT_IDENTITY_TOL if cfg.tol is None else cfg.tol
    checks = []
    checks.append(("modification_residual",
                   grid_max_abs(modification_residual(p, cfg.ordering), p, cfg.points)))
    checks.append(("duality", grid_max_abs(duality_check(p, w), p, cfg.points)))
    pair = partner_potentials(w, p)
    from .mass import inverse_sqrt_mass
    g = inverse_sqrt_mass(p)
    gpp = ex.differentiate(ex.differentiate(g))
    difference = ex.sub(ex.mul(ex.Const(2.0), ex.mul(ex.differentiate(w), g)),
                        ex.mul(g, gpp))
    partner_expr = ex.sub(ex.sub(pair.v2, pair.v1), difference)
    checks.append(("partner_difference", grid_max_abs(partner_expr, p, cfg.points)))
    if cfg.epsilon is not None:
        model = uniform_shift_model(p, cfg.epsilon, cfg.zref)
        checks.append(("shift_identity",
                       grid_max_abs(model.shift_identity_residual(), p, cfg.points)))
    columns = ("identity", "max_abs_residual", "tolerance", "status")
    rows = [ReportRow((name, value, tol, "pass" if value <= tol else "fail"))
            for name, value in checks]
    summary = {
        "command": "identities",
        "mass": ex.to_text(p.m),
        "w": cfg.w,
        "ordering": {"label": cfg.ordering_label, "alpha": cfg.ordering.alpha,
                     "beta": cfg.ordering.beta, "gamma": cfg.ordering.gamma},
        "tolerance": tol,
        "residuals": {name: value for name, value in checks},
    }
    _emit(cfg, columns, rows, summary)
    if cfg.plot:
        from .plotting import identities_figure, save_figure
        save_figure(identities_figure([n for n, _ in checks],
                                      [v for _, v in checks], tol), cfg.plot)
        _note(cfg, f"figure written to {cfg.plot}")
    worst = max(value for _, value in checks)
    if worst > tol:
        _note(cfg, f"identity residual {worst:.3e} exceeds tolerance {tol:g}")
        return VERIFY_ERROR
    return 0


def cmd_uniform_shift(cfg: RunConfig) -> int:
    if cfg.epsilon is None:
        raise UsageError("uniform-shift requires --epsilon")
    p = _profile_from(cfg)
    model = uniform_shift_model(p, cfg.epsilon, cfg.zref)
    grid = _grid(cfg)
    tol = DEFAULT_SPECTRUM_TOL if cfg.tol is None else cfg.tol
    zs = grid.nodes()

    w0 = model.w0_on(grid)
    dw = ex.evaluate_grid(model.dw, zs)
    veff = model.effective_potential_on(grid)
    psi0 = normalize(GridFunction(grid, model.ground_state_on(grid))).values

    H = discretize(p, lambda _: veff, grid)
    spec = lowest_eigenpairs(H, cfg.levels)
    ladder = np.array([model.energy(n) for n in range(cfg.levels)])
    diffs = np.abs(spec.eigenvalues - ladder)
    deficit = abs(1.0 - abs(grid.h * float(np.sum(psi0 * spec.eigenvectors[0].values))))

    for n in range(cfg.levels):
        _note(cfg, f"level {n}: numeric {spec.eigenvalues[n]:.10f} "
                   f"analytic {ladder[n]:.10f} |diff| {diffs[n]:.3e}")
    _note(cfg, f"ground-state overlap deficit {deficit:.3e}")

    failed = bool(np.max(diffs) > tol)
    compare = None
    if cfg.compare_orderings:
        # The BenDaniel-Duke assembly of the same family: dW = 0 forces its W0 to
        # the same total superpotential, so its V_eff coincides and so must the
        # spectrum.  The unperturbed problem V1(W0)+e0 supplies the reference
        # ground state whose sqrt(M)-dressing reproduces the full one.
        veff_bdd = model.effective_potential_on(grid)
        spec_bdd = lowest_eigenpairs(discretize(p, lambda _: veff_bdd, grid), cfg.levels)
        cross = np.max(np.abs(spec_bdd.eigenvalues - spec.eigenvalues))
        v0_vals = model.unperturbed_potential_on(grid)
        spec_unp = lowest_eigenpairs(discretize(p, lambda _: v0_vals, grid), 1)
        sqrt_m = np.sqrt(ex.evaluate_grid(p.m, zs))
        dressed = normalize(GridFunction(grid, sqrt_m * spec_unp.eigenvectors[0].values)).values
        dressing = float(np.max(np.abs(spec.eigenvectors[0].values - dressed)))
        ground_gap = abs(float(spec_unp.eigenvalues[0]) - float(spec.eigenvalues[0]))
        compare = {
            "bdd_levels": spec_bdd.eigenvalues,
            "max_cross_difference": cross,
            "unperturbed_ground_energy": float(spec_unp.eigenvalues[0]),
            "ground_energy_gap": ground_gap,
            "sqrt_m_dressing_max_diff": dressing,
        }
        _note(cfg, f"bdd assembly max level difference {cross:.3e}")
        _note(cfg, f"sqrt(M)-dressed unperturbed ground state max diff {dressing:.3e}")
        failed = failed or cross > tol or dressing > tol or ground_gap > tol

    columns = ("z", "W0", "dW", "Veff", "psi0")
    rows = [ReportRow((zs[i], w0[i], dw[i], veff[i], psi0[i])) for i in range(grid.n)]
    summary = {
        "command": "uniform-shift",
        "mass": ex.to_text(p.m),
        "epsilon": cfg.epsilon,
        "zref": cfg.zref,
        "points": cfg.points,
        "levels": _jsonable(spec.eigenvalues),
        "analytic_ladder": _jsonable(ladder),
        "abs_differences": _jsonable(diffs),
        "overlap_deficit": deficit,
    }
    if compare is not None:
        summary["compare_orderings"] = compare
    _emit(cfg, columns, rows, summary)
    if cfg.plot:
        from .plotting import save_figure, uniform_shift_figure
        save_figure(uniform_shift_figure(zs, veff, spec.eigenvalues, psi0,
                                         spec.eigenvectors[0].values), cfg.plot)
        _note(cfg, f"figure written to {cfg.plot}")
    if failed:
        _note(cfg, f"spectrum mismatch exceeds tolerance {tol:g}")
        return VERIFY_ERROR
    return 0


def cmd_morse(cfg: RunConfig) -> int:
    p = _profile_from(cfg)
    if cfg.lam <= 0.0:
        raise UsageError(f"--lambda must be positive, got {cfg.lam}")
    grid = _grid(cfg)
    tol = DEFAULT_MORSE_TOL if cfg.tol is None else cfg.tol
    zs = grid.nodes()
    f0 = morse_f0_quadrature(p, cfg.lam, cfg.c, cfg.zref, grid)
    w_general = morse_superpotential_general(p, cfg.big_a, cfg.c, cfg.lam, cfg.zref, grid)

    closed_available = p.shape_parameter is not None and cfg.zref == 0.0
    summary = {
        "command": "morse",
        "mass": ex.to_text(p.m),
        "lambda": cfg.lam,
        "A": cfg.big_a,
        "C": cfg.c,
        "zref": cfg.zref,
        "points": cfg.points,
        "closed_form_available": closed_available,
    }
    if closed_available:
        model = morse_like_model(cfg.big_a, cfg.c, cfg.lam, p.shape_parameter, cfg.domain)
        w_expr = morse_superpotential_expression(model)
        w_closed = ex.evaluate_grid(w_expr, zs)
        dw_vals = ex.evaluate_grid(ex.differentiate(ex.pow_(p.m, -0.5)), zs)
        f0_closed = w_closed - cfg.big_a - dw_vals
        f0_diff = np.abs(f0.values - f0_closed)
        w_diff = np.abs(w_general.values - w_closed)
        worst = float(max(np.max(f0_diff), np.max(w_diff)))
        columns = ("z", "f0_quad", "f0_closed", "f0_diff", "w_quad", "w_closed", "w_diff")
        rows = [ReportRow((zs[i], f0.values[i], f0_closed[i], f0_diff[i],
                           w_general.values[i], w_closed[i], w_diff[i]))
                for i in range(grid.n)]
        summary["max_f0_difference"] = float(np.max(f0_diff))
        summary["max_w_difference"] = float(np.max(w_diff))
        _note(cfg, f"max |f0 quad - closed| = {np.max(f0_diff):.3e}, "
                   f"max |W quad - closed| = {np.max(w_diff):.3e}")
    else:
        worst = 0.0
        f0_closed = w_closed = None
        columns = ("z", "f0_quad", "w_quad")
        rows = [ReportRow((zs[i], f0.values[i], w_general.values[i]))
                for i in range(grid.n)]
        _note(cfg, "no closed form for this mass/zref; quadrature route only")
    _emit(cfg, columns, rows, summary)
    if cfg.plot:
        from .plotting import morse_figure, save_figure
        save_figure(morse_figure(zs, f0.values, f0_closed, w_general.values, w_closed),
                    cfg.plot)
        _note(cfg, f"figure written to {cfg.plot}")
    if closed_available and worst > tol:
        _note(cfg, f"quadrature/closed-form difference {worst:.3e} exceeds {tol:g}")
        return VERIFY_ERROR
    return 0


def cmd_spectrum(cfg: RunConfig) -> int:
    p = _profile_from(cfg)
    grid = _grid(cfg)
    if cfg.levels > cfg.points:
        raise UsageError(f"--levels {cfg.levels} exceeds the matrix size {cfg.points}")
    v0 = ex.parse(cfg.v0)
    u = modification_term(p, cfg.ordering)
    veff_expr = ex.add(v0, u)
    zs = grid.nodes()
    veff = ex.evaluate_grid(veff_expr, zs)
    H = discretize(p, lambda _: veff, grid)
    spec = lowest_eigenpairs(H, cfg.levels)
    for n in range(cfg.levels):
        _note(cfg, f"level {n}: {spec.eigenvalues[n]:.12f}")
    if cfg.eigenvectors:
        columns = ["z"] + [f"psi{n}" for n in range(cfg.levels)]
        rows = [ReportRow(tuple([zs[i]] + [spec.eigenvectors[n].values[i]
                                           for n in range(cfg.levels)]))
                for i in range(grid.n)]
    else:
        columns = ["level", "energy"]
        rows = [ReportRow((n, float(spec.eigenvalues[n]))) for n in range(cfg.levels)]
    summary = {
        "command": "spectrum",
        "mass": ex.to_text(p.m),
        "v0": cfg.v0,
        "ordering": {"label": cfg.ordering_label, "alpha": cfg.ordering.alpha,
                     "beta": cfg.ordering.beta, "gamma": cfg.ordering.gamma},
        "domain": list(cfg.domain),
        "points": cfg.points,
        "levels": _jsonable(spec.eigenvalues),
    }
    _emit(cfg, columns, rows, summary)
    if cfg.plot:
        from .plotting import save_figure, spectrum_figure
        vectors = [v.values for v in spec.eigenvectors] if cfg.eigenvectors else None
        save_figure(spectrum_figure(zs, veff, spec.eigenvalues, vectors), cfg.plot)
        _note(cfg, f"figure written to {cfg.plot}")
    return 0


_COMMANDS = {
    "potential": cmd_potential,
    "identities": cmd_identities,
    "uniform-shift": cmd_uniform_shift,
    "morse": cmd_morse,
    "spectrum": cmd_spectrum,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge(args)
        return _COMMANDS[args.command](cfg)
    except (UsageError, ParseError, NonPositiveMassError, DomainError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except ConvergenceFailure as err:
        print(f"error: {err}", file=sys.stderr)
        return VERIFY_ERROR


if __name__ == "__main__":
    sys.exit(main())
