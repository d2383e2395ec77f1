"""Figure builders for the CLI report path.  Files only -- no interactive windows."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "save_figure", "potential_figure", "identities_figure",
    "uniform_shift_figure", "morse_figure", "spectrum_figure",
]

_LINE = dict(linewidth=1.4)


def save_figure(fig, path: str, dpi: int = 150):
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)


def potential_figure(zs, m, u, veff):
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax1.plot(zs, m, color="tab:blue", label="M(z)", **_LINE)
    ax1.set_ylabel("M")
    ax1.legend(loc="best")
    ax1.grid(alpha=0.3)
    ax2.plot(zs, u, color="tab:orange", label="U (ordering term)", **_LINE)
    ax2.plot(zs, veff, color="tab:green", label="V_eff", **_LINE)
    ax2.set_xlabel("z")
    ax2.set_ylabel("potential")
    ax2.legend(loc="best")
    ax2.grid(alpha=0.3)
    fig.tight_layout()
    return fig


def identities_figure(names, values, tol):
    fig, ax = plt.subplots(figsize=(6, 4))
    floor = 1e-18
    ax.bar(range(len(names)), [max(v, floor) for v in values], color="tab:blue")
    ax.axhline(tol, color="tab:red", linestyle="--", label=f"tolerance {tol:g}")
    ax.set_yscale("log")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=20, ha="right")
    ax.set_ylabel("max |residual|")
    ax.legend(loc="best")
    ax.grid(alpha=0.3, axis="y")
    fig.tight_layout()
    return fig


def uniform_shift_figure(zs, veff, levels, psi_analytic, psi_numeric):
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax1.plot(zs, veff, color="tab:green", label="V_eff", **_LINE)
    for e in levels:
        ax1.axhline(e, color="gray", linewidth=0.8, alpha=0.7)
    ax1.set_ylim(min(float(np.min(veff)), 0.0), float(levels[-1]) * 1.6 + 1.0)
    ax1.set_ylabel("energy")
    ax1.legend(loc="best")
    ax1.grid(alpha=0.3)
    ax2.plot(zs, psi_analytic, color="tab:blue", label="ground state (closed form)", **_LINE)
    ax2.plot(zs, psi_numeric, color="tab:red", linestyle="--",
             label="ground state (grid)", **_LINE)
    ax2.set_xlabel("z")
    ax2.set_ylabel("psi")
    ax2.legend(loc="best")
    ax2.grid(alpha=0.3)
    fig.tight_layout()
    return fig


def morse_figure(zs, f0_quad, f0_closed, w_general, w_closed):
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax1.plot(zs, f0_quad, color="tab:blue", label="f0 (quadrature)", **_LINE)
    if f0_closed is not None:
        ax1.plot(zs, f0_closed, color="tab:orange", linestyle="--",
                 label="f0 (closed form)", **_LINE)
    ax1.set_yscale("symlog", linthresh=1.0)
    ax1.set_ylabel("f0")
    ax1.legend(loc="best")
    ax1.grid(alpha=0.3)
    ax2.plot(zs, w_general, color="tab:green", label="W (quadrature route)", **_LINE)
    if w_closed is not None:
        ax2.plot(zs, w_closed, color="tab:red", linestyle="--",
                 label="W (closed form)", **_LINE)
    ax2.set_yscale("symlog", linthresh=1.0)
    ax2.set_xlabel("z")
    ax2.set_ylabel("W")
    ax2.legend(loc="best")
    ax2.grid(alpha=0.3)
    fig.tight_layout()
    return fig


def spectrum_figure(zs, veff, levels, vectors=None):
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(zs, veff, color="tab:green", label="V_eff", **_LINE)
    for e in levels:
        ax.axhline(e, color="gray", linewidth=0.8, alpha=0.7)
    if vectors is not None:
        span = max(float(levels[-1]) - float(levels[0]), 1.0)
        scale = 0.35 * span / max(float(np.max(np.abs(v))) for v in vectors)
        for e, v in zip(levels, vectors):
            ax.plot(zs, e + scale * v, linewidth=0.9)
    ax.set_ylim(min(float(np.min(veff)), float(levels[0]) - 1.0),
                float(levels[-1]) * 1.4 + 1.0)
    ax.set_xlabel("z")
    ax.set_ylabel("energy")
    ax.legend(loc="best")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return fig
