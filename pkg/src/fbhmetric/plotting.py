"""Figure rendering for the CLI report paths.

Every plot function writes a file next to the delimited output and returns
the path; the Agg backend keeps rendering headless.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "plot_branch_discriminant",
    "plot_root_equation",
    "plot_geodesic_trace",
    "plot_seam_sweep",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _new_axes(width: float = 6.4):
    return plt.subplots(figsize=(width, width * _GOLDEN))


def _finish(fig, path) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def plot_branch_discriminant(b, ts, values, beta, path) -> str:
    fig, ax = _new_axes()
    ax.plot(ts, values, lw=1.5)
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.axvline(beta, color="tab:red", lw=0.8, ls="--", label=f"branch point {beta:.4f}")
    ax.set_xlabel("t")
    ax.set_ylabel("g(t)")
    ax.set_title(f"branch discriminant, b = {b}")
    ax.legend()
    return _finish(fig, path)


def plot_root_equation(b, ts, values, path) -> str:
    fig, ax = _new_axes()
    ax.plot(ts, values, lw=1.5)
    ax.axhline(2.0 * b * b, color="0.6", lw=0.8, label="minimum 2b^2")
    ax.set_xlabel("t")
    ax.set_ylabel("h(t)")
    ax.set_yscale("log")
    ax.set_title(f"root-equation left-hand side, b = {b}")
    ax.legend()
    return _finish(fig, path)


def plot_geodesic_trace(thetas, coords, residuals, path) -> str:
    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(6.4, 2 * 6.4 * _GOLDEN), sharex=True
    )
    coords = np.asarray(coords)
    n_plus_1 = coords.shape[1]
    for j in range(n_plus_1 - 1):
        top.plot(thetas, np.abs(coords[:, j]), lw=1.2, label=f"|z{j + 1}|")
    top.plot(thetas, np.abs(coords[:, -1]), lw=1.2, label="|w|")
    top.set_ylabel("|coordinate|")
    top.legend(ncol=min(n_plus_1, 4), fontsize=8)
    bottom.semilogy(thetas, np.maximum(np.abs(residuals), 1e-20), lw=1.2)
    bottom.set_xlabel("theta")
    bottom.set_ylabel("|rho| on the circle")
    return _finish(fig, path)


def plot_seam_sweep(rows, path) -> str:
    """rows: (b, v, K2) triples from the seam probe sweep."""
    fig, ax = _new_axes()
    rows = np.asarray(rows, dtype=float)
    for b in np.unique(rows[:, 0]):
        sel = rows[rows[:, 0] == b]
        order = np.argsort(sel[:, 1])
        ax.plot(sel[order, 1] / (4 * b * b), sel[order, 2], "o-", ms=3, lw=1.0, label=f"b = {b:g}")
    ax.axvline(1.0, color="0.6", lw=0.8)
    ax.set_xlabel("v / (4 b^2)")
    ax.set_ylabel("K^2")
    ax.set_title("closed form across the root-existence threshold")
    ax.legend(fontsize=8)
    return _finish(fig, path)
