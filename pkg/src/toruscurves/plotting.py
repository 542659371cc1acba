"""Matplotlib figures written next to the CSV/JSON reports."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .vanishing_locus import BScanResult, critical_radius  # noqa: E402

golden_mean = (math.sqrt(5) - 1.0) / 2.0
fig_width = 6.0

params = {
    "axes.labelsize": 10,
    "font.size": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.0,
    "figure.figsize": [fig_width, fig_width * golden_mean],
    "savefig.dpi": 150,
    "svg.hashsalt": "toruscurves",
}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
    plt.close(fig)


def plot_scan(result: BScanResult, path) -> None:
    """min kappa and min |tau| against b on a log scale, critical b marked."""
    b = np.array([float(x) for x in result.b_grid])
    crit = critical_radius(result.p, result.q)
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        floor = np.finfo(float).tiny
        ax.semilogy(b, np.maximum(result.min_kappa, floor), label=r"$\min_t \kappa$")
        ax.semilogy(b, result.min_abs_tau, label=r"$\min_t |\tau|$")
        ax.axvline(crit.float_value, color="0.5", ls="--", lw=0.8, label=f"b = {crit}")
        ax.set_xlabel("tube radius b")
        ax.set_title(f"({result.p},{result.q}) torus curve")
        ax.legend(frameon=False)
        _save(fig, path)


def plot_invariants(arrays: dict, title: str, path) -> None:
    """kappa, kappa_g, kappa_n and tau over one period."""
    t = arrays["t"]
    with plt.rc_context(params):
        fig, (top, bottom) = plt.subplots(2, 1, sharex=True)
        top.plot(t, arrays["kappa"], label=r"$\kappa$")
        top.plot(t, arrays["kappa_g"], label=r"$\kappa_g$")
        top.plot(t, arrays["kappa_n"], label=r"$\kappa_n$")
        top.axhline(0.0, color="0.7", lw=0.5)
        top.legend(frameon=False, ncol=3)
        bottom.plot(t, arrays["tau"], color="C3")
        bottom.set_ylabel(r"$\tau$")
        bottom.set_xlabel("t")
        top.set_title(title)
        _save(fig, path)
