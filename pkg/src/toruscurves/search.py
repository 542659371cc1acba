"""Grid scans with golden-section refinement for periodic functions of t."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .curve_model import TWO_PI

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def t_grid(n: int) -> np.ndarray:
    """Half-open grid t_i = 2 pi i / n, i = 0..n-1."""
    return TWO_PI * np.arange(n) / n


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on [a, b] to an interval of width ``tol``."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        if c >= d:  # interval collapsed below float resolution
            break
    x = 0.5 * (a + b)
    candidates = [(f(x), x), (fc, c), (fd, d)]
    fx, x = min(candidates)
    return x, fx


def periodic_local_minima(values: np.ndarray) -> np.ndarray:
    """Indices i with v[i-1] > v[i] <= v[i+1], indices taken mod len(values)."""
    v = np.asarray(values)
    left = np.roll(v, 1)
    right = np.roll(v, -1)
    return np.flatnonzero((v < left) & (v <= right))


def refine_minima(
    f: Callable[[float], float],
    grid: np.ndarray,
    values: np.ndarray,
    indices,
    tol: float = 1e-12,
) -> list[tuple[float, float]]:
    """Golden-section refinement of ``f`` around each grid index (periodic grid).

    Returns (t, f(t)) pairs with t reduced to [0, 2 pi).
    """
    n = len(grid)
    step = TWO_PI / n
    out = []
    for i in indices:
        t0 = grid[i]
        t, ft = golden_section(f, t0 - step, t0 + step, tol)
        if ft > values[i]:
            t, ft = t0, values[i]
        out.append((float(np.remainder(t, TWO_PI)), float(ft)))
    return out


def dedupe_periodic(ts, tol: float) -> list[float]:
    """Sort and merge parameter values closer than ``tol`` on the circle."""
    ts = sorted(float(np.remainder(t, TWO_PI)) for t in ts)
    out: list[float] = []
    for t in ts:
        if out and t - out[-1] < tol:
            continue
        out.append(t)
    if len(out) > 1 and out[0] + TWO_PI - out[-1] < tol:
        out.pop()
    return out


def periodic_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)
