"""Planar projection along the torus axis and higher-order inflections.

The projection beta = pi(alpha) drops the z coordinate.  Inflection order is
read off the rank profile of the m-tangent spaces (spans of the first m
derivatives), computed from singular values with a relative cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
from scipy.optimize import brentq

from . import invariants as inv
from .curve_model import MAX_JET_ORDER, Jet, TorusCurveSpec, TrigCurve, build_trig_curve, jet_at
from .search import dedupe_periodic, periodic_distance, periodic_local_minima, refine_minima, t_grid
from .vanishing_locus import ZERO_KAPPA

RANK_TOL = 1e-8
MAX_INFLECTION_ORDER = MAX_JET_ORDER - 2


@dataclass(frozen=True)
class ProjectedJet:
    t: float | np.ndarray
    order: int
    derivatives: np.ndarray

    def __getitem__(self, k: int) -> np.ndarray:
        return self.derivatives[k]


def project_jet(jet: Jet) -> ProjectedJet:
    """Drop the z component of every derivative (projection along (0, 0, 1))."""
    return ProjectedJet(jet.t, jet.order, np.array(jet.derivatives[..., :2]))


@dataclass(frozen=True)
class RankReport:
    t: float
    m: int
    dim: int
    singular_values: tuple[float, ...]
    tolerance_used: float

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "m": self.m,
            "singular_values": list(self.singular_values),
            "t": self.t,
            "tolerance_used": self.tolerance_used,
        }


def tangent_space_dim(derivatives, tolerance: float = RANK_TOL, t: float = math.nan) -> RankReport:
    """Dimension of the span of the given derivative vectors (rows).

    Singular values below ``tolerance * sigma_max`` count as zero.
    """
    rows = np.atleast_2d(np.asarray(derivatives, dtype=float))
    m = rows.shape[0]
    sv = np.linalg.svd(rows, compute_uv=False)
    if sv[0] == 0.0:
        raise ValueError("all derivative vectors are zero; the curve is not regular here")
    dim = int(np.count_nonzero(sv > tolerance * sv[0]))
    padded = tuple(float(s) for s in sv) + (0.0,) * (m - len(sv))
    return RankReport(float(t), m, dim, padded, tolerance)


@dataclass(frozen=True)
class InflectionReport:
    """Inflection order at t; ``order`` is None when every checked rank was 1."""

    t: float
    order: int | None
    max_checked: int
    reports: tuple[RankReport, ...] = field(default=(), repr=False)

    @property
    def lower_bound(self) -> int:
        return self.order if self.order is not None else self.max_checked + 1

    def at_least(self, k: int) -> bool:
        return self.lower_bound >= k

    def label(self) -> str:
        return str(self.order) if self.order is not None else f">= {self.lower_bound}"

    def to_dict(self) -> dict:
        return {
            "max_checked": self.max_checked,
            "order": self.order,
            "ranks": [r.to_dict() for r in self.reports],
            "t": self.t,
        }


PlanarSource = Union[TorusCurveSpec, TrigCurve, Callable[[float, int], np.ndarray]]


def planar_derivatives(curve: PlanarSource, t: float, m: int) -> np.ndarray:
    """Derivatives 0..m of the planar curve at t, shape (m + 1, 2).

    A torus spec or 3D TrigCurve is projected along the axis; a 2D TrigCurve
    is used as is; a callable ``f(t, m)`` must return the array directly.
    """
    if isinstance(curve, TorusCurveSpec):
        curve = build_trig_curve(curve)
    if isinstance(curve, TrigCurve):
        jet = jet_at(curve, t, m)
        return project_jet(jet).derivatives if curve.dim == 3 else jet.derivatives
    return np.asarray(curve(t, m), dtype=float)


def inflection_order(curve: PlanarSource, t: float, max_order: int = 4, tolerance: float = RANK_TOL) -> InflectionReport:
    """Largest k with dim T_m = 1 for m <= k+1 and dim T_{k+2} >= 2.

    Order 0 is an ordinary point.  Ranks are checked for m = 2 .. max_order+2.
    """
    if not 0 <= max_order <= MAX_INFLECTION_ORDER:
        raise ValueError(f"max_order must lie in [0, {MAX_INFLECTION_ORDER}]")
    derivs = planar_derivatives(curve, t, max_order + 2)
    reports = []
    for m in range(2, max_order + 3):
        rep = tangent_space_dim(derivs[1 : m + 1], tolerance, t)
        reports.append(rep)
        if rep.dim >= 2:
            return InflectionReport(float(t), m - 2, max_order, tuple(reports))
    return InflectionReport(float(t), None, max_order, tuple(reports))


def axis_containment_det(jet: Jet):
    """det of the rows (0, 0, 1), a', a'''.

    Zero means (0, 0, 1) lies in span{a', a'''} when those two are independent.
    """
    d1, d3 = jet[1], jet[3]
    return d1[..., 0] * d3[..., 1] - d1[..., 1] * d3[..., 0]


def planar_inflection_det(jet: Jet):
    """det(beta', beta'') / |beta'|**3, the signed curvature of the projection."""
    d1, d2 = jet[1][..., :2], jet[2][..., :2]
    det = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
    return det / np.linalg.norm(d1, axis=-1) ** 3


def space_det(jet: Jet):
    """det(a', a'', a''') / |a'|**6."""
    d1 = jet[1]
    det = np.einsum("...i,...i->...", d1, np.cross(jet[2], jet[3]))
    return det / np.einsum("...i,...i->...", d1, d1) ** 3


def higher_inflection_measure(jet: Jet):
    """Vanishes exactly where beta' is parallel to both beta'' and beta'''.

    Near such a point it behaves like |t - t0|, so golden section resolves
    the zero to near machine precision.
    """
    d1, d2, d3 = (jet[k][..., :2] for k in (1, 2, 3))
    speed = np.linalg.norm(d1, axis=-1)
    a = (d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]) / speed**3
    c = (d1[..., 0] * d3[..., 1] - d1[..., 1] * d3[..., 0]) / speed**4
    return np.hypot(a, c)


# -- the two-determinant system in (b, cos qt) ------------------------------


def _system(p: int, q: int, b: float, c, branch: int):
    """Both normalized determinants at tube radius b and cos(qt) = c.

    They depend on t only through qt (rotation about the axis preserves
    both), so t = branch * arccos(c) / q represents the given c.
    """
    c = np.clip(np.asarray(c, dtype=float), -1.0, 1.0)
    t = branch * np.arccos(c) / q
    jet = jet_at(TorusCurveSpec(p, q, float(b)), t, 3)
    return planar_inflection_det(jet), space_det(jet)


@dataclass(frozen=True)
class SystemSolution:
    b: float
    cos_qt: float
    residual: float
    method: str


def _newton(p, q, x0, branch, b_range, c_range, tol=1e-13, max_iter=60):
    x = np.array(x0, dtype=float)
    lo = np.array([b_range[0], c_range[0]])
    hi = np.array([b_range[1], c_range[1]])
    h = 1e-7

    def F(v):
        return np.array(_system(p, q, v[0], v[1], branch), dtype=float)

    fx = F(x)
    for _ in range(max_iter):
        if np.max(np.abs(fx)) < tol:
            return x, float(np.max(np.abs(fx)))
        J = np.empty((2, 2))
        for k in range(2):
            step = np.zeros(2)
            # one-sided difference against the range boundary
            if x[k] + h > hi[k]:
                step[k] = -h
            else:
                step[k] = h
            J[:, k] = (F(x + step) - fx) / step[k]
        if not np.all(np.isfinite(J)) or abs(np.linalg.det(J)) < 1e-12 * max(1.0, np.abs(J).max() ** 2):
            return None
        dx = np.linalg.solve(J, -fx)
        x_new = np.clip(x + dx, lo, hi)
        if x_new[0] <= lo[0] or x_new[0] >= hi[0]:
            return None
        f_new = F(x_new)
        if np.max(np.abs(x_new - x)) < 1e-15:
            x, fx = x_new, f_new
            break
        x, fx = x_new, f_new
    res = float(np.max(np.abs(fx)))
    return (x, res) if res < tol * 1e3 else None


def simultaneous_system_solve(
    p: int,
    q: int,
    b_range=(0.0, 1.0),
    c_range=(-1.0, 1.0),
    n_b: int = 200,
    n_c: int = 200,
    residual_tol: float = 1e-10,
) -> list[SystemSolution]:
    """Common zeros (b, cos qt) of det(beta', beta'') and det(a', a'', a''').

    Interior cells where both functions change sign seed a 2D Newton
    iteration.  On the edges of the c-range the problem is reduced to a
    bracketed 1D root of the planar determinant along the edge, keeping
    the root when the space determinant also vanishes there.  Both signs of
    sin(qt) are scanned.
    """
    b_lo, b_hi = b_range
    c_lo, c_hi = c_range
    if not (0.0 <= b_lo < b_hi <= 1.0 and -1.0 <= c_lo < c_hi <= 1.0):
        raise ValueError("ranges must lie within (0, 1) x [-1, 1]")
    bs = np.linspace(b_lo, b_hi, n_b + 2)[1:-1]
    cs = np.linspace(c_lo, c_hi, n_c)
    found: list[SystemSolution] = []

    for branch in (1, -1):
        F1 = np.empty((n_b, n_c))
        F2 = np.empty((n_b, n_c))
        for i, b in enumerate(bs):
            F1[i], F2[i] = _system(p, q, b, cs, branch)

        corners = [F1[:-1, :-1], F1[1:, :-1], F1[:-1, 1:], F1[1:, 1:]]
        s1 = (np.minimum.reduce(corners) <= 0) & (np.maximum.reduce(corners) >= 0)
        corners = [F2[:-1, :-1], F2[1:, :-1], F2[:-1, 1:], F2[1:, 1:]]
        s2 = (np.minimum.reduce(corners) <= 0) & (np.maximum.reduce(corners) >= 0)
        for i, j in zip(*np.nonzero(s1 & s2)):
            seed = (0.5 * (bs[i] + bs[i + 1]), 0.5 * (cs[j] + cs[j + 1]))
            out = _newton(p, q, seed, branch, (b_lo, b_hi), (c_lo, c_hi))
            if out is not None:
                x, res = out
                found.append(SystemSolution(float(x[0]), float(x[1]), res, "newton"))

        for c_edge in (c_lo, c_hi):
            f1 = np.array([_system(p, q, b, c_edge, branch)[0] for b in bs])
            for i in np.flatnonzero(np.sign(f1[:-1]) * np.sign(f1[1:]) <= 0):
                b_root = brentq(lambda b: float(_system(p, q, b, c_edge, branch)[0]), bs[i], bs[i + 1], xtol=1e-15)
                r1, r2 = _system(p, q, b_root, c_edge, branch)
                res = float(max(abs(r1), abs(r2)))
                if res < residual_tol:
                    found.append(SystemSolution(float(b_root), float(c_edge), res, "edge-bisection"))

    found = [s for s in found if s.residual < residual_tol]
    found.sort(key=lambda s: (s.b, s.cos_qt, s.method != "edge-bisection"))
    unique: list[SystemSolution] = []
    for s in found:
        if any(abs(s.b - u.b) < 1e-7 and abs(s.cos_qt - u.cos_qt) < 1e-7 for u in unique):
            continue
        unique.append(s)
    return unique


# -- the zero-curvature / higher-inflection correspondence -------------------


def scan_zero_curvature(spec: TorusCurveSpec, n: int = 4096, threshold: float = ZERO_KAPPA) -> list[float]:
    """Parameters where the space curve has zero curvature, found numerically."""
    curve = build_trig_curve(spec)
    ts = t_grid(n)
    kappa = inv.curvature(jet_at(curve, ts, 2))
    refined = refine_minima(lambda t: inv.curvature(jet_at(curve, t, 2)), ts, kappa, periodic_local_minima(kappa))
    return dedupe_periodic([t for t, k in refined if k < threshold], 1e-9)


def higher_inflection_points(
    spec: TorusCurveSpec, n: int = 4096, max_order: int = 4, tolerance: float = RANK_TOL
) -> list[tuple[float, InflectionReport]]:
    """Inflections of order >= 2 of the projection, from the planar curve alone."""
    curve = build_trig_curve(spec)
    ts = t_grid(n)
    measure = higher_inflection_measure(jet_at(curve, ts, 3))
    refined = refine_minima(
        lambda t: float(higher_inflection_measure(jet_at(curve, t, 3))), ts, measure, periodic_local_minima(measure)
    )
    out = []
    for t in dedupe_periodic([t for t, _ in refined], 1e-9):
        report = inflection_order(curve, t, max_order, tolerance)
        if report.at_least(2):
            out.append((t, report))
    return out


@dataclass
class PropositionReport:
    spec: TorusCurveSpec
    zero_curvature: list[float]
    higher_inflections: list[float]
    orders: list[str]
    tolerance: float = 1e-9

    @property
    def pairs(self) -> list[tuple[float, float]]:
        return [(a, min(self.higher_inflections, key=lambda t: periodic_distance(a, t))) for a in self.zero_curvature if self.higher_inflections]

    def _covered(self, src, dst) -> bool:
        return all(any(periodic_distance(a, b) <= self.tolerance for b in dst) for a in src)

    @property
    def zero_implies_inflection(self) -> bool:
        return self._covered(self.zero_curvature, self.higher_inflections)

    @property
    def inflection_implies_zero(self) -> bool:
        return self._covered(self.higher_inflections, self.zero_curvature)

    @property
    def holds(self) -> bool:
        return (
            self.zero_implies_inflection
            and self.inflection_implies_zero
            and len(self.zero_curvature) == len(self.higher_inflections)
        )

    def summary(self) -> str:
        s = self.spec
        fmt = lambda ts: "{" + ", ".join(f"{t:.12f}" for t in ts) + "}"
        lines = [
            f"(p, q, b) = ({s.p}, {s.q}, {s.b_label()})",
            f"  zero curvature points      : {fmt(self.zero_curvature)}",
            f"  order >= 2 inflections of beta: {fmt(self.higher_inflections)}  orders {self.orders}",
            f"  zero curvature => inflection : {self.zero_implies_inflection}",
            f"  inflection => zero curvature : {self.inflection_implies_zero}",
            f"  proposition holds            : {self.holds}",
        ]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "b": self.spec.b_label(),
            "higher_inflections": self.higher_inflections,
            "holds": self.holds,
            "inflection_implies_zero": self.inflection_implies_zero,
            "orders": self.orders,
            "p": self.spec.p,
            "q": self.spec.q,
            "zero_curvature": self.zero_curvature,
            "zero_implies_inflection": self.zero_implies_inflection,
        }


def verify_proposition(spec: TorusCurveSpec, t_resolution: int = 4096) -> PropositionReport:
    """Compare the zero-curvature set of alpha with the order >= 2 inflections of beta.

    The two sets are computed independently: one from the curvature of the
    space curve, the other from the rank profile of the planar projection.
    """
    zeros = scan_zero_curvature(spec, t_resolution)
    inflections = higher_inflection_points(spec, t_resolution)
    return PropositionReport(
        spec,
        zeros,
        [t for t, _ in inflections],
        [r.label() for _, r in inflections],
    )
