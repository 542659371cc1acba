"""One-shot check battery for a given (p, q).

Covers the zero-curvature locus and the projection correspondence along with
the supporting identities, each with its own tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import invariants as inv
from .curve_model import TorusCurveSpec, jet_at
from .projection_analysis import (
    axis_containment_det,
    simultaneous_system_solve,
    tangent_space_dim,
    verify_proposition,
)
from .vanishing_locus import (
    b_grid_with_critical,
    check_torsion_range,
    critical_radius,
    scan_over_b,
    zero_curvature_points,
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def check_critical_radius(p, q) -> Check:
    crit = critical_radius(p, q)
    ok = crit.fraction * (p * p + q * q) == p * p and 0 < crit.float_value < 1
    return Check("critical radius", ok, f"b* = {crit} = {crit.float_value:.15g}")


def check_zero_points(p, q) -> Check:
    crit = critical_radius(p, q)
    zs = zero_curvature_points(TorusCurveSpec(p, q, crit.fraction))
    pos = zs.positions
    radial = np.hypot(pos[:, 0], pos[:, 1])
    z_err = float(np.abs(pos[:, 2]).max(initial=0.0))
    r_err = float(np.abs(radial - (1 - crit.float_value)).max(initial=0.0))
    kmax = max(zs.kappas, default=0.0)
    ok = len(zs.points) == q and zs.is_critical and kmax < 1e-9 and z_err < 1e-12 and r_err < 1e-12
    return Check(
        "zero-curvature points",
        ok,
        f"{len(zs.points)} points (expected {q}), max kappa {kmax:.2e}, max |z| {z_err:.1e}, radius error {r_err:.1e}",
    )


def check_uniqueness(p, q, n_b=401, t_resolution=4096, floor=1e-4) -> Check:
    grid = b_grid_with_critical(p, q, 0.01, 0.99, n_b)
    result = scan_over_b(p, q, grid, t_resolution)
    crit = critical_radius(p, q).fraction
    at_crit = [i for i, b in enumerate(grid) if b == crit]
    others = np.array([k for i, k in enumerate(result.min_kappa) if i not in at_crit])
    zero_hits = [grid[i] for i, k in enumerate(result.min_kappa) if k < 1e-9]
    ok = zero_hits == [crit] and bool(np.all(others > floor))
    return Check(
        "uniqueness in b",
        ok,
        f"{len(grid)} b-values, min kappa < 1e-9 at {[str(b) for b in zero_hits]}, "
        f"smallest elsewhere {others.min():.3e} (floor {floor:g})",
    )


def check_decomposition(p, q, n=2000, seed=0) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for b in rng.uniform(0.05, 0.95, 5):
        spec = TorusCurveSpec(p, q, float(b))
        a = inv.sample_arrays(spec, rng.uniform(0, 2 * math.pi, n // 5))
        err = np.abs(a["kappa"] ** 2 - a["kappa_g"] ** 2 - a["kappa_n"] ** 2) / np.maximum(1.0, a["kappa"] ** 2)
        worst = max(worst, float(err.max()))
    return Check("kappa^2 = kappa_g^2 + kappa_n^2", worst <= 1e-9, f"max scaled residual {worst:.2e}")


def check_closed_forms(p, q, n=2000, seed=1) -> Check:
    rng = np.random.default_rng(seed)
    worst_g = worst_n = 0.0
    for b in rng.uniform(0.05, 0.95, 5):
        spec = TorusCurveSpec(p, q, float(b))
        d = inv.closed_form_diagnostics(spec, rng.uniform(0, 2 * math.pi, n // 5))
        worst_g = max(worst_g, float((np.abs(d["kappa_g"] - d["kappa_g_closed"]) / np.maximum(1.0, np.abs(d["kappa_g"]))).max()))
        worst_n = max(worst_n, float((np.abs(d["kappa_n"] - d["kappa_n_closed"]) / np.maximum(1.0, np.abs(d["kappa_n"]))).max()))
    ok = worst_g <= 1e-10 and worst_n <= 1e-10
    return Check("closed forms vs definitions", ok, f"kappa_g {worst_g:.1e}, kappa_n {worst_n:.1e}")


def check_proposition(p, q, t_resolution=4096) -> Check:
    crit = critical_radius(p, q)
    bs = [crit.fraction, crit.float_value / 2, (1 + crit.float_value) / 2]
    parts, ok = [], True
    for b in bs:
        rep = verify_proposition(TorusCurveSpec(p, q, b), t_resolution)
        expected = q if b == crit.fraction else 0
        good = rep.holds and len(rep.zero_curvature) == expected
        ok &= good
        label = str(b) if not isinstance(b, float) else f"{b:.6g}"
        parts.append(f"b={label}: {len(rep.zero_curvature)}/{len(rep.higher_inflections)}")
    return Check("zero curvature <=> order >= 2 inflection", ok, ", ".join(parts))


def check_system(p, q) -> Check:
    crit = critical_radius(p, q).float_value
    sols = simultaneous_system_solve(p, q)
    ok = len(sols) == 1 and abs(sols[0].b - crit) < 1e-9 and abs(sols[0].cos_qt + 1) < 1e-9
    desc = ", ".join(f"(b={s.b:.12g}, cos qt={s.cos_qt:.12g})" for s in sols) or "none"
    return Check("two-determinant system", ok, f"{len(sols)} solution(s): {desc}")


def check_case_analysis(p, q) -> Check:
    crit = critical_radius(p, q)
    spec = TorusCurveSpec(p, q, crit.fraction)
    ok, worst_det = True, 0.0
    for t in zero_curvature_points(spec).points:
        jet = jet_at(spec, t, 3)
        d2 = tangent_space_dim(jet.derivatives[1:3], t=t).dim
        d3 = tangent_space_dim(jet.derivatives[1:4], t=t).dim
        det = abs(float(axis_containment_det(jet)))
        worst_det = max(worst_det, det)
        ok &= d2 == 1 and d3 == 2 and det < 1e-9
    return Check("rank cases at zero points", ok, f"dim T2 = 1, dim T3 = 2 expected; max axis det {worst_det:.1e}")


def check_torsion(p, q, n_b=100, t_resolution=4096) -> Check:
    finding = check_torsion_range(p, q, n_b, t_resolution)
    if finding.empty:
        return Check("torsion range", True, f"structured finding: {finding.note}")
    tau = finding.scan.min_abs_tau
    return Check(
        "torsion range",
        bool(finding.nonvanishing),
        f"({finding.interval.lower}, {finding.interval.upper}): min |tau| over {n_b} b-values = {np.nanmin(tau):.3e}",
    )


def run_checks(p: int, q: int, t_resolution: int = 4096) -> list[Check]:
    return [
        check_critical_radius(p, q),
        check_zero_points(p, q),
        check_uniqueness(p, q, t_resolution=t_resolution),
        check_decomposition(p, q),
        check_closed_forms(p, q),
        check_proposition(p, q, t_resolution),
        check_system(p, q),
        check_case_analysis(p, q),
        check_torsion(p, q, t_resolution=t_resolution),
    ]
