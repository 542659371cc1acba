"""Where the curvature of a (p,q) torus curve vanishes.

Zero curvature needs the geodesic and normal curvature to vanish together.
The geodesic curvature is p sin(qt) times a positive factor, so only
t = k pi / q can qualify; the normal curvature numerator is the quadratic
b p^2 c^2 + p^2 c + b q^2 in c = cos(qt), which for c = -1 vanishes exactly at
b = p^2 / (p^2 + q^2).  The functions here carry out that argument and
certify it numerically by scanning over b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import invariants as inv
from .curve_model import TorusCurveSpec, TrigCurve, build_trig_curve, jet_at
from .search import golden_section, t_grid

ZERO_KAPPA = 1e-9
FLOAT_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class CriticalRadius:
    numerator: int
    denominator: int

    @property
    def float_value(self) -> float:
        return self.numerator / self.denominator

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def critical_radius(p: int, q: int) -> CriticalRadius:
    """The tube radius p^2/(p^2+q^2), in lowest terms."""
    if p == 0 or q == 0:
        raise ValueError("p and q must be nonzero")
    frac = Fraction(p * p, p * p + q * q)
    return CriticalRadius(frac.numerator, frac.denominator)


def critical_status(spec: TorusCurveSpec) -> tuple[bool, bool]:
    """(is_critical, float_matched).

    Rational b is compared exactly.  Float b within 1e-12 of the critical
    value counts as critical, with ``float_matched`` set.
    """
    crit = critical_radius(spec.p, spec.q)
    if spec.b_is_exact:
        return spec.b == crit.fraction, False
    matched = abs(spec.b_float - crit.float_value) < FLOAT_MATCH_TOL
    return matched, matched


def geodesic_zero_candidates(q: int) -> list[float]:
    """t = k pi / q for k = 0..2q, both endpoints of [0, 2 pi] included."""
    return [k * math.pi / q for k in range(2 * q + 1)]


@dataclass(frozen=True)
class QuadraticRoots:
    """Real roots in c = cos(qt) of b p^2 c^2 + p^2 c + b q^2 = 0, ascending."""

    roots: tuple
    feasible: tuple[bool, ...]
    discriminant: float | Fraction

    @property
    def feasible_roots(self) -> list:
        return [r for r, ok in zip(self.roots, self.feasible) if ok]


def _exact_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def normal_quadratic_roots(spec: TorusCurveSpec) -> QuadraticRoots:
    p2, q2 = spec.p**2, spec.q**2
    b = spec.b if spec.b_is_exact else spec.b_float
    a2, a1, a0 = b * p2, p2, b * q2
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return QuadraticRoots((), (), disc)
    root = _exact_sqrt(disc) if isinstance(disc, Fraction) else None
    if root is None:
        sq = math.sqrt(disc)
        # a1 > 0, so -(a1 + sq) has no cancellation; the other root from the product
        big = -(a1 + sq) / (2 * float(a2))
        roots = (big, float(a0) / (float(a2) * big))
    else:
        roots = ((-a1 - root) / (2 * a2), (-a1 + root) / (2 * a2))
    roots = tuple(sorted(roots))
    return QuadraticRoots(roots, tuple(-1 <= r <= 1 for r in roots), disc)


@dataclass(frozen=True)
class ZeroCurvatureSet:
    spec: TorusCurveSpec
    points: tuple[float, ...]
    is_critical: bool
    float_matched: bool = False
    kappas: tuple[float, ...] = ()

    @property
    def positions(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, 3))
        return build_trig_curve(self.spec)(np.array(self.points))

    @property
    def verified(self) -> bool:
        return all(k < ZERO_KAPPA for k in self.kappas)


def zero_curvature_points(spec: TorusCurveSpec) -> ZeroCurvatureSet:
    """The q points t = k pi / q, k odd, when b is critical; otherwise none.

    Each returned point is re-checked with the definitional curvature.
    """
    is_crit, matched = critical_status(spec)
    if not is_crit:
        return ZeroCurvatureSet(spec, (), False, False)
    q = spec.q
    points = tuple(k * math.pi / q for k in range(1, 2 * q, 2))
    kappas = np.atleast_1d(inv.curvature(jet_at(spec, np.array(points), 2)))
    return ZeroCurvatureSet(spec, points, True, matched, tuple(float(k) for k in kappas))


def min_curvature(curve: TrigCurve, n: int = 4096, tol: float = 1e-12) -> tuple[float, float]:
    """Global minimum of the curvature over t: dense grid, then golden section."""
    ts = t_grid(n)
    kappa = inv.curvature(jet_at(curve, ts, 2))
    i = int(np.argmin(kappa))
    step = ts[1] - ts[0]

    def f(t):
        return inv.curvature(jet_at(curve, t, 2))

    t, k = golden_section(f, ts[i] - step, ts[i] + step, tol)
    if k > kappa[i]:
        return float(ts[i]), float(kappa[i])
    return float(np.remainder(t, 2 * math.pi)), float(k)


@dataclass
class BScanResult:
    p: int
    q: int
    b_grid: list
    min_kappa: np.ndarray
    argmin_t_kappa: np.ndarray
    min_abs_tau: np.ndarray
    argmin_t_tau: np.ndarray
    t_resolution: int = 4096

    CSV_FIELDS = ("b", "min_kappa", "argmin_t_kappa", "min_abs_tau", "argmin_t_tau")

    def rows(self):
        for i, b in enumerate(self.b_grid):
            yield (float(b), self.min_kappa[i], self.argmin_t_kappa[i], self.min_abs_tau[i], self.argmin_t_tau[i])

    def closest_to_critical(self) -> int:
        crit = critical_radius(self.p, self.q).float_value
        return int(np.argmin([abs(float(b) - crit) for b in self.b_grid]))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "t_resolution": self.t_resolution,
            "critical_b": str(critical_radius(self.p, self.q)),
            "rows": [dict(zip(self.CSV_FIELDS, row)) for row in self.rows()],
        }


def _scan_one(p: int, q: int, b, t_resolution: int) -> tuple[float, float, float, float]:
    curve = build_trig_curve(TorusCurveSpec(p, q, b))
    t_min, k_min = min_curvature(curve, t_resolution)
    ts = t_grid(t_resolution)
    tau = inv.torsion(jet_at(curve, ts, 3))
    if np.isnan(tau).any():
        tau_min, tau_arg = math.nan, float(ts[np.flatnonzero(np.isnan(tau))[0]])
    else:
        j = int(np.argmin(np.abs(tau)))
        tau_min, tau_arg = float(abs(tau[j])), float(ts[j])
    return k_min, t_min, tau_min, tau_arg


def scan_over_b(p: int, q: int, b_grid: Sequence, t_resolution: int = 4096) -> BScanResult:
    """Minimum curvature and minimum |torsion| over t for each b in ``b_grid``.

    Each b is independent of the others.  Where the torsion is undefined at
    some grid t, the row carries NaN for min |tau| and that t as its argmin.
    """
    b_grid = list(b_grid)
    if not b_grid:
        raise ValueError("empty b grid")
    if t_resolution < 256:
        raise ValueError("t_resolution must be at least 256")
    rows = [_scan_one(p, q, b, t_resolution) for b in b_grid]
    cols = np.array(rows, dtype=float).T
    return BScanResult(p, q, b_grid, cols[0], cols[1], cols[2], cols[3], t_resolution)


def b_grid_with_critical(p: int, q: int, lo: float, hi: float, n: int) -> list:
    """``n - 1`` evenly spaced b-values on [lo, hi] plus the exact critical radius."""
    crit = critical_radius(p, q).fraction
    grid = [float(b) for b in np.linspace(lo, hi, n - 1)]
    grid = [b for b in grid if b != float(crit)]
    return sorted(grid + [crit], key=float)


@dataclass(frozen=True)
class TorsionRange:
    """The b-interval p^2/(p^2+q^2) < b < (q^2-p^2)/(2q^2+p^2)."""

    lower: Fraction
    upper: Fraction

    @property
    def empty(self) -> bool:
        return self.lower >= self.upper


def torsion_range(p: int, q: int) -> TorsionRange:
    return TorsionRange(Fraction(p * p, p * p + q * q), Fraction(q * q - p * p, 2 * q * q + p * p))


@dataclass
class TorsionFinding:
    p: int
    q: int
    interval: TorsionRange
    scan: BScanResult | None = None
    note: str = ""

    @property
    def empty(self) -> bool:
        return self.interval.empty

    @property
    def nonvanishing(self) -> bool | None:
        """True when every scanned b has a finite, positive min |tau|; None for an empty range."""
        if self.scan is None:
            return None
        tau = self.scan.min_abs_tau
        return bool(np.all(np.isfinite(tau)) and np.all(tau > 0))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "lower": str(self.interval.lower),
            "upper": str(self.interval.upper),
            "empty": self.empty,
            "nonvanishing": self.nonvanishing,
            "note": self.note,
        }


def check_torsion_range(p: int, q: int, n_b: int = 100, t_resolution: int = 4096) -> TorsionFinding:
    """Scan torsion over ``n_b`` b-values strictly inside the range.

    An empty range is a finding in its own right, not a failure.
    """
    interval = torsion_range(p, q)
    if interval.empty:
        note = f"range is empty: {interval.lower} >= {interval.upper}"
        return TorsionFinding(p, q, interval, None, note)
    grid = np.linspace(float(interval.lower), float(interval.upper), n_b + 2)[1:-1]
    scan = scan_over_b(p, q, list(grid), t_resolution)
    return TorsionFinding(p, q, interval, scan, f"scanned {n_b} values of b inside the range")
