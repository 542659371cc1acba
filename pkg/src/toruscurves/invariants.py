"""Frenet invariants of torus curves and their split into surface components.

Every quantity has a definitional route (cross and triple products of the
exact derivative jet) and, where one exists, a closed form in t.  The two are
kept separate so each can serve as an oracle for the other.

All functions broadcast: a jet evaluated on an array of parameters yields an
array of invariants.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .curve_model import (
    Jet,
    SurfaceFrame,
    TorusCurveSpec,
    build_trig_curve,
    jet_at,
    second_fundamental_form_at,
    surface_frame_at,
)

#: |a' x a''| below this fraction of |a'|**2 leaves the torsion undefined.
TORSION_GUARD = 1e-9


class Source(str, enum.Enum):
    DEFINITIONAL = "definitional"
    CLOSED_FORM = "closed_form"


def _norm(v):
    return np.linalg.norm(v, axis=-1)


def _triple(a, b, c):
    return np.einsum("...i,...i->...", a, np.cross(b, c))


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def speed_factor(jet: Jet):
    """dt/ds = 1/|a'|."""
    return _scalar(1.0 / _norm(jet[1]))


def curvature(jet: Jet):
    """|a' x a''| / |a'|**3, which does not depend on the parametrization."""
    if jet.order < 2:
        raise ValueError("curvature needs a jet of order >= 2")
    d1, d2 = jet[1], jet[2]
    if d1.shape[-1] == 2:
        cross = np.abs(d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0])
    else:
        cross = _norm(np.cross(d1, d2))
    return _scalar(cross / _norm(d1) ** 3)


def torsion(jet: Jet):
    """[a', a'', a'''] / |a' x a''|**2.

    Returns NaN, the undefined marker, where |a' x a''| < TORSION_GUARD * |a'|**2
    (the curvature vanishes there and the osculating plane does not exist).
    """
    if jet.order < 3:
        raise ValueError("torsion needs a jet of order >= 3")
    d1, d2, d3 = jet[1], jet[2], jet[3]
    cross = np.cross(d1, d2)
    cross_sq = np.einsum("...i,...i->...", cross, cross)
    defined = np.sqrt(cross_sq) >= TORSION_GUARD * np.einsum("...i,...i->...", d1, d1)
    with np.errstate(divide="ignore", invalid="ignore"):
        tau = np.einsum("...i,...i->...", cross, d3) / cross_sq
    return _scalar(np.where(defined, tau, np.nan))


def geodesic_curvature(jet: Jet, frame: SurfaceFrame):
    """[n, a', a''] (dt/ds)**3 with the outward normal n."""
    d1 = jet[1]
    return _scalar(_triple(frame.n, d1, jet[2]) / _norm(d1) ** 3)


def geodesic_curvature_closed_form(spec: TorusCurveSpec, t, printed: bool = False):
    """p sin(qt) (p**2 (1 + b cos qt)**2 + 2 q**2 b**2) / |a'|**3.

    ``printed=True`` drops the square on (1 + b cos qt) in the numerator.
    That variant has the same zeros but the wrong magnitude; it is kept for
    comparison only.
    """
    t = np.asarray(t, dtype=float)
    p, q, b = spec.p, spec.q, spec.b_float
    r = 1.0 + b * np.cos(q * t)
    second = p**2 * (r if printed else r**2) + 2 * q**2 * b**2
    speed_sq = p**2 * r**2 + q**2 * b**2
    return _scalar(p * np.sin(q * t) * second / speed_sq**1.5)


def normal_curvature(spec: TorusCurveSpec, t, printed: bool = False):
    """II(a', a') (dt/ds)**2 in closed form.

    Numerator ((1 + b cos qt) cos qt) p**2 + b q**2 over the squared speed.
    ``printed=True`` uses p**2 (1 + cos qt)**2 + q**2 b**2 as the denominator,
    which is not the squared speed; comparison only.
    """
    t = np.asarray(t, dtype=float)
    p, q, b = spec.p, spec.q, spec.b_float
    c = np.cos(q * t)
    num = (1.0 + b * c) * c * p**2 + b * q**2
    if printed:
        den = p**2 * (1.0 + c) ** 2 + q**2 * b**2
    else:
        den = p**2 * (1.0 + b * c) ** 2 + q**2 * b**2
    return _scalar(num / den)


def normal_curvature_definitional(jet: Jet, frame: SurfaceFrame):
    """Component of the curvature vector along the inward normal: -n . a'' / |a'|**2."""
    d1 = jet[1]
    return _scalar(-np.einsum("...i,...i->...", frame.n, jet[2]) / np.einsum("...i,...i->...", d1, d1))


def normal_curvature_from_form(spec: TorusCurveSpec, t):
    """II evaluated on the coordinate velocity (p, q), times (dt/ds)**2."""
    form = second_fundamental_form_at(spec, t)
    return _scalar(form.evaluate(spec.p, spec.q) / spec.squared_speed(t))


@dataclass(frozen=True)
class InvariantSample:
    t: float
    speed: float
    kappa: float
    tau: float  # NaN when undefined
    kappa_g: float
    kappa_n: float
    source: Source = Source.DEFINITIONAL

    @property
    def tau_defined(self) -> bool:
        return not math.isnan(self.tau)

    CSV_FIELDS = ("t", "speed", "kappa", "tau", "kappa_g", "kappa_n")

    def row(self) -> tuple:
        return tuple(getattr(self, name) for name in self.CSV_FIELDS)

    def to_dict(self) -> dict:
        d = {name: float(getattr(self, name)) for name in self.CSV_FIELDS}
        d["tau"] = None if math.isnan(self.tau) else float(self.tau)
        d["source"] = self.source.value
        return d


def sample_arrays(spec: TorusCurveSpec, t, source: Source = Source.DEFINITIONAL) -> dict:
    """Invariants on an array of parameters, as a dict of arrays keyed like the CSV."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    jet = jet_at(build_trig_curve(spec), t, 3)
    speed = np.atleast_1d(_norm(jet[1]))
    tau = np.atleast_1d(torsion(jet))
    if Source(source) is Source.CLOSED_FORM:
        kappa_g = np.atleast_1d(geodesic_curvature_closed_form(spec, t))
        kappa_n = np.atleast_1d(normal_curvature(spec, t))
        kappa = np.hypot(kappa_g, kappa_n)
    else:
        frame = surface_frame_at(spec, t)
        kappa = np.atleast_1d(curvature(jet))
        kappa_g = np.atleast_1d(geodesic_curvature(jet, frame))
        kappa_n = np.atleast_1d(normal_curvature_definitional(jet, frame))
    return {"t": t, "speed": speed, "kappa": kappa, "tau": tau, "kappa_g": kappa_g, "kappa_n": kappa_n}


def invariant_sample(spec: TorusCurveSpec, t: float, source: Source = Source.DEFINITIONAL) -> InvariantSample:
    arrays = sample_arrays(spec, [t], source)
    return InvariantSample(
        t=float(t), source=Source(source), **{k: float(v[0]) for k, v in arrays.items() if k != "t"}
    )


def invariant_samples(spec: TorusCurveSpec, ts, source: Source = Source.DEFINITIONAL) -> list[InvariantSample]:
    arrays = sample_arrays(spec, ts, source)
    keys = [k for k in arrays if k != "t"]
    return [
        InvariantSample(t=float(t), source=Source(source), **{k: float(arrays[k][i]) for k in keys})
        for i, t in enumerate(arrays["t"])
    ]


def closed_form_diagnostics(spec: TorusCurveSpec, t) -> dict:
    """Both printed and corrected closed forms next to the definitional values."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    jet = jet_at(spec, t, 2)
    frame = surface_frame_at(spec, t)
    return {
        "t": t,
        "kappa_g": geodesic_curvature(jet, frame),
        "kappa_g_closed": geodesic_curvature_closed_form(spec, t),
        "kappa_g_printed": geodesic_curvature_closed_form(spec, t, printed=True),
        "kappa_n": normal_curvature_definitional(jet, frame),
        "kappa_n_closed": normal_curvature(spec, t),
        "kappa_n_printed": normal_curvature(spec, t, printed=True),
    }
