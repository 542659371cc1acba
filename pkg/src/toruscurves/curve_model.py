"""(p,q) torus curves as trigonometric polynomials, with exact derivative jets.

The torus has core radius 1 and tube radius ``b``.  A (p,q) curve on it is

    alpha(t) = ((1 + b cos qt) cos pt, (1 + b cos qt) sin pt, b sin qt)

which is rewritten as a trigonometric polynomial with integer frequencies so
that derivatives of any order are exact.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

TWO_PI = 2.0 * math.pi
MAX_JET_ORDER = 16

Real = Union[float, Fraction]


class SpecError(ValueError):
    """Raised for an invalid (p, q, b) triple."""


def parse_b(text: str | Real) -> Real:
    """Parse a tube radius given as ``"num/den"`` or as a decimal.

    Rational strings are kept exact (``Fraction``); decimals become floats.
    """
    if isinstance(text, (Fraction, int)):
        return Fraction(text)
    if isinstance(text, float):
        return text
    text = text.strip()
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"cannot parse tube radius {text!r}") from exc


@dataclass(frozen=True)
class TorusCurveSpec:
    """A (p,q) torus curve on the torus with core radius 1 and tube radius b.

    Negative windings are folded into ``p, q > 0``; the product of their
    signs is kept in ``orientation`` (all invariants used here depend on
    p**2 and q**2 only, up to the sign of torsion and geodesic curvature).
    """

    p: int
    q: int
    b: Real
    orientation: int = field(default=1, compare=False)

    def __post_init__(self):
        p, q = self.p, self.q
        if int(p) != p or int(q) != q:
            raise SpecError("p and q must be integers")
        if p == 0 or q == 0:
            raise SpecError("p and q must be nonzero")
        sign = (1 if p > 0 else -1) * (1 if q > 0 else -1)
        object.__setattr__(self, "p", abs(int(p)))
        object.__setattr__(self, "q", abs(int(q)))
        object.__setattr__(self, "orientation", self.orientation * sign)
        b = self.b
        if isinstance(b, int):
            b = Fraction(b)
            object.__setattr__(self, "b", b)
        if not 0 < b < 1 or (isinstance(b, float) and not math.isfinite(b)):
            raise SpecError(f"tube radius must satisfy 0 < b < 1, got {b}")

    @classmethod
    def from_strings(cls, p, q, b) -> "TorusCurveSpec":
        return cls(int(p), int(q), parse_b(b))

    @property
    def b_float(self) -> float:
        return float(self.b)

    @property
    def b_is_exact(self) -> bool:
        return isinstance(self.b, Fraction)

    @property
    def coprime(self) -> bool:
        return math.gcd(self.p, self.q) == 1

    def with_b(self, b: Real) -> "TorusCurveSpec":
        return TorusCurveSpec(self.p, self.q, b)

    def b_label(self) -> str:
        if isinstance(self.b, Fraction):
            return f"{self.b.numerator}/{self.b.denominator}"
        return repr(self.b)

    def position(self, t):
        """Direct substitution into the product form of alpha(t)."""
        t = np.asarray(t, dtype=float)
        b, p, q = self.b_float, self.p, self.q
        r = 1.0 + b * np.cos(q * t)
        return np.stack([r * np.cos(p * t), r * np.sin(p * t), b * np.sin(q * t)], axis=-1)

    def squared_speed(self, t):
        t = np.asarray(t, dtype=float)
        b, p, q = self.b_float, self.p, self.q
        return p**2 * (1.0 + b * np.cos(q * t)) ** 2 + q**2 * b**2


class Term(NamedTuple):
    """``amplitude * cos(frequency * t - phase)`` with phase 0 (cos) or pi/2 (sin)."""

    amplitude: float
    frequency: int
    phase: float = 0.0

    @property
    def quarter_turns(self) -> int:
        return int(round(self.phase / (math.pi / 2))) % 4


# d^k/dt^k cos(w t) = w^k * _CYCLE[k % 4](w t)
_CYCLE = (np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x), np.sin)


@dataclass(frozen=True)
class TrigCurve:
    """A curve whose coordinates are finite sums of sinusoidal terms."""

    coords: tuple[tuple[Term, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.coords)

    def derivative(self, t, k: int = 0) -> np.ndarray:
        """k-th derivative at ``t`` (scalar or array); trailing axis is the coordinate."""
        t = np.remainder(np.asarray(t, dtype=float), TWO_PI)
        out = np.zeros(t.shape + (self.dim,))
        for axis, terms in enumerate(self.coords):
            acc = np.zeros(t.shape)
            for term in terms:
                func = _CYCLE[(k - term.quarter_turns) % 4]
                acc += term.amplitude * float(term.frequency) ** k * func(term.frequency * t)
            out[..., axis] = acc
        return out

    def __call__(self, t) -> np.ndarray:
        return self.derivative(t, 0)


@dataclass(frozen=True)
class Jet:
    """Position and the first ``order`` derivatives at parameter ``t``.

    ``derivatives`` has shape ``(order + 1, 3)``, or ``(order + 1, N, 3)``
    when ``t`` is an array of N parameter values.
    """

    t: float | np.ndarray
    order: int
    derivatives: np.ndarray

    def __getitem__(self, k: int) -> np.ndarray:
        return self.derivatives[k]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "t": _plain(self.t),
            "derivatives": _plain(self.derivatives),
        }


@dataclass(frozen=True)
class SurfaceFrame:
    """Unit coordinate directions and outward normal of the torus along the curve."""

    x_u: np.ndarray
    x_v: np.ndarray
    n: np.ndarray

    def to_dict(self) -> dict:
        return {"n": _plain(self.n), "x_u": _plain(self.x_u), "x_v": _plain(self.x_v)}


@dataclass(frozen=True)
class FormMatrix:
    """Second fundamental form ``[[e, f], [f, g]]`` in the (u, v) coordinates."""

    e: float | np.ndarray
    f: float | np.ndarray
    g: float | np.ndarray

    def as_array(self) -> np.ndarray:
        return np.array([[self.e, self.f], [self.f, self.g]])

    def evaluate(self, du, dv):
        """II applied to the coordinate velocity (du, dv) twice."""
        return self.e * du * du + 2 * self.f * du * dv + self.g * dv * dv


def build_trig_curve(spec: TorusCurveSpec) -> TrigCurve:
    """Expand alpha(t) into integer-frequency sinusoids.

    Uses (1 + b cos qt) cos pt = cos pt + b/2 cos((p+q)t) + b/2 cos((p-q)t)
    and the analogous identity for the sine.
    """
    p, q, half_b = spec.p, spec.q, spec.b_float / 2.0
    sin = math.pi / 2
    x = (Term(1.0, p), Term(half_b, p + q), Term(half_b, p - q))
    y = (Term(1.0, p, sin), Term(half_b, p + q, sin), Term(half_b, p - q, sin))
    z = (Term(spec.b_float, q, sin),)
    return TrigCurve((x, y, z))


def jet_at(curve: TrigCurve | TorusCurveSpec, t, m: int) -> Jet:
    """Exact derivatives 0..m of ``curve`` at ``t``."""
    if isinstance(curve, TorusCurveSpec):
        curve = build_trig_curve(curve)
    m = int(m)
    if m < 1:
        raise ValueError("jet order must be at least 1")
    if m > MAX_JET_ORDER:
        raise ValueError(f"jet order {m} exceeds the supported maximum {MAX_JET_ORDER}")
    derivs = np.stack([curve.derivative(t, k) for k in range(m + 1)])
    return Jet(t=t, order=m, derivatives=derivs)


def surface_frame_at(spec: TorusCurveSpec, t) -> SurfaceFrame:
    """Normalized partials of the torus parametrization at (u, v) = (pt, qt)."""
    t = np.asarray(t, dtype=float)
    u, v = spec.p * t, spec.q * t
    cu, su, cv, sv = np.cos(u), np.sin(u), np.cos(v), np.sin(v)
    zero = np.zeros_like(u)
    x_u = np.stack([-su, cu, zero], axis=-1)
    x_v = np.stack([-sv * cu, -sv * su, cv], axis=-1)
    n = np.stack([cu * cv, su * cv, sv], axis=-1)
    return SurfaceFrame(x_u=x_u, x_v=x_v, n=n)


def second_fundamental_form_at(spec: TorusCurveSpec, t) -> FormMatrix:
    """II along the curve, taken with respect to the inward normal ``-n``.

    With that orientation both diagonal entries are positive on the outer
    rim: e = (1 + b cos qt) cos qt, f = 0, g = b.
    """
    t = np.asarray(t, dtype=float)
    b = spec.b_float
    c = np.cos(spec.q * t)
    e = (1.0 + b * c) * c
    return FormMatrix(e=e, f=np.zeros_like(e), g=np.full_like(e, b))


def check_spec(spec: TorusCurveSpec) -> TorusCurveSpec:
    if not spec.coprime:
        warnings.warn(
            f"(p, q) = ({spec.p}, {spec.q}) is not coprime; the curve is traced "
            f"{math.gcd(spec.p, spec.q)} times",
            stacklevel=2,
        )
    return spec


def _plain(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    return value
