"""SVG rendering of the planar projection with inflection markers."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .curve_model import TorusCurveSpec, build_trig_curve
from .report_io import fmt
from .search import t_grid

MARGIN = 0.05
MARKER_FRACTION = 0.015


def projection_svg(spec: TorusCurveSpec, resolution: int, marker_ts: Sequence[float]) -> str:
    """One closed ``<path>`` through ``resolution`` samples of beta, one ``<circle>`` per marker.

    The y axis is flipped so the picture has the usual orientation.  Output
    depends only on the arguments.
    """
    curve = build_trig_curve(spec)
    pts = curve(t_grid(resolution))[:, :2] * np.array([1.0, -1.0])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = hi - lo
    x0, y0 = lo - MARGIN * span
    width, height = span * (1 + 2 * MARGIN)
    radius = MARKER_FRACTION * math.hypot(*span)

    d = "M " + " L ".join(f"{fmt(x)} {fmt(y)}" for x, y in pts) + " Z"
    stroke = fmt(0.004 * math.hypot(*span))
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{fmt(x0)} {fmt(y0)} {fmt(width)} {fmt(height)}" width="480" height="{fmt(480 * height / width)}">',
        f"<title>({spec.p},{spec.q}) torus curve projected along the axis, b = {spec.b_label()}</title>",
        f'<path d="{d}" fill="none" stroke="black" stroke-width="{stroke}"/>',
    ]
    if len(marker_ts):
        marks = curve(np.asarray(marker_ts, dtype=float))[:, :2] * np.array([1.0, -1.0])
        for x, y in marks:
            lines.append(
                f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="{fmt(radius)}" fill="none" stroke="red" stroke-width="{stroke}"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
