"""Differential invariants of (p,q) torus curves and where their curvature vanishes."""

from .curve_model import (
    FormMatrix,
    Jet,
    SpecError,
    SurfaceFrame,
    Term,
    TorusCurveSpec,
    TrigCurve,
    build_trig_curve,
    jet_at,
    parse_b,
    second_fundamental_form_at,
    surface_frame_at,
)
from .invariants import (
    InvariantSample,
    curvature,
    geodesic_curvature,
    geodesic_curvature_closed_form,
    invariant_sample,
    normal_curvature,
    speed_factor,
    torsion,
)
from .vanishing_locus import (
    critical_radius,
    geodesic_zero_candidates,
    normal_quadratic_roots,
    scan_over_b,
    zero_curvature_points,
)
from .projection_analysis import (
    axis_containment_det,
    inflection_order,
    project_jet,
    simultaneous_system_solve,
    tangent_space_dim,
    verify_proposition,
)

__version__ = "0.1.0"
