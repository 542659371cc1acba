import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PI, random_specs
from oracles import mp_curvature, mp_frenet_torsion
from toruscurves import Jet, TorusCurveSpec, jet_at, surface_frame_at
from toruscurves import invariants as inv
from toruscurves.invariants import (
    Source,
    curvature,
    geodesic_curvature,
    geodesic_curvature_closed_form,
    invariant_sample,
    normal_curvature,
    normal_curvature_definitional,
    normal_curvature_from_form,
    speed_factor,
    torsion,
)

CRIT_23 = TorusCurveSpec(2, 3, Fraction(4, 13))
CRIT_14 = TorusCurveSpec(1, 4, Fraction(1, 17))


def circle_jet(order=3):
    t = 0.3
    derivs = [np.array([math.cos(t + k * PI / 2), math.sin(t + k * PI / 2), 0.0]) for k in range(order + 1)]
    return Jet(t, order, np.array(derivs))


# -- speed_factor --------------------------------------------------------------


def test_speed_factor_examples():
    assert speed_factor(jet_at(TorusCurveSpec(2, 3, 0.5), 0.0, 1)) == pytest.approx(1 / math.sqrt(11.25), rel=1e-14)
    assert speed_factor(jet_at(CRIT_14, 0.0, 1)) == pytest.approx(1 / math.sqrt((18 / 17) ** 2 + 16 / 17**2), rel=1e-14)


def test_speed_factor_on_inner_rim():
    spec = TorusCurveSpec(3, 5, 0.4)
    t = PI / 5  # cos(5t) = -1
    expected = 1 / math.sqrt(9 * 0.6**2 + 25 * 0.4**2)
    assert speed_factor(jet_at(spec, t, 1)) == pytest.approx(expected, rel=1e-14)


# -- curvature -----------------------------------------------------------------


def test_curvature_unit_circle():
    assert curvature(circle_jet()) == pytest.approx(1.0, abs=1e-15)


def test_curvature_vanishes_at_critical_point():
    assert curvature(jet_at(CRIT_23, PI / 3, 2)) < 1e-9


def test_curvature_off_critical():
    # on the inner rim a'' is radial with length b q^2 - p^2 (1 - b) = 2.5 and
    # orthogonal to a', whose squared length is 3.25: kappa = 2.5 / 3.25
    k = curvature(jet_at(TorusCurveSpec(2, 3, 0.5), PI / 3, 2))
    assert k == pytest.approx(10 / 13, rel=1e-14)
    assert k > 0.1


def test_curvature_against_mpmath(rng):
    for spec, t in random_specs(rng, 15):
        assert curvature(jet_at(spec, t, 2)) == pytest.approx(mp_curvature(spec.p, spec.q, spec.b_float, t), rel=1e-10)


def test_curvature_reparametrization_invariant(rng):
    for spec, t in random_specs(rng, 200):
        jet = jet_at(spec, t, 3)
        for c in (0.5, 3.0, -2.0):
            scaled = Jet(t, 3, jet.derivatives * np.array([c**k for k in range(4)])[:, None])
            assert curvature(scaled) == pytest.approx(curvature(jet), rel=1e-12, abs=1e-15)


def test_curvature_needs_second_derivative():
    with pytest.raises(ValueError):
        curvature(jet_at(CRIT_23, 0.1, 1))


# -- torsion -------------------------------------------------------------------


def test_torsion_planar_curve_is_zero():
    assert torsion(circle_jet()) == 0.0


def test_torsion_undefined_at_zero_curvature():
    assert math.isnan(torsion(jet_at(CRIT_23, PI / 3, 3)))


def test_torsion_against_frenet_oracle():
    spec = TorusCurveSpec(1, 4, 0.2)
    expected = mp_frenet_torsion(1, 4, 0.2, 0.3)
    assert expected == pytest.approx(-1.5038429637229149, rel=1e-12)
    assert torsion(jet_at(spec, 0.3, 3)) == pytest.approx(expected, rel=1e-6)


def test_torsion_against_frenet_oracle_random(rng):
    for spec, t in random_specs(rng, 4):
        assert torsion(jet_at(spec, t, 3)) == pytest.approx(
            mp_frenet_torsion(spec.p, spec.q, spec.b_float, t), rel=1e-6, abs=1e-9
        )


def test_torsion_guard_on_all_zero_points():
    for spec in (CRIT_23, CRIT_14, TorusCurveSpec(3, 5, Fraction(9, 34))):
        ts = np.array([k * PI / spec.q for k in range(1, 2 * spec.q, 2)])
        assert np.isnan(torsion(jet_at(spec, ts, 3))).all()
        off = ts + 0.01
        assert np.isfinite(torsion(jet_at(spec, off, 3))).all()


# -- geodesic curvature ----------------------------------------------------------


@pytest.mark.parametrize("p, q, b", [(2, 3, 0.5), (1, 4, 0.2), (5, 2, 0.7)])
def test_geodesic_curvature_vanishes_where_sin_qt_does(p, q, b):
    spec = TorusCurveSpec(p, q, b)
    ts = np.array([k * PI / q for k in range(2 * q + 1)])
    assert np.abs(geodesic_curvature(jet_at(spec, ts, 2), surface_frame_at(spec, ts))).max() < 1e-10


def test_geodesic_curvature_closed_form_at_point():
    spec = TorusCurveSpec(2, 3, 0.5)
    kg = geodesic_curvature(jet_at(spec, 0.7, 2), surface_frame_at(spec, 0.7))
    assert kg == pytest.approx(geodesic_curvature_closed_form(spec, 0.7), rel=1e-10)


def test_geodesic_curvature_parity():
    spec = TorusCurveSpec(2, 3, 0.5)
    ts = np.linspace(0.05, PI, 40)
    a = geodesic_curvature(jet_at(spec, ts, 2), surface_frame_at(spec, ts))
    b = geodesic_curvature(jet_at(spec, 2 * PI - ts, 2), surface_frame_at(spec, 2 * PI - ts))
    np.testing.assert_allclose(a, -b, atol=1e-12)


def test_closed_form_zero_at_candidates():
    for q in (1, 3, 4, 7):
        spec = TorusCurveSpec(2, q, 0.35)
        ts = np.array([k * PI / q for k in range(2 * q + 1)])
        assert np.abs(geodesic_curvature_closed_form(spec, ts)).max() < 1e-14


def test_closed_form_second_factor_positive(rng):
    for spec, _ in random_specs(rng, 50):
        p, q, b = spec.p, spec.q, spec.b_float
        ts = np.linspace(0, 2 * PI, 721)
        factor = p**2 * (1 + b * np.cos(q * ts)) ** 2 + 2 * q**2 * b**2
        floor = p**2 * (1 - b) ** 2 + 2 * q**2 * b**2
        assert factor.min() >= floor * (1 - 1e-14) and floor > 0


def test_printed_geodesic_form_differs_but_shares_zeros():
    spec = TorusCurveSpec(2, 3, 0.5)
    ts = np.linspace(0.1, 6.0, 50)
    ts = ts[np.abs(np.sin(3 * ts)) > 0.1]
    fixed = geodesic_curvature_closed_form(spec, ts)
    printed = geodesic_curvature_closed_form(spec, ts, printed=True)
    assert np.abs(fixed - printed).max() > 1e-2
    cands = np.array([k * PI / 3 for k in range(7)])
    assert np.abs(geodesic_curvature_closed_form(spec, cands, printed=True)).max() < 1e-14


# -- normal curvature ----------------------------------------------------------


def test_normal_curvature_at_zero():
    for p, q, b in [(2, 3, 0.5), (1, 4, 0.1), (5, 2, 0.9)]:
        expected = ((1 + b) * p**2 + b * q**2) / (p**2 * (1 + b) ** 2 + q**2 * b**2)
        assert normal_curvature(TorusCurveSpec(p, q, b), 0.0) == pytest.approx(expected, rel=1e-14)
        assert expected > 0


def test_normal_curvature_vanishes_on_inner_rim_at_critical_b():
    assert abs(normal_curvature(CRIT_23, PI / 3)) < 1e-10
    jet = jet_at(CRIT_23, PI / 3, 2)
    assert abs(normal_curvature_definitional(jet, surface_frame_at(CRIT_23, PI / 3))) < 1e-10


def test_normal_curvature_positive_where_cos_qt_positive(rng):
    for spec, _ in random_specs(rng, 50):
        ts = np.linspace(0, 2 * PI, 1001)
        ts = ts[np.cos(spec.q * ts) > 0]
        assert (normal_curvature(spec, ts) > 0).all()


def test_normal_curvature_three_routes(rng):
    for spec, t in random_specs(rng, 300):
        jet = jet_at(spec, t, 2)
        definitional = normal_curvature_definitional(jet, surface_frame_at(spec, t))
        assert normal_curvature(spec, t) == pytest.approx(definitional, rel=1e-10, abs=1e-10)
        assert normal_curvature_from_form(spec, t) == pytest.approx(definitional, rel=1e-10, abs=1e-10)


def test_printed_normal_denominator_is_not_the_speed():
    spec = TorusCurveSpec(2, 3, 0.5)
    assert abs(normal_curvature(spec, 0.4) - normal_curvature(spec, 0.4, printed=True)) > 1e-2


# -- invariant_sample ----------------------------------------------------------


def test_sample_at_critical_point_on_inner_rim():
    s = invariant_sample(CRIT_23, PI)
    assert s.kappa < 1e-9 and abs(s.kappa_g) < 1e-9 and abs(s.kappa_n) < 1e-9
    assert not s.tau_defined


def test_sample_decomposition_at_point():
    s = invariant_sample(TorusCurveSpec(2, 3, 0.5), 1.1)
    assert abs(s.kappa**2 - (s.kappa_g**2 + s.kappa_n**2)) < 1e-9 * s.kappa**2


def test_sample_zero_point_q4():
    assert invariant_sample(CRIT_14, PI / 4).kappa < 1e-9


def test_closed_form_sample_agrees():
    spec = TorusCurveSpec(3, 5, 0.3)
    a = invariant_sample(spec, 2.2)
    b = invariant_sample(spec, 2.2, Source.CLOSED_FORM)
    assert b.source is Source.CLOSED_FORM
    for name in ("kappa", "kappa_g", "kappa_n", "speed", "tau"):
        assert getattr(a, name) == pytest.approx(getattr(b, name), rel=1e-10)


def test_sample_serialization():
    s = invariant_sample(CRIT_23, PI)
    d = s.to_dict()
    assert d["tau"] is None and d["source"] == "definitional"
    assert len(s.row()) == 6 and math.isnan(s.row()[3])


def test_samples_batch_matches_single():
    spec = TorusCurveSpec(2, 5, 0.6)
    batch = inv.invariant_samples(spec, [0.2, 1.9])
    assert batch[1] == invariant_sample(spec, 1.9)


# -- properties ----------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(p=st.integers(1, 9), q=st.integers(1, 9), b=st.floats(0.05, 0.95), t=st.floats(0, 2 * math.pi))
def test_decomposition_identity(p, q, b, t):
    s = invariant_sample(TorusCurveSpec(p, q, b), t)
    assert abs(s.kappa**2 - s.kappa_g**2 - s.kappa_n**2) <= 1e-9 * max(1.0, s.kappa**2)


def test_decomposition_identity_random(rng):
    worst = 0.0
    for spec, t in random_specs(rng, 1000):
        s = invariant_sample(spec, t)
        worst = max(worst, abs(s.kappa**2 - s.kappa_g**2 - s.kappa_n**2) / max(1.0, s.kappa**2))
    assert worst <= 1e-9


def test_closed_forms_match_definitions_random(rng):
    for spec, t in random_specs(rng, 1000):
        jet = jet_at(spec, t, 2)
        frame = surface_frame_at(spec, t)
        kg = geodesic_curvature(jet, frame)
        kn = normal_curvature_definitional(jet, frame)
        assert abs(kg - geodesic_curvature_closed_form(spec, t)) <= 1e-10 * max(1.0, abs(kg))
        assert abs(kn - normal_curvature(spec, t)) <= 1e-10 * max(1.0, abs(kn))


@pytest.mark.parametrize("p, q, b", [(2, 3, 0.5), (1, 4, Fraction(1, 17)), (3, 5, 0.2)])
def test_geodesic_zero_iff_sin_qt_zero(p, q, b):
    spec = TorusCurveSpec(p, q, b)
    n = 24 * q * 50
    ts = 2 * PI * np.arange(n) / n
    kg = geodesic_curvature(jet_at(spec, ts, 2), surface_frame_at(spec, ts))
    on = np.abs(np.sin(q * ts)) < 1e-12
    assert on.sum() == 2 * q
    assert np.abs(kg[on]).max() < 1e-10
    # away from sin(qt) = 0 the geodesic curvature is bounded below by p |sin qt| floor / speed^3
    sin = np.abs(np.sin(q * ts[~on]))
    assert (np.abs(kg[~on]) > 0.5 * sin * p**3 * (1 - float(b)) ** 2 / (p * (1 + float(b)) + q) ** 3).all()
