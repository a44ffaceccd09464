"""Model conversions, distances and relative positions of hyperplanes."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import minimize_scalar

from hypersimplex import models as md
from hypersimplex.errors import (
    DegenerateInput,
    NumericalInconsistency,
    OutsideBall,
    SameHyperplane,
)
from hypersimplex.lorentz import lorentz_form, norm2, polar
from hypersimplex.simplex import random_klein_points

coord = st.floats(-0.55, 0.55, allow_nan=False)


def klein_point(dim=2):
    return st.lists(coord, min_size=dim, max_size=dim).map(np.array)


def brute_geodesic_distance(p, a, b):
    # oracle: minimize along the geodesic x(s) = e^s a' + e^-s b'
    ab = lorentz_form(a, b)
    a1, b1 = a / math.sqrt(2 * ab), b / math.sqrt(2 * ab)
    res = minimize_scalar(
        lambda s: lorentz_form(p, math.exp(s) * a1 + math.exp(-s) * b1),
        bracket=(-1.0, 1.0),
        tol=1e-14,
    )
    return math.acosh(max(res.fun, 1.0))


class TestPoints:
    def test_origin(self):
        assert np.array_equal(md.origin(3), [1.0, 0.0, 0.0, 0.0])

    @given(klein_point(3))
    def test_klein_round_trip(self, k):
        x = md.from_klein(k)
        assert math.isclose(norm2(x), 1.0, rel_tol=1e-12)
        assert np.allclose(md.to_klein(x), k, atol=1e-14)

    def test_boundary_point_from_unit_vector(self):
        x = md.from_klein([0.6, 0.8])
        assert md.is_ideal(x)
        assert np.allclose(x, [1.0, 0.6, 0.8])

    def test_outside_ball(self):
        with pytest.raises(OutsideBall):
            md.from_klein([1.0, 0.1])

    def test_hpoint_rejects_spacelike(self):
        with pytest.raises(DegenerateInput):
            md.hpoint([0.0, 1.0, 0.0])

    def test_hpoint_flips_past_vectors(self):
        assert md.hpoint([-2.0, 0.0, 0.0])[0] == 1.0

    def test_normalize_lift(self):
        assert np.allclose(md.normalize_lift([3.0, 3.0, 0.0]), [1.0, 1.0, 0.0])
        assert math.isclose(norm2(md.normalize_lift([3.0, 1.0, 0.0])), 1.0)


class TestDistances:
    def test_origin_to_klein_point(self):
        # d(o, k) = atanh |k| in the Klein chart
        k = np.array([0.3, 0.4])
        assert math.isclose(md.dist_point_point(md.origin(2), md.from_klein(k)), math.atanh(0.5))

    @given(klein_point(), klein_point())
    def test_matches_cross_ratio(self, a, b):
        if np.linalg.norm(a - b) < 1e-3:
            return
        x, y = md.from_klein(a), md.from_klein(b)
        assert math.isclose(md.dist_point_point(x, y), md.cross_ratio_distance(x, y), rel_tol=1e-8, abs_tol=1e-10)

    @given(klein_point(), klein_point(), klein_point())
    def test_triangle_inequality(self, a, b, c):
        x, y, z = (md.from_klein(v) for v in (a, b, c))
        d = md.dist_point_point
        assert d(x, z) <= d(x, y) + d(y, z) + 1e-9

    def test_scale_invariant(self):
        x = md.from_klein([0.1, 0.2])
        y = md.from_klein([-0.5, 0.3])
        assert math.isclose(md.dist_point_point(3 * x, 0.5 * y), md.dist_point_point(x, y))

    def test_acosh_guard(self):
        with pytest.raises(NumericalInconsistency):
            md._acosh(0.5)
        assert md._acosh(1.0 - 1e-9) == 0.0

    def test_point_hyperplane(self):
        h = polar(np.array([0.0, 1.0, 0.0]))
        x = md.from_klein([-0.5, 0.0])
        d, s = md.dist_point_hyperplane(x, h)
        assert math.isclose(d, math.atanh(0.5))
        assert s == 1
        assert md.dist_point_hyperplane(md.origin(2), h) == (0.0, 0)

    def test_projection_realizes_distance(self, rng):
        for _ in range(20):
            a = rng.uniform(0, 2 * math.pi)
            h = polar(np.array([rng.uniform(-0.8, 0.8), math.cos(a), math.sin(a)]))
            x = md.from_klein(random_klein_points(rng, 2, 1, max_radius=0.9)[0])
            foot = md.project_to_hyperplane(x, h)
            assert abs(lorentz_form(foot, h.u)) < 1e-10
            assert math.isclose(md.dist_point_point(x, foot), md.dist_point_hyperplane(x, h)[0], abs_tol=1e-9)

    def test_geodesic_closed_form_vs_brute_force(self, rng):
        for _ in range(50):
            a, b = (md.from_klein(v) for v in random_klein_points(rng, 3, 2, ideal_prob=1.0))
            p = md.from_klein(random_klein_points(rng, 3, 1)[0])
            assert math.isclose(md.dist_point_to_geodesic(p, a, b), brute_geodesic_distance(p, a, b), abs_tol=1e-8)

    def test_geodesic_through_origin(self):
        a, b = np.array([1.0, 1.0, 0.0]), np.array([1.0, -1.0, 0.0])
        assert md.dist_point_to_geodesic(md.origin(2), a, b) == 0.0

    def test_geodesic_coincident_endpoints(self):
        a = np.array([1.0, 1.0, 0.0])
        with pytest.raises(DegenerateInput):
            md.dist_point_to_geodesic(md.origin(2), a, a)


class TestConfigurations:
    def test_intersecting_angle(self):
        hu = polar(np.array([0.0, 1.0, 0.0]))
        hv = polar(np.array([0.0, 0.0, 1.0]))
        cfg = md.classify_hyperplanes(hu, hv)
        assert isinstance(cfg, md.Intersecting)
        assert math.isclose(cfg.angle, math.pi / 2)

    def test_asymptotic(self):
        # the chords y = 1 - x and y = x - 1 share the ideal point (1, 0)
        hu = polar(np.array([1.0, 1.0, 1.0]))
        hv = polar(np.array([1.0, 1.0, -1.0]))
        assert isinstance(md.classify_hyperplanes(hu, hv), md.Asymptotic)

    def test_ultraparallel_distance(self):
        # vertical chords x = +-t are at distance 2 atanh t
        t = 0.5
        hu = polar(np.array([t, 1.0, 0.0]))
        hv = polar(np.array([t, -1.0, 0.0]))
        cfg = md.classify_hyperplanes(hu, hv)
        assert isinstance(cfg, md.Ultraparallel)
        assert math.isclose(cfg.distance, 2 * math.atanh(t))

    def test_same_hyperplane(self):
        h = polar(np.array([0.2, 1.0, 0.0]))
        with pytest.raises(SameHyperplane):
            md.classify_hyperplanes(h, h.flipped())

    def test_bisector_counts(self):
        inter = (polar(np.array([0.0, 1.0, 0.0])), polar(np.array([0.0, 0.0, 1.0])))
        ultra = (polar(np.array([0.5, 1.0, 0.0])), polar(np.array([0.5, -1.0, 0.0])))
        assert len(md.bisectors(*inter)) == 2
        assert len(md.bisectors(*ultra)) == 1

    def test_bisectors_are_equidistant(self, rng):
        hu = polar(np.array([0.3, 1.0, 0.2]))
        hv = polar(np.array([0.1, -0.4, 1.0]))
        for b in md.bisectors(hu, hv):
            # points of the bisector line
            for _ in range(5):
                k = random_klein_points(rng, 2, 1, max_radius=0.9)[0]
                x = md.project_to_hyperplane(md.from_klein(k), b)
                du = md.dist_point_hyperplane(x, hu)[0]
                dv = md.dist_point_hyperplane(x, hv)[0]
                assert math.isclose(du, dv, abs_tol=1e-9)

    def test_intersection_pole(self):
        hu = polar(np.array([0.0, 1.0, 0.0]))
        hv = polar(np.array([0.0, 0.0, 1.0]))
        w = md.intersection_pole(hu, hv)
        assert np.allclose(w / w[0], [1.0, 0.0, 0.0])
        ultra = md.intersection_pole(polar(np.array([0.5, 1.0, 0.3])), polar(np.array([0.5, -1.0, 0.0])))
        assert norm2(ultra) < 0
        with pytest.raises(DegenerateInput):
            md.intersection_pole(polar(np.array([0.0, 1.0, 0.0, 0.0])), polar(np.array([0.0, 0.0, 1.0, 0.0])))
