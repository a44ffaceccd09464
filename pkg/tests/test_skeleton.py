"""Distances to faces, maximizers of the distance to the m-skeleton and hull bounds."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypersimplex import skeleton as sk
from hypersimplex.errors import InvalidInput
from hypersimplex.lorentz import lorentz_form, norm2
from hypersimplex.models import dist_point_hyperplane, dist_point_point, from_klein, hpoint
from hypersimplex.lorentz import HalfSpace
from hypersimplex.simplex import (
    incenter_inradius,
    random_ideal_simplex,
    random_klein_points,
    random_simplex,
    regular_ideal_simplex,
)

LOG_1_SQRT2 = math.log(1 + math.sqrt(2))


def grid_face_distance(p, w, step):
    """Oracle: minimum of the distance over a regular grid of the weight simplex."""
    k = w.shape[0]
    ticks = int(round(1 / step))
    best = math.inf
    for c in itertools.product(range(ticks + 1), repeat=k - 1):
        if sum(c) > ticks:
            continue
        t = np.array(list(c) + [ticks - sum(c)], dtype=float) / ticks
        q = t @ w
        qq = norm2(q)
        if qq <= 1e-12:
            continue
        best = min(best, lorentz_form(p, q) / math.sqrt(qq))
    return math.acosh(max(best, 1.0))


def inner_point(rng, s):
    lam = rng.dirichlet(np.ones(s.n + 1))
    return hpoint(lam @ s.vertices)


class TestDistToFace:
    def test_vertex_face(self, rng):
        s = random_simplex(rng, 3, ideal_prob=0.0)
        p = inner_point(rng, s)
        d = sk.dist_to_face(p, sk.Face(s, (2,)))
        assert math.isclose(d.distance, dist_point_point(p, s.vertices[2]))

    def test_ideal_vertex_face_is_infinite(self, rng):
        s = random_ideal_simplex(rng, 2)
        d = sk.dist_to_face(inner_point(rng, s), sk.Face(s, (0,)))
        assert d.distance == math.inf and d.boundary_limit

    def test_facet_matches_hyperplane_distance(self, rng):
        s = random_simplex(rng, 3)
        o = incenter_inradius(s).incenter
        for k in range(4):
            face = sk.Face(s, tuple(i for i in range(4) if i != k))
            # the incenter projects into every facet
            assert math.isclose(sk.dist_to_face(o, face).distance, dist_point_hyperplane(o, HalfSpace(s.duals[k]))[0])

    @pytest.mark.parametrize("m", [1, 2])
    def test_against_grid(self, rng, m):
        s = random_simplex(rng, 3, ideal_prob=0.5)
        face = sk.Face(s, tuple(range(m + 1)))
        for _ in range(3):
            p = inner_point(rng, s)
            exact = sk.dist_to_face(p, face).distance
            grid = grid_face_distance(p, face.lifts, 0.02 if m == 2 else 1e-3)
            assert exact <= grid + 1e-12
            assert grid - exact < 5e-3

    @given(st.integers(0, 2**32 - 1))
    def test_methods_agree(self, seed):
        rng = np.random.default_rng(seed)
        s = random_simplex(rng, 3, ideal_prob=0.5)
        p = inner_point(rng, s)
        for sub in [(0, 1), (1, 2, 3)]:
            face = sk.Face(s, sub)
            a = sk.dist_to_face(p, face, "exact").distance
            b = sk.dist_to_face(p, face, "pgd").distance
            assert math.isclose(a, b, rel_tol=1e-7, abs_tol=1e-8)

    def test_nearest_point_realizes_distance(self, rng):
        s = random_simplex(rng, 4)
        p = inner_point(rng, s)
        res = sk.dist_to_face(p, sk.Face(s, (0, 2, 3)))
        assert np.all(res.weights >= 0) and math.isclose(res.weights.sum(), 1.0)
        assert math.isclose(dist_point_point(p, res.nearest), res.distance, rel_tol=1e-9)

    def test_closed_form_for_ideal_edges(self, rng):
        s = random_ideal_simplex(rng, 3)
        p = inner_point(rng, s)
        for e in itertools.combinations(range(4), 2):
            face = sk.Face(s, e)
            assert math.isclose(sk.dist_to_face(p, face, "closed").distance, sk.dist_to_face(p, face).distance)

    def test_unknown_method(self, rng):
        s = random_simplex(rng, 2)
        with pytest.raises(ValueError):
            sk.dist_to_face(inner_point(rng, s), sk.Face(s, (0, 1)), "simplex")

    def test_invalid_subset(self, rng):
        s = random_simplex(rng, 2)
        with pytest.raises(InvalidInput):
            sk.Face(s, (0, 0))
        with pytest.raises(InvalidInput):
            sk.Face(s, (0, 5))

    def test_regular_edge_distance(self):
        for n in range(2, 8):
            s = regular_ideal_simplex(n)
            o = incenter_inradius(s).incenter
            d = sk.dist_to_face(o, sk.Face(s, (0, 1))).distance
            assert math.isclose(math.tanh(d) ** 2, (n - 1) / (2 * n), rel_tol=0, abs_tol=1e-12)


class TestFaceTable:
    def test_matches_dist_to_face(self, rng):
        s = random_simplex(rng, 3, ideal_prob=0.5)
        faces = list(itertools.combinations(range(4), 2))
        table = sk.FaceTable(s.gram, faces)
        lam = rng.dirichlet(np.ones(4))
        vals, _ = table.evaluate(lam)
        p = hpoint(lam @ s.vertices)
        ref = [math.cosh(sk.dist_to_face(p, sk.Face(s, f)).distance) ** 2 for f in faces]
        assert np.allclose(vals, ref, rtol=1e-9)

    def test_gradient_finite_differences(self, rng):
        s = random_simplex(rng, 3)
        table = sk.FaceTable(s.gram, list(itertools.combinations(range(4), 3)))
        lam = rng.dirichlet(np.ones(4))
        vals, grads = table.evaluate(lam)
        h = 1e-6
        for k in range(4):
            e = np.zeros(4)
            e[k] = h
            fd = (table.evaluate(lam + e)[0] - table.evaluate(lam - e)[0]) / (2 * h)
            assert np.allclose(grads[:, k], fd, rtol=1e-5, atol=1e-6)

    def test_mixed_sizes(self, rng):
        s = random_simplex(rng, 3)
        with pytest.raises(InvalidInput):
            sk.FaceTable(s.gram, [(0, 1), (0, 1, 2)])


class TestMaximizers:
    def test_regular_tetrahedron(self):
        rep = sk.enumerate_local_maximizers(regular_ideal_simplex(3), 1)
        assert math.isclose(math.tanh(rep.value) ** 2, 1 / 3, abs_tol=1e-9)
        assert (rep.local_count, rep.global_count) == (1, 1)
        assert np.allclose(rep.maximizers[0].point_klein, incenter_inradius(regular_ideal_simplex(3)).incenter[1:], atol=1e-6)

    def test_inradius_as_m_equals_n_minus_1(self, rng):
        s = random_simplex(rng, 2)
        rep = sk.delta_n_m(s, 1)
        assert math.isclose(rep.value, incenter_inradius(s).inradius, rel_tol=1e-7)

    def test_non_regular_has_several_maximizers(self, rng):
        s = random_ideal_simplex(rng, 3)
        o = incenter_inradius(s).incenter
        rep = sk.enumerate_local_maximizers(s, 1)
        if sk.min_face_distance(s, 1, o) < rep.value - 1e-7:
            assert rep.global_count >= 2

    def test_maximizers_are_equidistant_from_active_faces(self, rng):
        s = random_ideal_simplex(rng, 3)
        rep = sk.enumerate_local_maximizers(s, 1)
        for mx in rep.maximizers:
            ds = [sk.dist_to_face(mx.point, sk.Face(s, f)).distance for f in mx.nearest_faces]
            assert np.ptp(ds) < 1e-6
            assert math.isclose(sk.min_face_distance(s, 1, mx.point), mx.value, rel_tol=1e-7)

    def test_sampled_points_do_not_beat_maximum(self, rng):
        s = random_ideal_simplex(rng, 3)
        rep = sk.delta_n_m(s, 1)
        for _ in range(200):
            assert sk.min_face_distance(s, 1, inner_point(rng, s)) <= rep.value + 1e-9

    def test_report_json(self, rng):
        doc = sk.delta_n_m(regular_ideal_simplex(2), 1).to_json()
        assert set(doc) >= {"m", "value", "maximizers", "global_count", "local_count", "diagnostics"}

    def test_invalid_m(self):
        with pytest.raises(InvalidInput):
            sk.delta_n_m(regular_ideal_simplex(3), 3)

    def test_pythagorean_chain(self, rng):
        lhs, rhs = sk.pythagorean_chain_bound(regular_ideal_simplex(3), 1)
        assert math.isclose(lhs, rhs, rel_tol=1e-7)
        lhs, rhs = sk.pythagorean_chain_bound(random_ideal_simplex(rng, 3), 1)
        assert lhs <= rhs + 1e-6


class TestHullSampler:
    def test_below_limit(self, rng):
        pts = np.array([from_klein(p) for p in random_klein_points(rng, 4, 8, ideal_prob=0.5)])
        assert sk.hull_skeleton_bound_sampler(pts, 2000, seed=3) < LOG_1_SQRT2

    def test_segment_oracle(self, rng):
        pts = np.array([from_klein(p) for p in random_klein_points(rng, 3, 4)])
        s = random_simplex(rng, 3)
        p = np.array([inner_point(rng, s) for _ in range(5)])
        vals = sk._segment_cosh2(p, pts[:1], pts[1:2])[:, 0]
        # same segment as a 1-face of any simplex containing it
        t = random_simplex(rng, 3)
        verts = np.vstack([pts[:2], t.vertices[2:]])
        from hypersimplex.simplex import build_simplex

        face = sk.Face(build_simplex(verts), (0, 1))
        ref = [math.cosh(sk.dist_to_face(q, face).distance) ** 2 for q in p]
        assert np.allclose(vals, ref, rtol=1e-9)

    def test_deterministic(self, rng):
        pts = np.array([from_klein(p) for p in random_klein_points(rng, 3, 5)])
        a = sk.hull_skeleton_bound_sampler(pts, 500, seed=9)
        assert a == sk.hull_skeleton_bound_sampler(pts, 500, seed=9)

    def test_needs_two_points(self):
        with pytest.raises(InvalidInput):
            sk.hull_skeleton_bound_sampler(np.array([[1.0, 0.0, 0.0]]), 10)
