"""Disphenoids folded from acute triangles and the maximizers of the distance to their edges."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypersimplex import disphenoid as dp
from hypersimplex.errors import InvalidParameter


def acute_parameters():
    return st.tuples(st.floats(-0.9, 0.9), st.floats(0.3, 3.0)).map(lambda t: complex(*t)).filter(
        lambda z: abs(z) > 1.05 and z.imag > 0.2
    )


def pairwise(points):
    return sorted(
        round(float(np.linalg.norm(points[i] - points[j])), 9) for i, j in itertools.combinations(range(4), 2)
    )


def brute_force_max(points, count, seed=0):
    rng = np.random.default_rng(seed)
    lam = rng.dirichlet(np.ones(4), size=count)
    vals = np.array([np.min(np.sqrt(dp.EdgeTable(points).evaluate(l)[0])) for l in lam])
    return float(np.max(vals))


class TestConstruction:
    @given(acute_parameters())
    def test_opposite_edges(self, z):
        d = dp.disphenoid(z)
        for a, b in d.opposite_pairs():
            assert math.isclose(a, b, abs_tol=1e-9)
        expected = sorted([abs(z + 1)] * 2 + [2.0] * 2 + [abs(z - 1)] * 2)
        assert np.allclose(sorted(d.edge_lengths().values()), expected, atol=1e-9)

    @given(acute_parameters())
    def test_matches_box_construction(self, z):
        # oracle: congruent to the box-diagonal construction
        box = dp.disphenoid_from_edges(abs(z + 1), 2.0, abs(z - 1))
        assert pairwise(dp.disphenoid(z).vertices) == pairwise(box)

    def test_faces_congruent(self):
        d = dp.disphenoid(complex(0.2, 1.3))
        v = d.vertices
        sides = [
            sorted(np.linalg.norm(v[a] - v[b]) for a, b in itertools.combinations(f, 2))
            for f in itertools.combinations(range(4), 3)
        ]
        assert np.allclose(sides, sides[0])

    @pytest.mark.parametrize("z", [0.5j, complex(1.2, 1.0), complex(0.3, -1.5), complex(0.0, 1.0)])
    def test_rejects_non_acute(self, z):
        with pytest.raises(InvalidParameter):
            dp.disphenoid(z)

    def test_box_rejects_obtuse(self):
        with pytest.raises(InvalidParameter):
            dp.disphenoid_from_edges(1.0, 1.0, 3.0)


class TestEdgeTable:
    def test_vertex_distances(self):
        v = dp.disphenoid(1j * math.sqrt(3)).vertices
        vals, _ = dp.EdgeTable(v).evaluate(np.array([1.0, 0.0, 0.0, 0.0]))
        # vertex 0 lies on three edges
        assert np.sum(vals < 1e-20) == 3

    def test_gradient(self, rng):
        v = dp.disphenoid(complex(0.2, 1.3)).vertices
        t = dp.EdgeTable(v)
        lam = rng.dirichlet(np.ones(4))
        _, g = t.evaluate(lam)
        h = 1e-6
        for k in range(4):
            e = np.zeros(4)
            e[k] = h
            fd = (t.evaluate(lam + e)[0] - t.evaluate(lam - e)[0]) / (2 * h)
            assert np.allclose(g[:, k], fd, atol=1e-6)


class TestCensus:
    def test_equilateral(self):
        res = dp.disphenoid_maximizer_census(1j * math.sqrt(3))
        assert tuple(res) == (1, 1)
        # regular tetrahedron of edge 2: the centroid is at distance 1/sqrt(2) from the edges
        assert math.isclose(res.values[0], 1 / math.sqrt(2), rel_tol=1e-7)

    def test_isoceles(self):
        assert tuple(dp.disphenoid_maximizer_census(1.3j)) == (4, 4)

    def test_generic_maximizers_form_one_orbit(self):
        # the symmetry group of a disphenoid permutes the maximizers, so they share one value
        res = dp.disphenoid_maximizer_census(complex(0.2, 1.3))
        assert res.local == 4
        assert np.ptp(res.values) < 1e-7

    def test_centroid_is_not_a_maximizer(self):
        z = complex(0.2, 1.3)
        v = dp.disphenoid(z).vertices
        res = dp.disphenoid_maximizer_census(z)
        centroid = v.mean(axis=0)
        assert np.min(np.linalg.norm(res.points - centroid, axis=1)) > 1e-3
        centroid_value = math.sqrt(np.min(dp.EdgeTable(v).evaluate(np.full(4, 0.25))[0]))
        assert centroid_value < res.values[0] - 1e-3

    def test_brute_force_does_not_beat_census(self):
        z = complex(0.2, 1.3)
        v = dp.disphenoid(z).vertices
        res = dp.disphenoid_maximizer_census(z)
        assert brute_force_max(v, 20000) <= res.values[0] + 1e-9

    def test_mirror_symmetry(self):
        z = complex(0.2, 1.3)
        assert tuple(dp.disphenoid_maximizer_census(z)) == tuple(dp.disphenoid_maximizer_census(-z.conjugate()))
