"""Euclidean disphenoids and the count of maximizers of the distance to their edges.

An acute triangle ``(1, z, -1)`` folded along its midlines gives a
tetrahedron whose opposite edges have lengths ``|z + 1|``, ``2`` and
``|z - 1|`` (the triangle is scaled by 2 first so that the edge lengths are
those of the original sides).
"""

from dataclasses import dataclass
import itertools
import math

import numpy as np

from . import _maximin
from .errors import InvalidParameter

EDGES = tuple(itertools.combinations(range(4), 2))


@dataclass(frozen=True, eq=False)
class Disphenoid:
    z: complex
    vertices: np.ndarray

    def edge_lengths(self):
        v = self.vertices
        return {e: float(np.linalg.norm(v[e[0]] - v[e[1]])) for e in EDGES}

    def opposite_pairs(self):
        lengths = self.edge_lengths()
        return [(lengths[e], lengths[tuple(sorted(set(range(4)) - set(e)))]) for e in EDGES[:3]]


def check_parameter(z):
    z = complex(z)
    if not (z.imag > 0 and abs(z.real) < 1 and abs(z) > 1):
        raise InvalidParameter(f"z = {z} does not describe an acute triangle (1, z, -1)")
    return z


def disphenoid(z):
    """Fold the doubled triangle ``(2, 2z, -2)`` along its midlines.

    The midline triangle has vertices ``1 + z``, ``z - 1`` and ``0``; the
    three corners meet at an apex at distances ``|z - 1|``, ``|z + 1|`` and
    ``2`` from them.
    """
    z = check_parameter(z)
    m1, m2, m3 = 1 + z, z - 1, 0j
    base = np.array([[m.real, m.imag, 0.0] for m in (m1, m2, m3)])
    r = np.array([abs(z - 1), abs(z + 1), 2.0])
    # trilateration: subtract the sphere equations pairwise
    a = 2.0 * (base[1:, :2] - base[0, :2])
    rhs = (r[0] ** 2 - r[1:] ** 2) + np.sum(base[1:, :2] ** 2, axis=1) - np.sum(base[0, :2] ** 2)
    xy = np.linalg.solve(a, rhs)
    h2 = r[0] ** 2 - float(np.sum((xy - base[0, :2]) ** 2))
    if h2 <= 0:
        raise InvalidParameter(f"z = {z}: the folded corners do not meet above the plane")
    apex = np.array([xy[0], xy[1], math.sqrt(h2)])
    return Disphenoid(z, np.vstack([base, apex]))


def disphenoid_from_edges(a, b, c):
    """Box construction of the disphenoid with opposite edge pairs ``a``, ``b``, ``c``."""
    x2 = (b * b + c * c - a * a) / 8.0
    y2 = (a * a + c * c - b * b) / 8.0
    z2 = (a * a + b * b - c * c) / 8.0
    if min(x2, y2, z2) <= 0:
        raise InvalidParameter("edge lengths do not form an acute triangle")
    x, y, z = math.sqrt(x2), math.sqrt(y2), math.sqrt(z2)
    return np.array([[x, y, z], [x, -y, -z], [-x, y, -z], [-x, -y, z]])


class EdgeTable:
    """Squared Euclidean distance from ``x = lam @ P`` to each edge segment."""

    def __init__(self, points, edges=EDGES):
        self.p = np.asarray(points, dtype=float)
        e = np.array(edges)
        self.a = self.p[e[:, 0]]
        self.b = self.p[e[:, 1]]
        self.d = self.b - self.a
        self.dd = np.sum(self.d * self.d, axis=1)

    def evaluate(self, lam):
        x = lam @ self.p
        t = np.clip(np.sum((x - self.a) * self.d, axis=1) / self.dd, 0.0, 1.0)
        diff = x[None, :] - (self.a + t[:, None] * self.d)
        vals = np.sum(diff * diff, axis=1)
        grads = 2.0 * diff @ self.p.T
        return vals, grads


@dataclass
class CensusResult:
    local: int
    global_: int
    points: np.ndarray
    values: np.ndarray
    diagnostics: dict

    def __iter__(self):
        return iter((self.local, self.global_))


def maximizer_census(points, opts=None):
    """Local and global maximizers of the distance to the edges of a tetrahedron."""
    opts = opts or _maximin.MaximinOptions()
    p = np.asarray(points, dtype=float)
    scale = max(float(np.max(np.linalg.norm(p[:, None] - p[None], axis=2))), 1e-300)
    table = EdgeTable(p)
    problem = _maximin.MaximinProblem(table.evaluate, 4)

    def distance(a, b):
        return float(np.linalg.norm((a - b) @ p)) / scale

    result = _maximin.run_maximin(problem, len(EDGES), opts, distance, 4)
    cands = sorted(result.candidates, key=lambda c: -c.value)
    values = np.sqrt(np.array([c.value for c in cands]))
    pts = np.array([c.lam @ p for c in cands]).reshape(-1, 3)
    top = values[0] if len(values) else 0.0
    n_global = int(np.sum(values >= top - opts.eps_val * scale))
    return CensusResult(len(cands), n_global, pts, values, result.diagnostics)


def disphenoid_maximizer_census(z, opts=None):
    """(local, global) maximizer counts of the distance to the edge skeleton."""
    return maximizer_census(disphenoid(z).vertices, opts)
