"""Simplices of H^n with their Minkowski lifts, duals and inscribed data.

A total simplex is stored as two dual bases of R^{1,n}: the vertex lifts
``v_k`` (future, causal) and the face polars ``v*_k`` (norm -1, pointing into
the simplex), scaled so that ``<v_i, v*_j> = delta_ij``.  Every metric quantity
of the simplex is then a function of the two Gram matrices.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DegenerateInput, InvalidInput, InvalidParameter, NotTotal
from .lorentz import (
    EPS_DET,
    EPS_GRAM,
    as_sequence,
    dual_basis,
    gram,
    isometry_from_gram,
    lorentz_form,
    norm2,
)
from .models import from_klein, hpoint, is_ideal, normalize_lift, origin, to_klein

IS_REGULAR_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class Simplex:
    vertices: np.ndarray
    duals: np.ndarray
    gram: np.ndarray
    dual_gram: np.ndarray
    ideal: np.ndarray

    @property
    def n(self):
        return self.vertices.shape[0] - 1

    @property
    def is_ideal(self):
        return bool(np.all(self.ideal))

    def klein_vertices(self):
        return np.array([to_klein(v) for v in self.vertices])

    def normalized_vertices(self):
        """Vertex lifts on the hyperboloid, or at height 1 on the light cone."""
        return np.array([normalize_lift(v) for v in self.vertices])


def _dedupe_check(lifts):
    k = lifts.shape[0]
    unit = lifts / np.linalg.norm(lifts, axis=1, keepdims=True)
    for i in range(k):
        for j in range(i + 1, k):
            if np.max(np.abs(unit[i] - unit[j])) < 1e-12:
                raise NotTotal(f"vertices {i} and {j} coincide")


def build_simplex(raw_vertices, eps_det=EPS_DET):
    """Duality-normalized Minkowski model of the simplex with the given vertices.

    ``raw_vertices`` are ``1 + n`` future lifts (hyperboloid points or null
    vectors, any positive scaling).  Each dual is rescaled to norm -1 and each
    vertex so that ``<v_k, v*_k> = 1``.
    """
    w = as_sequence(raw_vertices)
    k, dim = w.shape
    if k != dim:
        raise NotTotal(f"a simplex of H^{dim - 1} needs {dim} vertices, got {k}")
    if np.any(w[:, 0] <= 0):
        raise InvalidInput("vertex lifts must have positive height")
    if np.any(norm2(w) < -EPS_GRAM * w[:, 0] ** 2):
        raise InvalidInput("vertex lifts must be timelike or null")
    _dedupe_check(w)
    unit = w / np.linalg.norm(w, axis=1, keepdims=True)
    if abs(np.linalg.det(unit)) <= eps_det:
        raise NotTotal("vertices are linearly dependent")
    try:
        d = dual_basis(w, eps_det)
    except DegenerateInput as exc:
        raise NotTotal(str(exc)) from exc
    # <d_j, w_j> = 1 > 0, so d_j already points into the simplex
    q = norm2(d)
    if np.any(q >= 0):
        raise DegenerateInput("a face span is not a hyperbolic hyperplane (ideal vertex in H^1?)")
    scale = np.sqrt(-q)
    duals = d / scale[:, None]
    vertices = w * scale[:, None]
    ideal = np.array([is_ideal(v) for v in w])
    return Simplex(vertices, duals, gram(vertices), gram(duals), ideal)


def simplex_from_klein(points, eps=EPS_GRAM):
    """Simplex from affine chart coordinates (points with norm 1 are ideal)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return build_simplex(np.array([from_klein(p, eps) for p in points]))


def random_klein_points(rng, n, count, ideal_prob=0.0, max_radius=0.98):
    """Uniform points of the Klein ball of radius ``max_radius``, some pushed to the sphere."""
    x = rng.standard_normal((count, n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    r = max_radius * rng.random(count) ** (1.0 / n)
    ideal = rng.random(count) < ideal_prob
    r[ideal] = 1.0
    return x * r[:, None]


def random_simplex(rng, n, ideal_prob=0.0, max_radius=0.98, min_det=1e-3):
    """Random total simplex with vertices sampled in the Klein ball.

    Draws are rejected until the normalized vertex matrix has
    ``|det| > min_det``, which keeps the sample away from degenerate ones.
    """
    while True:
        pts = random_klein_points(rng, n, n + 1, ideal_prob, max_radius)
        lifts = np.array([from_klein(p) for p in pts])
        unit = lifts / np.linalg.norm(lifts, axis=1, keepdims=True)
        if abs(np.linalg.det(unit)) > min_det:
            return build_simplex(lifts)


def random_ideal_simplex(rng, n, min_det=1e-3):
    return random_simplex(rng, n, ideal_prob=1.0, min_det=min_det)


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate_dual_gram(m, allow_ideal=True, tol=1e-8):
    """Check that ``m`` is the dual Gram matrix of a total simplex.

    With ``A = -m``: unit diagonal, ``det A < 0``, off-diagonal entries of
    ``A^{-1}`` negative and principal ``n x n`` minors of ``A`` positive
    definite.  With ``allow_ideal`` the last two conditions are relaxed to
    a non-positive diagonal of ``A^{-1}`` and positive semidefinite minors,
    which is what ideal vertices produce.
    """
    a = -np.atleast_2d(np.asarray(m, dtype=float))
    k = a.shape[0]
    if a.shape != (k, k) or k < 2:
        return Validation(False, "not a square matrix of size >= 2")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > tol * scale:
        return Validation(False, "not symmetric")
    if np.max(np.abs(np.diag(a) - 1.0)) > tol * scale:
        return Validation(False, "diagonal of -M is not +1")
    det = np.linalg.det(a)
    if not det < 0:
        return Validation(False, f"det(-M) = {det:.6g} is not negative")
    inv = np.linalg.inv(a)
    iscale = max(1.0, float(np.max(np.abs(inv))))
    off = inv[~np.eye(k, dtype=bool)]
    if not np.all(off < 0):
        return Validation(False, "(-M)^-1 has a non-negative off-diagonal entry")
    diag = np.diag(inv)
    if allow_ideal:
        if np.any(diag > tol * iscale):
            return Validation(False, "(-M)^-1 has a positive diagonal entry")
    elif not np.all(diag < 0):
        return Validation(False, "(-M)^-1 has a non-negative diagonal entry")
    for j in range(k):
        keep = [i for i in range(k) if i != j]
        lo = np.linalg.eigvalsh(a[np.ix_(keep, keep)])[0]
        if allow_ideal:
            if lo < -tol * scale:
                return Validation(False, f"minor without index {j} is not positive semidefinite")
        elif not lo > tol * scale:
            return Validation(False, f"minor without index {j} is not positive definite")
    return Validation(True)


def _embed_gram(g):
    """Rows in R^{1,n} whose Gram matrix is ``g`` (one positive eigenvalue)."""
    w, q = np.linalg.eigh(g)
    order = np.argsort(-w)
    w, q = w[order], q[:, order]
    if not (w[0] > 0 and np.all(w[1:] < 0)):
        raise InvalidParameter("matrix does not have signature (1, n)")
    return q * np.sqrt(np.abs(w))[None, :]


def regular_simplex(n, c=None):
    """Regular simplex with dual Gram matrix ``c J - (1 + c) Id``.

    ``c`` ranges over ``(1/n, 1/(n-1)]``; the default ``1/(n-1)`` is the
    ideal one.
    """
    if n < 2:
        raise InvalidParameter("regular simplices need n >= 2")
    if c is None:
        c = 1.0 / (n - 1)
    if not (1.0 / n < c <= 1.0 / (n - 1) + 1e-15):
        raise InvalidParameter(f"c = {c} outside (1/n, 1/(n-1)]")
    k = n + 1
    gstar = c * np.ones((k, k)) - (1.0 + c) * np.eye(k)
    if not validate_dual_gram(gstar):
        raise InvalidParameter(f"c = {c} does not give a total simplex")
    duals = _embed_gram(gstar)
    x = 1.0 / (1.0 + c)
    y = x * c / (c * n - 1.0)
    g = y * np.ones((k, k)) - x * np.eye(k)
    vertices = g @ duals
    if np.sum(vertices[:, 0]) < 0:
        vertices, duals = -vertices, -duals
    ideal = np.full(k, abs(c - 1.0 / (n - 1)) < 1e-12)
    return Simplex(vertices, duals, gram(vertices), gram(duals), ideal)


def regular_ideal_simplex(n):
    return regular_simplex(n)


def is_regular(simplex, tol=IS_REGULAR_TOL):
    """Dual Gram matrix has constant diagonal and constant off-diagonal entries."""
    g = simplex.dual_gram
    k = g.shape[0]
    off = g[~np.eye(k, dtype=bool)]
    diag = np.diag(g)
    return bool(np.ptp(diag) <= tol and (off.size == 0 or np.ptp(off) <= tol))


def inradius_from_gram(g_raw):
    """Inradius of a total simplex from the Gram matrix of any positive vertex lifts.

    The lifts are first duality-normalized inside their own span, then
    ``sinh(r)^-2`` is the sum of the normalized Gram entries.
    """
    g_raw = np.atleast_2d(np.asarray(g_raw, dtype=float))
    inv = np.linalg.inv(g_raw)
    d = np.diag(inv)
    if np.any(d >= 0):
        raise DegenerateInput("face span is not a hyperbolic subspace")
    s = np.sqrt(-d)
    g = g_raw * np.outer(s, s)
    total = float(np.sum(g))
    return math.asinh(1.0 / math.sqrt(total))


@dataclass(frozen=True, eq=False)
class InscribedData:
    incenter: np.ndarray
    inradius: float
    tangency_points: np.ndarray
    visual_gram: np.ndarray
    tangent_directions: np.ndarray = field(repr=False)

    @property
    def tanh_inradius(self):
        return math.tanh(self.inradius)


def incenter_inradius(simplex):
    """Incenter ``o = sum(v_k) / s``, inradius ``asinh(1/s)`` with ``s^2 = sum G``.

    Tangency points are ``o / cosh(r) + tanh(r) v*_k``; the visual Gram
    matrix holds the cosines of the angles at ``o`` between the unit tangent
    vectors pointing at them.
    """
    total = float(np.sum(simplex.gram))
    if not total > 0:
        raise DegenerateInput(f"sum of Gram entries is {total}, not positive")
    s = math.sqrt(total)
    o = np.sum(simplex.vertices, axis=0) / s
    o = hpoint(o)
    r = math.asinh(1.0 / s)
    tangency = o[None, :] / math.cosh(r) + math.tanh(r) * simplex.duals
    # unit tangent at o toward each tangency point; Riemannian product is -<.,.>
    along = tangency - lorentz_form(tangency, o)[:, None] * o[None, :]
    along /= np.sqrt(-norm2(along))[:, None]
    visual = -gram(along)
    np.fill_diagonal(visual, 1.0)
    return InscribedData(o, r, tangency, visual, along)


@dataclass(frozen=True, eq=False)
class IncentredModel:
    euclidean_vertices: np.ndarray
    euclidean_tangency: np.ndarray
    euclidean_inradius: float
    isometry: np.ndarray = field(repr=False)


def incentred_model(simplex):
    """Move the incenter to ``o = (1, 0, ..., 0)`` and read off affine chart coordinates."""
    data = incenter_inradius(simplex)
    n = simplex.n
    iso = isometry_from_gram(data.incenter[None, :], origin(n)[None, :])
    verts = iso.apply(simplex.vertices)
    tang = iso.apply(data.tangency_points)
    ev = verts[:, 1:] / verts[:, :1]
    et = tang[:, 1:] / tang[:, :1]
    return IncentredModel(ev, et, math.tanh(data.inradius), iso.matrix)


def euclidean_incenter(points):
    """Incenter of a Euclidean n-simplex given by ``n + 1`` points of R^n.

    Barycentric weights are the (n-1)-volumes of the opposite facets.
    """
    p = np.atleast_2d(np.asarray(points, dtype=float))
    k = p.shape[0]
    areas = np.empty(k)
    for j in range(k):
        facet = np.delete(p, j, axis=0)
        e = facet[1:] - facet[0]
        areas[j] = math.sqrt(max(0.0, np.linalg.det(e @ e.T))) if e.shape[0] else 1.0
    return areas @ p / np.sum(areas)


def euclidean_inradius(points):
    """Distance from the incenter to the facet hyperplanes (n * volume / surface)."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    k = p.shape[0]
    n = k - 1
    e = p[1:] - p[0]
    vol = abs(np.linalg.det(e)) / math.factorial(n)
    area = 0.0
    for j in range(k):
        facet = np.delete(p, j, axis=0)
        f = facet[1:] - facet[0]
        area += math.sqrt(max(0.0, np.linalg.det(f @ f.T))) / math.factorial(n - 1)
    return n * vol / area


def from_inscribed_euclidean(points, tol=1e-8):
    """Ideal simplex whose incentred model is the given inscribed Euclidean simplex."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    radii = np.linalg.norm(p, axis=1)
    if np.max(np.abs(radii - 1.0)) > tol:
        raise InvalidInput(f"points are off the unit sphere by {np.max(np.abs(radii - 1.0)):.3e}")
    center = euclidean_incenter(p)
    offset = float(np.linalg.norm(center))
    if offset > tol:
        raise InvalidInput(f"Euclidean incenter is at distance {offset:.3e} from the origin")
    lifts = np.hstack([np.ones((p.shape[0], 1)), p / radii[:, None]])
    return build_simplex(lifts)


def altitude_foot(simplex, k):
    """Foot ``v_k + v*_k`` of the perpendicular from ``v_k`` to the opposite face span."""
    return simplex.vertices[k] + simplex.duals[k]


def simplex_to_json(simplex, model="klein"):
    if model == "klein":
        verts = simplex.klein_vertices()
    elif model == "minkowski":
        verts = simplex.normalized_vertices()
    else:
        raise ValueError(f"unknown model {model!r}")
    return {"n": simplex.n, "vertices": verts.tolist(), "model": model}


def simplex_from_json(doc):
    try:
        n = int(doc["n"])
        verts = np.asarray(doc["vertices"], dtype=float)
        model = doc.get("model", "klein")
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed simplex document: {exc}") from exc
    if model == "klein":
        if verts.shape != (n + 1, n):
            raise InvalidInput(f"expected {n + 1} Klein points of dimension {n}, got {verts.shape}")
        return simplex_from_klein(verts, eps=1e-9)
    if model == "minkowski":
        if verts.shape != (n + 1, n + 1):
            raise InvalidInput(f"expected {n + 1} lifts of dimension {n + 1}, got {verts.shape}")
        return build_simplex(verts)
    raise InvalidInput(f"unknown model {model!r}")
