"""Distances from points of a simplex to its m-skeleton.

The distance from ``p`` to the geodesic hull of lifts ``w_i`` is the minimum of
``<p, q> / sqrt(<q, q>)`` over ``q = sum t_i w_i`` with ``t >= 0``.  Scaling
``q`` onto ``<q, q> = 1`` turns this into minimizing a linear function over a
convex set, whose KKT points are explicit for each support ``S``::

    cosh(d)^2 <p, p> = c_S^T  G_S^{-1}  c_S,      c_i = <p, w_i>,  G_S = Gram(w_S)

provided ``t_S = G_S^{-1} c_S`` is positive.  Every positive candidate is a
genuine point of the face, so the smallest candidate is the distance.
"""

from dataclasses import dataclass, field
import itertools
import math

import numpy as np

from . import _maximin
from .errors import DegenerateInput, InvalidInput
from .lorentz import as_vector, gram, lorentz_form, norm2
from .models import _acosh, hpoint, is_ideal, to_klein
from .simplex import incenter_inradius, inradius_from_gram

EPS_Q = 1e-12


@dataclass(frozen=True)
class Face:
    simplex: object
    vertex_subset: tuple

    def __post_init__(self):
        sub = tuple(int(i) for i in self.vertex_subset)
        k = self.simplex.n + 1
        if not 1 <= len(sub) <= k or len(set(sub)) != len(sub) or min(sub) < 0 or max(sub) >= k:
            raise InvalidInput(f"invalid vertex subset {self.vertex_subset} for a simplex with {k} vertices")
        object.__setattr__(self, "vertex_subset", tuple(sorted(sub)))

    @property
    def m(self):
        return len(self.vertex_subset) - 1

    @property
    def lifts(self):
        return self.simplex.vertices[list(self.vertex_subset)]


def faces_of(simplex, m):
    return [Face(simplex, sub) for sub in itertools.combinations(range(simplex.n + 1), m + 1)]


@dataclass(frozen=True)
class FaceDistance:
    distance: float
    nearest: np.ndarray
    weights: np.ndarray
    boundary_limit: bool = False


def _supports(size):
    return [s for r in range(1, size + 1) for s in itertools.combinations(range(size), r)]


def _exact_face_distance(c, g, pp):
    """Smallest positive-support candidate; returns (cosh^2 d, weights) or (inf, None)."""
    best, best_t = math.inf, None
    for sup in _supports(len(c)):
        idx = list(sup)
        gs = g[np.ix_(idx, idx)]
        if len(idx) == 1 and gs[0, 0] <= EPS_Q * max(1.0, abs(c[idx[0]])):
            continue
        try:
            t = np.linalg.solve(gs, c[idx])
        except np.linalg.LinAlgError:
            continue
        if not np.all(t > 0):
            continue
        val = float(c[idx] @ t)
        if val <= 0:
            continue
        if val < best:
            best = val
            best_t = np.zeros(len(c))
            best_t[idx] = t
    if best_t is None:
        return math.inf, None
    return best / pp, best_t / best_t.sum()


def _pgd_face_distance(c, g, pp, tol=1e-10, max_iter=200000):
    """Projected gradient on the weight simplex for ``<p, W t> / sqrt(t^T G t)``."""
    k = len(c)

    def phi(t):
        q = float(t @ g @ t)
        if q <= EPS_Q:
            return math.inf, None
        sq = math.sqrt(q)
        val = float(c @ t) / sq
        grad = c / sq - val * (g @ t) / q
        return val, grad

    t = np.full(k, 1.0 / k)
    val, grad = phi(t)
    if not math.isfinite(val):
        raise DegenerateInput("face has no timelike interior point")
    step = 1.0
    prev_t, prev_grad = None, None
    for _ in range(max_iter):
        mapping = t - _maximin.project_simplex(t - grad)
        if np.linalg.norm(mapping) < tol:
            break
        if prev_t is not None:
            s = t - prev_t
            y = grad - prev_grad
            sy = float(s @ y)
            if sy > 1e-300:
                step = min(max(float(s @ s) / sy, 1e-12), 1e12)
        while True:
            trial = _maximin.project_simplex(t - step * grad)
            tval, tgrad = phi(trial)
            if tval <= val - 1e-4 * float(grad @ (t - trial)) or step < 1e-16:
                break
            step *= 0.5
        if step < 1e-16:
            break
        prev_t, prev_grad = t, grad
        t, val, grad = trial, tval, tgrad
    return val * val / pp, t


def dist_to_face(p, face, method="exact"):
    """Distance from ``p`` in H^n to a face of a total simplex, with the nearest point.

    ``method`` is ``"exact"`` (support enumeration), ``"pgd"`` (projected
    gradient on the weights) or ``"closed"`` (geodesic formula for an edge with
    two ideal endpoints, falling back to ``"exact"`` when the foot leaves the
    edge).
    """
    p = hpoint(p)
    w = face.lifts
    c = lorentz_form(w, p)
    g = gram(w)
    pp = 1.0
    if method == "closed" and face.m == 1 and all(is_ideal(v) for v in w):
        from .models import dist_point_to_geodesic

        t = np.array([c[1], c[0]]) / g[0, 1]
        if np.all(t > 0):
            d = dist_point_to_geodesic(p, w[0], w[1])
            t = t / t.sum()
            return FaceDistance(d, hpoint(t @ w), t)
        method = "exact"
    if method in ("exact", "closed"):
        h, t = _exact_face_distance(c, g, pp)
    elif method == "pgd":
        h, t = _pgd_face_distance(c, g, pp)
    else:
        raise ValueError(f"unknown method {method!r}")
    if t is None or not math.isfinite(h):
        # the face is a single ideal vertex
        return FaceDistance(math.inf, w[0] / w[0, 0], np.ones(1), True)
    d = _acosh(math.sqrt(max(h, 0.0)))
    q = t @ w
    boundary = norm2(q) <= EPS_Q * max(1.0, q[0] ** 2)
    nearest = q / q[0] if boundary else hpoint(q)
    return FaceDistance(d, nearest, t, bool(boundary))


class FaceTable:
    """Vectorized ``cosh^2`` distances from ``p = sum lam_k v_k`` to a list of faces.

    Everything is expressed through the Gram matrix ``G`` of the vertex lifts:
    ``c = G lam`` and ``<p, p> = lam^T G lam``.
    """

    def __init__(self, g, faces):
        self.g = np.asarray(g, dtype=float)
        self.faces = [tuple(f) for f in faces]
        sizes = {len(f) for f in self.faces}
        if len(sizes) != 1:
            raise InvalidInput("all faces must have the same dimension")
        size = sizes.pop()
        sups = _supports(size)
        nf, ns = len(self.faces), len(sups)
        fa = np.array(self.faces)
        self.idx = np.zeros((nf, ns, size), dtype=int)
        self.inv = np.zeros((nf, ns, size, size))
        self.valid = np.zeros((nf, ns), dtype=bool)
        self.mask = np.zeros((nf, ns, size), dtype=bool)
        for j, sup in enumerate(sups):
            r = len(sup)
            ids = fa[:, list(sup)]
            self.idx[:, j, :r] = ids
            self.idx[:, j, r:] = ids[:, :1]
            self.mask[:, j, :r] = True
            for i in range(nf):
                gs = self.g[np.ix_(ids[i], ids[i])]
                if r == 1 and gs[0, 0] <= EPS_Q:
                    continue
                if abs(np.linalg.det(gs)) <= 1e-14 * max(1.0, np.max(np.abs(gs))) ** r:
                    continue
                self.inv[i, j, :r, :r] = np.linalg.inv(gs)
                self.valid[i, j] = True

    def evaluate(self, lam):
        """``cosh^2`` distance to every face and its gradient in ``lam``."""
        g = self.g
        c = g @ lam
        pp = float(lam @ g @ lam)
        cs = c[self.idx] * self.mask
        t = np.einsum("fsij,fsj->fsi", self.inv, cs)
        feasible = self.valid & np.all((t > 0) | ~self.mask, axis=2)
        num = np.einsum("fsi,fsi->fs", cs, t)
        feasible &= num > 0
        num = np.where(feasible, num, np.inf)
        sel = np.argmin(num, axis=1)
        rows = np.arange(num.shape[0])
        best = num[rows, sel]
        tsel = t[rows, sel] * self.mask[rows, sel]
        isel = self.idx[rows, sel]
        # gradient of c_S^T G_S^-1 c_S is 2 G[:, S] t_S
        gnum = 2.0 * np.einsum("kfi,fi->fk", g[:, isel], tsel)
        vals = best / pp
        grads = (gnum - vals[:, None] * (2.0 * c)[None, :]) / pp
        return vals, grads


@dataclass
class OptimizerOptions(_maximin.MaximinOptions):
    """Options of the multi-start maximin solver (restarts default to ``32 + 8n``)."""


@dataclass
class Maximizer:
    point: np.ndarray
    point_klein: np.ndarray
    value: float
    nearest_faces: list
    weights: np.ndarray
    stationarity: float
    is_global: bool = False


@dataclass
class SkeletonDistanceReport:
    m: int
    value: float
    maximizers: list
    global_count: int
    local_count: int
    diagnostics: dict = field(default_factory=dict)
    partial: bool = False

    @property
    def argmax_points(self):
        return [mx.point for mx in self.maximizers]

    def to_json(self):
        return {
            "m": self.m,
            "value": self.value,
            "maximizers": [
                {
                    "point_klein": mx.point_klein.tolist(),
                    "value": mx.value,
                    "nearest_faces": [list(f) for f in mx.nearest_faces],
                }
                for mx in self.maximizers
            ],
            "global_count": self.global_count,
            "local_count": self.local_count,
            "diagnostics": self.diagnostics,
        }


def _report(simplex, m, faces, result, opts, problem):
    verts = simplex.vertices
    cands = sorted(result.candidates, key=lambda c: (-c.value, tuple(np.round(c.lam, 12))))
    maximizers = []
    for c in cands:
        p = hpoint(c.lam @ verts)
        d = _acosh(math.sqrt(max(c.value, 1.0)))
        maximizers.append(
            Maximizer(p, to_klein(p), d, [faces[i] for i in c.active], c.lam, c.stationarity)
        )
    if maximizers:
        top = maximizers[0].value
        for mx in maximizers:
            mx.is_global = mx.value >= top - opts.eps_val
        value = top
    else:
        value = _acosh(math.sqrt(max(result.best_value, 1.0)))
    diag = dict(result.diagnostics)
    return SkeletonDistanceReport(
        m,
        value,
        maximizers,
        sum(mx.is_global for mx in maximizers),
        len(maximizers),
        diag,
        bool(diag.get("partial_enumeration", False)),
    )


def _problem(simplex, m):
    if not 0 <= m < simplex.n:
        raise InvalidInput(f"need 0 <= m < n, got m={m}, n={simplex.n}")
    faces = list(itertools.combinations(range(simplex.n + 1), m + 1))
    table = FaceTable(simplex.gram, faces)
    return faces, table, _maximin.MaximinProblem(table.evaluate, simplex.n + 1)


def _hyperbolic_distance(simplex):
    verts = simplex.vertices

    def distance(a, b):
        return _acosh(
            float(lorentz_form(a @ verts, b @ verts))
            / math.sqrt(float(norm2(a @ verts)) * float(norm2(b @ verts)))
        )

    return distance


def delta_n_m(simplex, m, opts=None):
    """Hausdorff distance from the simplex to its m-skeleton, by multi-start maximin.

    Only the multi-start solves are run and only the candidates attaining
    the best value are verified, so the report lists global maximizers; see
    ``enumerate_local_maximizers`` for the full census of local ones.
    """
    opts = opts or OptimizerOptions()
    faces, table, problem = _problem(simplex, m)
    local = OptimizerOptions(**{**opts.__dict__, "use_subsets": False, "verify_scope": "global"})
    result = _maximin.run_maximin(
        problem, len(faces), local, _hyperbolic_distance(simplex), simplex.n + 1
    )
    return _report(simplex, m, faces, result, opts, problem)


def enumerate_local_maximizers(simplex, m, opts=None):
    """Local maximizers of the distance to the m-skeleton.

    Besides the multi-start solves, every ``(n+1)``-set of m-faces is
    equalized and kept when no face outside the set is nearer.  More than
    ``opts.max_subsets`` sets are sampled at random and the report is flagged
    as partial.
    """
    opts = opts or OptimizerOptions()
    faces, table, problem = _problem(simplex, m)
    local = OptimizerOptions(**{**opts.__dict__, "use_subsets": True})
    result = _maximin.run_maximin(
        problem, len(faces), local, _hyperbolic_distance(simplex), simplex.n + 1
    )
    return _report(simplex, m, faces, result, opts, problem)


def min_face_distance(simplex, m, p):
    """``d(p, simplex^(m))`` for a point ``p`` of H^n."""
    return min(dist_to_face(p, f).distance for f in faces_of(simplex, m))


def max_face_inradius(simplex, dim):
    """Largest inradius among the ``dim``-faces of the simplex."""
    best = -math.inf
    for sub in itertools.combinations(range(simplex.n + 1), dim + 1):
        idx = list(sub)
        if dim == simplex.n:
            r = incenter_inradius(simplex).inradius
        else:
            r = inradius_from_gram(simplex.gram[np.ix_(idx, idx)])
        best = max(best, r)
    return best


def pythagorean_chain_bound(simplex, m, opts=None):
    """``(cosh delta_m, prod_{k=m+1..n} cosh(max inradius of k-faces))``."""
    report = delta_n_m(simplex, m, opts)
    lhs = math.cosh(report.value)
    rhs = 1.0
    for k in range(m + 1, simplex.n + 1):
        rhs *= math.cosh(max_face_inradius(simplex, k))
    return lhs, rhs


def _segment_cosh2(p, a, b):
    """``cosh^2`` of the distance from points ``p`` (rows) to segments ``[a_j, b_j]``.

    Returns an array of shape ``(len(p), len(a))``.
    """
    pa = lorentz_form(p[:, None, :], a[None, :, :])
    pb = lorentz_form(p[:, None, :], b[None, :, :])
    aa = norm2(a)[None, :]
    bb = norm2(b)[None, :]
    ab = lorentz_form(a, b)[None, :]
    pp = norm2(p)[:, None]
    out = np.full(pa.shape, np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        va = np.where(aa > EPS_Q, pa * pa / aa, np.inf)
        vb = np.where(bb > EPS_Q, pb * pb / bb, np.inf)
        out = np.minimum(out, np.minimum(va, vb))
        det = aa * bb - ab * ab
        ta = (bb * pa - ab * pb) / det
        tb = (aa * pb - ab * pa) / det
        both = (ta > 0) & (tb > 0) & (det != 0)
        vab = np.where(both, ta * pa + tb * pb, np.inf)
        out = np.minimum(out, vab)
    return out / pp


def hull_skeleton_bound_sampler(points, samples, seed=0, batch=2048):
    """Largest sampled distance from the hull of ``points`` to their 1-skeleton.

    Hull points are random convex combinations of the future lifts over
    random subsets of at most ``n + 1`` generators.
    """
    x = np.atleast_2d(np.asarray(points, dtype=float))
    if x.shape[0] < 2:
        raise InvalidInput("need at least two points")
    x = np.array([v / v[0] for v in (as_vector(v) for v in x)])
    rng = np.random.default_rng(seed)
    k, dim = x.shape
    pairs = np.array(list(itertools.combinations(range(k), 2)))
    a, b = x[pairs[:, 0]], x[pairs[:, 1]]
    best = 0.0
    done = 0
    while done < samples:
        size = min(batch, samples - done)
        w = np.zeros((size, k))
        top = min(k, dim)
        for i in range(size):
            r = int(rng.integers(2, top + 1)) if top >= 2 else 2
            idx = rng.choice(k, size=r, replace=False)
            w[i, idx] = rng.dirichlet(np.ones(r))
        p = w @ x
        keep = norm2(p) > EPS_Q
        p = p[keep]
        if p.shape[0]:
            h = np.min(_segment_cosh2(p, a, b), axis=1)
            h = np.maximum(h, 1.0)
            best = max(best, float(np.max(np.arccosh(np.sqrt(h)))))
        done += size
    return best
