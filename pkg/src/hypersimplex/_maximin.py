"""Multi-start local maximization of ``min_F value_F(lam)`` over the probability simplex.

The caller supplies ``evaluate(lam) -> (values, grads)`` with one row per
face.  Each local solve is the smooth epigraph problem

    maximize tau  subject to  value_F(lam) >= tau,  sum(lam) = 1,  lam >= lb

handed to SLSQP.  Candidates are deduplicated, checked for stationarity and
then confirmed as local maximizers by probing a small neighbourhood.
"""

from dataclasses import dataclass, field
import itertools
import math
import warnings

import numpy as np
from scipy.optimize import minimize, nnls
from scipy.stats import qmc

LAM_LB = 1e-10


@dataclass
class MaximinOptions:
    restarts: int | None = None
    seed: int = 0
    max_iter: int = 500
    eps_opt: float = 1e-9
    eps_dedup: float = 1e-6
    eps_val: float = 1e-7
    eps_active: float = 1e-7
    stationarity_tol: float = 1e-5
    probe_radii: tuple = (1e-4, 1e-3)
    probes: int = 24
    ascents: int = 4
    max_subsets: int = 2000
    use_subsets: bool = True
    verify: bool = True
    verify_scope: str = "all"  # "global": only check candidates near the best value

    def n_restarts(self, n):
        return 32 + 8 * n if self.restarts is None else self.restarts


@dataclass
class Candidate:
    lam: np.ndarray
    value: float
    active: list
    stationarity: float
    iterations: int
    source: str
    verified: bool = True


@dataclass
class MaximinResult:
    candidates: list
    best_value: float
    diagnostics: dict = field(default_factory=dict)


def project_simplex(y, lb=0.0):
    """Euclidean projection onto ``{x >= lb, sum x = 1}`` (sort-based)."""
    k = y.shape[0]
    shift = 1.0 - k * lb
    z = y - lb
    u = np.sort(z)[::-1]
    css = np.cumsum(u) - shift
    ind = np.arange(1, k + 1)
    rho = np.nonzero(u - css / ind > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(z - theta, 0.0) + lb


class MaximinProblem:
    """Objective ``min_F values(lam)[F]`` restricted to an optional subset of faces."""

    def __init__(self, evaluate, k):
        self.evaluate = evaluate
        self.k = k

    def f(self, lam, subset=None):
        vals, _ = self.evaluate(lam)
        if subset is not None:
            vals = vals[subset]
        return float(np.min(vals))

    def local_solve(self, lam0, opts, subset=None):
        k = self.k
        cache = {}

        def ev(x):
            key = x[:k].tobytes()
            if key not in cache:
                cache.clear()
                vals, grads = self.evaluate(x[:k])
                if subset is not None:
                    vals, grads = vals[subset], grads[subset]
                cache[key] = (vals, grads)
            return cache[key]

        def cons(x):
            vals, _ = ev(x)
            return vals - x[k]

        def cons_jac(x):
            _, grads = ev(x)
            return np.hstack([grads, -np.ones((grads.shape[0], 1))])

        lam0 = project_simplex(np.asarray(lam0, dtype=float), LAM_LB)
        vals0, _ = ev(np.concatenate([lam0, [0.0]]))
        x0 = np.concatenate([lam0, [float(np.min(vals0))]])
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            res = self._slsqp(cons, cons_jac, x0, opts)
        lam = project_simplex(np.clip(res.x[:k], LAM_LB, None), LAM_LB)
        return lam, int(res.nit), bool(res.success) or res.status in (8, 9)

    def _slsqp(self, cons, cons_jac, x0, opts):
        k = self.k
        obj = np.zeros(k + 1)
        obj[k] = -1.0
        return minimize(
            lambda x: -x[k],
            x0,
            jac=lambda x: obj,
            method="SLSQP",
            bounds=[(LAM_LB, 1.0)] * k + [(None, None)],
            constraints=[
                {"type": "ineq", "fun": cons, "jac": cons_jac},
                {"type": "eq", "fun": lambda x: np.sum(x[:k]) - 1.0, "jac": lambda x: np.concatenate([np.ones(k), [0.0]])},
            ],
            options={"maxiter": opts.max_iter, "ftol": 1e-15},
        )

    def stationarity(self, lam, opts, subset=None):
        """KKT residual of the epigraph problem at ``lam`` and the active faces."""
        vals, grads = self.evaluate(lam)
        faces = np.arange(vals.shape[0]) if subset is None else np.asarray(subset)
        vals, grads = vals[faces], grads[faces]
        fmin = float(np.min(vals))
        act = np.nonzero(vals <= fmin + opts.eps_active * max(1.0, abs(fmin)))[0]
        g = grads[act]
        scale = max(float(np.mean(np.linalg.norm(g, axis=1))), 1e-300)
        g = g / scale
        k = self.k
        at_bound = np.nonzero(lam <= 10 * LAM_LB)[0]
        cols = [g.T]
        if at_bound.size:
            cols.append(np.eye(k)[:, at_bound])
        cols.append(np.ones((k, 1)))
        cols.append(-np.ones((k, 1)))
        a = np.hstack(cols)
        w = 1e3
        row = np.zeros(a.shape[1])
        row[: g.shape[0]] = w
        a = np.vstack([a, row])
        b = np.zeros(k + 1)
        b[k] = w
        _, resid = nnls(a, b, maxiter=50 * a.shape[1])
        return float(resid), [int(faces[i]) for i in act]

    def is_local_max(self, lam, value, opts, rng, subset=None):
        """Probe nearby points and re-ascend from perturbations.

        A ridge saddle of a maximin objective only rises at second order in
        a thin set of directions, so random probes alone miss it; a local
        ascent started next to it escapes.
        """
        slack = max(opts.eps_val * 1e-2, 1e-10) * max(1.0, abs(value))
        for r in opts.probe_radii:
            for _ in range(opts.probes):
                trial = project_simplex(lam + self._direction(rng, r), LAM_LB)
                if self.f(trial, subset) > value + slack:
                    return False
        ascend_slack = opts.eps_val * max(1.0, abs(value))
        for r in opts.probe_radii:
            for _ in range(opts.ascents):
                start = project_simplex(lam + self._direction(rng, r), LAM_LB)
                found, _, _ = self.local_solve(start, opts, subset)
                if self.f(found, subset) > value + ascend_slack:
                    return False
        return True

    def _direction(self, rng, r):
        d = rng.standard_normal(self.k)
        d -= d.mean()
        return d * (r / max(np.linalg.norm(d), 1e-300))


def _dedupe(cands, distance, eps):
    cands = sorted(cands, key=lambda c: (-c.value, tuple(np.round(c.lam, 12))))
    kept = []
    for c in cands:
        if all(distance(c.lam, k.lam) > eps for k in kept):
            kept.append(c)
    return kept


def default_starts(k, count, rng):
    """Uniform weights, shifted facet barycenters and Latin-hypercube samples."""
    starts = [np.full(k, 1.0 / k)]
    for j in range(k):
        s = np.full(k, 1.0 / k)
        s[j] = 0.0
        s /= s.sum()
        starts.append(0.7 * s + 0.3 / k)
    extra = max(0, count - len(starts))
    if extra:
        lhs = qmc.LatinHypercube(d=k, seed=rng).random(extra)
        w = -np.log(np.clip(lhs, 1e-12, 1.0))
        starts.extend(w / w.sum(axis=1, keepdims=True))
    return starts[: max(count, 1)]


def run_maximin(problem, n_faces, opts, distance, group_size, starts=None):
    """Collect verified local maximizers from multi-start and face-subset solves."""
    rng = np.random.default_rng(opts.seed)
    k = problem.k
    if starts is None:
        starts = default_starts(k, opts.n_restarts(k - 1), rng)
    raw = []
    iters = 0
    converged = 0
    for lam0 in starts:
        lam, nit, ok = problem.local_solve(lam0, opts)
        iters += nit
        converged += ok
        raw.append(Candidate(lam, problem.f(lam), [], 0.0, nit, "multistart"))

    subsets_total = math.comb(n_faces, group_size) if n_faces >= group_size else 0
    partial = False
    subsets_tried = 0
    if opts.use_subsets and subsets_total:
        if subsets_total <= opts.max_subsets:
            subsets = itertools.combinations(range(n_faces), group_size)
        else:
            partial = True
            subsets = (
                tuple(sorted(rng.choice(n_faces, size=group_size, replace=False)))
                for _ in range(opts.max_subsets)
            )
        uniform = np.full(k, 1.0 / k)
        for sub in subsets:
            subsets_tried += 1
            sub = list(sub)
            lam, nit, ok = problem.local_solve(uniform, opts, subset=sub)
            iters += nit
            sub_val = problem.f(lam, sub)
            full_val = problem.f(lam)
            if full_val < sub_val - opts.eps_val * max(1.0, abs(sub_val)):
                continue  # a face outside the subset is nearer
            raw.append(Candidate(lam, full_val, [], 0.0, nit, "subset"))

    if not raw or converged == 0 and not any(c.source == "subset" for c in raw):
        from .errors import NonConvergence

        best = max((c.value for c in raw), default=None)
        raise NonConvergence("no local solve converged", best)

    cands = _dedupe(raw, distance, opts.eps_dedup)
    best_value = max(c.value for c in cands)
    if opts.verify_scope == "global":
        cands = [c for c in cands if c.value >= best_value - opts.eps_val * max(1.0, abs(best_value))]
    verified = []
    for c in cands:
        c.stationarity, c.active = problem.stationarity(c.lam, opts)
        if opts.verify:
            c.verified = c.stationarity <= opts.stationarity_tol and problem.is_local_max(
                c.lam, c.value, opts, rng
            )
        if c.verified:
            verified.append(c)
    diagnostics = {
        "starts": len(starts),
        "converged_starts": int(converged),
        "iterations": int(iters),
        "subsets_total": int(subsets_total),
        "subsets_tried": int(subsets_tried),
        "partial_enumeration": partial,
        "raw_candidates": len(raw),
        "distinct_candidates": len(cands),
        "rejected_candidates": len(cands) - len(verified),
        "max_stationarity": max((c.stationarity for c in verified), default=0.0),
    }
    return MaximinResult(verified, best_value, diagnostics)
