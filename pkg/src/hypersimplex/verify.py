"""Property suites run by ``hypersimplex verify``.

Each suite returns a list of ``Check`` records: an invariant name, the worst
residual seen over all cases, the tolerance it is held to and the first
failing case (if any), ready to be dumped as JSON.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from . import skeleton as sk
from .disphenoid import disphenoid_maximizer_census
from .models import from_klein
from .simplex import (
    incenter_inradius,
    random_ideal_simplex,
    random_klein_points,
    random_simplex,
    regular_ideal_simplex,
    validate_dual_gram,
)

LOG_1_SQRT2 = math.log(1.0 + math.sqrt(2.0))


@dataclass
class Check:
    name: str
    worst: float
    tol: float
    failure: dict = field(default=None)

    @property
    def passed(self):
        return self.failure is None and self.worst <= self.tol


class _Tracker:
    def __init__(self, name, tol):
        self.check = Check(name, 0.0, tol)

    def record(self, residual, case):
        residual = float(residual)
        if not math.isfinite(residual):
            residual = math.inf
        self.check.worst = max(self.check.worst, residual)
        if residual > self.check.tol and self.check.failure is None:
            self.check.failure = {"residual": residual, **case}


def icl_residual(simplex):
    """Largest ``|cosh^2 r (1 - cos t'_ij) - (1 + cos t*_ij)|`` over ``i != j``."""
    data = incenter_inradius(simplex)
    c2 = math.cosh(data.inradius) ** 2
    res = c2 * (1.0 - data.visual_gram) - (1.0 + simplex.dual_gram)
    k = res.shape[0]
    return float(np.max(np.abs(res[~np.eye(k, dtype=bool)])))


def suite_gram(n_range, seed, samples):
    rng = np.random.default_rng(seed)
    inv = _Tracker("gram_duality", 1e-8)
    val = _Tracker("dual_gram_valid", 0.0)
    for n in n_range:
        for i in range(samples):
            s = random_simplex(rng, n, ideal_prob=0.3)
            case = {"n": n, "case": i, "klein": s.klein_vertices().tolist()}
            inv.record(np.max(np.abs(s.gram @ s.dual_gram - np.eye(n + 1))), case)
            v = validate_dual_gram(s.dual_gram)
            val.record(0.0 if v else 1.0, {**case, "reason": v.reason})
    return [inv.check, val.check]


def suite_inradius(n_range, seed, samples):
    rng = np.random.default_rng(seed)
    reg = _Tracker("regular_ideal_tanh_inradius", 1e-10)
    bound = _Tracker("ideal_inradius_bound", 1e-9)
    for n in n_range:
        data = incenter_inradius(regular_ideal_simplex(n))
        reg.record(abs(math.tanh(data.inradius) - 1.0 / n), {"n": n})
        for i in range(samples):
            s = random_ideal_simplex(rng, n)
            excess = incenter_inradius(s).inradius - math.atanh(1.0 / n)
            bound.record(max(excess, 0.0), {"n": n, "case": i, "klein": s.klein_vertices().tolist()})
    return [reg.check, bound.check]


def suite_icl(n_range, seed, samples):
    rng = np.random.default_rng(seed)
    icl = _Tracker("inradius_cosine_law", 1e-8)
    for n in n_range:
        for i in range(samples):
            s = random_simplex(rng, n, ideal_prob=0.3)
            icl.record(icl_residual(s), {"n": n, "case": i, "klein": s.klein_vertices().tolist()})
    return [icl.check]


def suite_skeleton(n_range, seed, samples):
    rng = np.random.default_rng(seed)
    checks = {m: _Tracker(f"edge_distance_{m}", 1e-9) for m in ("exact", "pgd", "closed")}
    opt = _Tracker("delta_n_1_regular", 1e-7)
    chain = _Tracker("pythagorean_chain", 1e-6)
    for n in n_range:
        s = regular_ideal_simplex(n)
        o = incenter_inradius(s).incenter
        target = (n - 1) / (2.0 * n)
        face = sk.Face(s, (0, 1))
        for method, tr in checks.items():
            d = sk.dist_to_face(o, face, method=method).distance
            tr.record(abs(math.tanh(d) ** 2 - target), {"n": n, "method": method})
        if n <= 4:
            rep = sk.delta_n_m(s, 1)
            opt.record(abs(math.tanh(rep.value) ** 2 - target), {"n": n, "value": rep.value})
            for i in range(min(samples, 5)):
                t = random_ideal_simplex(rng, n)
                lhs, rhs = sk.pythagorean_chain_bound(t, 1)
                chain.record(max(lhs - rhs, 0.0), {"n": n, "case": i, "klein": t.klein_vertices().tolist()})
    return [*(t.check for t in checks.values()), opt.check, chain.check]


CANONICAL_CENSUS = (
    (complex(0.0, math.sqrt(3.0)), (1, 1)),
    (complex(0.0, 1.3), (4, 4)),
    (complex(0.2, 1.3), (4, 1)),
)


def suite_disphenoid(n_range, seed, samples):
    out = []
    for z, expected in CANONICAL_CENSUS:
        got = tuple(disphenoid_maximizer_census(z))
        tr = _Tracker(f"census_{z.real:g}{z.imag:+g}i", 0.0)
        tr.record(0.0 if got == expected else 1.0, {"z": [z.real, z.imag], "expected": expected, "got": got})
        out.append(tr.check)
    return out


def suite_hull_bound(n_range, seed, samples):
    rng = np.random.default_rng(seed)
    tr = _Tracker("hull_to_1_skeleton", LOG_1_SQRT2 + 1e-7)
    sets = 20
    per = max(1, samples // sets)
    for i in range(sets):
        n = list(n_range)[i % len(n_range)]
        count = int(rng.integers(n + 1, n + 5))
        pts = random_klein_points(rng, n, count, ideal_prob=0.5)
        lifts = np.array([from_klein(p) for p in pts])
        worst = sk.hull_skeleton_bound_sampler(lifts, per, seed=int(rng.integers(2**31)))
        tr.record(worst, {"n": n, "set": i, "klein": pts.tolist()})
    return [tr.check]


SUITES = {
    "gram": (suite_gram, range(2, 6), 100),
    "inradius": (suite_inradius, range(2, 11), 100),
    "icl": (suite_icl, range(2, 5), 100),
    "skeleton": (suite_skeleton, range(2, 11), 3),
    "disphenoid": (suite_disphenoid, range(3, 4), 0),
    "hull-bound": (suite_hull_bound, range(3, 7), 10000),
}


def run_suite(name, n_range=None, seed=0, samples=None):
    fn, default_range, default_samples = SUITES[name]
    return fn(
        list(n_range) if n_range is not None else list(default_range),
        seed,
        default_samples if samples is None else samples,
    )
