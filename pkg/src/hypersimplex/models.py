"""Hyperboloid, Cayley-Klein and Euclidean-ball pictures of H^n and its boundary.

Points of H^n are lifts ``x`` with ``<x, x> = 1`` and ``x0 > 0``; boundary points
are null lifts normalized to height ``x0 = 1``.  The Cayley-Klein chart and the
Euclidean ball model share the affine coordinates ``x[1:] / x[0]``; they only
differ in which metric is put on them.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import (
    DegenerateInput,
    NumericalInconsistency,
    OutsideBall,
    SameHyperplane,
)
from .lorentz import EPS_GRAM, HalfSpace, as_vector, lorentz_form, norm2, polar

EPS_CFG = 1e-9
CLAMP_TOL = 1e-7


def _acosh(v):
    if v < 1.0:
        if v < 1.0 - CLAMP_TOL:
            raise NumericalInconsistency(f"acosh argument {v!r} below 1")
        v = 1.0
    return math.acosh(v)


def origin(n):
    """The base point ``o = (1, 0, ..., 0)`` of H^n."""
    o = np.zeros(n + 1)
    o[0] = 1.0
    return o


def hpoint(x):
    """Normalize a future timelike vector onto the upper hyperboloid."""
    x = as_vector(x)
    q = norm2(x)
    if not q > 0:
        raise DegenerateInput(f"not a timelike vector: <x,x> = {q}")
    if x[0] < 0:
        x = -x
    return x / math.sqrt(q)


def boundary_point(x):
    """Normalize a future null vector to height 1."""
    x = as_vector(x)
    if abs(x[0]) == 0:
        raise DegenerateInput("null vector with zero height")
    x = x / x[0]
    if abs(norm2(x)) > 1e-7:
        raise DegenerateInput(f"not a null vector: <x,x> = {norm2(x)}")
    return x


def is_ideal(x, tol=EPS_GRAM):
    """True when the lift is null, i.e. represents a point of the boundary."""
    x = as_vector(x)
    return abs(norm2(x)) <= tol * max(1.0, float(x[0]) ** 2)


def normalize_lift(x):
    """Canonical lift: unit hyperboloid point, or height-1 null vector."""
    return boundary_point(x) if is_ideal(x) else hpoint(x)


def to_klein(p):
    """Affine chart coordinates ``p[1:] / p[0]``."""
    p = as_vector(p)
    if p[0] <= 0:
        raise DegenerateInput("lift must have positive height")
    return p[1:] / p[0]


def from_klein(k, eps=EPS_GRAM):
    """Lift affine chart coordinates back to the hyperboloid or the null cone."""
    k = np.asarray(k, dtype=float)
    r2 = float(np.dot(k, k))
    r = math.sqrt(r2)
    if r > 1.0 + eps:
        raise OutsideBall(f"chart point has norm {r} > 1")
    if abs(r - 1.0) <= eps:
        return np.concatenate(([1.0], k / r))
    return np.concatenate(([1.0], k)) / math.sqrt(1.0 - r2)


def dist_point_point(x, y):
    """Hyperbolic distance, ``cosh d = <x, y> / sqrt(<x,x><y,y>)``."""
    x = as_vector(x)
    y = as_vector(y)
    c = lorentz_form(x, y) / math.sqrt(norm2(x) * norm2(y))
    return _acosh(c)


def dist_point_hyperplane(x, h):
    """Distance from ``x`` to ``H_u`` and the side ``sign(<u, x>)`` it lies on."""
    x = hpoint(x)
    s = float(lorentz_form(h.u, x))
    sign = 0 if abs(s) < EPS_GRAM else (1 if s > 0 else -1)
    return math.asinh(abs(s)), sign


@dataclass(frozen=True)
class Intersecting:
    angle: float


@dataclass(frozen=True)
class Asymptotic:
    pass


@dataclass(frozen=True)
class Ultraparallel:
    distance: float


def _check_not_proportional(hu, hv):
    u, v = hu.u, hv.u
    scale = max(1.0, float(np.max(np.abs(u))), float(np.max(np.abs(v))))
    if min(np.max(np.abs(u - v)), np.max(np.abs(u + v))) <= 1e-9 * scale:
        raise SameHyperplane("the two half-spaces share their hyperplane")


def classify_hyperplanes(hu, hv, eps_cfg=EPS_CFG):
    """Relative position of two hyperplanes from ``|<u, v>|``."""
    _check_not_proportional(hu, hv)
    c = float(lorentz_form(hu.u, hv.u))
    a = abs(c)
    if a < 1.0 - eps_cfg:
        return Intersecting(math.acos(c))
    if a <= 1.0 + eps_cfg:
        return Asymptotic()
    return Ultraparallel(math.acosh(a))


def bisectors(hu, hv, eps_cfg=EPS_CFG):
    """Hyperplanes equidistant from ``H_u`` and ``H_v``.

    ``u - s v`` with ``s = sign(<u, v>)`` always gives one; ``u + s v`` gives
    the second only when the hyperplanes intersect.
    """
    config = classify_hyperplanes(hu, hv, eps_cfg)
    c = float(lorentz_form(hu.u, hv.u))
    s = 1.0 if c >= 0 else -1.0
    out = [polar(hu.u - s * hv.u)]
    if isinstance(config, Intersecting):
        out.append(polar(hu.u + s * hv.u))
    return out


def cross_ratio_distance(x, y):
    """Distance as half the log of the cross-ratio with the ideal endpoints.

    Works in the 1-d coordinate ``t`` along ``kx + t (ky - kx)`` of the Klein
    chart, where ``x`` sits at 0, ``y`` at 1 and the endpoints at the roots.
    """
    kx = to_klein(hpoint(x))
    ky = to_klein(hpoint(y))
    d = ky - kx
    a = float(np.dot(d, d))
    if a <= 1e-30:
        raise DegenerateInput("coincident points")
    b = float(np.dot(kx, d))
    c = float(np.dot(kx, kx)) - 1.0
    disc = math.sqrt(b * b - a * c)
    # stable roots of a t^2 + 2 b t + c = 0
    q = -(b + math.copysign(disc, b)) if b != 0 else disc
    r1 = q / a
    r2 = c / q
    t_lo, t_hi = min(r1, r2), max(r1, r2)
    cr = ((t_lo - 1.0) * (0.0 - t_hi)) / ((t_lo - 0.0) * (1.0 - t_hi))
    return 0.5 * math.log(abs(cr))


def project_to_hyperplane(x, h):
    """Orthogonal projection onto ``H_u``: normalization of ``x + <x, u> u``."""
    x = hpoint(x)
    return hpoint(x + lorentz_form(x, h.u) * h.u)


def dist_point_to_geodesic(p, a, b):
    """Distance from ``p`` to the complete geodesic with ideal endpoints ``a``, ``b``.

    ``cosh d = sqrt(2 <p,a><p,b> / <a,b>)``.
    """
    p = hpoint(p)
    a = as_vector(a)
    b = as_vector(b)
    ab = float(lorentz_form(a, b))
    scale = max(1.0, float(abs(a[0] * b[0])))
    if ab <= 1e-12 * scale:
        raise DegenerateInput("endpoints coincide")
    pa = float(lorentz_form(p, a))
    pb = float(lorentz_form(p, b))
    return _acosh(math.sqrt(max(0.0, 2.0 * pa * pb / ab)))


def intersection_pole(hu, hv):
    """Vector orthogonal to both polars in R^{1,2}: their common point in the projective plane.

    Timelike for intersecting lines, null for asymptotic ones and spacelike
    (the pole of the common perpendicular) for ultraparallel ones.
    """
    u, v = hu.u, hv.u
    if u.shape[0] != 3:
        raise DegenerateInput("only defined for H^2")
    w = np.cross(u * np.array([1.0, -1.0, -1.0]), v * np.array([1.0, -1.0, -1.0]))
    # w is Euclidean-orthogonal to eta u and eta v, hence Lorentz-orthogonal to u and v
    if w[0] < 0:
        w = -w
    return w


__all__ = [
    "Asymptotic",
    "HalfSpace",
    "Intersecting",
    "Ultraparallel",
    "bisectors",
    "boundary_point",
    "classify_hyperplanes",
    "cross_ratio_distance",
    "dist_point_hyperplane",
    "dist_point_point",
    "dist_point_to_geodesic",
    "from_klein",
    "hpoint",
    "intersection_pole",
    "is_ideal",
    "normalize_lift",
    "origin",
    "project_to_hyperplane",
    "to_klein",
]
