"""Deterministic SVG diagrams of Klein-disk configurations and disphenoid maximizers.

Every figure is an 800x800 canvas.  Elements carry a ``class`` attribute so
that tests and downstream tooling can count them; coordinates are printed with
three decimals, so the same input always gives byte-identical output.
"""

import math

import numpy as np

from .disphenoid import EDGES, disphenoid, disphenoid_maximizer_census
from .errors import DegenerateInput, InvalidParameter
from .lorentz import polar
from .models import bisectors, classify_hyperplanes, intersection_pole
from .simplex import incentred_model, simplex_from_klein

SIZE = 800

PALETTE = {
    "boundary": "#000000",
    "chord": "#1f4e9e",
    "bisector": "#c0392b",
    "polar": "#7d3c98",
    "edge": "#1f4e9e",
    "vertex": "#1f4e9e",
    "incircle": "#27ae60",
    "tangency": "#27ae60",
    "maximizer": "#c0392b",
    "local": "#e67e22",
    "label": "#333333",
}

HEADER = (
    "palette: boundary #000000 stroke; chord/edge #1f4e9e stroke; "
    "bisector #c0392b dashed stroke; polar #7d3c98 fill; vertex #1f4e9e fill; "
    "incircle #27ae60 stroke; tangency #27ae60 fill; global maximizer #c0392b fill; "
    "local maximizer #e67e22 stroke; label #333333 text"
)


def _f(x):
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class Canvas:
    """Collects SVG elements and maps a square world window onto the canvas."""

    def __init__(self, header=HEADER):
        self.header = header
        self.items = []

    def line(self, p, q, cls, color, dashed=False, width=2.0):
        dash = ' stroke-dasharray="8,6"' if dashed else ""
        self.items.append(
            f'<line class="{cls}" x1="{_f(p[0])}" y1="{_f(p[1])}" x2="{_f(q[0])}" y2="{_f(q[1])}" '
            f'stroke="{color}" stroke-width="{_f(width)}"{dash}/>'
        )

    def circle(self, c, r, cls, stroke="none", fill="none", width=2.0):
        self.items.append(
            f'<circle class="{cls}" cx="{_f(c[0])}" cy="{_f(c[1])}" r="{_f(r)}" '
            f'stroke="{stroke}" fill="{fill}" stroke-width="{_f(width)}"/>'
        )

    def text(self, p, s, cls="label", size=16):
        s = s.replace("&", "&amp;").replace("<", "&lt;")
        self.items.append(
            f'<text class="{cls}" x="{_f(p[0])}" y="{_f(p[1])}" font-family="monospace" '
            f'font-size="{size}" fill="{PALETTE["label"]}">{s}</text>'
        )

    def render(self):
        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f"<!-- {self.header} -->",
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">',
            f'<rect class="background" x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>',
        ]
        out.extend(self.items)
        out.append("</svg>")
        return "\n".join(out) + "\n"


class Window:
    """Maps the world square ``[-r, r]^2`` (y up) onto a pixel box."""

    def __init__(self, radius, x0=0.0, y0=0.0, size=SIZE, margin=40.0):
        self.radius = radius
        self.x0, self.y0 = x0, y0
        self.scale = (size - 2 * margin) / (2 * radius)
        self.cx = x0 + size / 2
        self.cy = y0 + size / 2

    def __call__(self, p):
        return (self.cx + self.scale * p[0], self.cy - self.scale * p[1])


def _chord(u):
    """Endpoints on the unit circle of the line ``u1 x + u2 y = u0``."""
    a = np.asarray(u[1:3], dtype=float)
    na = float(np.linalg.norm(a))
    if na == 0:
        raise DegenerateInput("line at infinity")
    dist = float(u[0]) / na
    if abs(dist) >= 1.0:
        raise DegenerateInput("line misses the disk")
    n = a / na
    foot = dist * n
    half = math.sqrt(1.0 - dist * dist)
    t = np.array([-n[1], n[0]])
    return foot - half * t, foot + half * t


def _halfspace_from_angles(a_deg, b_deg):
    a, b = math.radians(a_deg), math.radians(b_deg)
    p = np.array([1.0, math.cos(a), math.sin(a)])
    q = np.array([1.0, math.cos(b), math.sin(b)])
    # the polar of the chord is orthogonal to both null endpoints
    w = np.cross(p * np.array([1.0, -1.0, -1.0]), q * np.array([1.0, -1.0, -1.0]))
    return polar(w)


def config_hyperplanes(chords=((100.0, 200.0), (250.0, 330.0))):
    """Two geodesics given by the angles of their ideal endpoints, their bisectors and pole."""
    if len(chords) != 2:
        raise InvalidParameter("exactly two chords are needed")
    try:
        hu, hv = (_halfspace_from_angles(a, b) for a, b in chords)
        config = classify_hyperplanes(hu, hv)
    except (DegenerateInput, ValueError) as exc:
        raise InvalidParameter(f"unrenderable chords: {exc}") from exc
    pole = intersection_pole(hu, hv)
    pole_k = None if abs(pole[0]) < 1e-12 else pole[1:] / pole[0]
    radius = 1.1
    if pole_k is not None:
        radius = min(max(radius, float(np.max(np.abs(pole_k))) + 0.1), 6.0)
    win = Window(radius)
    cv = Canvas()
    cv.circle(win((0.0, 0.0)), win.scale, "boundary", stroke=PALETTE["boundary"])
    for h in (hu, hv):
        p, q = _chord(h.u)
        cv.line(win(p), win(q), "chord", PALETTE["chord"])
    for b in bisectors(hu, hv):
        try:
            p, q = _chord(b.u)
        except DegenerateInput:
            continue
        cv.line(win(p), win(q), "bisector", PALETTE["bisector"], dashed=True)
    if pole_k is not None and np.max(np.abs(pole_k)) <= radius:
        cv.circle(win(pole_k), 6.0, "polar", fill=PALETTE["polar"])
    cv.text((20.0, 30.0), type(config).__name__.lower())
    return cv.render()


def incentred_model_figure(klein_vertices=None):
    """Incentred picture of a hyperbolic triangle: vertices, sides, incircle and tangency points."""
    if klein_vertices is None:
        klein_vertices = [[math.cos(a), math.sin(a)] for a in (math.pi / 2 + 2 * math.pi * k / 3 for k in range(3))]
    try:
        pts = np.asarray(klein_vertices, dtype=float)
    except ValueError as exc:
        raise InvalidParameter(f"unrenderable vertices: {exc}") from exc
    if pts.shape != (3, 2):
        raise InvalidParameter("the incentred model figure needs three points of the disk")
    try:
        model = incentred_model(simplex_from_klein(pts))
    except (DegenerateInput, ValueError) as exc:
        raise InvalidParameter(f"unrenderable triangle: {exc}") from exc
    win = Window(1.1)
    cv = Canvas()
    cv.circle(win((0.0, 0.0)), win.scale, "boundary", stroke=PALETTE["boundary"])
    v = model.euclidean_vertices
    for i in range(3):
        cv.line(win(v[i]), win(v[(i + 1) % 3]), "chord", PALETTE["chord"])
    cv.circle(win((0.0, 0.0)), model.euclidean_inradius * win.scale, "incircle", stroke=PALETTE["incircle"])
    for p in v:
        cv.circle(win(p), 6.0, "vertex", fill=PALETTE["vertex"])
    for p in model.euclidean_tangency:
        cv.circle(win(p), 5.0, "tangency", fill=PALETTE["tangency"])
    cv.text((20.0, 30.0), f"tanh r = {model.euclidean_inradius:.6f}")
    return cv.render()


def disphenoid_figure(z=complex(0.2, 1.3), opts=None):
    """Three orthographic projections of a disphenoid with its edge-distance maximizers."""
    d = disphenoid(z)
    census = disphenoid_maximizer_census(z, opts)
    verts = d.vertices - d.vertices.mean(axis=0)
    pts = census.points - d.vertices.mean(axis=0)
    radius = 1.15 * float(np.max(np.abs(verts)))
    top = census.values[0] if len(census.values) else 0.0
    cv = Canvas()
    panels = [((0, 1), 0.0, 0.0, "xy"), ((0, 2), 400.0, 0.0, "xz"), ((1, 2), 0.0, 400.0, "yz")]
    for axes, x0, y0, name in panels:
        win = Window(radius, x0, y0, size=SIZE // 2, margin=20.0)
        proj = verts[:, axes]
        for i, j in EDGES:
            cv.line(win(proj[i]), win(proj[j]), "edge", PALETTE["edge"])
        for k, p in enumerate(pts):
            q = win(p[list(axes)])
            if census.values[k] >= top - 1e-7:
                cv.circle(q, 6.0, "maximizer", fill=PALETTE["maximizer"])
            else:
                cv.circle(q, 6.0, "local", stroke=PALETTE["local"])
        cv.text((x0 + 10.0, y0 + 20.0), name, size=14)
    cv.text((420.0, 440.0), f"z = {z.real:.3f}{z.imag:+.3f}i")
    cv.text((420.0, 470.0), f"local = {census.local}, global = {census.global_}")
    return cv.render()


FIGURES = {
    "config-hyperplanes": config_hyperplanes,
    "incentred-model": incentred_model_figure,
    "disphenoid-maximizers": disphenoid_figure,
}


__all__ = ["FIGURES", "PALETTE", "config_hyperplanes", "disphenoid_figure", "incentred_model_figure"]
