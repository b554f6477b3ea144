"""Deterministic SVG drawings: portraits, dual trees, polygon orbits and the
leaf length graph.

Every coordinate goes through :func:`q` (6-decimal rounding) so reruns give
identical bytes.  Elements are written in construction order.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape, quoteattr

from .angles import Angle, arc_length, format_angle, format_fraction
from .chords import Chord, tau, tau_fixed_points
from .portraits import SiblingPortrait, central_strip
from .trees import PlaneBicoloredTree

__all__ = ["Scene", "render_orbit", "render_portrait", "render_tau", "render_tree"]

C_FILL = "#f4d58d"
R_FILL = "#bfd7ea"
STRIP_STROKE = "#c0392b"
PALETTE = ("#e07a5f", "#3d85c6", "#81b29a", "#f2cc8f", "#9b5de5", "#00bbf9", "#f15bb5", "#6a994e")


def q(x: float) -> str:
    """Fixed 6-decimal quantization (also folds -0 into 0)."""
    return f"{round(x, 6) + 0.0:.6f}"


def unit_point(t: Angle) -> tuple[float, float]:
    a = 2 * math.pi * float(t)
    return round(math.cos(a), 6) + 0.0, round(math.sin(a), 6) + 0.0


class Scene:
    """Square canvas with the unit circle centred in it."""

    def __init__(self, size: int = 400, margin: int = 40, title: str | None = None):
        self.size = size
        self.margin = margin
        self.title = title
        self.elements: list[str] = []

    @property
    def radius(self) -> float:
        return (self.size - 2 * self.margin) / 2

    def xy(self, ux: float, uy: float) -> tuple[str, str]:
        c = self.size / 2
        return q(c + self.radius * ux), q(c - self.radius * uy)

    def at(self, t: Angle, scale: float = 1.0) -> tuple[str, str]:
        ux, uy = unit_point(t)
        return self.xy(ux * scale, uy * scale)

    def add(self, tag: str, attrs: dict, text: str | None = None) -> None:
        parts = " ".join(f"{k.replace('_', '-')}={quoteattr(str(v))}" for k, v in attrs.items())
        if text is None:
            self.elements.append(f"<{tag} {parts}/>")
        else:
            self.elements.append(f"<{tag} {parts}>{escape(text)}</{tag}>")

    def circle(self, **style) -> None:
        c = q(self.size / 2)
        self.add("circle", {"class": "disk", "cx": c, "cy": c, "r": q(self.radius), "fill": "none",
                            "stroke": "#333333", **style})

    def chord(self, ch: Chord, cls: str = "chord", **style) -> None:
        x1, y1 = self.at(ch.a)
        x2, y2 = self.at(ch.b)
        self.add("line", {"class": cls, "x1": x1, "y1": y1, "x2": x2, "y2": y2, "stroke": "#222222",
                          "stroke_width": "1.5", **style})

    def arc_path(self, arcs: Sequence[tuple[Angle, Angle]]) -> str:
        """Closed path running ccw along each arc and straight to the next."""
        r = q(self.radius)
        cmds = []
        for i, (a, b) in enumerate(arcs):
            xa, ya = self.at(a)
            xb, yb = self.at(b)
            cmds.append(f"{'M' if i == 0 else 'L'} {xa} {ya}")
            large = 1 if arc_length(a, b) > Fraction(1, 2) else 0
            # screen y points down, so ccw on the page is sweep-flag 0
            cmds.append(f"A {r} {r} 0 {large} 0 {xb} {yb}")
        cmds.append("Z")
        return " ".join(cmds)

    def polygon(self, vertices: Sequence[Angle], cls: str, **style) -> None:
        pts = " ".join(",".join(self.at(v)) for v in vertices)
        self.add("polygon", {"class": cls, "points": pts, **style})

    def label(self, t: Angle, text: str, scale: float = 1.12) -> None:
        x, y = self.at(t, scale)
        self.add("text", {"class": "label", "x": x, "y": y, "font_size": "10", "text_anchor": "middle",
                          "dominant_baseline": "middle", "font_family": "sans-serif"}, text)

    def to_svg(self) -> str:
        s = self.size
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" '
            f'viewBox="0 0 {s} {s}">',
        ]
        if self.title:
            head.append(f"<title>{escape(self.title)}</title>")
        return "\n".join(head + self.elements + ["</svg>"]) + "\n"


def render_portrait(p: SiblingPortrait, size: int = 400, labels: bool = True) -> str:
    coll = p.collection
    sc = Scene(size, title=f"sibling portrait d={coll.d} image {coll.image}")
    for r in p.regions:
        sc.add("path", {"class": f"region {r.kind}", "d": sc.arc_path(r.arc_angles),
                        "fill": C_FILL if r.kind == "C" else R_FILL, "stroke": "none"})
    sc.circle()
    for leaf in coll.leaves:
        sc.chord(leaf)
    strip = central_strip(p)
    if strip is not None:
        for comp in strip.components:
            sc.add("path", {"class": "strip", "d": sc.arc_path(comp.arc_angles), "fill": "none",
                            "stroke": STRIP_STROKE, "stroke_width": "3"})
    if labels:
        for t in coll.points:
            sc.label(t, format_angle(t))
    return sc.to_svg()


def render_tau(d: int, samples: int = 0, size: int = 400) -> str:
    """Graph of the leaf length map on ``[0, 1/2]`` with the diagonal.

    The polyline passes through every breakpoint ``i/(2d)`` exactly (the map
    is linear in between); ``samples > 0`` adds the grid ``j/samples``.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    half = Fraction(1, 2)
    breaks = [Fraction(i, 2 * d) for i in range(d + 1)]
    xs = set(breaks)
    if samples > 0:
        xs |= {Fraction(j, samples) for j in range(samples // 2 + 1)}
    xs = sorted(x for x in xs if x <= half)
    sc = Scene(size, title=f"leaf length map d={d}")
    side = size - 2 * sc.margin

    def pt(x: Fraction, y: Fraction) -> tuple[str, str]:
        return q(sc.margin + side * float(x / half)), q(size - sc.margin - side * float(y / half))

    x0, y0 = pt(Fraction(0), Fraction(0))
    x1, y1 = pt(half, half)
    sc.add("rect", {"class": "frame", "x": x0, "y": y1, "width": q(side), "height": q(side),
                    "fill": "none", "stroke": "#999999"})
    sc.add("line", {"class": "identity", "x1": x0, "y1": y0, "x2": x1, "y2": y1, "stroke": "#999999",
                    "stroke_dasharray": "4 3"})
    sc.add("polyline", {"class": "tau", "data_breakpoints": " ".join(format_fraction(b) for b in breaks),
                        "points": " ".join(",".join(pt(x, tau(d, x))) for x in xs),
                        "fill": "none", "stroke": "#1f4e79", "stroke_width": "2"})
    for f in tau_fixed_points(d):
        cx, cy = pt(f, f)
        sc.add("circle", {"class": "fixed", "data_x": format_fraction(f), "cx": cx, "cy": cy, "r": "4",
                          "fill": STRIP_STROKE})
    for b in breaks:
        bx, by = pt(b, Fraction(0))
        sc.add("text", {"class": "label", "x": bx, "y": q(float(by) + 14), "font_size": "10",
                        "text_anchor": "middle", "font_family": "sans-serif"}, format_fraction(b))
    return sc.to_svg()


def render_orbit(orbit, size: int = 400, labels: bool = True) -> str:
    """Polygons of an orbit, each with its own fill.

    Accepts a :class:`~lamkit.polygons.PolygonOrbit` or a plain sequence of
    polygons (possibly empty).
    """
    polys = list(getattr(orbit, "polygons", orbit) or [])
    title = None
    if hasattr(orbit, "d"):
        title = f"polygon orbit d={orbit.d} period {orbit.p}"
    sc = Scene(size, title=title)
    sc.circle()
    for i, P in enumerate(polys):
        vs = P.vertices
        fill = PALETTE[i % len(PALETTE)]
        if len(vs) == 2:
            sc.chord(Chord(*vs), cls="polygon", stroke=fill, stroke_width="3")
        else:
            sc.polygon(vs, "polygon", fill=fill, fill_opacity="0.7", stroke="#222222")
        if labels:
            for v in vs:
                sc.label(v, format_angle(v))
    return sc.to_svg()


def _tree_layout(t: PlaneBicoloredTree) -> list[tuple[float, int]]:
    """(x slot, depth) per vertex: leaves left to right, parents centred."""
    n = len(t.colors)
    pos: list[tuple[float, int]] = [(0.0, 0)] * n
    counter = [0]

    def place(v: int, parent: int, depth: int) -> float:
        nbrs = list(t.rotation[v])
        if parent >= 0:
            i = nbrs.index(parent)
            nbrs = nbrs[i + 1:] + nbrs[:i]
        xs = [place(c, v, depth + 1) for c in nbrs]
        if xs:
            x = (xs[0] + xs[-1]) / 2
        else:
            x = float(counter[0])
            counter[0] += 1
        pos[v] = (x, depth)
        return x

    place(0, -1, 0)
    return pos


def render_tree(t: PlaneBicoloredTree, size: int = 400) -> str:
    pos = _tree_layout(t)
    width = max(x for x, _ in pos) or 1.0
    depth = max(dp for _, dp in pos) or 1
    sc = Scene(size, title=f"bicolored tree with {t.n_edges} edges")
    inner = size - 2 * sc.margin

    def xy(v: int) -> tuple[str, str]:
        x, dp = pos[v]
        return q(sc.margin + inner * x / width), q(sc.margin + inner * dp / depth)

    for u, v in t.edges():
        (x1, y1), (x2, y2) = xy(u), xy(v)
        sc.add("line", {"class": "edge", "x1": x1, "y1": y1, "x2": x2, "y2": y2, "stroke": "#222222",
                        "stroke_width": "2"})
    for v, color in enumerate(t.colors):
        cx, cy = xy(v)
        sc.add("circle", {"class": f"node {color}", "cx": cx, "cy": cy, "r": "10",
                          "fill": C_FILL if color == "C" else R_FILL, "stroke": "#222222"})
        sc.add("text", {"class": "label", "x": cx, "y": cy, "font_size": "10", "text_anchor": "middle",
                        "dominant_baseline": "middle", "font_family": "sans-serif"}, color)
    return sc.to_svg()


def write_svg(path, svg: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)


def element_count(svg: str, cls: str) -> int:
    """Number of elements whose class list starts with ``cls``."""
    return svg.count(f'class="{cls}') if cls else 0

