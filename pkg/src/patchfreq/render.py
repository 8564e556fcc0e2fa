"""SVG pictures of patches (parallel space) and dual arrangements (perpendicular space)."""
from __future__ import annotations

import enum
from xml.sax.saxutils import escape

from .dualizer import GeneratedTiling, _vertex_windows, tile_corner_lifts
from .freq import Patch, analyze, validate_patch

UNIT = 100.0  # SVG units per tile edge
PAD = 20.0

_FILL = {"thick": "#e8a0a0", "thin": "#9fb4e6", "square": "#e6d28c", "rhombus": "#9fd3b4"}


class RenderMode(enum.Enum):
    Parallel = "parallel"
    DualArrangement = "dual"

    @classmethod
    def parse(cls, value) -> "RenderMode":
        if isinstance(value, cls):
            return value
        v = str(value).lower()
        for m in cls:
            if v in (m.value, m.name.lower()):
                return m
        raise ValueError(f"unknown render mode {value!r}")


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Canvas:
    def __init__(self):
        self.items: list[str] = []
        self.xs: list[float] = []
        self.ys: list[float] = []

    def _pt(self, x, y):
        # y is flipped so that the picture has the usual orientation
        X, Y = x * UNIT, -y * UNIT
        self.xs.append(X)
        self.ys.append(Y)
        return f"{_fmt(X)},{_fmt(Y)}"

    def polygon(self, pts, cls, fill, stroke="#000", opacity=1.0):
        d = " ".join(self._pt(x, y) for x, y in pts)
        self.items.append(f'<polygon class="{cls}" points="{d}" fill="{fill}" '
                          f'fill-opacity="{_fmt(opacity)}" stroke="{stroke}" stroke-width="1"/>')

    def circle(self, x, y, r, cls, fill):
        c = self._pt(x, y).split(",")
        self.items.append(f'<circle class="{cls}" cx="{c[0]}" cy="{c[1]}" r="{_fmt(r)}" fill="{fill}"/>')

    def text(self, x, y, s, cls="note"):
        c = self._pt(x, y).split(",")
        self.items.append(f'<text class="{cls}" x="{c[0]}" y="{c[1]}" font-size="14" '
                          f'font-family="sans-serif">{escape(s)}</text>')

    def document(self) -> str:
        if not self.xs:
            self.xs, self.ys = [0.0], [0.0]
        x0, x1 = min(self.xs) - PAD, max(self.xs) + PAD
        y0, y1 = min(self.ys) - PAD, max(self.ys) + PAD
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}" '
                f'width="{_fmt(x1 - x0)}" height="{_fmt(y1 - y0)}">')
        return "\n".join([head, *self.items, "</svg>"]) + "\n"


def _shape_name(cls) -> str:
    return cls.shape.value


def _parallel(system, classes, corners, anchors) -> str:
    cv = _Canvas()
    for cls, cs in zip(classes, corners):
        pts = [system.project_float(c, "par") for c in cs]
        cv.polygon(pts, f"tile {_shape_name(cls)}", _FILL[_shape_name(cls)], opacity=0.6)
    if system.name == "penrose":
        for a in sorted(set(anchors)):
            x, y = system.project_float(a, "par")
            cv.circle(x, y, 4, "hole", "#c00000")
    return cv.document()


def _dual(p: Patch) -> str:
    rep = analyze(p)
    cv = _Canvas()
    for poly in rep.duals:
        cv.polygon(poly.to_float(), "dual", "none", stroke="#444")
    if rep.intersection.is_empty:
        xs = [x for poly in rep.duals for x, _ in poly.to_float()]
        ys = [y for poly in rep.duals for _, y in poly.to_float()]
        cv.text(min(xs), max(ys) + 0.3, "frequency 0")
    else:
        cv.polygon(rep.intersection.to_float(), "intersection", "#8a2be2", stroke="#8a2be2", opacity=0.8)
    return cv.document()


def _windows(t: GeneratedTiling) -> str:
    cv = _Canvas()
    for poly in _vertex_windows(t.lattice.name).values():
        cv.polygon(poly.to_float(), "window", "none", stroke="#444")
    x, y = t.cut.to_float()
    cv.circle(x, y, 3, "cut", "#c00000")
    return cv.document()


def render_svg(obj, mode=RenderMode.Parallel) -> str:
    """SVG 1.1 text; output depends only on the input."""
    mode = RenderMode.parse(mode)
    if isinstance(obj, GeneratedTiling):
        if mode is RenderMode.DualArrangement:
            return _windows(obj)
        system = obj.lattice
        classes = [system.resolve(t.class_id) for t in obj.tiles]
        return _parallel(system, classes, tile_corner_lifts(obj), [t.anchor for t in obj.tiles])
    if mode is RenderMode.DualArrangement:
        return _dual(obj)
    vp = validate_patch(obj)
    return _parallel(vp.system, vp.classes, vp.corners, [t.anchor for t in vp.patch.tiles])
