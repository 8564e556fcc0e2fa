"""Exact planar geometry over an ordered field.

Every routine works with any coordinate type supporting ``+ - * /`` and a
``sign()`` method (``QuarticReal``, ``SilverExact``, ``GoldenExact``)
or plain ``Fraction`` coordinates.
Floating point never decides a predicate here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Sequence

from .exact import Point2, sign_of


def cross(o: Point2, a: Point2, b: Point2):
    """Twice the signed area of triangle (o, a, b)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orient(o: Point2, a: Point2, b: Point2) -> int:
    return sign_of(cross(o, a, b))


@dataclass(frozen=True)
class ConvexPoly:
    """Counterclockwise convex polygon; no vertices means empty.

    ``degenerate`` marks an empty result that came from a zero-area
    intersection (a point or a segment) rather than disjoint inputs.
    """

    vertices: tuple = ()
    degenerate: bool = field(default=False, compare=False)

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) < 3

    def __len__(self):
        return len(self.vertices)

    def translate(self, v: Point2) -> "ConvexPoly":
        return ConvexPoly(tuple(p + v for p in self.vertices))

    def scale(self, k) -> "ConvexPoly":
        return ConvexPoly(tuple(p.scale(k) for p in self.vertices))

    def negate(self) -> "ConvexPoly":
        # point reflection keeps counterclockwise order
        return ConvexPoly(tuple(-p for p in self.vertices))

    def to_float(self) -> list[tuple[float, float]]:
        return [p.to_float() for p in self.vertices]

    def contains(self, p: Point2, strict: bool = False) -> bool:
        """Point membership; with ``strict`` the boundary is excluded."""
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            s = orient(vs[i], vs[(i + 1) % n], p)
            if s < 0 or (strict and s == 0):
                return False
        return n >= 3

    def boundary_sign(self, p: Point2) -> int:
        """+1 strictly inside, 0 on the boundary, -1 outside."""
        vs = self.vertices
        n = len(vs)
        worst = 1
        for i in range(n):
            s = orient(vs[i], vs[(i + 1) % n], p)
            if s < 0:
                return -1
            worst = min(worst, s)
        return worst

    def contains_poly(self, other: "ConvexPoly") -> bool:
        return all(self.contains(p) for p in other.vertices)

    @classmethod
    def empty(cls, degenerate: bool = False) -> "ConvexPoly":
        return cls((), degenerate)


def _cleanup(points: list) -> list:
    """Drop repeated and collinear vertices of a convex ring."""
    out: list = []
    for p in points:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        n = len(out)
        for i in range(n):
            if orient(out[i - 1], out[i], out[(i + 1) % n]) == 0:
                del out[i]
                changed = True
                break
    return out


def make_poly(points: Iterable[Point2]) -> ConvexPoly:
    """Build a ConvexPoly from counterclockwise (or clockwise) vertices."""
    pts = _cleanup(list(points))
    if len(pts) < 3:
        return ConvexPoly.empty(degenerate=bool(pts))
    if sign_of(signed_area2(pts)) < 0:
        pts.reverse()
    return ConvexPoly(tuple(pts))


def signed_area2(points: Sequence[Point2]):
    """Twice the signed shoelace area."""
    n = len(points)
    total = None
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        term = p.x * q.y - q.x * p.y
        total = term if total is None else total + term
    return total


def area(poly: ConvexPoly, zero=0):
    """Exact nonnegative area (shoelace); ``zero`` for the empty polygon."""
    if poly.is_empty:
        return zero
    return signed_area2(poly.vertices) / 2


def convex_hull(points: Iterable[Point2]) -> ConvexPoly:
    """Andrew's monotone chain with exact comparisons."""

    def cmp(p, q):
        s = sign_of(p.x - q.x)
        if s:
            return s
        return sign_of(p.y - q.y)

    pts = sorted(set(points), key=cmp_to_key(cmp))
    if len(pts) < 3:
        return ConvexPoly.empty(degenerate=bool(pts))

    def chain(seq):
        out: list = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return ConvexPoly.empty(degenerate=True)
    return ConvexPoly(tuple(hull))


def clip_halfplane(subject: list, a: Point2, b: Point2) -> list:
    """Keep the part of ``subject`` on the left of the directed line a->b."""
    if not subject:
        return subject
    out = []
    n = len(subject)
    vals = [cross(a, b, p) for p in subject]
    signs = [sign_of(v) for v in vals]
    for i in range(n):
        p, q = subject[i], subject[(i + 1) % n]
        sp, sq = signs[i], signs[(i + 1) % n]
        if sp >= 0:
            out.append(p)
        if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
            vp, vq = vals[i], vals[(i + 1) % n]
            t = vp / (vp - vq)
            out.append(Point2(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t))
    return out


def _float_boxes_disjoint(polys: Sequence[ConvexPoly]) -> bool:
    lo_x = max(min(float(p.x) for p in poly.vertices) for poly in polys)
    hi_x = min(max(float(p.x) for p in poly.vertices) for poly in polys)
    lo_y = max(min(float(p.y) for p in poly.vertices) for poly in polys)
    hi_y = min(max(float(p.y) for p in poly.vertices) for poly in polys)
    return lo_x > hi_x + 1e-9 or lo_y > hi_y + 1e-9


def clip(polys: Sequence[ConvexPoly], prune: bool = True) -> ConvexPoly:
    """Exact intersection of convex polygons by successive half-plane clipping.

    With ``prune`` a polygon that already contains the running intersection
    is skipped; the result is identical either way.
    """
    if not polys:
        raise ValueError("clip needs at least one polygon")
    if any(p.is_empty for p in polys):
        return ConvexPoly.empty()
    if len(polys) > 1 and _float_boxes_disjoint(polys):
        # bounding boxes separated by a clear margin: exactly empty too
        return ConvexPoly.empty()
    current = list(polys[0].vertices)
    for poly in polys[1:]:
        if prune and all(poly.contains(p) for p in current):
            continue
        vs = poly.vertices
        n = len(vs)
        for i in range(n):
            current = clip_halfplane(current, vs[i], vs[(i + 1) % n])
            if not current:
                return ConvexPoly.empty()
        current = _cleanup(current)
        if len(current) < 3:
            return ConvexPoly.empty(degenerate=bool(current))
    result = _cleanup(current)
    if len(result) < 3:
        return ConvexPoly.empty(degenerate=bool(result))
    return ConvexPoly(tuple(result))
