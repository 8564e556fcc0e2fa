"""Z^4 machinery for the Ammann-Beenker tiling.

A lift is an integer 4-tuple m; the tiling vertex it names is pi_par(m).
Parallel images of e_j sit at angle (j-1)*pi/4 and perpendicular images at
3*(j-1)*pi/4, both of unit length.  A vertex m is present for the cut c
iff c - pi_perp(m) lies in the octagon pi_perp([-1/2, 1/2]^4).
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import InternalDerivationError, UnknownTileClass
from .exact import Point2, SilverExact
from .geometry import ConvexPoly, area, convex_hull

DIM = 4
ZERO_LIFT = (0, 0, 0, 0)

_H = SilverExact(0, Fraction(1, 2))  # sqrt2 / 2
_0 = SilverExact(0)
_1 = SilverExact(1)
UNIT8 = (
    Point2(_1, _0), Point2(_H, _H), Point2(_0, _1), Point2(-_H, _H),
    Point2(-_1, _0), Point2(-_H, -_H), Point2(_0, -_1), Point2(_H, -_H),
)

PAR_UNITS = tuple(UNIT8[j % 8] for j in range(4))
PERP_UNITS = tuple(UNIT8[(3 * j) % 8] for j in range(4))
PAR_FLOAT = np.array([[float(u.x) for u in PAR_UNITS], [float(u.y) for u in PAR_UNITS]])
PERP_FLOAT = np.array([[float(u.x) for u in PERP_UNITS], [float(u.y) for u in PERP_UNITS]])


class Space(enum.Enum):
    Par = "par"
    Perp = "perp"


def canonical(m: Iterable[int]) -> tuple:
    m = tuple(int(v) for v in m)
    if len(m) != DIM:
        raise ValueError(f"Ammann-Beenker lifts have 4 entries, got {len(m)}")
    return m


def basis(i: int) -> tuple:
    m = [0] * DIM
    m[i - 1] = 1
    return tuple(m)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def neg(u):
    return tuple(-a for a in u)


def project_ab(v, space: Space | str = Space.Par, half: bool = False) -> Point2:
    """Exact image of sum v_i e_i (or of sum v_i e_i / 2 with ``half``)."""
    units = PAR_UNITS if Space(space) is Space.Par else PERP_UNITS
    x = SilverExact(0)
    y = SilverExact(0)
    for c, u in zip(v, units):
        if c:
            x = x + u.x * c
            y = y + u.y * c
    if half:
        return Point2(x / 2, y / 2)
    return Point2(x, y)


def project_float(v, space: Space | str = Space.Par) -> tuple[float, float]:
    m = PAR_FLOAT if Space(space) is Space.Par else PERP_FLOAT
    p = m @ np.asarray(v, dtype=float)
    return float(p[0]), float(p[1])


def rotate_lift_ab(v, k: int = 1):
    """D(g8)^k: e1 -> e2 -> e3 -> e4 -> -e1."""
    m = tuple(v)
    for _ in range(k % 8):
        m = (-m[3], m[0], m[1], m[2])
    return m


def reflect_lift_ab(v):
    """D(s): e1 -> e1, e2 -> -e4, e3 -> -e3, e4 -> -e2."""
    m = tuple(v)
    return (m[0], -m[3], -m[2], -m[1])


# 2-boundaries and tiles ----------------------------------------------------------

class ShapeAB(enum.Enum):
    Square = "square"
    Rhombus45 = "rhombus"


@dataclass(frozen=True)
class SignatureAB:
    slots: tuple

    def __post_init__(self):
        if len(self.slots) != DIM or sum(1 for s in self.slots if s == 0) != 2 \
                or any(s not in (-1, 0, 1) for s in self.slots):
            raise ValueError(f"invalid signature {self.slots}")

    def __str__(self):
        return "".join({1: "+", -1: "-", 0: "o"}[s] for s in self.slots)

    @classmethod
    def parse(cls, text: str) -> "SignatureAB":
        return cls(tuple({"+": 1, "-": -1, "o": 0}[c] for c in text))

    @property
    def fixed(self) -> tuple[int, int]:
        return tuple(i for i, s in enumerate(self.slots) if s != 0)

    @property
    def free(self) -> tuple[int, int]:
        return tuple(i for i, s in enumerate(self.slots) if s == 0)

    def corners(self) -> list[tuple]:
        """Q*(sig) relative to its base point: 0, s_i e_i, s_j e_j and their sum."""
        i, j = self.fixed
        ei = [0] * DIM
        ei[i] = self.slots[i]
        ej = [0] * DIM
        ej[j] = self.slots[j]
        return [ZERO_LIFT, tuple(ei), add(ei, ej), tuple(ej)]

    def window(self) -> ConvexPoly:
        """pi_perp(Q(sig)) relative to the base point of Q*(sig)."""
        k, l = self.free
        pts = []
        for a, b in itertools.product((1, -1), repeat=2):
            v = list(self.slots)
            v[k], v[l] = a, b
            pts.append(project_ab(v, Space.Perp, half=True))
        return convex_hull(pts)


def all_signatures_ab() -> list[SignatureAB]:
    out = []
    for fixed in itertools.combinations(range(DIM), 2):
        for signs in itertools.product((1, -1), repeat=2):
            slots = [0] * DIM
            slots[fixed[0]], slots[fixed[1]] = signs
            out.append(SignatureAB(tuple(slots)))
    return out


@dataclass(frozen=True)
class TileClassAB:
    id: str
    alias: str
    shape: ShapeAB
    decoration: int
    corner_offsets: tuple  # counterclockwise in parallel space, first = anchor
    window_polygon: ConvexPoly
    signatures: tuple

    @property
    def dual_polygon(self) -> ConvexPoly:
        return self.window_polygon


def _ccw(offsets):
    pts = [project_float(o) for o in offsets]
    cx = sum(p[0] for p in pts) / 4
    cy = sum(p[1] for p in pts) / 4
    ring = sorted(offsets, key=lambda o: math.atan2(project_float(o)[1] - cy, project_float(o)[0] - cx))
    k = ring.index(ZERO_LIFT)
    return tuple(ring[k:] + ring[:k])


@lru_cache(maxsize=None)
def build_catalog_ab() -> tuple[TileClassAB, ...]:
    """Decorated catalog: one class per rhombus orientation, one per marked square corner."""
    sigs = all_signatures_ab()
    if len(sigs) != 24:
        raise InternalDerivationError("expected 24 signatures")
    by_pair: dict = {}
    for s in sigs:
        by_pair.setdefault(s.fixed, []).append(s)
    out = []
    for pair, group in sorted(by_pair.items()):
        group = sorted(group, key=str)
        i, j = pair
        square = (j - i) == 2
        if square:
            for d, s in enumerate(group):
                out.append(TileClassAB(
                    id=str(s), alias=f"Q{len([c for c in out if c.shape is ShapeAB.Square]) + 1}",
                    shape=ShapeAB.Square, decoration=d,
                    corner_offsets=_ccw(s.corners()), window_polygon=s.window(),
                    signatures=(str(s),)))
        else:
            rep = group[0]  # lexicographically smallest: both fixed slots '+'
            out.append(TileClassAB(
                id=str(rep), alias=f"H{len([c for c in out if c.shape is ShapeAB.Rhombus45]) + 1}",
                shape=ShapeAB.Rhombus45, decoration=0,
                corner_offsets=_ccw(rep.corners()), window_polygon=rep.window(),
                signatures=tuple(str(s) for s in group)))
    n_sq = sum(1 for c in out if c.shape is ShapeAB.Square)
    if n_sq != 8 or len(out) != 12:
        raise InternalDerivationError(f"expected 4 rhombi + 8 squares, got {len(out) - n_sq} + {n_sq}")
    for c in out:
        if len(c.window_polygon) != 4:
            raise InternalDerivationError(f"{c.id}: window is not a quadrilateral")
    return tuple(out)


@lru_cache(maxsize=None)
def catalog_index() -> dict:
    idx = {}
    for c in build_catalog_ab():
        idx[c.id] = c
        idx[c.alias] = c
    return idx


def resolve_class(name: str) -> TileClassAB:
    try:
        return catalog_index()[name]
    except KeyError:
        raise UnknownTileClass(f"unknown Ammann-Beenker tile class {name!r}") from None


def class_from_corners(corners: Iterable[tuple]) -> tuple[TileClassAB, tuple]:
    """Canonical (class, anchor) for a tile given by its corner lifts.

    Squares are relabelled to the signature with both edges positive, so
    the four labels of one geometric square map to a single placement.
    """
    corners = [canonical(c) for c in corners]
    if len(set(corners)) != 4:
        raise UnknownTileClass("tile needs four distinct corners")
    base = min(corners, key=lambda c: sum(c))
    rel = {sub(c, base) for c in corners}
    units = [o for o in rel if sum(abs(v) for v in o) == 1]
    if len(units) != 2 or not all(sum(o) == 1 for o in units):
        raise UnknownTileClass("corner lifts do not form a catalog tile")
    i, j = sorted(o.index(1) for o in units)
    if add(units[0], units[1]) not in rel:
        raise UnknownTileClass("corner lifts do not form a catalog tile")
    slots = [0] * DIM
    slots[i] = slots[j] = 1
    return resolve_class(str(SignatureAB(tuple(slots)))), base


def octagon() -> ConvexPoly:
    return convex_hull(project_ab(v, Space.Perp, half=True)
                       for v in itertools.product((1, -1), repeat=4))


def window_total_ab() -> SilverExact:
    return area(octagon(), SilverExact(0))
