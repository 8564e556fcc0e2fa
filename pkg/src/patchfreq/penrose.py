"""A4 / A4* machinery for the rhombic Penrose tiling.

Lifts are integer 5-tuples ``n`` naming sum(n_i * a_i) in A4*, kept in the
canonical form n_5 = 0 (the a_i sum to zero).  Coordinates are unscaled:
the parallel image of a_j is the unit vector at angle 2*pi*j/5 and the
perpendicular image the unit vector at angle 4*pi*j/5.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InternalDerivationError, UnknownTileClass
from .exact import Point2, QuarticReal
from .geometry import ConvexPoly, area, convex_hull, make_poly

Lift = tuple  # tuple[int, int, int, int, int] with n[4] == 0

DIM = 5
ZERO_LIFT: Lift = (0, 0, 0, 0, 0)


class HoleClass(enum.Enum):
    LatticePoint = "lattice"
    Shallow = "shallow"
    Deep = "deep"


class Space(enum.Enum):
    Par = "par"
    Perp = "perp"


# exact cos/sin of multiples of 18 degrees -------------------------------------

def _q(*c):
    return QuarticReal(*(Fraction(v) for v in c))


_h = Fraction(1, 2)
# first quadrant, k * 18 degrees for k = 0..5
_QUADRANT = [
    (_q(1), _q(0)),
    (_q(0, _h), _q(-3 * _h, 0, _h)),           # 18: cos = x/2, sin = (x^2-3)/2
    (_q(-1, 0, _h), _q(0, -3 * _h, 0, _h)),    # 36: cos = tau/2, sin = (x^3-3x)/2
    (_q(0, -3 * _h, 0, _h), _q(-1, 0, _h)),    # 54
    (_q(-3 * _h, 0, _h), _q(0, _h)),           # 72
    (_q(0), _q(1)),                            # 90
]


def _unit18(k: int) -> Point2:
    """Exact unit vector at angle k * 18 degrees."""
    k %= 20
    quadrant, r = divmod(k, 5)
    c, s = _QUADRANT[r]
    for _ in range(quadrant):
        c, s = -s, c
    return Point2(c, s)


UNIT20 = tuple(_unit18(k) for k in range(20))

for _k, _p in enumerate(UNIT20):
    _ang = math.radians(18 * _k)
    if abs(float(_p.x) - math.cos(_ang)) > 1e-12 or abs(float(_p.y) - math.sin(_ang)) > 1e-12:
        raise InternalDerivationError(f"trig table entry {_k} is wrong")

# index j = 1..5 -> a_j; position 0 of these tuples is a_1
PAR_UNITS = tuple(UNIT20[(4 * j) % 20] for j in range(1, 6))
PERP_UNITS = tuple(UNIT20[(8 * j) % 20] for j in range(1, 6))

PAR_FLOAT = np.array([[float(u.x) for u in PAR_UNITS], [float(u.y) for u in PAR_UNITS]])
PERP_FLOAT = np.array([[float(u.x) for u in PERP_UNITS], [float(u.y) for u in PERP_UNITS]])


# lifts -------------------------------------------------------------------------

def canonical(n: Iterable[int]) -> Lift:
    n = tuple(int(v) for v in n)
    if len(n) != DIM:
        raise ValueError(f"Penrose lifts have 5 entries, got {len(n)}")
    t = n[4]
    if t == 0:
        return n
    return tuple(v - t for v in n)


def basis(i: int) -> Lift:
    """a_i for i = 1..5."""
    n = [0] * DIM
    n[i - 1] = 1
    return canonical(n)


def add(u: Lift, v: Lift) -> Lift:
    return canonical(a + b for a, b in zip(u, v))


def sub(u: Lift, v: Lift) -> Lift:
    return canonical(a - b for a, b in zip(u, v))


def neg(u: Lift) -> Lift:
    return canonical(-a for a in u)


def r_of(v: Lift) -> int:
    v = canonical(v)
    return sum(v[:4]) % 5


def hole_class(v: Lift) -> HoleClass:
    r = r_of(v)
    if r == 0:
        return HoleClass.LatticePoint
    if r in (1, 4):
        return HoleClass.Shallow
    return HoleClass.Deep


def rotate_lift(v: Lift, k: int = 1) -> Lift:
    """Apply g^k with g: a_i -> a_{i+1}."""
    k %= 5
    v = tuple(v)
    if k == 0:
        return canonical(v)
    return canonical(v[-k:] + v[:-k])


def invert_lift(v: Lift) -> Lift:
    return neg(v)


def permute_lift(v: Lift, perm: Sequence[int]) -> Lift:
    """a_i -> a_{perm[i]} (0-based indices)."""
    out = [0] * DIM
    for i, c in enumerate(v):
        out[perm[i]] += c
    return canonical(out)


def project(v: Lift, space: Space | str = Space.Par) -> Point2:
    """Exact parallel or perpendicular image of a lift."""
    units = PAR_UNITS if Space(space) is Space.Par else PERP_UNITS
    x = QuarticReal(0)
    y = QuarticReal(0)
    for c, u in zip(v, units):
        if c:
            x = x + u.x * c
            y = y + u.y * c
    return Point2(x, y)


def project_float(v: Lift, space: Space | str = Space.Par) -> tuple[float, float]:
    m = PAR_FLOAT if Space(space) is Space.Par else PERP_FLOAT
    p = m @ np.asarray(v, dtype=float)
    return float(p[0]), float(p[1])


REPRESENTATIVES = {
    1: basis(1),
    2: add(basis(1), basis(3)),
    3: neg(add(basis(1), basis(3))),
    4: neg(basis(1)),
}


def q_of(v: Lift) -> Lift:
    """Lattice part v - v*_{r(v)}; undefined (ValueError) on A4 itself."""
    r = r_of(v)
    if r == 0:
        raise ValueError("lattice points have no hole representative")
    return sub(v, REPRESENTATIVES[r])


# 2-boundaries ------------------------------------------------------------------

@dataclass(frozen=True)
class Signature2B:
    slots: tuple  # entries +1, -1, 0 (0 = free)

    def __post_init__(self):
        zeros = sum(1 for s in self.slots if s == 0)
        plus = sum(1 for s in self.slots if s == 1)
        minus = sum(1 for s in self.slots if s == -1)
        if len(self.slots) != DIM or zeros != 2 or {plus, minus} != {1, 2}:
            raise ValueError(f"invalid 2-boundary signature {self.slots}")

    def __str__(self):
        return "".join({1: "+", -1: "-", 0: "o"}[s] for s in self.slots)

    @classmethod
    def parse(cls, text: str) -> "Signature2B":
        return cls(tuple({"+": 1, "-": -1, "o": 0}[c] for c in text))

    @property
    def free(self) -> tuple[int, int]:
        return tuple(i for i, s in enumerate(self.slots) if s == 0)

    def corners(self) -> list[Lift]:
        """The four vertices of P(sig); each is a sum of a_i over '+' slots."""
        out = []
        l, m = self.free
        for el, em in itertools.product((1, -1), repeat=2):
            s = list(self.slots)
            s[l], s[m] = el, em
            out.append(canonical(1 if v == 1 else 0 for v in s))
        return out

    def dual_vertices(self) -> list[Lift]:
        """The three A4 points spanning P*(sig)."""
        plus = [i for i, s in enumerate(self.slots) if s == 1]
        minus = [i for i, s in enumerate(self.slots) if s == -1]
        e = [basis(i + 1) for i in range(DIM)]
        if len(plus) == 2:
            (i, j), (k,) = plus, minus
            return [ZERO_LIFT, sub(e[i], e[k]), sub(e[j], e[k])]
        (i, j), (k,) = minus, plus
        return [ZERO_LIFT, sub(e[k], e[i]), sub(e[k], e[j])]


def all_signatures() -> list[Signature2B]:
    out = []
    for free in itertools.combinations(range(DIM), 2):
        rest = [i for i in range(DIM) if i not in free]
        for odd in rest:
            for sgn in (1, -1):
                slots = [0] * DIM
                for i in rest:
                    slots[i] = -sgn if i == odd else sgn
                out.append(Signature2B(tuple(slots)))
    return out


# tile catalog ------------------------------------------------------------------

class Shape(enum.Enum):
    Thick = "thick"
    Thin = "thin"


@dataclass(frozen=True)
class TileClassPen:
    id: str
    alias: str
    shape: Shape
    rotation: int
    inverted: bool
    anchor_r: int
    corner_offsets: tuple  # 4 lifts, counterclockwise in parallel space, first = anchor
    dual_triangle: tuple  # 3 Point2[QuarticReal], counterclockwise
    dual_lifts: tuple  # the same triangle as A4* lifts relative to the anchor
    signatures: tuple

    @property
    def dual_polygon(self) -> ConvexPoly:
        return ConvexPoly(self.dual_triangle)

    @property
    def offset_key(self) -> frozenset:
        return frozenset(self.corner_offsets)


def _ccw_order(offsets: list[Lift], space: Space) -> list[Lift]:
    pts = [project_float(o, space) for o in offsets]
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    order = sorted(range(len(offsets)), key=lambda i: math.atan2(pts[i][1] - cy, pts[i][0] - cx))
    ring = [offsets[i] for i in order]
    k = ring.index(ZERO_LIFT) if ZERO_LIFT in ring else 0
    return ring[k:] + ring[:k]


def _derive_classes():
    groups: dict = {}
    for sig in all_signatures():
        corners = sig.corners()
        shallow = [c for c in corners if hole_class(c) is HoleClass.Shallow]
        deep = [c for c in corners if hole_class(c) is HoleClass.Deep]
        if len(shallow) != 1 or len(deep) != 3:
            raise InternalDerivationError(f"{sig}: expected one shallow and three deep corners")
        s0 = shallow[0]
        offsets = frozenset(sub(c, s0) for c in corners)
        dual = frozenset(sub(v, s0) for v in sig.dual_vertices())
        key = (r_of(s0), offsets)
        entry = groups.setdefault(key, {"sigs": [], "dual": dual})
        if entry["dual"] != dual:
            raise InternalDerivationError(f"{sig}: dual triangle disagrees within its class")
        entry["sigs"].append(sig)
    return groups


@lru_cache(maxsize=None)
def build_catalog() -> tuple[TileClassPen, ...]:
    """Derive the 20 translation classes of Penrose tiles from the 60 signatures."""
    groups = _derive_classes()
    if len(groups) != 20 or any(len(g["sigs"]) != 3 for g in groups.values()):
        raise InternalDerivationError(f"expected 20 classes of 3 signatures, got {len(groups)}")

    def shape_of(offsets):
        nonzero = [o for o in offsets if o != ZERO_LIFT]
        edges = [o for o in nonzero if sum(abs(c) for c in o) == 1 or _is_unit(o)]
        (e1, e2) = edges[:2]
        p, q = project_float(e1), project_float(e2)
        cosang = p[0] * q[0] + p[1] * q[1]
        return Shape.Thick if abs(cosang) < 0.5 else Shape.Thin

    proto: dict = {}
    for (r, offsets), g in groups.items():
        proto[(r, offsets)] = (shape_of(offsets), g)

    # alias convention: R1 is the class of P(-+oo+); S1 the class of P(-+o+o);
    # index k is reached from index 1 by k-1 rotations, I marks space inversion.
    def class_key_of_sig(text):
        sig = Signature2B.parse(text)
        for key, (_, g) in proto.items():
            if sig in g["sigs"]:
                return key
        raise InternalDerivationError(text)

    def rotate_key(key, k):
        r, offsets = key
        return (r, frozenset(rotate_lift(o, k) for o in offsets))

    def invert_key(key):
        r, offsets = key
        return ((-r) % 5, frozenset(neg(o) for o in offsets))

    labels: dict = {}
    for family, seed in (("R", "-+oo+"), ("S", "-+o+o")):
        base = class_key_of_sig(seed)
        for k in range(5):
            key = rotate_key(base, k)
            labels[key] = (f"{family}{k + 1}", k, False)
            labels[invert_key(key)] = (f"{family}I{k + 1}", k, True)
    if len(labels) != 20:
        raise InternalDerivationError("alias assignment is not a bijection")

    out = []
    for key, (shape, g) in proto.items():
        r, offsets = key
        alias, rot, inv = labels[key]
        if (alias[0] == "R") != (shape is Shape.Thick):
            raise InternalDerivationError(f"{alias} has shape {shape}")
        sigs = sorted(str(s) for s in g["sigs"])
        dual_lifts = sorted(g["dual"])
        tri = make_poly(project(v, Space.Perp) for v in dual_lifts)
        out.append(TileClassPen(
            id=sigs[0],
            alias=alias,
            shape=shape,
            rotation=rot,
            inverted=inv,
            anchor_r=r,
            corner_offsets=tuple(_ccw_order(list(offsets), Space.Par)),
            dual_triangle=tri.vertices,
            dual_lifts=tuple(dual_lifts),
            signatures=tuple(sigs),
        ))
    out.sort(key=lambda c: (c.alias[0], c.inverted, c.rotation))
    thick = sum(1 for c in out if c.shape is Shape.Thick)
    if thick != 10:
        raise InternalDerivationError(f"expected 10 thick classes, got {thick}")
    return tuple(out)


def _is_unit(o: Lift) -> bool:
    x, y = project_float(o)
    return abs(x * x + y * y - 1.0) < 1e-9


@lru_cache(maxsize=None)
def catalog_index() -> dict:
    """id and alias -> TileClassPen."""
    idx = {}
    for c in build_catalog():
        idx[c.id] = c
        idx[c.alias] = c
    return idx


@lru_cache(maxsize=None)
def _offset_lookup() -> dict:
    return {(c.anchor_r, c.offset_key): c for c in build_catalog()}


def resolve_class(name: str) -> TileClassPen:
    try:
        return catalog_index()[name]
    except KeyError:
        raise UnknownTileClass(f"unknown Penrose tile class {name!r}") from None


def class_from_corners(corners: Iterable[Lift]) -> tuple[TileClassPen, Lift]:
    """Identify (class, anchor) of a rhombus given its four corner lifts."""
    corners = [canonical(c) for c in corners]
    shallow = [c for c in corners if hole_class(c) is HoleClass.Shallow]
    if len(shallow) != 1:
        raise UnknownTileClass(f"rhombus has {len(shallow)} shallow corners")
    s0 = shallow[0]
    key = (r_of(s0), frozenset(sub(c, s0) for c in corners))
    cls = _offset_lookup().get(key)
    if cls is None:
        raise UnknownTileClass("corner lifts do not form a catalog tile")
    return cls, s0


# windows -----------------------------------------------------------------------

@dataclass(frozen=True)
class WindowSet:
    """Perpendicular-space windows, keyed by representative type 1..4.

    ``absolute[i]`` is the projection of the dual cell of v*_i itself;
    ``relative[i]`` is the same polygon translated by -pi_perp(v*_i), i.e.
    the window every lift of type i is tested against after subtracting
    its own perpendicular image.
    """

    absolute: dict
    relative: dict

    def total_area(self) -> QuarticReal:
        total = QuarticReal(0)
        for poly in self.absolute.values():
            total = total + area(poly, QuarticReal(0))
        return total


def _simplex_cell() -> tuple[Lift, list[Lift]]:
    # mu extreme points of sum mu_i (a_i - a_5), mu >= 0, sum <= 1
    pts = [ZERO_LIFT] + [sub(basis(i), basis(5)) for i in range(1, 5)]
    hole = canonical((1, 1, 1, 1, 0))
    return hole, pts


def _archimedean_cell() -> tuple[Lift, list[Lift]]:
    gens = [sub(basis(i), basis(4)) for i in (1, 2, 3)] + \
           [sub(basis(i), basis(5)) for i in (1, 2, 3)]
    pts = set()
    for mu in itertools.product((0, 1), repeat=6):
        if sum(mu[:3]) > 1 or sum(mu[3:]) > 1:
            continue
        if any(mu[i] + mu[i + 3] > 1 for i in range(3)):
            continue
        v = ZERO_LIFT
        for m, g in zip(mu, gens):
            if m:
                v = add(v, g)
        pts.add(v)
    hole = canonical((1, 1, 1, 0, 0))
    return hole, sorted(pts)


def dual_cell_offsets(rep_type: int) -> list[Lift]:
    """Vertices of V*(v*_i) - v*_i as lifts, from the two dual-cell prototypes."""
    target = REPRESENTATIVES[rep_type]
    for hole, pts in (_simplex_cell(), _archimedean_cell()):
        rel = [sub(p, hole) for p in pts]
        for perm in itertools.permutations(range(DIM)):
            for eps in (1, -1):
                img = permute_lift(hole, perm)
                if eps < 0:
                    img = neg(img)
                if img == target:
                    out = [permute_lift(p, perm) for p in rel]
                    return sorted(neg(p) if eps < 0 else p for p in out)
    raise InternalDerivationError(f"no symmetry maps a prototype hole to type {rep_type}")


@lru_cache(maxsize=None)
def windows() -> WindowSet:
    absolute = {}
    relative = {}
    for i, rep in REPRESENTATIVES.items():
        offs = dual_cell_offsets(i)
        rel = convex_hull(project(o, Space.Perp) for o in offs)
        if len(rel) != 5:
            raise InternalDerivationError(f"window {i} has {len(rel)} vertices")
        relative[i] = rel
        absolute[i] = rel.translate(project(rep, Space.Perp))
    return WindowSet(absolute=absolute, relative=relative)


def window_total() -> QuarticReal:
    return windows().total_area()
