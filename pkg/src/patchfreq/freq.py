"""Patch validation, dual placement and exact frequencies.

A patch is a set of placed tiles (class, anchor lift).  Each tile carries a
dual polygon in perpendicular space, given relative to its anchor; moving
every polygon by pi_perp(anchor - origin) and intersecting gives the set of
shifted cut points for which the whole patch occurs at the origin vertex.
Its area over the total window area is the frequency per tiling vertex.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (DisconnectedPatch, OverlappingTiles, UnknownTileClass,
                     ValidationError, ZeroValue)
from .exact import GoldenExact, Point2, PowerForm, SilverExact, decimal_str, power_form
from .geometry import ConvexPoly, area, clip
from .systems import TilingSystem, get_system


@dataclass(frozen=True, order=True)
class PlacedTile:
    class_id: str
    anchor: tuple


@dataclass(frozen=True)
class Patch:
    """Tiles are stored with catalog ids (aliases resolved) and canonical anchors."""

    system: str
    tiles: tuple
    origin: tuple | None = None
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        sys_ = get_system(self.system)
        object.__setattr__(self, "system", sys_.name)
        tiles = []
        for i, t in enumerate(self.tiles):
            if not isinstance(t, PlacedTile):
                t = PlacedTile(*t)
            try:
                cls = sys_.resolve(t.class_id)
            except UnknownTileClass as exc:
                raise UnknownTileClass(str(exc), i) from None
            tiles.append(PlacedTile(cls.id, sys_.canonical(t.anchor)))
        object.__setattr__(self, "tiles", tuple(tiles))
        if self.origin is not None:
            object.__setattr__(self, "origin", sys_.canonical(self.origin))

    @property
    def lattice(self) -> TilingSystem:
        return get_system(self.system)

    @property
    def effective_origin(self) -> tuple:
        if self.origin is not None:
            return self.origin
        if not self.tiles:
            raise ValidationError("patch has no tiles")
        return self.tiles[0].anchor

    def __len__(self):
        return len(self.tiles)


@dataclass(frozen=True)
class ValidatedPatch:
    patch: Patch
    system: TilingSystem
    classes: tuple
    corners: tuple  # per tile, its four corner lifts
    origin: tuple


@dataclass(frozen=True)
class ExactFrequency:
    value: GoldenExact | SilverExact
    decimal: str
    power: PowerForm | None
    in_module: bool = True  # membership in (1/10)Z[tau] resp. (1/2)Z[lambda]

    @classmethod
    def of(cls, value) -> "ExactFrequency":
        try:
            pf = power_form(value)
        except ZeroValue:
            pf = None
        denominator = 10 if isinstance(value, GoldenExact) else 2
        return cls(value, decimal_str(value), pf, value.in_module(denominator))

    def __float__(self):
        return float(self.value)

    def __str__(self):
        exact = self.value.serialize()
        if self.power is not None:
            return f"{exact} = {self.power} ≈ {self.decimal}"
        return f"{exact} ≈ {self.decimal}"


@dataclass(frozen=True)
class FrequencyReport:
    frequency: ExactFrequency
    area: object
    intersection: ConvexPoly
    duals: tuple
    validated: ValidatedPatch


# validation ----------------------------------------------------------------------

def _sat_overlap_float(a, b) -> float:
    """Largest separation over edge normals; > 0 separated, < 0 overlapping."""
    best = -math.inf
    for poly, other in ((a, b), (b, a)):
        n = len(poly)
        for i in range(n):
            (x0, y0), (x1, y1) = poly[i], poly[(i + 1) % n]
            nx, ny = y1 - y0, x0 - x1
            s = math.hypot(nx, ny)
            nx, ny = nx / s, ny / s
            pa = [x * nx + y * ny for x, y in poly]
            pb = [x * nx + y * ny for x, y in other]
            best = max(best, min(pb) - max(pa), min(pa) - max(pb))
    return best


def _sat_disjoint_exact(a: Sequence[Point2], b: Sequence[Point2]) -> bool:
    """True when the interiors are disjoint (touching allowed)."""
    for poly, other in ((a, b), (b, a)):
        n = len(poly)
        for i in range(n):
            p, q = poly[i], poly[(i + 1) % n]
            nx, ny = q.y - p.y, p.x - q.x
            pa = [v.x * nx + v.y * ny for v in poly]
            pb = [v.x * nx + v.y * ny for v in other]
            if (min(pb) - max(pa)).sign() >= 0 or (min(pa) - max(pb)).sign() >= 0:
                return True
    return False


def _check_overlaps(system: TilingSystem, corners) -> None:
    fl = [[system.project_float(c, "par") for c in cs] for cs in corners]
    centers = [(sum(p[0] for p in f) / 4, sum(p[1] for p in f) / 4) for f in fl]
    grid = defaultdict(list)
    for i, (x, y) in enumerate(centers):
        grid[(math.floor(x), math.floor(y))].append(i)
    seen_sets = {}
    for i, cs in enumerate(corners):
        key = frozenset(cs)
        if key in seen_sets:
            raise OverlappingTiles(f"duplicates tile {seen_sets[key]}", i)
        seen_sets[key] = i
    for i, (x, y) in enumerate(centers):
        cx, cy = math.floor(x), math.floor(y)
        for dx in (-2, -1, 0, 1, 2):
            for dy in (-2, -1, 0, 1, 2):
                for j in grid.get((cx + dx, cy + dy), ()):
                    if j <= i:
                        continue
                    sep = _sat_overlap_float(fl[i], fl[j])
                    if sep > 1e-7:
                        continue
                    if sep < -1e-7:
                        raise OverlappingTiles(f"overlaps tile {j}", i)
                    pi = [system.project(c, "par") for c in corners[i]]
                    pj = [system.project(c, "par") for c in corners[j]]
                    if not _sat_disjoint_exact(pi, pj):
                        raise OverlappingTiles(f"overlaps tile {j}", i)


def _check_connected(corners) -> None:
    parent = list(range(len(corners)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner = {}
    for i, cs in enumerate(corners):
        for k in range(4):
            e = frozenset((cs[k], cs[(k + 1) % 4]))
            j = owner.setdefault(e, i)
            if j != i:
                parent[find(i)] = find(j)
    roots = {find(i) for i in range(len(corners))}
    if len(roots) > 1:
        lonely = next(i for i in range(len(corners)) if find(i) != find(0))
        raise DisconnectedPatch(f"patch splits into {len(roots)} edge-connected parts", lonely)


def validate_patch(p: Patch) -> ValidatedPatch:
    system = p.lattice
    if not p.tiles:
        raise ValidationError("patch has no tiles")
    classes = []
    corners = []
    for i, t in enumerate(p.tiles):
        cls = system.resolve(t.class_id)
        system.check_anchor(cls, t.anchor, i)
        classes.append(cls)
        corners.append(tuple(system.tile_corners(cls, t.anchor)))
    origin = p.effective_origin
    if origin not in {t.anchor for t in p.tiles}:
        raise ValidationError(f"origin {list(origin)} is not the anchor of any tile")
    _check_overlaps(system, corners)
    _check_connected(corners)
    return ValidatedPatch(p, system, tuple(classes), tuple(corners), origin)


def _ensure_validated(p) -> ValidatedPatch:
    return p if isinstance(p, ValidatedPatch) else validate_patch(p)


# the algorithm -------------------------------------------------------------------

def relative_vector(t: PlacedTile, origin, system="penrose"):
    return get_system(system).sub(t.anchor, origin)


def place_duals(p) -> list[ConvexPoly]:
    vp = _ensure_validated(p)
    out = []
    for t, cls in zip(vp.patch.tiles, vp.classes):
        shift = vp.system.project(relative_vector(t, vp.origin, vp.system), "perp")
        out.append(cls.dual_polygon.translate(shift))
    return out


def analyze(p) -> FrequencyReport:
    vp = _ensure_validated(p)
    duals = place_duals(vp)
    inter = clip(duals)
    a = area(inter, vp.system.field_zero)
    value = vp.system.to_frequency_value(a / vp.system.window_total())
    return FrequencyReport(ExactFrequency.of(value), a, inter, tuple(duals), vp)


def frequency(p) -> ExactFrequency:
    return analyze(p).frequency


# symmetry and normal forms ---------------------------------------------------------

def apply_map(p, g) -> Patch:
    """Image of a patch under a lift map g (a lattice symmetry or translation)."""
    vp = _ensure_validated(p)
    system = vp.system
    tiles = []
    origin = None
    for t, cs in zip(vp.patch.tiles, vp.corners):
        cls, anchor = system.class_from_corners([g(c) for c in cs])
        tiles.append(PlacedTile(cls.id, anchor))
        if origin is None and t.anchor == vp.origin:
            origin = anchor
    return Patch(system.name, tuple(tiles), origin)


def translate(p, v) -> Patch:
    p = p.patch if isinstance(p, ValidatedPatch) else p
    system = p.lattice
    tiles = tuple(PlacedTile(t.class_id, system.add(t.anchor, v)) for t in p.tiles)
    return Patch(system.name, tiles, system.add(p.effective_origin, v), dict(p.meta))


def canonicalize(p) -> Patch:
    """Normal form: canonical labels, smallest anchor moved to its class representative."""
    p = p.patch if isinstance(p, ValidatedPatch) else p
    system = p.lattice
    relabeled = []
    for t in p.tiles:
        cls = system.resolve(t.class_id)
        c2, a2 = system.class_from_corners(system.tile_corners(cls, t.anchor))
        relabeled.append((c2.id, a2))
    a0 = min(a for _, a in relabeled)
    shift = system.sub(system.representative(system.r_class(a0)), a0)
    tiles = sorted(PlacedTile(c, system.add(a, shift)) for c, a in relabeled)
    return Patch(system.name, tuple(tiles), system.add(a0, shift))


def orbit(p) -> list[Patch]:
    """Distinct normal forms of all images of p under the tiling's point group."""
    vp = _ensure_validated(p)
    forms = {}
    for g in vp.system.group_elements():
        c = canonicalize(apply_map(vp, g))
        forms.setdefault(c, None)
    return list(forms)


def orbit_frequency(p) -> ExactFrequency:
    vp = _ensure_validated(p)
    n = len(orbit(vp))
    return ExactFrequency.of(frequency(vp).value * n)


def single_tile_patch(system, class_id: str, anchor) -> Patch:
    return Patch(get_system(system).name, (PlacedTile(class_id, tuple(anchor)),))


def subpatch(p: Patch, indices: Iterable[int], origin=None) -> Patch:
    tiles = tuple(p.tiles[i] for i in indices)
    if origin is None:
        origin = tiles[0].anchor
    return Patch(p.system, tiles, origin)
