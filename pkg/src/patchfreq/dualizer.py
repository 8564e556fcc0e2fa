"""Finite regions of T(c) by dualisation, vertex-star scans and occurrence counts.

Candidate lifts come from ``kernels.lattice_points`` (a disc in parallel
space times a disc around the cut in perpendicular space).  Window and
tile tests run in floating point with a margin; anything inside the
margin is decided exactly, and an exact boundary hit raises NonGenericCut.
"""
from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import ammann as ab
from . import kernels
from . import penrose as pen
from .errors import NonGenericCut, RegionTooSmall
from .exact import Point2, QuarticReal, SilverExact
from .freq import (ExactFrequency, Patch, PlacedTile, canonicalize, frequency,
                   orbit, validate_patch)
from .systems import TilingSystem, get_system

EPS = 1e-9
KEY_OFFSET = 1 << 13
KEY_BITS = 14


@dataclass(frozen=True)
class CutPoint:
    x: Fraction
    y: Fraction
    seed: int | None = None

    def exact(self, system) -> Point2:
        system = get_system(system)
        ftype = QuarticReal if system.name == "penrose" else SilverExact
        return Point2(ftype(self.x), ftype(self.y))

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


def pick_cut(seed: int, box: Fraction = Fraction(1, 2), denominator: int = 10**9 + 7) -> CutPoint:
    """Deterministic rational cut point in [-box, box]^2."""
    rng = random.Random(seed)
    span = int(box * denominator)
    x = Fraction(rng.randint(-span, span), denominator)
    y = Fraction(rng.randint(-span, span), denominator)
    return CutPoint(x, y, seed)


@dataclass
class GeneratedTiling:
    system: str
    cut: CutPoint
    radius: float
    tiles: list  # PlacedTile
    vertices: np.ndarray  # (N, 4) int64 lift coordinates (Penrose: n1..n4 with n5 = 0)
    vertex_par: np.ndarray  # (N, 2) float parallel positions
    tile_class: np.ndarray  # (T,) catalog index
    tile_anchor: np.ndarray  # (T, 4)
    meta: dict = field(default_factory=dict)

    @property
    def lattice(self) -> TilingSystem:
        return get_system(self.system)

    def vertex_lifts(self) -> list[tuple]:
        return [_lift_from_row(self.system, r) for r in self.vertices]

    def interior_mask(self, margin: float = 2.0) -> np.ndarray:
        r = np.hypot(self.vertex_par[:, 0], self.vertex_par[:, 1])
        return r <= self.radius - margin

    def as_patch(self) -> Patch:
        meta = {"seed": self.cut.seed, "cut": [str(self.cut.x), str(self.cut.y)],
                "radius": self.radius}
        return Patch(self.system, tuple(self.tiles), None, meta)


def _lift_from_row(system, row) -> tuple:
    if get_system(system).name == "penrose":
        return (int(row[0]), int(row[1]), int(row[2]), int(row[3]), 0)
    return tuple(int(v) for v in row)


@lru_cache(maxsize=None)
def _matrices(name: str):
    if name == "penrose":
        par, perp = pen.PAR_FLOAT[:, :4], pen.PERP_FLOAT[:, :4]
    else:
        par, perp = ab.PAR_FLOAT, ab.PERP_FLOAT
    m = np.vstack([par, perp])
    return m, np.linalg.inv(m)


@lru_cache(maxsize=None)
def _vertex_windows(name: str) -> dict:
    """Residue class -> relative vertex window (exact polygon)."""
    if name == "penrose":
        return dict(pen.windows().relative)
    return {0: ab.octagon()}


@lru_cache(maxsize=None)
def _tile_tests(name: str) -> dict:
    """Residue class -> list of (catalog index, class) whose tiles anchor there."""
    system = get_system(name)
    out = defaultdict(list)
    for i, cls in enumerate(system.catalog()):
        if name == "penrose":
            out[cls.anchor_r].append((i, cls))
        elif len(cls.signatures) > 1 or cls.id in ("+o+o", "o+o+"):
            # one canonical label per geometric tile
            out[0].append((i, cls))
    return dict(out)


def _residues(name: str, pts: np.ndarray) -> np.ndarray:
    if name == "penrose":
        return pts.sum(axis=1) % 5
    return np.zeros(len(pts), dtype=np.int64)


def _classify_exact(system, cut_exact, lifts, poly, flags) -> np.ndarray:
    """Resolve flag 2 entries exactly; raise on a boundary incidence."""
    for k in np.nonzero(flags == 2)[0]:
        u = cut_exact - system.project(lifts[k], "perp")
        s = poly.boundary_sign(u)
        if s == 0:
            raise NonGenericCut(f"cut lies on a window boundary at lift {lifts[k]}")
        flags[k] = 1 if s > 0 else 0
    return flags


def _max_radius(polys) -> float:
    return max(math.hypot(*p) for poly in polys for p in poly.to_float())


def generate(cut: CutPoint, radius: float, system="penrose") -> GeneratedTiling:
    """All tiles with anchor within ``radius`` + 2 of the origin, for the cut ``cut``."""
    system = get_system(system)
    name = system.name
    if radius <= 0:
        raise ValueError("radius must be positive")
    m, minv = _matrices(name)
    windows = _vertex_windows(name)
    cx, cy = cut.to_float()
    rho = _max_radius(windows.values()) + 1e-6
    pts = kernels.lattice_points(m, minv, float(radius) + 2.0, cx, cy, rho,
                                 5 if name == "penrose" else 0)
    perp = pts.astype(np.float64) @ m[2:].T
    u = np.column_stack([cx - perp[:, 0], cy - perp[:, 1]])
    res = _residues(name, pts)
    cut_exact = cut.exact(system)
    is_vertex = np.zeros(len(pts), dtype=bool)
    tiles: list = []
    tile_cls: list = []
    tile_rows: list = []
    tests = _tile_tests(name)
    for r, poly in windows.items():
        sel = np.nonzero(res == r)[0]
        if not len(sel):
            continue
        lifts = [_lift_from_row(name, pts[k]) for k in sel]
        flags = kernels.classify_points(u[sel], np.array(poly.to_float()), EPS)
        flags = _classify_exact(system, cut_exact, lifts, poly, flags)
        is_vertex[sel[flags == 1]] = True
        inside = sel[flags == 1]
        inside_lifts = [lifts[k] for k in np.nonzero(flags == 1)[0]]
        for idx, cls in tests.get(r, ()):
            poly_t = cls.dual_polygon
            tf = kernels.classify_points(u[inside], np.array(poly_t.to_float()), EPS)
            tf = _classify_exact(system, cut_exact, inside_lifts, poly_t, tf)
            for k in np.nonzero(tf == 1)[0]:
                tile_rows.append(inside[k])
                tile_cls.append(idx)
    order = sorted(range(len(tile_rows)), key=lambda i: (tuple(pts[tile_rows[i]]), tile_cls[i]))
    catalog = system.catalog()
    tile_anchor = np.array([pts[tile_rows[i]] for i in order], dtype=np.int64).reshape(-1, 4)
    tile_class = np.array([tile_cls[i] for i in order], dtype=np.int64)
    for row, ci in zip(tile_anchor, tile_class):
        tiles.append(PlacedTile(catalog[ci].id, _lift_from_row(name, row)))
    verts = pts[is_vertex]
    vpar = verts.astype(np.float64) @ m[:2].T
    return GeneratedTiling(name, cut, float(radius), tiles, verts, vpar, tile_class, tile_anchor)


def generate_seeded(seed: int, radius: float, system="penrose", attempts: int = 20) -> GeneratedTiling:
    """generate(pick_cut(seed)), moving to seed + 1, + 2, ... on a non-generic cut."""
    for k in range(attempts):
        cut = pick_cut(seed + k)
        try:
            t = generate(cut, radius, system)
        except NonGenericCut:
            continue
        t.meta["seed"] = seed + k
        return t
    raise NonGenericCut(f"no generic cut found from seed {seed} in {attempts} attempts")


# checks ------------------------------------------------------------------------------

def tile_corner_lifts(t: GeneratedTiling) -> list[list[tuple]]:
    system = t.lattice
    out = []
    for tile in t.tiles:
        cls = system.resolve(tile.class_id)
        out.append(system.tile_corners(cls, tile.anchor))
    return out


def check_coverage(t: GeneratedTiling, inner: float | None = None) -> list[str]:
    """Combinatorial gap/overlap check; returns a list of problems (empty when sound).

    Inside radius ``inner`` every edge must be shared by exactly two tiles and
    the tile angles at every vertex must add up to a full turn.
    """
    system = t.lattice
    inner = t.radius if inner is None else inner
    corners = tile_corner_lifts(t)
    edges = defaultdict(int)
    angle = defaultdict(float)
    for cs in corners:
        fl = [system.project_float(c, "par") for c in cs]
        for k in range(4):
            edges[frozenset((cs[k], cs[(k + 1) % 4]))] += 1
            (ax, ay), (bx, by), (px, py) = fl[k - 1], fl[k], fl[(k + 1) % 4]
            a1 = math.atan2(ay - by, ax - bx)
            a2 = math.atan2(py - by, px - bx)
            angle[cs[k]] += abs((a1 - a2 + math.pi) % (2 * math.pi) - math.pi)
    problems = []

    def inside(v):
        x, y = system.project_float(v, "par")
        return math.hypot(x, y) <= inner

    for e, n in edges.items():
        if n > 2:
            problems.append(f"edge {sorted(e)} used {n} times")
        elif n == 1 and all(inside(v) for v in e):
            problems.append(f"edge {sorted(e)} has a gap on one side")
    for v, total in angle.items():
        if inside(v) and abs(total - 2 * math.pi) > 1e-6:
            problems.append(f"vertex {v} angle sum {total:.6f}")
    vset = set(t.vertex_lifts())
    cset = {c for cs in corners for c in cs}
    for v in vset:
        if inside(v) and v not in cset:
            problems.append(f"window vertex {v} lies on no tile")
    for v in cset:
        if inside(v) and v not in vset:
            problems.append(f"tile corner {v} fails the window test")
    return problems


# vertex stars ------------------------------------------------------------------------

@dataclass(frozen=True)
class StarClass:
    representative: Patch  # canonical form, origin at the star's first anchor
    centre_offset: tuple  # star centre minus patch origin
    count: int
    orbit_size: int
    frequency: ExactFrequency
    total: ExactFrequency


def _patch_key(p: Patch):
    return (tuple((t.class_id, t.anchor) for t in p.tiles), p.origin)


def symmetry_normal_form(p: Patch) -> Patch:
    """Smallest canonical image over the point group (a class label up to symmetry)."""
    return min(orbit(p), key=_patch_key)


def incident_tiles(t: GeneratedTiling) -> dict:
    inc = defaultdict(list)
    for i, cs in enumerate(tile_corner_lifts(t)):
        for c in cs:
            inc[c].append(i)
    return inc


def scan_vertex_stars(t: GeneratedTiling, margin: float = 2.0) -> list[StarClass]:
    """Full stars at interior vertices, grouped up to symmetry and priced exactly."""
    system = t.lattice
    inc = incident_tiles(t)
    lifts = t.vertex_lifts()
    mask = t.interior_mask(margin)
    by_key = defaultdict(int)
    for v, ok in zip(lifts, mask):
        if not ok:
            continue
        star = tuple(sorted((t.tiles[i].class_id, system.sub(t.tiles[i].anchor, v)) for i in inc[v]))
        by_key[(system.r_class(v), star)] += 1
    classes: dict = {}
    for (r, star), n in by_key.items():
        centre = system.representative(r)
        tiles = tuple(PlacedTile(c, system.add(centre, d)) for c, d in star)
        p = Patch(system.name, tiles, tiles[0].anchor)
        form = symmetry_normal_form(p)
        entry = classes.setdefault(form, {"count": 0, "sample": p, "centre": centre})
        entry["count"] += n
    out = []
    for form, entry in classes.items():
        p = entry["sample"]
        f = frequency(p)
        k = len(orbit(p))
        out.append(StarClass(
            representative=canonicalize(p),
            centre_offset=system.sub(entry["centre"], p.effective_origin),
            count=entry["count"], orbit_size=k, frequency=f,
            total=ExactFrequency.of(f.value * k)))
    out.sort(key=lambda s: (-float(s.frequency.value), s.orbit_size))
    return out


# occurrence counting -----------------------------------------------------------------

def _encode(rows: np.ndarray, cls: np.ndarray) -> np.ndarray:
    if len(rows) and np.abs(rows).max() >= KEY_OFFSET // 2:
        raise ValueError("lift coordinates too large for key encoding")
    key = cls.astype(np.int64) << (4 * KEY_BITS)
    for i in range(4):
        key = key + ((rows[:, i].astype(np.int64) + KEY_OFFSET) << (KEY_BITS * i))
    return key


def _base(rows: np.ndarray) -> np.ndarray:
    key = np.zeros(len(rows), dtype=np.int64)
    for i in range(4):
        key = key + (rows[:, i].astype(np.int64) << (KEY_BITS * i))
    return key


@dataclass(frozen=True)
class Occurrences:
    hits: int
    anchors: int
    ratio: Fraction
    region_radius: float


def count_occurrences(p, t: GeneratedTiling) -> Occurrences:
    """Vertices inside a safe inner disc at which a lattice translate of p occurs."""
    vp = validate_patch(p) if not hasattr(p, "classes") else p
    system = vp.system
    if system.name != t.system:
        raise ValueError("patch and tiling belong to different systems")
    cp = canonicalize(vp.patch)
    o = cp.origin
    catalog = system.catalog()
    index = {c.id: i for i, c in enumerate(catalog)}
    rel_rows = []
    rel_cls = []
    extent = 0.0
    for tile in cp.tiles:
        cls = system.resolve(tile.class_id)
        d = system.sub(tile.anchor, o)
        rel_rows.append(d[:4])
        rel_cls.append(index[cls.id])
        for c in system.tile_corners(cls, d):
            extent = max(extent, math.hypot(*system.project_float(c, "par")))
    region = t.radius - 2.0 - extent
    if region <= 0 or t.radius <= 2 * extent:
        raise RegionTooSmall(f"radius {t.radius} too small for a patch of extent {extent:.3f}")
    keys = np.sort(_encode(t.tile_anchor, t.tile_class))
    deltas = _encode(np.array(rel_rows, dtype=np.int64).reshape(-1, 4), np.array(rel_cls))
    rr = np.hypot(t.vertex_par[:, 0], t.vertex_par[:, 1])
    in_region = rr <= region
    anchors = int(in_region.sum())
    same = _residues(system.name, t.vertices) == system.r_class(o)
    cand = t.vertices[in_region & same]
    hits = int(kernels.count_matches(keys, _base(cand), deltas).sum()) if len(cand) else 0
    return Occurrences(hits, anchors, Fraction(hits, anchors) if anchors else Fraction(0), region)


def random_subpatch(t: GeneratedTiling, size: int, rng: random.Random,
                    margin: float | None = None) -> Patch:
    """Edge-connected patch of ``size`` tiles grown from a random tile near the centre."""
    system = t.lattice
    corners = tile_corner_lifts(t)
    by_edge = defaultdict(list)
    for i, cs in enumerate(corners):
        for k in range(4):
            by_edge[frozenset((cs[k], cs[(k + 1) % 4]))].append(i)
    limit = t.radius / 2 if margin is None else t.radius - margin
    central = [i for i, tile in enumerate(t.tiles)
               if math.hypot(*system.project_float(tile.anchor, "par")) <= limit]
    chosen = [rng.choice(central)]
    members = set(chosen)
    while len(chosen) < size:
        frontier = sorted({j for i in chosen for k in range(4)
                           for j in by_edge[frozenset((corners[i][k], corners[i][(k + 1) % 4]))]
                           if j not in members})
        if not frontier:
            break
        j = rng.choice(frontier)
        chosen.append(j)
        members.add(j)
    tiles = tuple(t.tiles[i] for i in chosen)
    return Patch(system.name, tiles, tiles[0].anchor)
