"""Reconstruct lifted patches from approximate tile corner coordinates."""
from __future__ import annotations

import math
from collections import defaultdict, deque
from typing import Sequence

from .errors import (DisconnectedPatch, NoValidLift, UnknownTileClass,
                     UnrecognizedEdge, ValidationError)
from .freq import Patch, PlacedTile, frequency, validate_patch
from .systems import get_system

DEFAULT_TOL = 1e-6


def _cluster(points: list[tuple[float, float]], tol: float) -> tuple[list[int], list[tuple[float, float]]]:
    """Merge points closer than 2*tol; returns point -> cluster id and cluster means."""
    cell = max(4 * tol, 1e-12)
    grid = defaultdict(list)
    ids = []
    sums: list[list[float]] = []
    for x, y in points:
        gx, gy = math.floor(x / cell), math.floor(y / cell)
        found = None
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for cid in grid.get((gx + dx, gy + dy), ()):
                    sx, sy, n = sums[cid]
                    if math.hypot(sx / n - x, sy / n - y) <= 2 * tol:
                        found = cid
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            found = len(sums)
            sums.append([0.0, 0.0, 0])
            grid[(gx, gy)].append(found)
        sums[found][0] += x
        sums[found][1] += y
        sums[found][2] += 1
        ids.append(found)
    return ids, [(sx / n, sy / n) for sx, sy, n in sums]


def _unit_edges(system):
    out = []
    for i in range(system.dim if system.name != "penrose" else 5):
        e = tuple(1 if j == i else 0 for j in range(system.dim))
        e = system.canonical(e)
        px, py = system.project_float(e, "par")
        out.append((e, (px, py)))
        out.append((system.sub(system.canonical((0,) * system.dim), e), (-px, -py)))
    return out


def _edge_lift(system, units, d, tol, tile_index):
    best = None
    for lift, (ux, uy) in units:
        err = math.hypot(d[0] - ux, d[1] - uy)
        if err <= 4 * tol and (best is None or err < best[0]):
            best = (err, lift)
    if best is None:
        raise UnrecognizedEdge(f"edge vector ({d[0]:.6f}, {d[1]:.6f}) is not a tiling edge", tile_index)
    return best[1]


def lift_patch(geom: Sequence[Sequence[Sequence[float]]], system="penrose",
               tol: float = DEFAULT_TOL) -> list[Patch]:
    """All admissible lifted patches for tiles given by four approximate corners each.

    Penrose geometry admits one candidate per residue of the base vertex; the
    candidates whose tiles all have exactly one shallow corner and whose
    frequency is positive are returned.  Ammann-Beenker has a single lift.
    """
    system = get_system(system)
    if not geom:
        raise ValidationError("geometry has no tiles")
    points = []
    for i, tile in enumerate(geom):
        if len(tile) != 4:
            raise ValidationError(f"tile has {len(tile)} corners, expected 4", i)
        points.extend((float(x), float(y)) for x, y in tile)
    ids, pos = _cluster(points, tol)
    tiles_v = [ids[4 * i:4 * i + 4] for i in range(len(geom))]
    units = _unit_edges(system)

    # edge lifts, adjacency and connectivity
    adj = defaultdict(list)
    edge_owner = defaultdict(list)
    for i, vs in enumerate(tiles_v):
        if len(set(vs)) != 4:
            raise ValidationError("tile corners coincide", i)
        for k in range(4):
            a, b = vs[k], vs[(k + 1) % 4]
            d = (pos[b][0] - pos[a][0], pos[b][1] - pos[a][1])
            lift = _edge_lift(system, units, d, tol, i)
            adj[a].append((b, lift))
            adj[b].append((a, system.sub(system.canonical((0,) * system.dim), lift)))
            edge_owner[frozenset((a, b))].append(i)
    parent = list(range(len(geom)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for owners in edge_owner.values():
        for j in owners[1:]:
            parent[find(j)] = find(owners[0])
    if len({find(i) for i in range(len(geom))}) > 1:
        raise DisconnectedPatch("tiles are not edge-connected")

    rel = {tiles_v[0][0]: system.canonical((0,) * system.dim)}
    queue = deque([tiles_v[0][0]])
    while queue:
        a = queue.popleft()
        for b, step in adj[a]:
            lb = system.add(rel[a], step)
            if b not in rel:
                rel[b] = lb
                queue.append(b)
            elif rel[b] != lb:
                raise NoValidLift("edge lifts are inconsistent around a cycle")

    bases = [(r,) + (0,) * (system.dim - 1) for r in (1, 2, 3, 4)] if system.name == "penrose" \
        else [(0,) * system.dim]
    out = []
    for base in bases:
        base = system.canonical(base)
        try:
            placed = []
            for vs in tiles_v:
                cls, anchor = system.class_from_corners([system.add(base, rel[v]) for v in vs])
                placed.append(PlacedTile(cls.id, anchor))
            p = Patch(system.name, tuple(placed), placed[0].anchor)
            validate_patch(p)
            if frequency(p).value.sign() <= 0:
                continue
        except (UnknownTileClass, ValidationError):
            continue
        out.append(p)
    if not out:
        raise NoValidLift("no assignment of hole classes yields a realizable patch")
    return out


def vertex_positions(geom, tol: float = DEFAULT_TOL):
    """Cluster ids and mean positions of the corners (for diagnostics)."""
    pts = [(float(x), float(y)) for tile in geom for x, y in tile]
    return _cluster(pts, tol)
