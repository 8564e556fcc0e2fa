"""Rebuild tests/fixtures/diamond_ring*.json.

The patch is assembled from its ten shallow holes (lifts relative to the
central hole A, which has r = 1) and the tile aliases sitting on each hole.
The digitised outline (corner coordinates in units of one tile edge) is
lifted independently and must agree with it up to a point-group element.
"""
from __future__ import annotations

import sys
from collections import Counter
from pathlib import Path

from patchfreq import penrose as pen
from patchfreq.freq import Patch, PlacedTile, apply_map, canonicalize
from patchfreq.lifting import lift_patch
from patchfreq.patchio import serialize_geometry, serialize_patch
from patchfreq.systems import PENROSE

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"

HOLES = {
    "A": ((0, 0, 0, 0, 0), ("RI2", "RI3", "RI4", "RI5")),
    "B": ((0, 1, 1, 1, 0), ("S2", "S5")),
    "C": ((-1, 1, 2, 1, 0), ("S1", "S3")),
    "D": ((-1, 0, 2, 2, 0), ("S2", "S4")),
    "E": ((-1, 0, 1, 2, 1), ("S3", "S5")),
    "F": ((0, 0, 1, 1, 1), ("S1", "S4")),
    "G": ((-1, 1, 1, 0, -1), ("RI2",)),
    "H": ((-2, 0, 2, 1, -1), ("RI3",)),
    "I": ((-2, -1, 1, 2, 0), ("RI4",)),
    "J": ((-1, -1, 0, 1, 1), ("RI5",)),
}

# corner coordinates of the 18 tiles, 8 thick then 10 thin (edge length 1)
_RAW = """
388.05,116.78 380,141.5 354,141.49 362.05,116.76
354,141.49 332.97,126.19 341.02,101.47 362.05,116.76
340.98,181.49 332.96,156.76 354,141.49 362.02,166.22
388.02,166.23 362.02,166.22 354,141.49 380,141.5
293.98,116.73 285.96,92 307,76.73 315.02,101.46
264.89,156.72 256.84,181.45 230.84,181.43 238.89,156.71
264.91,126.16 238.91,126.14 230.88,101.41 256.88,101.43
306.93,206.2 285.91,190.91 293.95,166.18 314.98,181.48
272.91,181.45 264.86,206.18 256.84,181.45 264.89,156.72
238.89,156.71 217.86,141.42 243.86,141.43 264.89,156.72
272.95,101.43 264.93,76.7 285.96,92 293.98,116.73
319.95,166.2 311.93,141.46 332.96,156.76 340.98,181.49
314.98,181.48 293.95,166.18 319.95,166.2 340.98,181.49
272.95,101.43 264.91,126.16 256.88,101.43 264.93,76.7
319.98,116.74 293.98,116.73 315.02,101.46 341.02,101.47
332.97,126.19 311.93,141.46 319.98,116.74 341.02,101.47
243.86,141.43 217.86,141.42 238.91,126.14 264.91,126.16
285.91,190.91 264.86,206.18 272.91,181.45 293.95,166.18
"""
SCALE = 26.0


def geometry() -> list:
    tiles = []
    for line in _RAW.split("\n"):
        if line.strip():
            pts = [tuple(map(float, p.split(","))) for p in line.split()]
            tiles.append([(x / SCALE, -y / SCALE) for x, y in pts])
    return tiles


def ring_patch() -> Patch:
    a = pen.REPRESENTATIVES[1]
    tiles = []
    for rel, aliases in HOLES.values():
        anchor = pen.add(a, pen.canonical(rel))
        tiles.extend(PlacedTile(alias, anchor) for alias in aliases)
    return Patch("penrose", tuple(tiles), a)


def matches_geometry(p: Patch, tol: float = 2e-3) -> bool:
    (lifted,) = lift_patch(geometry(), "penrose", tol=tol)
    target = canonicalize(p)
    for g in PENROSE.group_elements():
        if canonicalize(apply_map(lifted, g)) == target:
            return True
    return False


def main() -> int:
    p = ring_patch()
    if Counter(pen.r_of(t.anchor) for t in p.tiles) != Counter({1: 8, 4: 10}):
        print("unexpected hole classes", file=sys.stderr)
        return 1
    if not matches_geometry(p):
        print("digitised outline does not match the hole table", file=sys.stderr)
        return 1
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "diamond_ring.json").write_text(serialize_patch(p))
    (FIXTURES / "diamond_ring_geom.json").write_text(serialize_geometry("penrose", geometry()))
    print("wrote", FIXTURES / "diamond_ring.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
