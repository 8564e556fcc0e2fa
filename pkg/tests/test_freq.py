from __future__ import annotations

import random

import pytest

from patchfreq import penrose as pen
from patchfreq.errors import (AnchorClassMismatch, AnchorNotShallow, DisconnectedPatch,
                              OverlappingTiles, UnknownTileClass, ValidationError)
from patchfreq.exact import GoldenExact, QuarticReal, SilverExact
from patchfreq.freq import (Patch, PlacedTile, analyze, apply_map, canonicalize, frequency,
                            orbit, orbit_frequency, place_duals, relative_vector,
                            single_tile_patch, translate, validate_patch)
from patchfreq.systems import AMMANN_BEENKER, PENROSE

TAU_INV = GoldenExact(-1, 1)


def test_single_thick_tile_at_a1_is_valid():
    p = single_tile_patch("penrose", "RI1", (1, 0, 0, 0, 0))
    assert validate_patch(p).classes[0].alias == "RI1"


def test_deep_anchor_rejected():
    p = single_tile_patch("penrose", "RI1", (1, 0, 1, 0, 0))
    with pytest.raises(AnchorNotShallow) as exc:
        validate_patch(p)
    assert exc.value.tile_index == 0


def test_wrong_residue_for_class():
    with pytest.raises(AnchorClassMismatch):
        validate_patch(single_tile_patch("penrose", "R1", (1, 0, 0, 0, 0)))


def test_unknown_class():
    with pytest.raises(UnknownTileClass):
        single_tile_patch("penrose", "nope", (1, 0, 0, 0, 0))


def test_duplicate_tiles_overlap():
    t = PlacedTile("RI1", (1, 0, 0, 0, 0))
    with pytest.raises(OverlappingTiles):
        validate_patch(Patch("penrose", (t, t)))


def test_origin_must_be_an_anchor():
    with pytest.raises(ValidationError):
        validate_patch(Patch("penrose", (PlacedTile("RI1", (1, 0, 0, 0, 0)),), (0, 0, 0, 0, -1)))


def test_disconnected(ring):
    # the tiles on hole A and the lone tile on hole G share no edge
    tiles = (ring.tiles[0], ring.tiles[14])
    with pytest.raises(DisconnectedPatch):
        validate_patch(Patch("penrose", tiles, tiles[0].anchor))


def test_relative_vectors(ring):
    a = ring.origin
    holes = {pen.sub(t.anchor, a) for t in ring.tiles}
    assert (0, 1, 1, 1, 0) in holes
    assert (-2, -2, -1, 0, 0) in holes
    assert relative_vector(ring.tiles[0], a) == (0, 0, 0, 0, 0)


def test_single_tile_duals_unmoved():
    p = single_tile_patch("penrose", "S2", (0, 0, 0, 0, -1))
    assert place_duals(p)[0] == pen.resolve_class("S2").dual_polygon


@pytest.mark.parametrize("alias, expected", [
    ("R1", TAU_INV / 10),
    ("RI4", TAU_INV / 10),
    ("S3", TAU_INV * TAU_INV / 10),
    ("SI5", TAU_INV * TAU_INV / 10),
])
def test_single_tile_frequencies(alias, expected):
    cls = pen.resolve_class(alias)
    p = single_tile_patch("penrose", alias, pen.REPRESENTATIVES[cls.anchor_r])
    assert frequency(p).value == expected


def test_all_tiles_sum_to_tiles_per_vertex():
    total = GoldenExact(0)
    for cls in pen.build_catalog():
        total = total + frequency(single_tile_patch("penrose", cls.id, pen.REPRESENTATIVES[cls.anchor_r])).value
    # tiles per vertex in a Penrose rhombus tiling is 1
    assert total == GoldenExact(1)


def test_ab_rhombus_frequency():
    p = single_tile_patch("ab", "++oo", (0, 0, 0, 0))
    f = frequency(p)
    assert f.value == SilverExact(2, -1) / 4
    assert not f.in_module


def test_ab_tiles_per_vertex():
    total = SilverExact(0)
    for cls in AMMANN_BEENKER.catalog():
        if cls.shape.value == "rhombus" or cls.id in ("+o+o", "o+o+"):
            total = total + frequency(single_tile_patch("ab", cls.id, (0, 0, 0, 0))).value
    assert total == SilverExact(1)


def test_ring_frequency(ring):
    rep = analyze(ring)
    assert rep.frequency.value == GoldenExact(34, -21) / 10
    assert len(rep.intersection) == 3
    assert str(rep.frequency.power) == "tau^-8/10"
    a = rep.area * QuarticReal(2) / QuarticReal(5)
    assert a * a * QuarticReal(2) * (QuarticReal(1165) + QuarticReal(521) * (QuarticReal(-5, 0, 2))) == QuarticReal(1)


def test_ring_orbit(ring):
    assert len(orbit(ring)) == 10
    assert orbit_frequency(ring).value == GoldenExact(34, -21)


def test_impossible_patch_has_zero_frequency():
    # edge-adjacent and non-overlapping, yet the two duals only touch
    p = Patch("penrose", (PlacedTile("RI1", (1, 0, 0, 0, 0)), PlacedTile("SI2", (0, 0, 1, 0, 0))))
    rep = analyze(p)
    assert rep.frequency.value.is_zero()
    assert rep.intersection.is_empty
    assert rep.frequency.power is None
    assert str(rep.frequency) == "(0 + 0*tau)/1 ≈ 0"


def test_translation_by_root_vector(ring):
    shift = pen.canonical((1, -1, 0, 0, 0))
    moved = translate(ring, shift)
    assert canonicalize(moved) == canonicalize(ring)
    assert frequency(moved).value == frequency(ring).value


def test_rotation_changes_normal_form(ring):
    rot = apply_map(ring, lambda v: pen.rotate_lift(v, 1))
    assert canonicalize(rot) != canonicalize(ring)
    assert frequency(rot).value == frequency(ring).value


def test_symmetric_star_normal_form(pen_stars):
    five_fold = [s for s in pen_stars if s.orbit_size == 2]
    assert len(five_fold) == 2
    for s in five_fold:
        p = s.representative
        rot = apply_map(p, lambda v: pen.rotate_lift(v, 1))
        assert canonicalize(rot) == canonicalize(p)


def test_group_orders():
    assert len(PENROSE.group_elements()) == 10
    assert len(AMMANN_BEENKER.group_elements()) == 16


@pytest.mark.parametrize("seed", range(5))
def test_generator_invariance_random(pen30, seed):
    from patchfreq.dualizer import random_subpatch
    p = random_subpatch(pen30, 1 + 3 * seed, random.Random(seed))
    f = frequency(p).value
    for g in PENROSE.generators():
        assert frequency(apply_map(p, g)).value == f
