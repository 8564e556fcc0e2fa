from __future__ import annotations

import json

import pytest

from patchfreq.errors import AnchorNotShallow, SchemaError, UnknownTileClass
from patchfreq.freq import validate_patch
from patchfreq.patchio import parse_patch, serialize_patch

from .conftest import FIXTURES


def test_minimal_file():
    p = parse_patch('{"system":"penrose","tiles":[{"class":"RI1","anchor":[1,0,0,0,0]}]}')
    assert len(p) == 1
    validate_patch(p)


def test_deep_anchor_surfaces_with_index():
    p = parse_patch({"system": "penrose", "tiles": [
        {"class": "RI1", "anchor": [1, 0, 0, 0, 0]},
        {"class": "RI2", "anchor": [1, 1, 0, 0, 0]}]})
    with pytest.raises(AnchorNotShallow) as exc:
        validate_patch(p)
    assert exc.value.tile_index == 1


def test_ring_fixture_is_byte_stable():
    text = (FIXTURES / "diamond_ring.json").read_text()
    assert serialize_patch(parse_patch(text)) == text


def test_roundtrip_ab():
    p = parse_patch({"system": "ammann-beenker", "origin": [0, 0, 0, 0], "meta": {"seed": 3},
                     "tiles": [{"class": "H1", "anchor": [0, 0, 0, 0]}]})
    q = parse_patch(serialize_patch(p))
    assert q == p
    assert q.meta == {"seed": 3}


@pytest.mark.parametrize("doc, fragment", [
    ("{", "line 1"),
    ('{"tiles": []}', "system"),
    ('{"system": "hex", "tiles": [{"class": "R1", "anchor": [0,0,0,0,1]}]}', "hex"),
    ('{"system": "penrose", "tiles": []}', "tiles"),
    ('{"system": "penrose", "tiles": [{"class": "R1"}]}', "tiles[0]"),
    ('{"system": "penrose", "tiles": [{"class": "R1", "anchor": [0,0,0,1]}]}', "5 integers"),
    ('{"system": "penrose", "tiles": [{"class": "R1", "anchor": [0,0,0,0.5,1]}]}', "integers"),
    ('{"system": "penrose", "extra": 1, "tiles": [{"class": "R1", "anchor": [0,0,0,0,-1]}]}', "extra"),
])
def test_schema_errors(doc, fragment):
    with pytest.raises(SchemaError) as exc:
        parse_patch(doc)
    assert fragment in str(exc.value)


def test_unknown_class_has_index():
    with pytest.raises(UnknownTileClass) as exc:
        parse_patch('{"system": "penrose", "tiles": [{"class": "R1", "anchor": [0,0,0,0,-1]},'
                    ' {"class": "Z", "anchor": [0,0,0,0,-1]}]}')
    assert exc.value.tile_index == 1
