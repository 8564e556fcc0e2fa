"""Patch and geometry files (JSON)."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import SchemaError, UnknownTileClass
from .freq import Patch, PlacedTile
from .systems import get_system

_PATCH_KEYS = {"system", "tiles", "origin", "meta"}


def _load(source) -> tuple[Any, str]:
    if isinstance(source, (dict, list)):
        return source, "<object>"
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        text = path.read_text()
        name = str(path)
    else:
        text = source
        name = "<string>"
    try:
        return json.loads(text), name
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{name}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _int_vector(value, dim, where) -> tuple:
    if not isinstance(value, list) or len(value) != dim:
        raise SchemaError(f"{where}: expected a list of {dim} integers")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise SchemaError(f"{where}: entries must be integers")
    return tuple(value)


def patch_from_obj(obj, name="<object>") -> Patch:
    if not isinstance(obj, dict):
        raise SchemaError(f"{name}: top level must be an object")
    extra = set(obj) - _PATCH_KEYS
    if extra:
        raise SchemaError(f"{name}: unknown field(s) {sorted(extra)}")
    if "system" not in obj:
        raise SchemaError(f"{name}: missing field 'system'")
    system = get_system(obj["system"])
    tiles = obj.get("tiles")
    if not isinstance(tiles, list) or not tiles:
        raise SchemaError(f"{name}: 'tiles' must be a non-empty list")
    placed = []
    for i, t in enumerate(tiles):
        where = f"{name}: tiles[{i}]"
        if not isinstance(t, dict) or set(t) != {"class", "anchor"}:
            raise SchemaError(f"{where}: expected fields 'class' and 'anchor'")
        if not isinstance(t["class"], str):
            raise SchemaError(f"{where}.class: expected a string")
        try:
            system.resolve(t["class"])
        except UnknownTileClass as exc:
            raise UnknownTileClass(str(exc), i) from None
        placed.append(PlacedTile(t["class"], _int_vector(t["anchor"], system.dim, f"{where}.anchor")))
    origin = obj.get("origin")
    if origin is not None:
        origin = _int_vector(origin, system.dim, f"{name}: origin")
    meta = obj.get("meta", {})
    if not isinstance(meta, dict):
        raise SchemaError(f"{name}: 'meta' must be an object")
    return Patch(system.name, tuple(placed), origin, dict(meta))


def parse_patch(source) -> Patch:
    """Parse a patch from a path, a JSON string or an already-decoded object."""
    obj, name = _load(source)
    return patch_from_obj(obj, name)


def _dumps(x) -> str:
    return json.dumps(x, separators=(", ", ": "), sort_keys=True)


def serialize_patch(p: Patch) -> str:
    """Deterministic text: one tile per line, Penrose classes written by alias."""
    system = p.lattice
    lines = ["{", f'  "system": {_dumps(system.name)},']
    if p.origin is not None:
        lines.append(f'  "origin": {_dumps(list(p.origin))},')
    if p.meta:
        lines.append(f'  "meta": {_dumps(p.meta)},')
    lines.append('  "tiles": [')
    rows = []
    for t in p.tiles:
        label = system.label(system.resolve(t.class_id))
        rows.append(f'    {{"class": {_dumps(label)}, "anchor": {_dumps(list(t.anchor))}}}')
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_patch(p: Patch, path) -> None:
    Path(path).write_text(serialize_patch(p))


def parse_geometry(source) -> tuple[str, list]:
    """Returns (system name, list of 4-corner float lists)."""
    obj, name = _load(source)
    if not isinstance(obj, dict) or "tiles" not in obj or "system" not in obj:
        raise SchemaError(f"{name}: expected fields 'system' and 'tiles'")
    system = get_system(obj["system"])
    out = []
    for i, t in enumerate(obj["tiles"]):
        corners = t.get("corners") if isinstance(t, dict) else None
        if not isinstance(corners, list) or len(corners) != 4:
            raise SchemaError(f"{name}: tiles[{i}].corners must hold 4 points")
        pts = []
        for c in corners:
            if (not isinstance(c, list) or len(c) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in c)):
                raise SchemaError(f"{name}: tiles[{i}].corners: points must be [x, y] numbers")
            pts.append((float(c[0]), float(c[1])))
        out.append(pts)
    return system.name, out


def serialize_geometry(system, tiles) -> str:
    system = get_system(system)
    rows = [f'    {{"corners": {_dumps([[round(x, 9), round(y, 9)] for x, y in t])}}}' for t in tiles]
    return ("{\n" f'  "system": {_dumps(system.name)},\n' '  "tiles": [\n'
            + ",\n".join(rows) + "\n  ]\n}\n")
