"""Command-line interface: ``patchfreq <command> ...``.

Exit status: 0 success, 1 validation error, 2 usage or I/O error,
3 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .dualizer import generate_seeded, count_occurrences, scan_vertex_stars
from .errors import (InternalDerivationError, ModuleMembershipError, PatchFreqError,
                     RegionTooSmall, SchemaError, ValidationError)
from .exact import decimal_str
from .freq import ExactFrequency, analyze, orbit, orbit_frequency
from .lifting import lift_patch
from .patchio import parse_geometry, parse_patch, serialize_patch
from .render import RenderMode, render_svg
from .systems import get_system

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _freq_json(f: ExactFrequency) -> dict:
    return {
        "exact": f.value.serialize(),
        "decimal": f.decimal,
        "power": str(f.power) if f.power is not None else None,
        "in_module": f.in_module,
    }


def _read_patch(path):
    if not Path(path).is_file():
        raise UsageError(f"cannot read {path}")
    return parse_patch(Path(path))


def _emit(text: str, out):
    out.write(text if text.endswith("\n") else text + "\n")


# commands ---------------------------------------------------------------------------

def cmd_freq(args, out):
    p = _read_patch(args.patch)
    rep = analyze(p)
    f = rep.frequency
    if args.json:
        doc = {"system": p.system, "tiles": len(p), "frequency": _freq_json(f),
               "intersection_vertices": len(rep.intersection)}
        if args.orbit:
            doc["orbit_size"] = len(orbit(p))
            doc["orbit_total"] = _freq_json(orbit_frequency(p))
        _emit(json.dumps(doc, indent=2, sort_keys=True), out)
        return EXIT_OK
    _emit(str(f), out)
    if args.orbit:
        _emit(f"orbit of {len(orbit(p))} images, total {orbit_frequency(p)}", out)
    return EXIT_OK


def cmd_lift(args, out):
    if not Path(args.geom).is_file():
        raise UsageError(f"cannot read {args.geom}")
    system, tiles = parse_geometry(Path(args.geom))
    patches = lift_patch(tiles, system, tol=args.tol)
    if not args.all:
        patches = patches[:1]
    for i, p in enumerate(patches):
        if len(patches) > 1:
            _emit(f"# interpretation {i + 1}", out)
        _emit(serialize_patch(p), out)
    return EXIT_OK


def cmd_generate(args, out):
    t = generate_seeded(args.seed, args.radius, args.system)
    text = serialize_patch(t.as_patch())
    if args.output == "-":
        _emit(text, out)
    else:
        Path(args.output).write_text(text)
        _emit(f"wrote {len(t.tiles)} tiles, {len(t.vertices)} vertices to {args.output}", out)
    return EXIT_OK


def _star_label(system, star) -> str:
    tiles = star.representative.tiles
    return " ".join(sorted(system.label(system.resolve(t.class_id)) for t in tiles))


def cmd_scan(args, out):
    system = get_system(args.system)
    t = generate_seeded(args.seed, args.radius, system)
    stars = scan_vertex_stars(t)
    total_count = sum(s.count for s in stars)
    rows = []
    acc = None
    for s in stars:
        acc = s.total.value if acc is None else acc + s.total.value
        rows.append({
            "tiles": _star_label(system, s),
            "count": s.count,
            "ratio": decimal_str(s.count / total_count if total_count else 0.0, 6),
            "frequency": _freq_json(s.frequency),
            "orbit_size": s.orbit_size,
            "total": _freq_json(s.total),
        })
    one = type(acc)(1) if acc is not None else None
    exact_one = acc is not None and acc == one
    if args.json:
        _emit(json.dumps({"system": system.name, "radius": args.radius, "seed": t.cut.seed,
                          "classes": rows, "sum_of_totals": acc.serialize() if acc is not None else None,
                          "sum_is_one": exact_one}, indent=2, sort_keys=True), out)
        return EXIT_OK if exact_one else EXIT_INTERNAL
    _emit(f"{system.name} radius {args.radius} seed {t.cut.seed}: "
          f"{len(stars)} vertex-star classes over {total_count} interior vertices", out)
    for i, (s, row) in enumerate(zip(stars, rows), 1):
        _emit(f"{i:2d}  n={s.count:<6d} ratio={row['ratio']:<9s} x{s.orbit_size:<2d} "
              f"nu = {s.frequency}   total = {s.total}   [{row['tiles']}]", out)
    if exact_one:
        _emit("sum of totals = 1 (exact)", out)
        return EXIT_OK
    _emit(f"sum of totals = {acc.serialize() if acc is not None else 0} (expected 1)", out)
    return EXIT_INTERNAL


def cmd_verify(args, out):
    p = _read_patch(args.patch)
    f = analyze(p).frequency
    t = generate_seeded(args.seed, args.radius, p.system)
    occ = count_occurrences(p, t)
    exact = float(f.value)
    emp = float(occ.ratio)
    rel = abs(emp - exact) / exact if exact else float("nan")
    if args.json:
        _emit(json.dumps({"frequency": _freq_json(f), "hits": occ.hits, "vertices": occ.anchors,
                          "empirical": decimal_str(emp, 6), "region_radius": occ.region_radius,
                          "relative_deviation": decimal_str(rel, 4)}, indent=2, sort_keys=True), out)
        return EXIT_OK
    _emit(f"exact     {f}", out)
    _emit(f"empirical {occ.hits}/{occ.anchors} = {decimal_str(emp, 6)} "
          f"(region radius {occ.region_radius:.2f}, relative deviation {decimal_str(rel, 3)})", out)
    return EXIT_OK


def cmd_render(args, out):
    p = _read_patch(args.file)
    svg = render_svg(p, RenderMode.parse(args.mode))
    Path(args.output).write_text(svg)
    _emit(f"wrote {args.output}", out)
    return EXIT_OK


def _poly_json(poly) -> list:
    return [[v.x.serialize(), v.y.serialize()] for v in poly.vertices]


def cmd_catalog(args, out):
    system = get_system(args.system)
    rows = []
    for cls in system.catalog():
        row = {"id": cls.id, "alias": cls.alias, "shape": cls.shape.value,
               "signatures": list(cls.signatures),
               "corner_offsets": [list(c) for c in cls.corner_offsets],
               "dual_polygon": _poly_json(cls.dual_polygon)}
        if system.name == "penrose":
            row["anchor_r"] = cls.anchor_r
        else:
            row["decoration"] = cls.decoration
        rows.append(row)
    doc = {"system": system.name, "window_total": system.window_total().serialize(), "classes": rows}
    _emit(json.dumps(doc, indent=2), out)
    return EXIT_OK


# parser -----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="patchfreq", description="Exact patch frequencies in Penrose and "
                 "Ammann-Beenker tilings.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("freq", help="exact frequency of a patch file")
    f.add_argument("patch")
    f.add_argument("--orbit", action="store_true", help="also report the symmetry-orbit total")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_freq)

    li = sub.add_parser("lift", help="lift a geometry file to a patch file")
    li.add_argument("geom")
    li.add_argument("--all", action="store_true", help="print every admissible interpretation")
    li.add_argument("--tol", type=float, default=1e-6)
    li.set_defaults(func=cmd_lift)

    systems = ["penrose", "ammann-beenker", "ab"]
    g = sub.add_parser("generate", help="generate a tiling patch around the origin")
    g.add_argument("--system", choices=systems, default="penrose")
    g.add_argument("--radius", type=float, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("scan-configs", help="vertex-star classes with exact frequencies")
    s.add_argument("--system", choices=systems, default="penrose")
    s.add_argument("--radius", type=float, required=True)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_scan)

    v = sub.add_parser("verify", help="compare a patch frequency with a generated region")
    v.add_argument("patch")
    v.add_argument("--radius", type=float, required=True)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="SVG of a patch or of its dual arrangement")
    r.add_argument("file")
    r.add_argument("--mode", choices=["parallel", "dual"], default="parallel")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_render)

    c = sub.add_parser("catalog", help="export the tile-class catalog as JSON")
    c.add_argument("--system", choices=systems, default="penrose")
    c.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return EXIT_USAGE
    except (ValidationError, SchemaError, RegionTooSmall) as exc:
        err.write(f"invalid: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID
    except (InternalDerivationError, ModuleMembershipError, AssertionError) as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except PatchFreqError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
