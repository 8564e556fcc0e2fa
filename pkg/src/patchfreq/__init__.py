"""Exact patch frequencies in Penrose and Ammann-Beenker tilings by dualisation."""
from __future__ import annotations

__version__ = "0.1.0"

from .dualizer import (CutPoint, GeneratedTiling, count_occurrences, generate,
                       generate_seeded, pick_cut, scan_vertex_stars)
from .errors import *  # noqa: F401,F403
from .exact import (GoldenExact, QuarticReal, SilverExact, decimal_str, power_form,
                    to_golden)
from .freq import (ExactFrequency, Patch, PlacedTile, analyze, frequency, orbit,
                   orbit_frequency, validate_patch)
from .kernels import BACKEND
from .lifting import lift_patch
from .patchio import parse_patch, serialize_patch
from .render import RenderMode, render_svg
from .systems import AMMANN_BEENKER, PENROSE, get_system

__all__ = [
    "AMMANN_BEENKER", "BACKEND", "CutPoint", "ExactFrequency", "GeneratedTiling",
    "GoldenExact", "PENROSE", "Patch", "PlacedTile", "QuarticReal", "RenderMode",
    "SilverExact", "analyze", "count_occurrences", "decimal_str", "frequency",
    "generate", "generate_seeded", "get_system", "lift_patch", "orbit",
    "orbit_frequency", "parse_patch", "pick_cut", "power_form", "render_svg",
    "scan_vertex_stars", "serialize_patch", "to_golden", "validate_patch",
]
