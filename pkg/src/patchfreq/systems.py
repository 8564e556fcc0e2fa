"""Uniform view of the two tilings for the frequency engine and generator."""
from __future__ import annotations

from functools import lru_cache
from typing import Callable

from . import ammann as ab
from . import penrose as pen
from .errors import (AnchorClassMismatch, AnchorNotShallow, ModuleMembershipError,
                     SchemaError)
from .exact import GoldenExact, Point2, QuarticReal, SilverExact, to_golden


class TilingSystem:
    name: str
    dim: int
    field_zero: object
    module_denominator: int
    group_order: int

    def canonical(self, v): raise NotImplementedError
    def add(self, u, v): raise NotImplementedError
    def sub(self, u, v): raise NotImplementedError
    def catalog(self): raise NotImplementedError
    def resolve(self, name): raise NotImplementedError
    def class_from_corners(self, corners): raise NotImplementedError
    def project(self, v, space): raise NotImplementedError
    def project_float(self, v, space): raise NotImplementedError
    def window_total(self): raise NotImplementedError
    def to_frequency_value(self, q): raise NotImplementedError
    def in_module(self, value) -> bool: raise NotImplementedError
    def generators(self) -> list[Callable]: raise NotImplementedError
    def r_class(self, v) -> int: raise NotImplementedError
    def representative(self, r: int): raise NotImplementedError
    def check_anchor(self, cls, anchor, index): raise NotImplementedError

    def tile_corners(self, cls, anchor) -> list:
        return [self.add(anchor, o) for o in cls.corner_offsets]

    def label(self, cls) -> str:
        return cls.id

    @lru_cache(maxsize=None)
    def group_elements(self) -> tuple:
        """All group elements as lift maps, generated by closure over the generators."""
        gens = self.generators()
        probe = tuple(self.canonical(v) for v in self._probe_lifts())
        seen = {probe: (lambda v: v)}
        frontier = [seen[probe]]
        while frontier:
            nxt = []
            for f in frontier:
                for g in gens:
                    h = (lambda f, g: lambda v: g(f(v)))(f, g)
                    key = tuple(h(v) for v in probe)
                    if key not in seen:
                        seen[key] = h
                        nxt.append(h)
            frontier = nxt
        if len(seen) != self.group_order:
            raise RuntimeError(f"group closure has {len(seen)} elements")
        return tuple(seen.values())

    def _probe_lifts(self):
        return [tuple(1 if j == i else 0 for j in range(self.dim)) for i in range(self.dim)]


class PenroseSystem(TilingSystem):
    name = "penrose"
    dim = 5
    module_denominator = 10
    group_order = 10

    @property
    def field_zero(self):
        return QuarticReal(0)

    def canonical(self, v):
        return pen.canonical(v)

    def add(self, u, v):
        return pen.add(u, v)

    def sub(self, u, v):
        return pen.sub(u, v)

    def catalog(self):
        return pen.build_catalog()

    def resolve(self, name):
        return pen.resolve_class(name)

    def class_from_corners(self, corners):
        return pen.class_from_corners(corners)

    def project(self, v, space="perp") -> Point2:
        return pen.project(v, space)

    def project_float(self, v, space="par"):
        return pen.project_float(v, space)

    def window_total(self):
        return pen.window_total()

    def to_frequency_value(self, q) -> GoldenExact:
        g = to_golden(q)
        if not g.in_module(self.module_denominator):
            raise ModuleMembershipError(f"{g.serialize()} is not in (1/10)Z[tau]")
        return g

    def in_module(self, value) -> bool:
        return value.in_module(self.module_denominator)

    def generators(self):
        return [lambda v: pen.rotate_lift(v, 1), pen.invert_lift]

    def r_class(self, v):
        return pen.r_of(v)

    def representative(self, r):
        return pen.REPRESENTATIVES[r] if r else pen.ZERO_LIFT

    def check_anchor(self, cls, anchor, index=None):
        r = pen.r_of(anchor)
        if r not in (1, 4):
            raise AnchorNotShallow(f"anchor {list(anchor)} has r = {r}, not a shallow hole", index)
        if r != cls.anchor_r:
            raise AnchorClassMismatch(
                f"class {cls.alias} needs an anchor with r = {cls.anchor_r}, got r = {r}", index)

    def label(self, cls):
        return cls.alias


class AmmannBeenkerSystem(TilingSystem):
    name = "ammann-beenker"
    dim = 4
    module_denominator = 2
    group_order = 16

    @property
    def field_zero(self):
        return SilverExact(0)

    def canonical(self, v):
        return ab.canonical(v)

    def add(self, u, v):
        return ab.add(u, v)

    def sub(self, u, v):
        return ab.sub(u, v)

    def catalog(self):
        return ab.build_catalog_ab()

    def resolve(self, name):
        return ab.resolve_class(name)

    def class_from_corners(self, corners):
        return ab.class_from_corners(corners)

    def project(self, v, space="perp") -> Point2:
        return ab.project_ab(v, space)

    def project_float(self, v, space="par"):
        return ab.project_float(v, space)

    def window_total(self):
        return ab.window_total_ab()

    def to_frequency_value(self, q) -> SilverExact:
        # Single-orientation frequencies can leave (1/2)Z[lambda] (one rhombus
        # has (2 - sqrt2)/4), so membership is reported by in_module, not enforced.
        if not isinstance(q, SilverExact):
            q = SilverExact.coerce(q)
        return q

    def in_module(self, value) -> bool:
        return value.in_module(self.module_denominator)

    def generators(self):
        return [lambda v: ab.rotate_lift_ab(v, 1), ab.reflect_lift_ab]

    def r_class(self, v):
        return 0

    def representative(self, r):
        return ab.ZERO_LIFT

    def check_anchor(self, cls, anchor, index=None):
        return None


PENROSE = PenroseSystem()
AMMANN_BEENKER = AmmannBeenkerSystem()

_ALIASES = {
    "penrose": PENROSE, "pen": PENROSE,
    "ammann-beenker": AMMANN_BEENKER, "ab": AMMANN_BEENKER, "ammann_beenker": AMMANN_BEENKER,
}


def get_system(name) -> TilingSystem:
    if isinstance(name, TilingSystem):
        return name
    try:
        return _ALIASES[str(name).lower()]
    except KeyError:
        raise SchemaError(f"unknown tiling system {name!r}") from None
