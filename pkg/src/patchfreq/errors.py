"""Exception hierarchy shared by all modules."""


class PatchFreqError(Exception):
    """Base class for library errors."""


class NotInGoldenSubfield(PatchFreqError, ArithmeticError):
    """An element of K was expected to lie in Q(tau) but does not."""


class ZeroValue(PatchFreqError, ValueError):
    pass


class InternalDerivationError(PatchFreqError, RuntimeError):
    """A derived catalog or window failed its structural self-check."""


class ModuleMembershipError(PatchFreqError, ArithmeticError):
    """A frequency fell outside the tiling's frequency module."""


class ValidationError(PatchFreqError, ValueError):
    """A patch violates one of the structural requirements.

    ``tile_index`` names the offending tile when one can be singled out.
    """

    def __init__(self, message: str, tile_index: int | None = None):
        if tile_index is not None:
            message = f"tile {tile_index}: {message}"
        super().__init__(message)
        self.tile_index = tile_index


class AnchorNotShallow(ValidationError):
    pass


class AnchorClassMismatch(ValidationError):
    pass


class UnknownTileClass(ValidationError):
    pass


class OverlappingTiles(ValidationError):
    pass


class DisconnectedPatch(ValidationError):
    pass


class UnrecognizedEdge(ValidationError):
    pass


class NoValidLift(ValidationError):
    pass


class NonGenericCut(PatchFreqError):
    """The cut point lies on the boundary of some placed dual polygon."""


class RegionTooSmall(PatchFreqError, ValueError):
    pass


class SchemaError(PatchFreqError, ValueError):
    pass
