"""Exception hierarchy.

``InputError`` subclasses map to CLI exit code 2 (bad input/validation);
everything else under ``GngShapeError`` maps to exit code 3 (internal
invariant violation).
"""


class GngShapeError(Exception):
    pass


class InputError(GngShapeError):
    """User-correctable input or validation problem."""


class UnsupportedFormatError(InputError):
    pass


class CorruptFileError(InputError):
    pass


class EmptyForegroundError(InputError):
    pass


class InsufficientForegroundError(InputError):
    pass


class EmptyGraphError(InputError):
    pass


class NotConnectedError(InputError):
    pass


class DegenerateGraphError(InputError):
    pass


class ZeroVectorError(InputError):
    pass


class UnknownVertexError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class MissingRootError(InputError):
    pass


class UnlabeledItemError(InputError):
    pass


class NoImagesError(InputError):
    pass


class RankOutOfRangeError(InputError):
    pass


class BoundaryWalkError(GngShapeError):
    """The angular walk failed to close; indicates a broken embedding."""
