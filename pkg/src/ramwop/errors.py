"""Exception types shared by all modules.

Every error raised on a contract violation subclasses RamwopError, so
callers (and the pipeline trace machinery) can catch the whole family
and surface the concrete class name.
"""


class RamwopError(Exception):
    pass


class DomainError(RamwopError):
    """An element code is not valid for the order it was used with."""


class UnknownOrderError(RamwopError):
    pass


class LevelMismatchError(RamwopError):
    """Two terms of different nesting levels were compared."""


class IndexOutOfRangeError(RamwopError, IndexError):
    pass


class UnsupportedBaseError(RamwopError):
    """Operation requires a specific base order (the ordinal oracle needs omega)."""


class NotNormalFormError(RamwopError):
    pass


class NoExponentError(RamwopError):
    """An extraction consumed the no-exponent sentinel of a fixed-point monomial."""


class NotDescendingError(RamwopError):
    """A coloring touched instance positions that are not strictly descending."""


class NotExactlyLargeError(RamwopError):
    pass


class InvalidColorError(RamwopError):
    pass


class ArityError(RamwopError, ValueError):
    pass


class ColourMismatchError(RamwopError):
    """A witness does not carry the colour an extractor requires."""


class StarEncounteredError(RamwopError):
    """Extraction hit a star value: the witness violates the guarantee that
    every comparing exponent it needs exists."""


class WitnessTooShallowError(RamwopError):
    """The finite witness ran out before the extraction recurrence did."""


class BelowEpsilonZeroError(RamwopError):
    """An extractor would have emitted the below-every-epsilon sentinel."""


class NotDescendingWitnessError(RamwopError):
    """A generator was asked for a descending sequence over a well-ordered base."""


class PropertyPViolatedError(RamwopError):
    """A decreaser found beyond the claimed bound contradicts an earlier
    not-decreasible verdict."""


class RangeExhaustedError(RamwopError):
    """A step of the flattened-sequence extraction found no decreasible index
    in its admissible range."""


class BlocksExhaustedError(RamwopError):
    """A bound-function query needs blocks beyond the finite block sequence."""
