"""Exception types raised across the package."""
from __future__ import annotations


class LyubeznikError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatch(LyubeznikError, ValueError):
    pass


class NonPrimeField(LyubeznikError, ValueError):
    pass


class NonHomogeneous(LyubeznikError, ValueError):
    def __init__(self, index: int, message: str = ""):
        super().__init__(message or f"generator {index} is not homogeneous")
        self.index = index


class ParseError(LyubeznikError, ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotInImage(LyubeznikError, ValueError):
    """A column could not be written as a combination of the given columns."""


class ImproperIdeal(LyubeznikError, ValueError):
    """The ideal contains 1."""


class EmptyScheme(LyubeznikError, ValueError):
    """Proj(R/I) is empty (R/I has Krull dimension 0)."""


class IndexOutOfRange(LyubeznikError, IndexError):
    pass


class DimensionMismatch(LyubeznikError, ValueError):
    """Inputs compared as embeddings of one scheme have different dimensions."""


class ResourceLimit(LyubeznikError, RuntimeError):
    """A configured resource cap was exceeded."""


class NonMonomialInput(LyubeznikError, ValueError):
    pass


class OracleInconclusive(LyubeznikError, RuntimeError):
    """The oracle's degree window did not stabilize below its cap."""
