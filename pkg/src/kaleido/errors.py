"""Exception types shared across the package."""


class KaleidoError(Exception):
    """Base class for all package errors."""


class InputError(KaleidoError, ValueError):
    """Malformed or out-of-contract input."""


class SearchExhausted(KaleidoError):
    """A complete search found no object with the requested property."""


class Inconclusive(KaleidoError):
    """A search ran out of budget before reaching a verdict."""

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = dict(stats or {})


class AmalgamationFailure(KaleidoError):
    """The free amalgam violates the supplied age constraint."""

    def __init__(self, message, missing=None, structure=None):
        super().__init__(message)
        self.missing = missing
        self.structure = structure


class ChainError(KaleidoError):
    """A rooted sub-arrow of a proof chain failed at run time."""

    def __init__(self, message, level):
        super().__init__(message)
        self.level = level
