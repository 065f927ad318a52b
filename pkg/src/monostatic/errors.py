class MonostaticError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(MonostaticError, ValueError):
    pass


class UndefinedLiftError(InvalidParameterError):
    """The apex lift diverges for k = 2; the planar path must be used instead."""


class ConstructionError(MonostaticError):
    """A built or loaded body failed geometric validation."""

    def __init__(self, message, *, face=None, vertex=None):
        super().__init__(message)
        self.face = face
        self.vertex = vertex


class NonConvexError(ConstructionError):
    pass


class DegenerateError(MonostaticError, ValueError):
    """Zero-measure input for the requested operation."""


class OutsideBodyError(MonostaticError, ValueError):
    pass


class OptimizationError(MonostaticError):
    pass
