"""Shared exception types, grouped by the CLI's exit-code convention."""


class GKMLabError(Exception):
    """Base class for toolkit errors."""


class GraphFormatError(GKMLabError, ValueError):
    """Malformed graph text (bad header, arity, unknown vertex, ...)."""


class ExprSyntaxError(GKMLabError, ValueError):
    """Malformed or inhomogeneous characteristic-class expression."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None
                         else "%s (at position %d)" % (message, position))
        self.position = position


class NotGKMConsistentError(GKMLabError, ArithmeticError):
    """Graph data fails an identity every genuine GKM action satisfies."""


class NonconstantSumError(NotGKMConsistentError):
    """A localization sum failed to reduce to a constant."""
