"""
Error hierarchy for farey.

Every error carries a stable ``code`` that the CLI reports under ``--json``.
"""

from __future__ import annotations


class FareyError(ValueError):
    """Base class for all domain errors."""
    code = "FareyError"


class ParseError(FareyError):
    """Malformed word, matrix, form, çark or permutation text."""
    code = "ParseError"

    def __init__(self, message: str, token: str = ""):
        super().__init__(message)
        self.token = token


class NotAnAction(FareyError):
    """Permutations violating sigmaS² = sigmaL³ = id."""
    code = "NotAnAction"


class NotTransitive(FareyError):
    """Permutation pair whose group does not act transitively."""
    code = "NotTransitive"


class HasStubs(FareyError):
    """Operation needs a finite graph but Farey branch stubs are present."""
    code = "HasStubs"


class NotClosed(FareyError):
    """Loop does not return to the base edge."""
    code = "NotClosed"


class NotAdjacent(FareyError):
    """Loop steps through a half-edge that is not at the current vertex."""
    code = "NotAdjacent"


class NotHyperbolic(FareyError):
    """Element is elliptic, parabolic or the identity."""
    code = "NotHyperbolic"


class BadDiscriminant(FareyError):
    """Discriminant outside the supported range."""
    code = "BadDiscriminant"


class SquareDiscriminant(BadDiscriminant):
    """Discriminant is a perfect square."""
    code = "SquareDiscriminant"


class NotPrimitive(FareyError):
    """Form coefficients share a common factor."""
    code = "NotPrimitive"


class DiscriminantMismatch(FareyError):
    """Two forms with different discriminants."""
    code = "DiscriminantMismatch"


class ZeroTarget(FareyError):
    """Representation asked for the value 0."""
    code = "ZeroTarget"


class LimitExceeded(FareyError):
    """Input exceeds the configured work limit."""
    code = "LimitExceeded"
