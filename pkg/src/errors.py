"""Exceptions raised by the qprism library.

Library code raises these; ``verifier.py`` and ``main.py`` turn them into
report entries at the edge.
"""
from typing import Any, Optional


class QPrismError(Exception):
    """Base class for every library error."""


class NotAUnitError(QPrismError):
    """Inversion of an element that is not a unit."""


class PrecisionError(QPrismError):
    """The supplied precision cannot support the requested result.

    Args:
        message (str): Description of the shortfall
        required (int, optional): Working precision that would suffice
        achieved (int, optional): Partial result reached before running out
    """

    def __init__(self, message: str, required: Optional[int] = None, achieved: Optional[int] = None):
        super().__init__(message)
        self.required = required
        self.achieved = achieved


class NotDivisibleError(QPrismError):
    """Exact division failed; ``evidence`` holds the offending remainder."""

    def __init__(self, message: str, evidence: Any = None):
        super().__init__(message)
        self.evidence = evidence


class LevelMismatchError(QPrismError):
    """Tower elements at different levels were combined without ``embed``."""


class ShapeError(QPrismError):
    """A divisor is not a distinguished polynomial."""


class HypothesisError(QPrismError):
    """An input violates the hypothesis of the construction (rank 1, Nygaard level)."""


class InternalConsistencyError(QPrismError):
    """An identity that holds by construction failed; this is a bug."""


class UnknownIdentityError(QPrismError):
    """``check_identity`` was called with a name it does not know."""
