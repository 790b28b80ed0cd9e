"""
Exception hierarchy for the magic-fiber library.

This module defines custom exceptions for the failure modes of the
calculator: violated preconditions, broken internal invariants and
certification that could not be completed within the precision cap.
"""

from typing import Any, Optional, Sequence


class MagicFiberError(Exception):
    """Base exception for all magic-fiber errors."""

    def __init__(self, message: str):
        """
        Initialize a MagicFiberError.

        Args:
            message: Error message
        """
        super().__init__(message)
        self.message = message


class DomainError(MagicFiberError):
    """An input lies outside the domain of the requested operation."""

    def __init__(self, message: str, inequality: Optional[str] = None):
        """
        Initialize a DomainError.

        Args:
            message: Error message
            inequality: The inequality that failed, e.g. ``"y > 0"``
        """
        super().__init__(message)
        self.inequality = inequality

    def __str__(self) -> str:
        if self.inequality is not None:
            return f"{self.inequality} violated: {self.message}"
        return self.message


class ConsistencyError(MagicFiberError):
    """An internal invariant did not hold (indicates a violated precondition)."""

    pass


class EscalationError(MagicFiberError):
    """Precision was escalated to the cap without reaching a certified answer."""

    def __init__(self, message: str, best: Any = None, bits: Optional[int] = None):
        """
        Initialize an EscalationError.

        Args:
            message: Error message
            best: Best bracket or interval obtained before giving up
            bits: Precision (in bits) of the last attempt
        """
        super().__init__(message)
        self.best = best
        self.bits = bits


class UndecidableComparisonError(EscalationError):
    """Two roots could not be separated and share no common factor."""

    pass


class UnknownSuiteError(MagicFiberError):
    """A verification suite id is not registered."""

    def __init__(self, suite: str, known: Sequence[str]):
        """
        Initialize an UnknownSuiteError.

        Args:
            suite: The requested suite id
            known: Registered suite ids
        """
        super().__init__(f"unknown suite {suite!r}; known suites: {', '.join(known)}")
        self.suite = suite
        self.known = tuple(known)


class CacheError(MagicFiberError):
    """The root cache file could not be read or has an unexpected layout."""

    pass


class PrecisionExhausted(MagicFiberError):
    """
    Raised by a single escalation attempt that ran out of bits.

    Internal signal for the escalation handler; it is converted into
    EscalationError once the cap is reached.
    """

    def __init__(self, message: str, best: Any = None):
        super().__init__(message)
        self.best = best


def require(condition: bool, inequality: str, detail: str = "") -> None:
    """
    Raise DomainError naming ``inequality`` unless ``condition`` holds.

    Args:
        condition: The checked predicate
        inequality: Human-readable form of the predicate
        detail: Extra context appended to the message

    Raises:
        DomainError: If the condition is false
    """
    if not condition:
        raise DomainError(detail or f"expected {inequality}", inequality)
