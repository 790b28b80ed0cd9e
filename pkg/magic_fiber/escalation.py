"""
Precision escalation for certified computations.

A certified computation is attempted at a bit budget; when the budget is
too small to decide, the attempt raises PrecisionExhausted and is retried
at twice the budget, up to the configured cap. Tenacity drives the ladder.
"""

import logging
from typing import Callable, List, Optional, TypeVar

from tenacity import (
    RetryCallState,
    retry,
    retry_if_exception_type,
    stop_after_attempt,
    wait_none,
)

from .config import PrecisionConfig
from .exceptions import EscalationError, PrecisionExhausted

logger = logging.getLogger(__name__)

T = TypeVar("T")


class EscalationConfig:
    """Configuration for the precision ladder."""

    def __init__(self, start_bits: int = 64, cap_bits: int = 8192):
        """
        Initialize escalation configuration.

        Args:
            start_bits: Bit budget of the first attempt
            cap_bits: Largest bit budget tried
        """
        if start_bits < 1 or cap_bits < start_bits:
            raise ValueError("need 1 <= start_bits <= cap_bits")
        self.start_bits = start_bits
        self.cap_bits = cap_bits

    @classmethod
    def from_precision(cls, precision: PrecisionConfig) -> "EscalationConfig":
        """Build the ladder described by a PrecisionConfig."""
        return cls(start_bits=precision.start_bits, cap_bits=precision.cap_bits)

    @property
    def max_attempts(self) -> int:
        """Number of rungs on the ladder; the last one is clamped to cap_bits."""
        attempts = 1
        bits = self.start_bits
        while bits < self.cap_bits:
            bits = min(bits * 2, self.cap_bits)
            attempts += 1
        return attempts

    def bits_for_attempt(self, attempt: int) -> int:
        """
        Bit budget of an attempt.

        Args:
            attempt: Attempt number (1-indexed)

        Returns:
            start_bits * 2**(attempt - 1), clamped to cap_bits
        """
        return min(self.start_bits << (attempt - 1), self.cap_bits)


class EscalationHandler:
    """Runs a bit-budgeted computation up the precision ladder using Tenacity."""

    def __init__(self, config: Optional[EscalationConfig] = None):
        """
        Initialize escalation handler.

        Args:
            config: Ladder configuration; defaults to 64 -> 8192 bits
        """
        self.config = config or EscalationConfig()

    def _log_escalation(self, retry_state: RetryCallState) -> None:
        """Log escalation attempts."""
        if retry_state.outcome and retry_state.outcome.failed:
            exception = retry_state.outcome.exception()
            bits = self.config.bits_for_attempt(retry_state.attempt_number)
            logger.warning(
                f"Undecided at {bits} bits ({exception}), escalating "
                f"(attempt {retry_state.attempt_number}/{self.config.max_attempts})..."
            )

    def execute(self, func: Callable[[int], T], what: str = "computation") -> T:
        """
        Execute a computation with precision escalation.

        Args:
            func: Callable taking the bit budget; raises PrecisionExhausted
                when the budget does not suffice
            what: Short description used in the error message

        Returns:
            The first result obtained within the ladder

        Raises:
            EscalationError: If the cap is reached without a result
        """
        budgets: List[int] = []

        def attempt() -> T:
            bits = self.config.bits_for_attempt(len(budgets) + 1)
            budgets.append(bits)
            return func(bits)

        retry_decorator = retry(
            retry=retry_if_exception_type(PrecisionExhausted),
            stop=stop_after_attempt(self.config.max_attempts),
            wait=wait_none(),
            before_sleep=self._log_escalation,
            reraise=True,
        )

        try:
            return retry_decorator(attempt)()
        except PrecisionExhausted as e:
            raise EscalationError(
                f"{what} undecided at the precision cap of {budgets[-1]} bits",
                best=e.best,
                bits=budgets[-1],
            ) from e
