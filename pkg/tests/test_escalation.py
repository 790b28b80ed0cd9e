"""Tests for precision escalation."""

import logging

import pytest

from magic_fiber.config import PrecisionConfig
from magic_fiber.escalation import EscalationConfig, EscalationHandler
from magic_fiber.exceptions import EscalationError, PrecisionExhausted


class TestEscalationConfig:
    """Test suite for EscalationConfig."""

    def test_default_escalation_config(self):
        """Test default ladder 64 -> 8192 bits."""
        config = EscalationConfig()
        assert config.start_bits == 64
        assert config.cap_bits == 8192
        assert config.max_attempts == 8

    def test_from_precision(self):
        """Test building the ladder from a PrecisionConfig."""
        config = EscalationConfig.from_precision(
            PrecisionConfig(width_bits=16, start_bits=16, cap_bits=128)
        )
        assert (config.start_bits, config.cap_bits) == (16, 128)
        assert config.max_attempts == 4

    def test_bits_for_attempt(self):
        """Test that budgets double and stop at the cap."""
        config = EscalationConfig(start_bits=40, cap_bits=100)
        assert [config.bits_for_attempt(n) for n in (1, 2, 3)] == [40, 80, 100]
        assert config.max_attempts == 3

    def test_cap_rung_is_tried(self):
        """Test that a ladder not ending on a power of two still reaches the cap."""
        config = EscalationConfig(start_bits=40, cap_bits=8192)
        assert config.max_attempts == 9
        assert config.bits_for_attempt(8) == 5120
        assert config.bits_for_attempt(9) == 8192

    def test_invalid_escalation_config(self):
        """Test that a cap below the start raises ValueError."""
        with pytest.raises(ValueError):
            EscalationConfig(start_bits=64, cap_bits=32)


class TestEscalationHandler:
    """Test suite for EscalationHandler."""

    def test_success_first_try(self):
        """Test that a decided first attempt does not escalate."""
        handler = EscalationHandler(EscalationConfig(start_bits=8, cap_bits=64))
        budgets = []

        def compute(bits):
            budgets.append(bits)
            return "done"

        assert handler.execute(compute) == "done"
        assert budgets == [8]

    def test_escalates_until_decided(self, caplog):
        """Test that PrecisionExhausted triggers a doubled budget and a warning."""
        handler = EscalationHandler(EscalationConfig(start_bits=8, cap_bits=64))
        budgets = []

        def compute(bits):
            budgets.append(bits)
            if bits < 32:
                raise PrecisionExhausted(f"undecided at {bits}")
            return bits

        with caplog.at_level(logging.WARNING, logger="magic_fiber.escalation"):
            assert handler.execute(compute) == 32

        assert budgets == [8, 16, 32]
        assert "escalating" in caplog.text

    def test_exhausts_ladder(self):
        """Test that EscalationError carries the best result of the last attempt."""
        handler = EscalationHandler(EscalationConfig(start_bits=8, cap_bits=32))

        def compute(bits):
            raise PrecisionExhausted("undecided", best=("bracket", bits))

        with pytest.raises(EscalationError) as exc_info:
            handler.execute(compute, what="test computation")

        assert exc_info.value.bits == 32
        assert exc_info.value.best == ("bracket", 32)
        assert "test computation" in exc_info.value.message

    def test_exhausts_ladder_at_the_cap(self):
        """Test that the final attempt runs at cap_bits."""
        handler = EscalationHandler(EscalationConfig(start_bits=40, cap_bits=100))
        budgets = []

        def compute(bits):
            budgets.append(bits)
            raise PrecisionExhausted("undecided")

        with pytest.raises(EscalationError) as exc_info:
            handler.execute(compute)

        assert budgets == [40, 80, 100]
        assert exc_info.value.bits == 100

    def test_other_exceptions_are_not_retried(self):
        """Test that other exceptions propagate immediately."""
        handler = EscalationHandler(EscalationConfig(start_bits=8, cap_bits=64))
        calls = []

        def compute(bits):
            calls.append(bits)
            raise ValueError("Invalid value")

        with pytest.raises(ValueError):
            handler.execute(compute)
        assert calls == [8]
