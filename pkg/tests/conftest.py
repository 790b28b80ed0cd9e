"""Shared fixtures."""

import pytest

from magic_fiber.config import CACHE_ENV_VAR, PrecisionConfig
from magic_fiber.polyroot import RootEngine, set_engine


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    """Point the root cache at a temporary file and reset the process-wide engine."""
    path = tmp_path / "roots.json"
    monkeypatch.setenv(CACHE_ENV_VAR, str(path))
    set_engine(None)
    yield path
    set_engine(None)


@pytest.fixture
def engine():
    """Memory-only engine with 30-bit brackets."""
    return RootEngine(PrecisionConfig(width_bits=30))
