"""
Configuration classes for the magic-fiber library.

This module provides configuration management for precision, the
persistent root cache and the table engine.
"""

import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

CACHE_ENV_VAR = "MAGICFIBER_CACHE"
DEFAULT_CACHE_PATH = Path("~/.cache/magic-fiber/roots.json")

_WIDTH_PATTERN = re.compile(r"^\s*2\s*\^\s*\(?\s*-\s*(\d+)\s*\)?\s*$")


def parse_width(text: str) -> int:
    """
    Parse a power-of-two width such as ``"2^-40"`` into its bit count.

    Args:
        text: Width written as ``2^-n``; a bare integer is read as ``n``

    Returns:
        The number of fractional bits ``n``

    Raises:
        ValueError: If the text is not a negative power of two
    """
    match = _WIDTH_PATTERN.match(text)
    if match:
        bits = int(match.group(1))
    elif text.strip().isdigit():
        bits = int(text)
    else:
        raise ValueError(f"width must look like 2^-n, got {text!r}")
    if bits < 1:
        raise ValueError("width must be below 1")
    return bits


@dataclass
class PrecisionConfig:
    """
    Configuration for certified root brackets.

    Attributes:
        width_bits: Default bracket width is 2**-width_bits
        start_bits: First rung of the precision ladder
        cap_bits: Last rung; certification beyond it raises EscalationError
    """

    width_bits: int = 40
    start_bits: int = 64
    cap_bits: int = 8192

    def __post_init__(self):
        """Validate configuration after initialization."""
        if self.width_bits < 1:
            raise ValueError("width_bits must be positive")
        if self.start_bits < 8:
            raise ValueError("start_bits must be at least 8")
        if self.cap_bits < self.start_bits:
            raise ValueError("cap_bits must not be below start_bits")
        if self.width_bits > self.cap_bits:
            raise ValueError("width_bits exceeds cap_bits")

    def merge_width(self, width_bits: Optional[int]) -> int:
        """
        Merge the default width with a per-call override.

        Args:
            width_bits: Per-call width in bits, or None for the default

        Returns:
            Effective width in bits
        """
        if width_bits is None:
            return self.width_bits
        if width_bits < 1:
            raise ValueError("width_bits must be positive")
        return width_bits


@dataclass
class CacheConfig:
    """
    Configuration for the persistent root cache.

    Attributes:
        path: Explicit cache file; None defers to the environment and default
        enabled: Whether brackets are read from and written to disk
    """

    path: Optional[Union[str, Path]] = None
    enabled: bool = True

    def resolve_path(self) -> Path:
        """Resolve the cache file from the explicit path, MAGICFIBER_CACHE, or the default."""
        if self.path is not None:
            return Path(self.path).expanduser()
        env_path = os.environ.get(CACHE_ENV_VAR)
        if env_path:
            return Path(env_path).expanduser()
        return DEFAULT_CACHE_PATH.expanduser()


@dataclass
class EngineConfig:
    """
    Configuration for the table engine and verification suites.

    Attributes:
        precision: Certified-bracket precision settings
        cache: Root cache settings
        genus_from: First genus of congruence sweeps
        genus_to: Last genus of congruence sweeps (inclusive)
        workers: Threads used to bracket candidates; 1 runs inline
        monotone_k_max: Largest k in the monotonicity grid
        propagation_k_max: Largest k in the propagation grid
    """

    precision: PrecisionConfig = field(default_factory=PrecisionConfig)
    cache: CacheConfig = field(default_factory=CacheConfig)
    genus_from: int = 3
    genus_to: int = 50
    workers: int = 1
    monotone_k_max: int = 40
    propagation_k_max: int = 30

    def __post_init__(self):
        """Validate configuration after initialization."""
        if self.genus_from < 2:
            raise ValueError("genus_from must be at least 2")
        if self.genus_to < self.genus_from:
            raise ValueError("genus_to must not be below genus_from")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.monotone_k_max < 3 or self.propagation_k_max < 2:
            raise ValueError("grid bounds are too small")
