"""
Persistent store of certified root brackets.

Brackets are keyed by the canonical form of the polynomial. Only the cell
is stored; the engine re-certifies a cached cell before adopting it, so a
stale or tampered file can cost time but never change a result.
"""

import json
import logging
import os
import tempfile
import threading
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from .config import CacheConfig
from .exceptions import CacheError

try:
    import orjson
except ImportError:  # pragma: no cover - optional speedup
    orjson = None  # type: ignore[assignment]

logger = logging.getLogger(__name__)

SCHEMA = "magic-fiber/roots/1"

Cell = Tuple[int, int, int]


def _loads(raw: bytes) -> Any:
    if orjson is not None:
        return orjson.loads(raw)
    return json.loads(raw.decode("utf-8"))


def _dumps(document: Dict[str, Any]) -> bytes:
    if orjson is not None:
        return orjson.dumps(document, option=orjson.OPT_SORT_KEYS)
    return json.dumps(document, sort_keys=True, separators=(",", ":")).encode("utf-8")


class RootCache:
    """
    JSON file of dyadic root brackets.

    The file is read lazily on first access and written back atomically on
    flush or close. Mantissas are stored as decimal strings.

    Example:
        >>> with RootCache(CacheConfig(path="/tmp/roots.json")) as cache:
        ...     cache.put("0:1,1:-3,2:1", 83739, 83740, 15)
    """

    def __init__(self, config: Optional[CacheConfig] = None):
        """
        Initialize the cache.

        Args:
            config: Cache location and switch; defaults to MAGICFIBER_CACHE
                or the user cache directory
        """
        self.config = config or CacheConfig()
        self.path: Path = self.config.resolve_path()
        self._entries: Optional[Dict[str, Cell]] = None
        self._dirty = False
        self._lock = threading.Lock()

    def __enter__(self) -> "RootCache":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:  # type: ignore[no-untyped-def]
        self.close()

    def __len__(self) -> int:
        with self._lock:
            return len(self._load())

    def _load(self) -> Dict[str, Cell]:
        if self._entries is not None:
            return self._entries
        self._entries = {}
        if not self.config.enabled or not self.path.exists():
            return self._entries
        try:
            document = _loads(self.path.read_bytes())
            if document.get("schema") != SCHEMA:
                raise ValueError(f"schema {document.get('schema')!r}")
            for key, cell in document["roots"].items():
                self._entries[key] = (
                    int(cell["lo_mantissa"]),
                    int(cell["hi_mantissa"]),
                    int(cell["exponent_of_two"]),
                )
        except (OSError, ValueError, KeyError, TypeError, AttributeError) as e:
            logger.warning(f"Ignoring unreadable root cache {self.path}: {e}")
            self._entries = {}
        else:
            logger.debug(f"Loaded {len(self._entries)} brackets from {self.path}")
        return self._entries

    def get(self, key: str) -> Optional[Cell]:
        """Cached ``(lo_mantissa, hi_mantissa, bits)`` for a canonical polynomial."""
        with self._lock:
            return self._load().get(key)

    def put(self, key: str, lo: int, hi: int, bits: int) -> None:
        """Store a cell unless an equal or finer one is already cached."""
        with self._lock:
            entries = self._load()
            current = entries.get(key)
            if current is not None and current[2] >= bits:
                return
            entries[key] = (lo, hi, bits)
            self._dirty = True

    def flush(self) -> None:
        """
        Write pending entries.

        Raises:
            CacheError: If the file cannot be written
        """
        with self._lock:
            if not self._dirty or not self.config.enabled or self._entries is None:
                return
            document = {
                "schema": SCHEMA,
                "roots": {
                    key: {"lo_mantissa": str(lo), "hi_mantissa": str(hi), "exponent_of_two": bits}
                    for key, (lo, hi, bits) in self._entries.items()
                },
            }
            try:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                fd, tmp = tempfile.mkstemp(dir=str(self.path.parent), suffix=".tmp")
                with os.fdopen(fd, "wb") as handle:
                    handle.write(_dumps(document))
                os.replace(tmp, self.path)
            except OSError as e:
                raise CacheError(f"cannot write root cache {self.path}: {e}") from e
            self._dirty = False
            logger.debug(f"Wrote {len(self._entries)} brackets to {self.path}")

    def close(self) -> None:
        """Flush pending entries; write failures are logged, not raised."""
        try:
            self.flush()
        except CacheError as e:
            logger.warning(e.message)
