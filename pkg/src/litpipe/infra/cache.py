"""TTL + LRU caching: in-memory store and a disk-backed API response cache.

All time handling goes through an injectable ``now`` callable so tests can
drive a simulated clock without sleeping.
"""
from __future__ import annotations

import base64
import hashlib
import json
import time
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional

from litpipe.errors import OversizeValueError

API_TTL_SECONDS = 24 * 3600  # API response store: 24-hour time-to-live


@dataclass
class CacheEntry:
    value: Any
    inserted_at: float
    last_access: float
    size: int = 1


class TTLLRUCache:
    """In-memory cache with per-store TTL and least-recently-used eviction.

    ``ttl=None`` means entries never expire (used for embedding-style stores).
    Capacity is measured in entries by default; pass ``capacity_bytes`` to
    account by value size instead (values must then be sized via ``len``).
    """

    def __init__(
        self,
        capacity: Optional[int] = None,
        ttl: Optional[float] = API_TTL_SECONDS,
        capacity_bytes: Optional[int] = None,
        now: Callable[[], float] = time.time,
    ):
        self.capacity = capacity
        self.capacity_bytes = capacity_bytes
        self.ttl = ttl
        self._now = now
        self._entries: OrderedDict[str, CacheEntry] = OrderedDict()
        self._total_bytes = 0

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, key: str, now: Optional[float] = None):
        """Return the cached value, or None on miss/expiry. Hits refresh LRU order."""
        t = self._now() if now is None else now
        entry = self._entries.get(key)
        if entry is None:
            return None
        if self.ttl is not None and t - entry.inserted_at >= self.ttl:
            self._evict(key)
            return None
        entry.last_access = t
        self._entries.move_to_end(key)
        return entry.value

    def put(self, key: str, value: Any, now: Optional[float] = None) -> None:
        t = self._now() if now is None else now
        size = len(value) if self.capacity_bytes is not None else 1
        if self.capacity_bytes is not None and size > self.capacity_bytes:
            raise OversizeValueError(f"value of {size} bytes exceeds capacity")
        if key in self._entries:
            self._evict(key)
        # Re-insert refreshes inserted_at, so the TTL clock restarts.
        self._entries[key] = CacheEntry(value, inserted_at=t, last_access=t, size=size)
        self._total_bytes += size
        self._shrink()

    def _evict(self, key: str) -> None:
        entry = self._entries.pop(key)
        self._total_bytes -= entry.size

    def _shrink(self) -> None:
        while self.capacity is not None and len(self._entries) > self.capacity:
            self._evict(next(iter(self._entries)))
        while self.capacity_bytes is not None and self._total_bytes > self.capacity_bytes:
            self._evict(next(iter(self._entries)))


class DiskCache:
    """Disk-backed key/value store for raw API responses with a 24h TTL.

    Layout: one JSON file per key under the cache directory, named by the
    SHA-256 of the key, holding the payload (base64) plus metadata.
    """

    def __init__(
        self,
        directory: Path,
        ttl: Optional[float] = API_TTL_SECONDS,
        now: Callable[[], float] = time.time,
    ):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.ttl = ttl
        self._now = now

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()
        return self.directory / f"{digest}.json"

    def get(self, key: str, now: Optional[float] = None) -> Optional[bytes]:
        t = self._now() if now is None else now
        path = self._path(key)
        if not path.exists():
            return None
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except (ValueError, OSError):
            path.unlink(missing_ok=True)
            return None
        if self.ttl is not None and t - record["inserted_at"] >= self.ttl:
            # Expired for normal reads, but kept on disk so get_stale can
            # still serve it in degraded mode.
            return None
        return base64.b64decode(record["payload"])

    def get_stale(self, key: str) -> Optional[bytes]:
        """Read ignoring TTL; used only for degraded-mode fallback."""
        path = self._path(key)
        if not path.exists():
            return None
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except (ValueError, OSError):
            return None
        return base64.b64decode(record["payload"])

    def put(self, key: str, value: bytes, now: Optional[float] = None) -> None:
        t = self._now() if now is None else now
        record = {
            "key": key,
            "inserted_at": t,
            "payload": base64.b64encode(value).decode("ascii"),
        }
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps(record), encoding="utf-8")
        tmp.replace(self._path(key))
