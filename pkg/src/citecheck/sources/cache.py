"""Durable on-disk response cache.

One file per entry under the cache directory; the filename is the hex digest
of (source, canonical query). Each file starts with a one-line JSON header
(source, query, stored_at, ttl, checksum) followed by the raw payload bytes.
Checksum mismatches are treated as a miss and the entry is evicted.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from .transport import Clock, SystemClock

logger = logging.getLogger(__name__)

DEFAULT_TTL = 30 * 24 * 3600.0  # corpus runs re-query heavily; keep a month


@dataclass
class CacheEntryInfo:
    digest: str
    source: str
    query: str
    stored_at: float
    ttl: float
    size: int
    expired: bool


def cache_key(source: str, query: str) -> str:
    return hashlib.sha256(f"{source}\n{query}".encode("utf-8")).hexdigest()


class ResponseCache:
    def __init__(self, root: str | Path, clock: Clock | None = None):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.clock = clock or SystemClock()

    def _path(self, digest: str) -> Path:
        return self.root / digest

    def put(self, source: str, query: str, payload: bytes, ttl: float = DEFAULT_TTL) -> str:
        digest = cache_key(source, query)
        header = {
            "source": source,
            "query": query,
            "stored_at": self.clock.now(),
            "ttl": ttl,
            "checksum": hashlib.sha256(payload).hexdigest(),
        }
        data = json.dumps(header, sort_keys=True).encode("utf-8") + b"\n" + payload
        path = self._path(digest)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(data)
        tmp.replace(path)  # atomic: concurrent readers never see torn writes
        return digest

    def get(self, source: str, query: str) -> bytes | None:
        path = self._path(cache_key(source, query))
        if not path.exists():
            return None
        try:
            raw = path.read_bytes()
            head, _, payload = raw.partition(b"\n")
            header = json.loads(head)
        except (ValueError, OSError):
            logger.warning("unreadable cache entry %s, evicting", path.name)
            path.unlink(missing_ok=True)
            return None
        if hashlib.sha256(payload).hexdigest() != header.get("checksum"):
            logger.warning("cache checksum mismatch for %s, evicting", path.name)
            path.unlink(missing_ok=True)
            return None
        if self.clock.now() >= header["stored_at"] + header["ttl"]:
            return None
        return payload

    def entries(self) -> list[CacheEntryInfo]:
        infos = []
        now = self.clock.now()
        for path in sorted(self.root.iterdir()):
            if path.suffix == ".tmp" or not path.is_file():
                continue
            try:
                raw = path.read_bytes()
                head, _, payload = raw.partition(b"\n")
                header = json.loads(head)
            except (ValueError, OSError):
                continue
            infos.append(
                CacheEntryInfo(
                    digest=path.name,
                    source=header.get("source", "?"),
                    query=header.get("query", "?"),
                    stored_at=header.get("stored_at", 0.0),
                    ttl=header.get("ttl", 0.0),
                    size=len(payload),
                    expired=now >= header.get("stored_at", 0.0) + header.get("ttl", 0.0),
                )
            )
        return infos

    def evict(self, digest: str | None = None, expired_only: bool = False) -> int:
        """Remove entries; returns how many files were deleted."""
        removed = 0
        if digest is not None:
            path = self._path(digest)
            if path.exists():
                path.unlink()
                removed = 1
            return removed
        for info in self.entries():
            if expired_only and not info.expired:
                continue
            self._path(info.digest).unlink(missing_ok=True)
            removed += 1
        return removed
