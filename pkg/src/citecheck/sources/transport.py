"""HTTP transport boundary: rate limiting, retries, offline enforcement.

Every network interaction goes through a Transport so the whole suite can run
offline against the response cache or recorded payloads.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Mapping, Protocol

from ..errors import RateLimited, SourceUnavailable

logger = logging.getLogger(__name__)


class Clock(Protocol):
    def now(self) -> float: ...

    def sleep(self, seconds: float) -> None: ...


class SystemClock:
    def now(self) -> float:
        return time.time()

    def sleep(self, seconds: float) -> None:
        if seconds > 0:
            time.sleep(seconds)


@dataclass
class Response:
    status: int
    body: bytes
    url: str = ""


class Transport(Protocol):
    def request(self, source: str, url: str, params: Mapping[str, str] | None = None) -> Response: ...


class RateLimiter:
    """Sliding-window limiter, shared across workers, one window per source.

    ``request_log`` keeps every grant timestamp so tests can assert that no
    window ever exceeded the configured rate.
    """

    def __init__(
        self,
        per_second: float = 1.0,
        clock: Clock | None = None,
        jitter: float = 0.1,
        rng: random.Random | None = None,
    ):
        if per_second <= 0:
            raise ValueError("per_second must be positive")
        self.min_interval = 1.0 / per_second
        self.clock = clock or SystemClock()
        self.jitter = jitter
        self.rng = rng or random.Random()
        self.request_log: dict[str, list[float]] = {}

    def acquire(self, source: str) -> None:
        log = self.request_log.setdefault(source, [])
        now = self.clock.now()
        if log:
            earliest = log[-1] + self.min_interval
            if now < earliest:
                wait = earliest - now
                if self.jitter:
                    wait += self.rng.uniform(0, self.jitter)
                self.clock.sleep(wait)
                now = self.clock.now()
        log.append(now)


class HttpTransport:
    """Live transport: polite rate limits, exponential-backoff retries.

    A contact identifier (email or URL) is sent in the User-Agent, as the
    public APIs request.
    """

    def __init__(
        self,
        contact: str,
        limiter: RateLimiter | None = None,
        clock: Clock | None = None,
        max_retries: int = 3,
        backoff_base: float = 2.0,
        timeout: float = 30.0,
        session=None,
    ):
        import requests

        self.contact = contact
        self.clock = clock or SystemClock()
        self.limiter = limiter or RateLimiter(clock=self.clock)
        self.max_retries = max_retries
        self.backoff_base = backoff_base
        self.timeout = timeout
        self.session = session or requests.Session()
        self.user_agent = f"citecheck/0.1 (mailto:{contact})" if "@" in contact else f"citecheck/0.1 ({contact})"

    def request(self, source: str, url: str, params: Mapping[str, str] | None = None) -> Response:
        import requests

        last_error = None
        for attempt in range(self.max_retries + 1):
            self.limiter.acquire(source)
            try:
                resp = self.session.get(
                    url,
                    params=dict(params or {}),
                    headers={"User-Agent": self.user_agent},
                    timeout=self.timeout,
                )
            except requests.RequestException as exc:
                last_error = str(exc)
                logger.warning("%s request failed (%s), attempt %d", source, exc, attempt + 1)
            else:
                if resp.status_code == 429:
                    last_error = "throttled (429)"
                    logger.warning("%s throttled, attempt %d", source, attempt + 1)
                elif resp.status_code >= 500:
                    last_error = f"server error ({resp.status_code})"
                    logger.warning("%s returned %d, attempt %d", source, resp.status_code, attempt + 1)
                else:
                    return Response(status=resp.status_code, body=resp.content, url=str(resp.url))
            if attempt < self.max_retries:
                self.clock.sleep(self.backoff_base * (2**attempt))
        if last_error == "throttled (429)":
            raise RateLimited(source, f"still throttled after {self.max_retries} retries")
        raise SourceUnavailable(source, last_error or "request failed")


class OfflineTransport:
    """Refuses every request; used with a warm cache so offline runs never
    open a network connection."""

    def request(self, source: str, url: str, params: Mapping[str, str] | None = None) -> Response:
        raise SourceUnavailable(source, "offline mode: network disabled and response not cached")


@dataclass
class ReplayTransport:
    """Serves canned responses keyed by (source, url); used in tests."""

    responses: dict[tuple[str, str], Response] = field(default_factory=dict)
    log: list[tuple[str, str]] = field(default_factory=list)

    def add(self, source: str, url: str, body: bytes, status: int = 200) -> None:
        self.responses[(source, url)] = Response(status=status, body=body, url=url)

    def request(self, source: str, url: str, params: Mapping[str, str] | None = None) -> Response:
        from urllib.parse import urlencode

        full = f"{url}?{urlencode(dict(params))}" if params else url
        self.log.append((source, full))
        for key in ((source, full), (source, url)):
            if key in self.responses:
                return self.responses[key]
        return Response(status=404, body=b"", url=full)
