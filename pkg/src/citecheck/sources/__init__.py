"""Scholarly metadata sources: clients, transport, cache, and fan-out search."""

from .cache import DEFAULT_TTL, ResponseCache, cache_key
from .clients import (
    MAX_RESULTS,
    ArxivClient,
    CrossrefClient,
    DblpClient,
    GoogleBooksClient,
    HttpSourceClient,
    OpenAlexClient,
    OstiClient,
    build_clients,
    evidence_links,
)
from .models import SOURCE_PRIORITY, ArxivVersion, CandidateMatch, MetadataRecord, SourceId
from .search import (
    DEFAULT_PLAN_ORDER,
    SearchOutcome,
    SearchPlan,
    dedup_records,
    location_confirmed,
    query_source,
    resolve_doi,
    score_candidates,
    search_all,
)
from .transport import (
    HttpTransport,
    OfflineTransport,
    RateLimiter,
    ReplayTransport,
    Response,
    SystemClock,
    Transport,
)

__all__ = [
    "DEFAULT_TTL",
    "DEFAULT_PLAN_ORDER",
    "MAX_RESULTS",
    "SOURCE_PRIORITY",
    "ArxivClient",
    "ArxivVersion",
    "CandidateMatch",
    "CrossrefClient",
    "DblpClient",
    "GoogleBooksClient",
    "HttpSourceClient",
    "HttpTransport",
    "MetadataRecord",
    "OfflineTransport",
    "OpenAlexClient",
    "OstiClient",
    "RateLimiter",
    "ReplayTransport",
    "Response",
    "ResponseCache",
    "SearchOutcome",
    "SearchPlan",
    "SourceId",
    "SystemClock",
    "Transport",
    "build_clients",
    "cache_key",
    "dedup_records",
    "evidence_links",
    "location_confirmed",
    "query_source",
    "resolve_doi",
    "score_candidates",
    "search_all",
]
