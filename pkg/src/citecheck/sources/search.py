"""Fan-out search across sources, scoring, dedup, and DOI resolution."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Mapping

from ..errors import RateLimited, SourceUnavailable, UsageError
from .clients import CrossrefClient, HttpSourceClient
from .models import SOURCE_PRIORITY, CandidateMatch, MetadataRecord, SourceId

if TYPE_CHECKING:
    from ..classify import Thresholds
    from ..parse import ParsedReference


def _scoring():
    # Imported lazily: classify depends on sources.models, so a top-level
    # import here would be circular. classify stays the single source of
    # truth for similarity scoring.
    from ..classify import author_overlap_score, normalize_title, title_similarity

    return title_similarity, author_overlap_score, normalize_title

logger = logging.getLogger(__name__)

DEFAULT_PLAN_ORDER = (
    SourceId.CROSSREF,
    SourceId.OPENALEX,
    SourceId.ARXIV,
    SourceId.DBLP,
    SourceId.GOOGLE_BOOKS,
    SourceId.OSTI,
)


@dataclass(frozen=True)
class SearchPlan:
    """Ordered subset of sources to consult."""

    sources: tuple[SourceId, ...] = DEFAULT_PLAN_ORDER

    def __post_init__(self):
        if not self.sources:
            raise UsageError("search plan must name at least one source")

    @classmethod
    def from_names(cls, names: str) -> "SearchPlan":
        return cls(tuple(SourceId(name.strip()) for name in names.split(",") if name.strip()))


@dataclass
class SearchOutcome:
    records: list[MetadataRecord] = field(default_factory=list)
    errors: dict[SourceId, str] = field(default_factory=dict)
    trace: list[str] = field(default_factory=list)
    doi_record: MetadataRecord | None = None
    arxiv_record: MetadataRecord | None = None


def resolve_doi(doi: str, client: CrossrefClient) -> MetadataRecord | None:
    """Registered metadata for a DOI, or None for an unregistered one."""
    return client.resolve_doi(doi)


def query_source(client: HttpSourceClient, ref: "ParsedReference") -> list[MetadataRecord]:
    """Identifier lookup when the source has a relevant identifier, else a
    title search."""
    if not (ref.title or ref.identifiers.doi or ref.identifiers.arxiv_id):
        raise UsageError("reference carries neither a title nor an identifier")
    if client.relevant_identifier(ref):
        return client.lookup(ref)
    if ref.title:
        return client.search_title(ref.title)
    return []


_BOOK_HINTS = ("press", "publisher", "publishing", "edition")
_DOE_HINTS = (
    "national laboratory",
    "department of energy",
    "sandia",
    "lawrence livermore",
    "los alamos",
    "argonne",
    "oak ridge",
    "osti",
    "tech. rep",
)


def _suggests_book(ref: "ParsedReference") -> bool:
    if ref.format_id in (5, 10):
        return True
    venue = (ref.venue or "").lower()
    return any(hint in venue for hint in _BOOK_HINTS)


def _suggests_doe_report(ref: "ParsedReference") -> bool:
    haystack = " ".join(filter(None, (ref.venue, ref.entry.raw_text))).lower()
    return any(hint in haystack for hint in _DOE_HINTS)


def normalize_pages(pages: str) -> str:
    return re.sub(r"[–—]", "-", pages).replace(" ", "")


def location_confirmed(ref: "ParsedReference", record: MetadataRecord) -> bool:
    """The citation's identifier, or its venue and pages, resolve to the record."""
    title_similarity, _, _ = _scoring()
    if ref.identifiers.doi and record.doi and ref.identifiers.doi == record.doi:
        return True
    if ref.identifiers.arxiv_id and record.arxiv_id == ref.identifiers.arxiv_id:
        return True
    if ref.venue and record.venue and ref.pages and record.pages:
        return (
            normalize_pages(ref.pages) == normalize_pages(record.pages)
            and title_similarity(ref.venue, record.venue) >= 0.5
        )
    return False


def score_candidates(
    ref: "ParsedReference",
    records: list[MetadataRecord],
    thresholds: Thresholds | None = None,
) -> list[CandidateMatch]:
    """Build scored candidates; similarity comes from the classify module so
    there is a single source of truth for the metric."""
    title_similarity, author_overlap_score, _ = _scoring()
    candidates = []
    for record in records:
        title_score = title_similarity(ref.title, record.title) if ref.title else 0.0
        candidates.append(
            CandidateMatch(
                record=record,
                title_score=title_score,
                author_score=author_overlap_score(ref.authors, list(record.authors)),
                location_confirmed=location_confirmed(ref, record),
            )
        )
    return candidates


def _exact_confirmed(ref: "ParsedReference", record: MetadataRecord) -> bool:
    title_similarity, _, _ = _scoring()
    return (
        ref.title is not None
        and title_similarity(ref.title, record.title) >= 1.0
        and location_confirmed(ref, record)
    )


_PRIORITY_RANK = {source: rank for rank, source in enumerate(SOURCE_PRIORITY)}


def dedup_records(records: list[MetadataRecord]) -> list[MetadataRecord]:
    """Drop records sharing a DOI or (normalized title, year); the highest-
    priority source keeps the representative."""
    _, _, normalize_title = _scoring()
    ordered = sorted(records, key=lambda r: (_PRIORITY_RANK[r.source], r.source_native_id))
    kept: list[MetadataRecord] = []
    seen_dois: set[str] = set()
    seen_title_year: set[tuple[str, int | None]] = set()
    for record in ordered:
        title_key = (normalize_title(record.title), record.year)
        if record.doi and record.doi in seen_dois:
            continue
        if title_key in seen_title_year:
            continue
        if record.doi:
            seen_dois.add(record.doi)
        seen_title_year.add(title_key)
        kept.append(record)
    return kept


def search_all(
    ref: "ParsedReference",
    clients: Mapping[SourceId, HttpSourceClient],
    plan: SearchPlan | None = None,
    thresholds: Thresholds | None = None,
) -> SearchOutcome:
    """Fan out per the plan: identifier-bearing sources first, then title
    searches; Google Books only for book-shaped citations, OSTI for DOE-shaped
    ones or as a last resort. Early-exits once an exact-title, location-
    confirmed record is found. Per-source failures are recorded and partial
    results returned; only an all-source failure raises."""
    plan = plan or SearchPlan()
    if not (ref.title or ref.identifiers.doi or ref.identifiers.arxiv_id):
        raise UsageError("reference carries neither a title nor an identifier")

    outcome = SearchOutcome()
    attempted: list[SourceId] = []
    queried: set[SourceId] = set()

    def run(source: SourceId, action, label: str) -> bool:
        """Returns True when the early-exit condition is met."""
        client = clients.get(source)
        if client is None:
            return False
        attempted.append(source)
        queried.add(source)
        try:
            records = action(client)
        except (SourceUnavailable, RateLimited) as exc:
            outcome.errors[source] = str(exc)
            outcome.trace.append(f"{source.value}: error ({exc})")
            return False
        outcome.trace.append(
            f"{source.value}: {label}, {len(records)} hit(s)" if records else f"{source.value}: {label}, no hit"
        )
        outcome.records.extend(records)
        if ref.identifiers.doi and outcome.doi_record is None:
            outcome.doi_record = next((r for r in records if r.doi == ref.identifiers.doi), None)
        if ref.identifiers.arxiv_id and outcome.arxiv_record is None:
            outcome.arxiv_record = next(
                (r for r in records if r.arxiv_id == ref.identifiers.arxiv_id), None
            )
        return any(_exact_confirmed(ref, record) for record in records)

    def finish() -> SearchOutcome:
        outcome.records = dedup_records(outcome.records)
        if attempted and len(outcome.errors) == len(attempted):
            sources = ", ".join(s.value for s in attempted)
            raise SourceUnavailable(sources, "every source in the plan failed")
        return outcome

    # Identifier phase.
    if ref.identifiers.doi:
        for source in (SourceId.CROSSREF, SourceId.OPENALEX):
            if source in plan.sources:
                if run(source, lambda c: c.lookup(ref), "doi lookup"):
                    return finish()
    if ref.identifiers.arxiv_id and SourceId.ARXIV in plan.sources:
        if run(SourceId.ARXIV, lambda c: c.lookup(ref), "arxiv lookup"):
            return finish()

    # Title phase.
    if ref.title:
        for source in (SourceId.DBLP, SourceId.OPENALEX, SourceId.CROSSREF):
            if source in plan.sources and source not in queried:
                if run(source, lambda c: c.search_title(ref.title), "title search"):
                    return finish()
        if SourceId.GOOGLE_BOOKS in plan.sources and _suggests_book(ref):
            if run(SourceId.GOOGLE_BOOKS, lambda c: c.search_title(ref.title), "title search"):
                return finish()
        if SourceId.OSTI in plan.sources and (
            _suggests_doe_report(ref) or not outcome.records
        ):
            if run(SourceId.OSTI, lambda c: c.search_title(ref.title), "title search"):
                return finish()
        if SourceId.ARXIV in plan.sources and SourceId.ARXIV not in queried and not outcome.records:
            if run(SourceId.ARXIV, lambda c: c.search_title(ref.title), "title search"):
                return finish()

    return finish()
