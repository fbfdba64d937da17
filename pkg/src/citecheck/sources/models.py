"""Records returned by scholarly metadata sources."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..names import PersonName


class SourceId(str, Enum):
    ARXIV = "arxiv"
    CROSSREF = "crossref"
    DBLP = "dblp"
    GOOGLE_BOOKS = "google_books"
    OPENALEX = "openalex"
    OSTI = "osti"


# Tie-break order when candidates score equally (best first).
SOURCE_PRIORITY = (
    SourceId.CROSSREF,
    SourceId.OPENALEX,
    SourceId.DBLP,
    SourceId.ARXIV,
    SourceId.OSTI,
    SourceId.GOOGLE_BOOKS,
)


@dataclass(frozen=True)
class ArxivVersion:
    version: int
    title: str
    authors: tuple[PersonName, ...]


@dataclass(frozen=True)
class MetadataRecord:
    title: str
    authors: tuple[PersonName, ...]
    source: SourceId
    source_native_id: str
    venue: str | None = None
    year: int | None = None
    doi: str | None = None
    arxiv_id: str | None = None
    pages: str | None = None
    arxiv_versions: tuple[ArxivVersion, ...] | None = None
    retrieved_at: float | None = None

    def __post_init__(self):
        if not self.title:
            raise ValueError("MetadataRecord.title must be non-empty")
        if self.arxiv_versions is not None and self.source is not SourceId.ARXIV:
            raise ValueError("arxiv_versions only apply to arxiv records")


@dataclass(frozen=True)
class CandidateMatch:
    record: MetadataRecord
    title_score: float
    author_score: float
    location_confirmed: bool
