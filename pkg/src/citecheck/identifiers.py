"""Identifier scanning: DOIs, arXiv ids, URLs, and LLM-telltale URL markers."""

from __future__ import annotations

import re
from dataclasses import dataclass

# "10." + registrant code + "/" + suffix. Trailing sentence punctuation is
# stripped after the match.
DOI_RE = re.compile(r"\b(10\.\d{4,9}/[^\s\"<>]+)", re.IGNORECASE)
DOI_FULL_RE = re.compile(r"10\.\d{4,9}/\S+")

# New-style ids need an arXiv context (prefix or URL) so page/volume numbers
# like "1234.5678" in running text are not mistaken for ids.
ARXIV_NEW_RE = re.compile(
    r"(?:arxiv[:\s]\s*|arxiv\.org/(?:abs|pdf)/)(\d{4}\.\d{4,5})(?:v(\d+))?",
    re.IGNORECASE,
)
ARXIV_OLD_RE = re.compile(
    r"(?:arxiv[:\s]\s*|arxiv\.org/(?:abs|pdf)/)([a-z\-]+(?:\.[A-Z]{2})?/\d{7})(?:v(\d+))?",
    re.IGNORECASE,
)
ARXIV_ID_FULL_RE = re.compile(r"(?:\d{4}\.\d{4,5}|[a-z\-]+(?:\.[A-Z]{2})?/\d{7})")

URL_RE = re.compile(r"https?://[^\s\"<>]+")

_TRAILING_PUNCT = ".,;:)]}'\""


@dataclass(frozen=True)
class Identifiers:
    doi: str | None = None
    arxiv_id: str | None = None
    arxiv_version: int | None = None
    urls: tuple[str, ...] = ()


@dataclass(frozen=True)
class LlmUrlMarker:
    url: str
    marker: str


DEFAULT_LLM_MARKERS = ("utm_source=chatgpt.com", "utm_source=openai")


def normalize_doi(doi: str) -> str:
    doi = doi.strip().rstrip(_TRAILING_PUNCT)
    for prefix in ("https://doi.org/", "http://doi.org/", "https://dx.doi.org/",
                   "http://dx.doi.org/", "doi:"):
        if doi.lower().startswith(prefix):
            doi = doi[len(prefix):]
    return doi.lower()


def is_valid_doi(doi: str) -> bool:
    return bool(DOI_FULL_RE.fullmatch(doi))


def is_valid_arxiv_id(arxiv_id: str) -> bool:
    return bool(ARXIV_ID_FULL_RE.fullmatch(arxiv_id))


def find_identifiers(raw_text: str) -> Identifiers:
    """Pattern-scan an entry for DOIs, arXiv ids, and URLs.

    The first syntactically valid DOI wins as primary. Absence is an empty
    optional, never an error.
    """
    doi = None
    for match in DOI_RE.finditer(raw_text):
        candidate = normalize_doi(match.group(1))
        if is_valid_doi(candidate):
            doi = candidate
            break

    arxiv_id = None
    version = None
    for pattern in (ARXIV_NEW_RE, ARXIV_OLD_RE):
        match = pattern.search(raw_text)
        if match:
            arxiv_id = match.group(1)
            version = int(match.group(2)) if match.group(2) else None
            break

    urls = tuple(
        m.group(0).rstrip(_TRAILING_PUNCT) for m in URL_RE.finditer(raw_text)
    )
    return Identifiers(doi=doi, arxiv_id=arxiv_id, arxiv_version=version, urls=urls)


def detect_llm_url_markers(
    identifiers: Identifiers,
    markers: tuple[str, ...] = DEFAULT_LLM_MARKERS,
) -> list[LlmUrlMarker]:
    """One marker per URL whose query string contains a configured marker."""
    found = []
    for url in identifiers.urls:
        _, _, query = url.partition("?")
        for marker in markers:
            if marker in query:
                found.append(LlmUrlMarker(url=url, marker=marker))
                break
    return found
