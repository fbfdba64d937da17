"""Structured parsing of bibliography entries.

Each entry is tried against a table of reference-format grammars (shipped as
a versioned pattern file, overridable at runtime for new venues). The first
grammar that matches the whole entry populates title/authors/venue/year and
sets ``format_id``. Entries no grammar recognizes fall back to a title
heuristic and are flagged low-confidence so they reach the triage queue.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .extract import BibEntry
from .identifiers import (
    DEFAULT_LLM_MARKERS,
    Identifiers,
    LlmUrlMarker,
    detect_llm_url_markers,
    find_identifiers,
)
from .names import PersonName, split_author_list

MIN_YEAR, MAX_YEAR = 1800, 2100


@dataclass(frozen=True)
class Grammar:
    id: int
    name: str
    regex: re.Pattern
    venue_template: str
    has_authors: bool


@dataclass(frozen=True)
class GrammarTable:
    version: int
    grammars: tuple[Grammar, ...]


def load_grammar_table(path: str | Path | None = None) -> GrammarTable:
    """Load the shipped grammar table, or an override file given via CLI."""
    if path is None:
        text = resources.files("citecheck.data").joinpath("grammars.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    raw = json.loads(text)
    grammars = tuple(
        Grammar(
            id=entry["id"],
            name=entry["name"],
            regex=re.compile(entry["pattern"]),
            venue_template=entry["venue"],
            has_authors=entry["has_authors"],
        )
        for entry in raw["grammars"]
    )
    return GrammarTable(version=raw["version"], grammars=grammars)


@lru_cache(maxsize=1)
def _default_table() -> GrammarTable:
    return load_grammar_table()


@dataclass
class ParsedReference:
    entry: BibEntry
    identifiers: Identifiers
    title: str | None = None
    authors: list[PersonName] = field(default_factory=list)
    venue: str | None = None
    year: int | None = None
    pages: str | None = None
    format_id: int | None = None
    et_al: bool = False
    llm_markers: list[LlmUrlMarker] = field(default_factory=list)

    @property
    def parse_confidence(self) -> str:
        return "high" if self.format_id is not None else "low"


def normalize_entry_text(raw_text: str) -> str:
    """NFC-normalize and collapse whitespace to one line."""
    text = unicodedata.normalize("NFC", raw_text)
    return re.sub(r"\s+", " ", text).strip()


def parse_reference(
    entry: BibEntry,
    table: GrammarTable | None = None,
    llm_markers: tuple[str, ...] = DEFAULT_LLM_MARKERS,
) -> ParsedReference:
    """Parse one entry; never raises — unparsed entries keep format_id=None."""
    table = table or _default_table()
    text = normalize_entry_text(entry.raw_text)
    identifiers = find_identifiers(text)
    ref = ParsedReference(entry=entry, identifiers=identifiers)
    ref.llm_markers = detect_llm_url_markers(identifiers, llm_markers)

    for grammar in table.grammars:
        match = grammar.regex.fullmatch(text)
        if match is None:
            continue
        groups = match.groupdict()
        ref.format_id = grammar.id
        ref.title = (groups.get("title") or "").strip() or None
        if grammar.has_authors and groups.get("authors"):
            ref.authors, ref.et_al = split_author_list(groups["authors"])
        year = groups.get("year")
        if year and MIN_YEAR <= int(year) <= MAX_YEAR:
            ref.year = int(year)
        ref.pages = groups.get("pages")
        try:
            ref.venue = grammar.venue_template.format_map(
                {k: v for k, v in groups.items() if v is not None}
            )
        except KeyError:
            ref.venue = None
        return ref

    ref.title = _fallback_title(text)
    return ref


_QUOTED_RE = re.compile(r"[\"“](.+?)[\"”]")


def _fallback_title(text: str) -> str | None:
    """Best-effort title for unrecognized entries: longest quoted span, else
    the longest capitalized-majority span between periods."""
    quoted = _QUOTED_RE.findall(text)
    if quoted:
        return max(quoted, key=len).strip().rstrip(",.")
    best = None
    for span in re.split(r"(?<=[.!?])\s+", text):
        span = span.strip().rstrip(".")
        words = [w for w in span.split() if any(ch.isalpha() for ch in w)]
        if len(words) < 2:
            continue
        capitalized = sum(1 for w in words if w[0].isupper())
        if capitalized * 2 > len(words) and (best is None or len(span) > len(best)):
            best = span
    return best
