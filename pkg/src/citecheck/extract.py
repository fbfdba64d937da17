"""Paper text extraction and bibliography segmentation.

Turns a paper artifact (PDF bytes or plain text) into an ordered list of raw
bibliography entry strings: extract text, isolate the reference section,
split it at bracketed entry markers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyBibliography, EmptyDocument, NoBibliographyFound, NoEntriesFound
from .pdfbackend import PdfTextBackend, default_backend


class SourceKind(str, Enum):
    PDF = "pdf"
    PLAIN_TEXT = "plain_text"


@dataclass(frozen=True)
class DocumentText:
    pages: tuple[str, ...]
    full_text: str
    source_kind: SourceKind


@dataclass(frozen=True)
class BibliographySlice:
    text: str
    start_offset: int
    heading_matched: str  # "references" or "bibliography"


@dataclass(frozen=True)
class BibEntry:
    index: int
    raw_text: str
    paper_id: str


def extract_text(
    data: bytes | str,
    kind: SourceKind | str = SourceKind.PLAIN_TEXT,
    backend: PdfTextBackend | None = None,
) -> DocumentText:
    """Produce DocumentText from PDF bytes or a plain-text string.

    Plain text passes through verbatim. PDF text goes through the pluggable
    backend, then page header/footer noise is stripped and line wraps are
    repaired (end-of-line hyphen before a lowercase letter joins the word;
    other line breaks become spaces).
    """
    kind = SourceKind(kind)
    if kind is SourceKind.PLAIN_TEXT:
        if isinstance(data, bytes):
            data = data.decode("utf-8", errors="replace")
        if not data.strip():
            raise EmptyDocument("no text in input")
        return DocumentText(pages=(data,), full_text=data, source_kind=kind)

    if not isinstance(data, bytes) or not data:
        raise EmptyDocument("no PDF bytes provided")
    backend = backend or default_backend()
    pages = backend(data)
    pages = _strip_repeated_lines(pages)
    pages = tuple(_repair_wraps(page) for page in pages)
    full_text = "".join(pages)
    if not full_text.strip():
        raise EmptyDocument("PDF has no extractable text")
    return DocumentText(pages=pages, full_text=full_text, source_kind=kind)


def _strip_repeated_lines(pages: list[str]) -> list[str]:
    """Drop running headers/footers: lines repeated verbatim on >= 3 pages."""
    page_lines = [page.split("\n") for page in pages]
    seen_on: dict[str, int] = {}
    for lines in page_lines:
        for line in {ln.strip() for ln in lines if ln.strip()}:
            seen_on[line] = seen_on.get(line, 0) + 1
    noise = {line for line, count in seen_on.items() if count >= 3}
    return [
        "\n".join(ln for ln in lines if ln.strip() not in noise)
        for lines in page_lines
    ]


def _repair_wraps(page: str) -> str:
    page = re.sub(r"-\n(?=[a-z])", "", page)
    page = re.sub(r"\n+", " ", page)
    return page.strip() + "\n"


_BIB_HEADINGS = ("references", "bibliography")


def _heading_occurrences(text: str, word: str) -> list[re.Match]:
    return list(re.finditer(re.escape(word), text, re.IGNORECASE))


def _at_heading_position(text: str, start: int) -> bool:
    """True when the match sits at line start or after <= 3 non-alphanumeric
    characters on its line (rejects mid-sentence mentions)."""
    line_start = text.rfind("\n", 0, start) + 1
    prefix = text[line_start:start]
    return len(prefix) <= 3 and not any(ch.isalnum() for ch in prefix)


def isolate_bibliography(doc: DocumentText) -> BibliographySlice:
    """Slice out the text between the last bibliography heading and the
    following appendix heading (or end of document)."""
    text = doc.full_text
    matches = [
        (m, word) for word in _BIB_HEADINGS for m in _heading_occurrences(text, word)
    ]
    if not matches:
        raise NoBibliographyFound("no 'references' or 'bibliography' heading")
    qualified = [(m, w) for m, w in matches if _at_heading_position(text, m.start())]
    pool = qualified or matches
    match, word = max(pool, key=lambda pair: pair[0].start())
    start = match.end()
    end = len(text)
    for appendix in _heading_occurrences(text, "appendix"):
        if appendix.start() >= start and _at_heading_position(text, appendix.start()):
            end = appendix.start()
            break
    slice_text = text[start:end]
    if not slice_text.strip():
        raise EmptyBibliography(f"nothing follows the '{word}' heading")
    return BibliographySlice(text=slice_text, start_offset=start, heading_matched=word)


_MARKER_RE = re.compile(r"\[(\d+)\]")


def split_entries(slice_: BibliographySlice, paper_id: str) -> list[BibEntry]:
    """Split a bibliography slice at ``[N]`` markers.

    Inline citation brackets inside an entry are guarded against: after the
    first entry, a marker only starts a new entry when its number continues
    the sequence, or when it sits at a line start with a larger number.
    """
    text = slice_.text
    candidates = []
    for match in _MARKER_RE.finditer(text):
        before = text[: match.start()]
        if before and not before[-1].isspace():
            continue
        line_prefix = before[before.rfind("\n") + 1 :]
        candidates.append((int(match.group(1)), match, line_prefix.strip() == ""))
    if not candidates:
        raise NoEntriesFound("no [N] entry markers in bibliography")

    first = next(
        (c for c in candidates if c[0] == 1),
        next((c for c in candidates if c[2]), candidates[0]),
    )
    accepted = [first]
    for index, match, at_line_start in candidates[candidates.index(first) + 1 :]:
        prev_index = accepted[-1][0]
        if index == prev_index + 1 or (at_line_start and index > prev_index):
            accepted.append((index, match, at_line_start))

    entries = []
    for pos, (index, match, _) in enumerate(accepted):
        end = accepted[pos + 1][1].start() if pos + 1 < len(accepted) else len(text)
        raw = text[match.end() : end].strip()
        if raw:
            entries.append(BibEntry(index=index, raw_text=raw, paper_id=paper_id))
    if not entries:
        raise NoEntriesFound("entry markers present but all entries empty")
    return entries
