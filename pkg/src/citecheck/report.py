"""Per-paper and per-corpus rollups, verdict overrides, rendering, anonymization.

The canonical machine format is JSON with sorted keys and compact separators,
so rendering the same report twice is byte-identical and render -> parse ->
render round-trips exactly.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from typing import Iterable

from .classify import (
    AuthorDiff,
    AuthorDiffKind,
    Classification,
    IdentifierFinding,
    IdentifierStatus,
    IgnoredDiscrepancy,
    Severity,
)
from .errors import UsageError, VerdictMismatch
from .extract import BibEntry
from .identifiers import Identifiers, LlmUrlMarker
from .names import PersonName
from .parse import ParsedReference
from .sources.models import ArxivVersion, CandidateMatch, MetadataRecord, SourceId

SCHEMA_VERSION = 1

AUTHOR_ERROR_KEYS = ("missing", "extra", "both", "incorrect")
_IDENTIFIER_ERROR_STATUSES = frozenset(
    {IdentifierStatus.VALID_INCONSISTENT, IdentifierStatus.UNREGISTERED, IdentifierStatus.MALFORMED}
)


@dataclass(frozen=True)
class Verdict:
    """A human reviewer's override for one citation."""

    paper_id: str
    index: int
    decided_severity: Severity
    reviewer: str
    note: str = ""
    evidence_url: str | None = None
    decided_at: float = 0.0

    @property
    def citation_key(self) -> tuple[str, int]:
        return (self.paper_id, self.index)


@dataclass
class CitationRecord:
    entry: BibEntry
    parsed: ParsedReference
    classification: Classification
    verdict: Verdict | None = None

    @property
    def effective_severity(self) -> Severity:
        if self.verdict is not None:
            return self.verdict.decided_severity
        return self.classification.severity


@dataclass
class PaperReport:
    paper_id: str
    citations: list[CitationRecord]
    max_severity: Severity
    counts: dict[Severity, int]
    author_error_counts: dict[str, int]
    identifier_error_count: int
    llm_marker_count: int


@dataclass
class CorpusStats:
    corpus_id: str
    paper_count: int
    papers_with_issue_by_severity: dict[Severity, int]
    fraction_with_issue: float
    fraction_with_any_error: float
    total_erroneous_citations_by_severity: dict[Severity, int]
    author_error_totals: dict[str, int]
    identifier_error_total: int
    llm_marker_total: int


def effective_verdicts(verdicts: Iterable[Verdict]) -> dict[tuple[str, int], Verdict]:
    """Latest verdict per citation key wins; earlier ones stay history."""
    effective: dict[tuple[str, int], Verdict] = {}
    for verdict in verdicts:
        current = effective.get(verdict.citation_key)
        if current is None or verdict.decided_at >= current.decided_at:
            effective[verdict.citation_key] = verdict
    return effective


def build_paper_report(
    paper_id: str,
    classified: Iterable[tuple[BibEntry, ParsedReference, Classification]],
    verdicts: Iterable[Verdict] = (),
) -> PaperReport:
    """Apply verdict overrides and compute the per-paper rollups."""
    records = [
        CitationRecord(entry=entry, parsed=parsed, classification=classification)
        for entry, parsed, classification in classified
    ]
    by_key = {(paper_id, record.entry.index): record for record in records}
    for key, verdict in effective_verdicts(verdicts).items():
        if key not in by_key:
            raise VerdictMismatch(f"no citation {key[1]} in paper {key[0]!r}")
        by_key[key].verdict = verdict

    counts = {severity: 0 for severity in Severity}
    author_errors = dict.fromkeys(AUTHOR_ERROR_KEYS, 0)
    identifier_errors = 0
    llm_markers = 0
    for record in records:
        severity = record.effective_severity
        counts[severity] += 1
        if severity is Severity.MYSTERIOUS:
            # No true record exists to diff against; tallied as incorrect.
            author_errors["incorrect"] += 1
        elif record.classification.author_diff.kind in (
            AuthorDiffKind.MISSING,
            AuthorDiffKind.EXTRA,
            AuthorDiffKind.BOTH,
        ):
            author_errors[record.classification.author_diff.kind.value] += 1
        finding = record.classification.identifier_finding
        if (
            finding.doi_status in _IDENTIFIER_ERROR_STATUSES
            or finding.arxiv_status in _IDENTIFIER_ERROR_STATUSES
        ):
            identifier_errors += 1
        llm_markers += len(record.classification.llm_markers)

    max_severity = max(
        (record.effective_severity for record in records), default=Severity.OK
    )
    return PaperReport(
        paper_id=paper_id,
        citations=records,
        max_severity=max_severity,
        counts=counts,
        author_error_counts=author_errors,
        identifier_error_count=identifier_errors,
        llm_marker_count=llm_markers,
    )


def aggregate_corpus(reports: list[PaperReport], corpus_id: str) -> CorpusStats:
    """Roll papers up into corpus statistics.

    The headline fraction counts papers whose max severity is rephrased or
    worse; minor errors occur in every era and are reported separately via
    ``fraction_with_any_error``.
    """
    if not reports:
        raise UsageError("aggregate_corpus requires at least one paper report")
    issue_severities = (Severity.MINOR_ERROR, Severity.REPHRASED_TITLE, Severity.MYSTERIOUS)
    papers_by_severity = {severity: 0 for severity in issue_severities}
    citation_totals = {severity: 0 for severity in issue_severities}
    author_totals = dict.fromkeys(AUTHOR_ERROR_KEYS, 0)
    identifier_total = 0
    marker_total = 0
    for report in reports:
        if report.max_severity >= Severity.MINOR_ERROR:
            papers_by_severity[report.max_severity] += 1
        for severity in issue_severities:
            citation_totals[severity] += report.counts.get(severity, 0)
        for key in AUTHOR_ERROR_KEYS:
            author_totals[key] += report.author_error_counts.get(key, 0)
        identifier_total += report.identifier_error_count
        marker_total += report.llm_marker_count
    paper_count = len(reports)
    affected = sum(1 for r in reports if r.max_severity >= Severity.REPHRASED_TITLE)
    any_error = sum(1 for r in reports if r.max_severity >= Severity.MINOR_ERROR)
    return CorpusStats(
        corpus_id=corpus_id,
        paper_count=paper_count,
        papers_with_issue_by_severity=papers_by_severity,
        fraction_with_issue=affected / paper_count,
        fraction_with_any_error=any_error / paper_count,
        total_erroneous_citations_by_severity=citation_totals,
        author_error_totals=author_totals,
        identifier_error_total=identifier_total,
        llm_marker_total=marker_total,
    )


# ---------------------------------------------------------------------------
# JSON serialization (canonical machine format)
# ---------------------------------------------------------------------------

def canonical_json_bytes(payload: dict) -> bytes:
    return (
        json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode("utf-8")
        + b"\n"
    )


def _person_to_json(person: PersonName) -> dict:
    return {"family": person.family, "given": person.given, "raw": person.raw}


def _person_from_json(data: dict) -> PersonName:
    return PersonName(family=data["family"], given=data.get("given"), raw=data.get("raw", ""))


def _record_to_json(record: MetadataRecord) -> dict:
    return {
        "title": record.title,
        "authors": [_person_to_json(a) for a in record.authors],
        "venue": record.venue,
        "year": record.year,
        "doi": record.doi,
        "arxiv_id": record.arxiv_id,
        "pages": record.pages,
        "source": record.source.value,
        "native_id": record.source_native_id,
        "arxiv_versions": None
        if record.arxiv_versions is None
        else [
            {
                "version": v.version,
                "title": v.title,
                "authors": [_person_to_json(a) for a in v.authors],
            }
            for v in record.arxiv_versions
        ],
    }


def _record_from_json(data: dict) -> MetadataRecord:
    versions = data.get("arxiv_versions")
    return MetadataRecord(
        title=data["title"],
        authors=tuple(_person_from_json(a) for a in data["authors"]),
        venue=data.get("venue"),
        year=data.get("year"),
        doi=data.get("doi"),
        arxiv_id=data.get("arxiv_id"),
        pages=data.get("pages"),
        source=SourceId(data["source"]),
        source_native_id=data["native_id"],
        arxiv_versions=None
        if versions is None
        else tuple(
            ArxivVersion(
                version=v["version"],
                title=v["title"],
                authors=tuple(_person_from_json(a) for a in v["authors"]),
            )
            for v in versions
        ),
    )


def _citation_to_json(record: CitationRecord) -> dict:
    parsed = record.parsed
    cls = record.classification
    matched = cls.matched
    return {
        "index": record.entry.index,
        "raw_text": record.entry.raw_text,
        "effective_severity": record.effective_severity.label,
        "parsed": {
            "title": parsed.title,
            "authors": [_person_to_json(a) for a in parsed.authors],
            "venue": parsed.venue,
            "year": parsed.year,
            "pages": parsed.pages,
            "format_id": parsed.format_id,
            "et_al": parsed.et_al,
            "doi": parsed.identifiers.doi,
            "arxiv_id": parsed.identifiers.arxiv_id,
            "arxiv_version": parsed.identifiers.arxiv_version,
            "urls": list(parsed.identifiers.urls),
        },
        "classification": {
            "severity": cls.severity.label,
            "needs_triage": cls.needs_triage,
            "rationale": cls.rationale,
            "matched": None
            if matched is None
            else {
                "record": _record_to_json(matched.record),
                "title_score": matched.title_score,
                "author_score": matched.author_score,
                "location_confirmed": matched.location_confirmed,
            },
            "author_diff": {
                "kind": cls.author_diff.kind.value,
                "missing": [_person_to_json(a) for a in cls.author_diff.missing],
                "extra": [_person_to_json(a) for a in cls.author_diff.extra],
                "ignored_discrepancies": [d.value for d in cls.author_diff.ignored_discrepancies],
            },
            "identifier_finding": {
                "doi_status": cls.identifier_finding.doi_status.value,
                "arxiv_status": cls.identifier_finding.arxiv_status.value,
                "version_note": cls.identifier_finding.version_note,
            },
            "llm_markers": [{"url": m.url, "marker": m.marker} for m in cls.llm_markers],
        },
        "verdict": None
        if record.verdict is None
        else {
            "decided_severity": record.verdict.decided_severity.label,
            "reviewer": record.verdict.reviewer,
            "note": record.verdict.note,
            "evidence_url": record.verdict.evidence_url,
            "decided_at": record.verdict.decided_at,
        },
    }


def _citation_from_json(data: dict, paper_id: str) -> CitationRecord:
    entry = BibEntry(index=data["index"], raw_text=data["raw_text"], paper_id=paper_id)
    p = data["parsed"]
    parsed = ParsedReference(
        entry=entry,
        identifiers=Identifiers(
            doi=p.get("doi"),
            arxiv_id=p.get("arxiv_id"),
            arxiv_version=p.get("arxiv_version"),
            urls=tuple(p.get("urls", [])),
        ),
        title=p.get("title"),
        authors=[_person_from_json(a) for a in p.get("authors", [])],
        venue=p.get("venue"),
        year=p.get("year"),
        pages=p.get("pages"),
        format_id=p.get("format_id"),
        et_al=p.get("et_al", False),
    )
    c = data["classification"]
    parsed.llm_markers = [LlmUrlMarker(url=m["url"], marker=m["marker"]) for m in c["llm_markers"]]
    matched = c.get("matched")
    classification = Classification(
        severity=Severity.from_label(c["severity"]),
        matched=None
        if matched is None
        else CandidateMatch(
            record=_record_from_json(matched["record"]),
            title_score=matched["title_score"],
            author_score=matched["author_score"],
            location_confirmed=matched["location_confirmed"],
        ),
        author_diff=AuthorDiff(
            missing=[_person_from_json(a) for a in c["author_diff"]["missing"]],
            extra=[_person_from_json(a) for a in c["author_diff"]["extra"]],
            kind=AuthorDiffKind(c["author_diff"]["kind"]),
            ignored_discrepancies=[
                IgnoredDiscrepancy(d) for d in c["author_diff"]["ignored_discrepancies"]
            ],
        ),
        identifier_finding=IdentifierFinding(
            doi_status=IdentifierStatus(c["identifier_finding"]["doi_status"]),
            arxiv_status=IdentifierStatus(c["identifier_finding"]["arxiv_status"]),
            version_note=c["identifier_finding"].get("version_note"),
        ),
        llm_markers=list(parsed.llm_markers),
        needs_triage=c["needs_triage"],
        rationale=c["rationale"],
    )
    verdict_data = data.get("verdict")
    verdict = None
    if verdict_data is not None:
        verdict = Verdict(
            paper_id=paper_id,
            index=entry.index,
            decided_severity=Severity.from_label(verdict_data["decided_severity"]),
            reviewer=verdict_data["reviewer"],
            note=verdict_data.get("note", ""),
            evidence_url=verdict_data.get("evidence_url"),
            decided_at=verdict_data.get("decided_at", 0.0),
        )
    return CitationRecord(entry=entry, parsed=parsed, classification=classification, verdict=verdict)


# Public name: the triage queue serves the same canonical citation payload.
citation_to_json = _citation_to_json


def paper_report_to_json(report: PaperReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "paper_report",
        "paper_id": report.paper_id,
        "max_severity": report.max_severity.label,
        "counts": {severity.label: count for severity, count in report.counts.items()},
        "author_error_counts": dict(report.author_error_counts),
        "identifier_error_count": report.identifier_error_count,
        "llm_marker_count": report.llm_marker_count,
        "citations": [_citation_to_json(record) for record in report.citations],
    }


def paper_report_from_json(data: dict) -> PaperReport:
    paper_id = data["paper_id"]
    return PaperReport(
        paper_id=paper_id,
        citations=[_citation_from_json(item, paper_id) for item in data["citations"]],
        max_severity=Severity.from_label(data["max_severity"]),
        counts={Severity.from_label(k): v for k, v in data["counts"].items()},
        author_error_counts=dict(data["author_error_counts"]),
        identifier_error_count=data["identifier_error_count"],
        llm_marker_count=data["llm_marker_count"],
    )


def corpus_stats_to_json(stats: CorpusStats) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "corpus_stats",
        "corpus_id": stats.corpus_id,
        "paper_count": stats.paper_count,
        "papers_with_issue_by_severity": {
            severity.label: count for severity, count in stats.papers_with_issue_by_severity.items()
        },
        "fraction_with_issue": stats.fraction_with_issue,
        "fraction_with_any_error": stats.fraction_with_any_error,
        "total_erroneous_citations_by_severity": {
            severity.label: count
            for severity, count in stats.total_erroneous_citations_by_severity.items()
        },
        "author_error_totals": dict(stats.author_error_totals),
        "identifier_error_total": stats.identifier_error_total,
        "llm_marker_total": stats.llm_marker_total,
    }


def corpus_stats_from_json(data: dict) -> CorpusStats:
    return CorpusStats(
        corpus_id=data["corpus_id"],
        paper_count=data["paper_count"],
        papers_with_issue_by_severity={
            Severity.from_label(k): v for k, v in data["papers_with_issue_by_severity"].items()
        },
        fraction_with_issue=data["fraction_with_issue"],
        fraction_with_any_error=data["fraction_with_any_error"],
        total_erroneous_citations_by_severity={
            Severity.from_label(k): v
            for k, v in data["total_erroneous_citations_by_severity"].items()
        },
        author_error_totals=dict(data["author_error_totals"]),
        identifier_error_total=data["identifier_error_total"],
        llm_marker_total=data["llm_marker_total"],
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_report(obj: PaperReport | CorpusStats, fmt: str = "json") -> bytes:
    if fmt == "json":
        if isinstance(obj, PaperReport):
            return canonical_json_bytes(paper_report_to_json(obj))
        return canonical_json_bytes(corpus_stats_to_json(obj))
    if fmt == "csv":
        return _render_csv(obj)
    if fmt == "text":
        return _render_text(obj)
    raise UsageError(f"unknown report format: {fmt!r}")


def parse_report(data: bytes) -> PaperReport | CorpusStats:
    payload = json.loads(data)
    if payload.get("kind") == "paper_report":
        return paper_report_from_json(payload)
    if payload.get("kind") == "corpus_stats":
        return corpus_stats_from_json(payload)
    raise UsageError("not a recognized report payload")


_CSV_FIELDS = [
    "paper_id", "index", "machine_severity", "effective_severity", "needs_triage",
    "cited_title", "cited_year", "doi", "arxiv_id", "matched_title", "matched_source",
    "title_score", "author_diff_kind", "doi_status", "arxiv_status", "llm_markers",
    "rationale",
]


def _render_csv(obj: PaperReport | CorpusStats) -> bytes:
    out = io.StringIO(newline="")
    writer = csv.writer(out)
    if isinstance(obj, PaperReport):
        writer.writerow(_CSV_FIELDS)
        for record in obj.citations:
            cls = record.classification
            matched = cls.matched
            writer.writerow([
                obj.paper_id,
                record.entry.index,
                cls.severity.label,
                record.effective_severity.label,
                cls.needs_triage,
                record.parsed.title or "",
                record.parsed.year or "",
                record.parsed.identifiers.doi or "",
                record.parsed.identifiers.arxiv_id or "",
                matched.record.title if matched else "",
                matched.record.source.value if matched else "",
                f"{matched.title_score:.6f}" if matched else "",
                cls.author_diff.kind.value,
                cls.identifier_finding.doi_status.value,
                cls.identifier_finding.arxiv_status.value,
                ";".join(m.marker for m in cls.llm_markers),
                cls.rationale,
            ])
    else:
        writer.writerow([
            "corpus_id", "paper_count", "severity", "papers_at_max_severity",
            "erroneous_citations", "fraction_with_issue", "fraction_with_any_error",
        ])
        for severity in (Severity.MINOR_ERROR, Severity.REPHRASED_TITLE, Severity.MYSTERIOUS):
            writer.writerow([
                obj.corpus_id,
                obj.paper_count,
                severity.label,
                obj.papers_with_issue_by_severity.get(severity, 0),
                obj.total_erroneous_citations_by_severity.get(severity, 0),
                repr(obj.fraction_with_issue),
                repr(obj.fraction_with_any_error),
            ])
    return out.getvalue().encode("utf-8")


def _render_text(obj: PaperReport | CorpusStats) -> bytes:
    lines = []
    if isinstance(obj, PaperReport):
        lines.append(f"Paper {obj.paper_id}: {len(obj.citations)} citations, "
                     f"max severity {obj.max_severity.label}")
        for severity in sorted(Severity, reverse=True):
            count = obj.counts.get(severity, 0)
            if count:
                lines.append(f"  {severity.label}: {count}")
        lines.append(
            "  author errors: "
            + ", ".join(f"{k}={v}" for k, v in obj.author_error_counts.items())
        )
        lines.append(f"  identifier errors: {obj.identifier_error_count}")
        lines.append(f"  llm url markers: {obj.llm_marker_count}")
        flagged = [r for r in obj.citations if r.classification.needs_triage]
        for record in flagged:
            lines.append(
                f"  [{record.entry.index}] {record.effective_severity.label}: "
                f"{record.classification.rationale}"
            )
    else:
        lines.append(
            f"Corpus {obj.corpus_id}: {obj.paper_count} papers, "
            f"{obj.fraction_with_issue:.1%} with rephrased-or-worse citations"
        )
        for severity in (Severity.MYSTERIOUS, Severity.REPHRASED_TITLE, Severity.MINOR_ERROR):
            lines.append(
                f"  {severity.label}: {obj.papers_with_issue_by_severity.get(severity, 0)} papers, "
                f"{obj.total_erroneous_citations_by_severity.get(severity, 0)} citations"
            )
        lines.append(
            "  author errors: "
            + ", ".join(f"{k}={v}" for k, v in obj.author_error_totals.items())
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Anonymization
# ---------------------------------------------------------------------------

def _anon_id(salt: str, kind: str, value: str) -> str:
    digest = hashlib.sha256(f"{salt}:{kind}:{value}".encode("utf-8")).hexdigest()
    return f"anon-{digest[:12]}"


def anonymize(
    obj: PaperReport | CorpusStats, salt: str
) -> tuple[PaperReport | CorpusStats, dict[str, str]]:
    """Replace paper/corpus/reviewer identifiers with salted digests.

    Citation text and parsed fields are preserved (they are the evidence).
    Returns the anonymized object and the id mapping, which is written
    separately for the operator only.
    """
    if not salt:
        raise UsageError("anonymization salt must be non-empty")
    mapping: dict[str, str] = {}

    def swap(kind: str, value: str) -> str:
        anon = _anon_id(salt, kind, value)
        mapping[value] = anon
        return anon

    if isinstance(obj, CorpusStats):
        data = corpus_stats_to_json(obj)
        data["corpus_id"] = swap("corpus", obj.corpus_id)
        return corpus_stats_from_json(data), mapping

    data = paper_report_to_json(obj)
    data["paper_id"] = swap("paper", obj.paper_id)
    for citation in data["citations"]:
        if citation["verdict"] is not None:
            citation["verdict"]["reviewer"] = swap("reviewer", citation["verdict"]["reviewer"])
    return paper_report_from_json(data), mapping
