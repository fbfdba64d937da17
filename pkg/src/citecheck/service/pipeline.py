"""End-to-end pipeline: extract -> parse -> search -> classify -> report.

A run is a directory holding the config snapshot, per-paper machine records,
candidate evidence, rendered reports, and the verdict log. Re-running with a
warm cache is deterministic: machine outputs contain no timestamps and every
collection is emitted in sorted order.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..classify import Thresholds, classify_citation, normalize_title
from ..errors import CitecheckError, SourceUnavailable, UsageError
from ..extract import SourceKind, extract_text, isolate_bibliography, split_entries
from ..identifiers import DEFAULT_LLM_MARKERS
from ..parse import GrammarTable, load_grammar_table, parse_reference
from ..report import (
    CorpusStats,
    PaperReport,
    aggregate_corpus,
    anonymize,
    build_paper_report,
    canonical_json_bytes,
    render_report,
)
from ..sources import (
    HttpTransport,
    OfflineTransport,
    RateLimiter,
    ResponseCache,
    SearchPlan,
    Transport,
    build_clients,
    evidence_links,
    score_candidates,
    search_all,
)
from .runstore import RunStore

logger = logging.getLogger(__name__)

INPUT_SUFFIXES = (".txt", ".pdf")


@dataclass
class RunConfig:
    input_paths: tuple[Path, ...]
    out_dir: Path
    offline: bool = False
    cache_dir: Path | None = None
    contact: str | None = None
    plan: SearchPlan = field(default_factory=SearchPlan)
    thresholds: Thresholds = field(default_factory=Thresholds)
    corpus_id: str | None = None
    anonymize_salt: str | None = None
    refresh: bool = False
    grammar_file: Path | None = None
    max_results: int = 5
    rate_per_second: float = 1.0
    workers: int = 1
    debug: bool = False
    llm_markers: tuple[str, ...] = DEFAULT_LLM_MARKERS

    def validate(self) -> None:
        if not self.input_paths:
            raise UsageError("at least one input path is required")
        if not self.offline and not self.contact:
            raise UsageError(
                "a contact identifier (email or URL) is required for live API "
                "access; pass --contact or set CITECHECK_CONTACT, or run --offline"
            )

    def snapshot(self) -> dict:
        return {
            "inputs": sorted(str(p) for p in self.input_paths),
            "offline": self.offline,
            "plan": [s.value for s in self.plan.sources],
            "thresholds": {
                "minor": self.thresholds.minor,
                "rephrase": self.thresholds.rephrase,
                "author_edit_tolerance": self.thresholds.author_edit_tolerance,
                "author_edit_ratio": self.thresholds.author_edit_ratio,
            },
            "max_results": self.max_results,
            "rate_per_second": self.rate_per_second,
            "corpus_id": self.corpus_id,
            "anonymized": bool(self.anonymize_salt),
            "llm_markers": list(self.llm_markers),
            "grammar_file": str(self.grammar_file) if self.grammar_file else None,
        }


@dataclass
class RunResult:
    run_dir: Path
    reports: list[PaperReport]
    corpora: list[CorpusStats]
    errors: dict[str, str]


def _collect_inputs(paths: tuple[Path, ...]) -> list[tuple[str, str, Path]]:
    """Returns (paper_id, corpus_group, path), sorted by paper_id."""
    found: list[tuple[str, str, Path]] = []
    for path in paths:
        path = Path(path)
        if path.is_file() and path.suffix.lower() in INPUT_SUFFIXES:
            found.append((_paper_id(path), "", path))
        elif path.is_dir():
            for child in sorted(path.rglob("*")):
                if child.is_file() and child.suffix.lower() in INPUT_SUFFIXES:
                    rel = child.parent.relative_to(path)
                    group = "" if rel == Path(".") else rel.as_posix()
                    found.append((_paper_id(child), group, child))
    seen: set[str] = set()
    unique = []
    for paper_id, group, path in sorted(found):
        if paper_id in seen:
            raise UsageError(f"duplicate paper id {paper_id!r} (from {path})")
        seen.add(paper_id)
        unique.append((paper_id, group, path))
    return unique


def _paper_id(path: Path) -> str:
    return "".join(ch if ch.isalnum() or ch in "._-" else "-" for ch in path.stem)


def _build_transport(config: RunConfig) -> Transport:
    if config.offline:
        return OfflineTransport()
    return HttpTransport(
        contact=config.contact,
        limiter=RateLimiter(per_second=config.rate_per_second),
    )


def process_paper(
    paper_id: str,
    path: Path,
    clients,
    config: RunConfig,
    table: GrammarTable,
) -> tuple[PaperReport, dict[int, list[dict]], list[dict]]:
    """Run the full chain for one paper; returns the machine report, the
    per-citation candidate evidence, and debug records."""
    if path.suffix.lower() == ".pdf":
        doc = extract_text(path.read_bytes(), SourceKind.PDF)
    else:
        doc = extract_text(path.read_text("utf-8", errors="replace"), SourceKind.PLAIN_TEXT)
    slice_ = isolate_bibliography(doc)
    entries = split_entries(slice_, paper_id)

    classified = []
    candidate_evidence: dict[int, list[dict]] = {}
    debug_records: list[dict] = []
    for entry in entries:
        ref = parse_reference(entry, table, config.llm_markers)
        if ref.title or ref.identifiers.doi or ref.identifiers.arxiv_id:
            try:
                outcome = search_all(ref, clients, config.plan, config.thresholds)
            except SourceUnavailable as exc:
                outcome = None
                logger.warning("paper %s [%d]: %s", paper_id, entry.index, exc)
        else:
            outcome = None
        records = outcome.records if outcome else []
        candidates = score_candidates(ref, records, config.thresholds)
        classification = classify_citation(
            ref,
            candidates,
            config.thresholds,
            doi_record=outcome.doi_record if outcome else None,
            arxiv_record=outcome.arxiv_record if outcome else None,
        )
        classified.append((entry, ref, classification))
        candidate_evidence[entry.index] = [
            {
                "source": c.record.source.value,
                "native_id": c.record.source_native_id,
                "title": c.record.title,
                # normalized tokens ship with the evidence so UI diff
                # rendering provably agrees with the scoring engine
                "title_tokens": normalize_title(c.record.title).split(),
                "authors": [a.display() for a in c.record.authors],
                "venue": c.record.venue,
                "year": c.record.year,
                "doi": c.record.doi,
                "arxiv_id": c.record.arxiv_id,
                "title_score": c.title_score,
                "author_score": c.author_score,
                "location_confirmed": c.location_confirmed,
                "links": evidence_links(c.record),
            }
            for c in sorted(
                candidates, key=lambda c: (-c.title_score, c.record.source.value, c.record.source_native_id)
            )
        ]
        if config.debug:
            debug_records.append(
                {
                    "index": entry.index,
                    "raw_text": entry.raw_text,
                    "format_id": ref.format_id,
                    "title": ref.title,
                    "trace": outcome.trace if outcome else ["not searched: no title or identifier"],
                    "source_errors": {s.value: msg for s, msg in outcome.errors.items()}
                    if outcome
                    else {},
                }
            )
    report = build_paper_report(paper_id, classified)
    return report, candidate_evidence, debug_records


def run_pipeline(config: RunConfig, clients=None) -> RunResult:
    """Execute the pipeline for every input paper and persist the run.

    Per-paper failures are quarantined into the run summary; the run fails
    only when zero papers process. Pass ``clients`` to substitute the source
    clients (tests use in-memory ones).
    """
    config.validate()
    inputs = _collect_inputs(config.input_paths)
    if not inputs:
        raise UsageError("no .txt or .pdf inputs found")

    table = load_grammar_table(config.grammar_file)
    if clients is None:
        cache_dir = config.cache_dir or (config.out_dir / "cache")
        cache = ResponseCache(cache_dir)
        transport = _build_transport(config)
        clients = build_clients(
            config.plan.sources,
            transport,
            cache,
            max_results=config.max_results,
            refresh=config.refresh,
        )

    store = RunStore(config.out_dir)
    store.initialize(config.snapshot())

    reports: list[PaperReport] = []
    groups: dict[str, list[PaperReport]] = {}
    errors: dict[str, str] = {}

    def one(item):
        paper_id, group, path = item
        try:
            return paper_id, group, process_paper(paper_id, path, clients, config, table), None
        except CitecheckError as exc:
            return paper_id, group, None, f"{type(exc).__name__}: {exc}"

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(one, inputs))
    else:
        results = [one(item) for item in inputs]

    for paper_id, group, produced, error in sorted(results, key=lambda r: r[0]):
        if error is not None:
            errors[paper_id] = error
            continue
        report, candidate_evidence, debug_records = produced
        store.write_machine_report(report, candidate_evidence)
        if config.debug:
            debug_dir = config.out_dir / "debug"
            debug_dir.mkdir(exist_ok=True)
            lines = b"".join(canonical_json_bytes(r) for r in debug_records)
            (debug_dir / f"{paper_id}.entries.jsonl").write_bytes(lines)
        reports.append(report)
        groups.setdefault(group, []).append(report)

    if not reports:
        raise UsageError(f"no papers processed; failures: {errors}")

    base_corpus = config.corpus_id or _default_corpus_id(config.input_paths)
    corpora = []
    for group in sorted(groups):
        corpus_id = base_corpus if group == "" else f"{base_corpus}/{group}"
        corpora.append(aggregate_corpus(groups[group], corpus_id))
    if len(groups) > 1:
        corpora.append(aggregate_corpus(reports, f"{base_corpus}/pooled"))

    _write_rendered(store, reports, corpora, config)
    store.write_summary(
        {
            "papers": sorted(r.paper_id for r in reports),
            "errors": errors,
            "corpora": sorted(c.corpus_id for c in corpora),
        }
    )
    return RunResult(run_dir=config.out_dir, reports=reports, corpora=corpora, errors=errors)


def _default_corpus_id(input_paths: tuple[Path, ...]) -> str:
    first = Path(input_paths[0])
    return first.name if first.is_dir() else (first.parent.name or "corpus")


def _safe_name(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "._-" else "-" for ch in name)


def _write_rendered(store: RunStore, reports, corpora, config: RunConfig) -> None:
    """Rendered reports are the shareable artifacts; with a salt they carry
    anonymized identifiers (the id mapping goes to the operator-only file)."""
    mapping: dict[str, str] = {}
    out = store.run_dir / "reports"
    for report in reports:
        rendered = report
        if config.anonymize_salt:
            rendered, ids = anonymize(report, config.anonymize_salt)
            mapping.update(ids)
        (out / f"{rendered.paper_id}.json").write_bytes(render_report(rendered, "json"))
    for stats in corpora:
        rendered = stats
        if config.anonymize_salt:
            rendered, ids = anonymize(stats, config.anonymize_salt)
            mapping.update(ids)
        name = _safe_name(rendered.corpus_id)
        (out / f"corpus-{name}.json").write_bytes(render_report(rendered, "json"))
    if config.anonymize_salt:
        (store.run_dir / "anonymization-map.json").write_bytes(canonical_json_bytes(mapping))
