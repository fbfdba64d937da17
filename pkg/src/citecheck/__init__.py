"""citecheck: bibliography extraction, citation verification against public
scholarly metadata aggregators, severity classification, and human triage."""

__version__ = "0.1.0"

from .classify import (
    AuthorDiff,
    AuthorDiffKind,
    Classification,
    IdentifierFinding,
    IdentifierStatus,
    IgnoredDiscrepancy,
    Severity,
    Thresholds,
    classify_citation,
    compare_authors,
    check_identifiers,
    title_similarity,
)
from .extract import (
    BibEntry,
    BibliographySlice,
    DocumentText,
    SourceKind,
    extract_text,
    isolate_bibliography,
    split_entries,
)
from .identifiers import (
    DEFAULT_LLM_MARKERS,
    Identifiers,
    LlmUrlMarker,
    detect_llm_url_markers,
    find_identifiers,
)
from .names import PersonName, parse_person, split_author_list
from .parse import GrammarTable, ParsedReference, load_grammar_table, parse_reference
from .report import (
    CitationRecord,
    CorpusStats,
    PaperReport,
    Verdict,
    aggregate_corpus,
    anonymize,
    build_paper_report,
    parse_report,
    render_report,
)
from .service import RunConfig, RunResult, RunStore, run_pipeline
from .sources import (
    CandidateMatch,
    MetadataRecord,
    ResponseCache,
    SearchPlan,
    SourceId,
    build_clients,
    query_source,
    resolve_doi,
    score_candidates,
    search_all,
)

__all__ = [
    "AuthorDiff",
    "AuthorDiffKind",
    "BibEntry",
    "BibliographySlice",
    "CandidateMatch",
    "CitationRecord",
    "Classification",
    "CorpusStats",
    "DEFAULT_LLM_MARKERS",
    "DocumentText",
    "GrammarTable",
    "Identifiers",
    "IdentifierFinding",
    "IdentifierStatus",
    "IgnoredDiscrepancy",
    "LlmUrlMarker",
    "MetadataRecord",
    "PaperReport",
    "ParsedReference",
    "PersonName",
    "ResponseCache",
    "RunConfig",
    "RunResult",
    "RunStore",
    "SearchPlan",
    "Severity",
    "SourceId",
    "SourceKind",
    "Thresholds",
    "Verdict",
    "aggregate_corpus",
    "anonymize",
    "build_clients",
    "build_paper_report",
    "check_identifiers",
    "classify_citation",
    "compare_authors",
    "detect_llm_url_markers",
    "extract_text",
    "find_identifiers",
    "isolate_bibliography",
    "load_grammar_table",
    "parse_person",
    "parse_reference",
    "parse_report",
    "query_source",
    "render_report",
    "resolve_doi",
    "run_pipeline",
    "score_candidates",
    "search_all",
    "split_author_list",
    "split_entries",
    "title_similarity",
]
