"""Match scoring and severity classification for citations.

Severity ladder (best candidate by title score):
  exact normalized title        -> ok
  score >= minor threshold      -> minor_error (typos, a few missing words)
  score >= rephrase threshold   -> rephrased_title, routed to human triage
  below / no candidate          -> mysterious, routed to human triage

Classification is by title; a location mismatch on the accepted record is
noted in the rationale rather than escalating the severity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum, IntEnum

from .identifiers import LlmUrlMarker, is_valid_arxiv_id, is_valid_doi
from .names import PersonName, canonical_family, canonical_given, fold
from .parse import ParsedReference
from .sources.models import SOURCE_PRIORITY, CandidateMatch, MetadataRecord


class Severity(IntEnum):
    OK = 0
    MINOR_ERROR = 1
    REPHRASED_TITLE = 2
    MYSTERIOUS = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "Severity":
        return cls[label.upper()]


@dataclass(frozen=True)
class Thresholds:
    """Scoring thresholds; scores exactly at a threshold take the better class."""

    minor: float = 0.90
    rephrase: float = 0.60
    author_edit_tolerance: int = 2
    author_edit_ratio: float = 0.30


DEFAULT_THRESHOLDS = Thresholds()


# ---------------------------------------------------------------------------
# Title similarity
# ---------------------------------------------------------------------------

_PUNCT_RE = re.compile(r"[^\w\s]", re.UNICODE)
_WS_RE = re.compile(r"\s+")

# Titles with fewer tokens than this are compared character-wise; word-level
# distance is too coarse for them.
SHORT_TITLE_TOKENS = 4


def normalize_title(title: str, truncate_subtitle: bool = False) -> str:
    """Lowercase, fold diacritics, strip punctuation, collapse whitespace."""
    folded = fold(title)
    if truncate_subtitle:
        folded = folded.split(":", 1)[0]
    scrubbed = _PUNCT_RE.sub(" ", folded)
    return _WS_RE.sub(" ", scrubbed).strip()


def _levenshtein(a, b) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, item_a in enumerate(a, start=1):
        current = [i]
        for j, item_b in enumerate(b, start=1):
            cost = 0 if item_a == item_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def _pair_similarity(norm_a: str, norm_b: str) -> float:
    tokens_a, tokens_b = norm_a.split(), norm_b.split()
    if not tokens_a and not tokens_b:
        return 1.0
    if not tokens_a or not tokens_b:
        return 0.0
    if min(len(tokens_a), len(tokens_b)) < SHORT_TITLE_TOKENS:
        distance = _levenshtein(norm_a, norm_b)
        denom = max(len(norm_a), len(norm_b))
    else:
        distance = _levenshtein(tokens_a, tokens_b)
        denom = max(len(tokens_a), len(tokens_b))
    return 1.0 - distance / denom


def title_similarity(a: str, b: str) -> float:
    """Normalized token-aware edit similarity in [0, 1].

    Computed with and without truncation at the first colon on both sides
    (subtitle inclusion differs benignly between styles); the best pairing
    wins, which keeps the function symmetric.
    """
    variants_a = {normalize_title(a), normalize_title(a, truncate_subtitle=True)}
    variants_b = {normalize_title(b), normalize_title(b, truncate_subtitle=True)}
    return max(_pair_similarity(va, vb) for va in variants_a for vb in variants_b)


# ---------------------------------------------------------------------------
# Author comparison
# ---------------------------------------------------------------------------

class AuthorDiffKind(str, Enum):
    NONE = "none"
    MISSING = "missing"
    EXTRA = "extra"
    BOTH = "both"
    NOT_APPLICABLE = "not_applicable"


class IgnoredDiscrepancy(str, Enum):
    MISSPELLING = "misspelling"
    NAME_REVERSAL = "name_reversal"
    ET_AL_EXPANSION = "et_al_expansion"
    SPECIAL_CHARACTERS = "special_characters"


@dataclass
class AuthorDiff:
    missing: list[PersonName] = field(default_factory=list)
    extra: list[PersonName] = field(default_factory=list)
    kind: AuthorDiffKind = AuthorDiffKind.NONE
    ignored_discrepancies: list[IgnoredDiscrepancy] = field(default_factory=list)


def _misspelling_tolerance(length: int, thresholds: Thresholds) -> int:
    return max(thresholds.author_edit_tolerance, int(thresholds.author_edit_ratio * length))


def _names_match(
    cited: PersonName, truth: PersonName, thresholds: Thresholds
) -> IgnoredDiscrepancy | bool | None:
    """None: no match. True: clean match. Else: the discrepancy we ignored."""
    cited_family, truth_family = canonical_family(cited), canonical_family(truth)
    if cited_family == truth_family:
        if cited.family == truth.family:
            return True
        return IgnoredDiscrepancy.SPECIAL_CHARACTERS
    # Reversal: the cited family name is really the given name and vice versa.
    cited_given, truth_given = canonical_given(cited), canonical_given(truth)
    if cited_given and truth_given:
        if cited_family == truth_given.split()[-1] and cited_given.split()[-1] == truth_family:
            return IgnoredDiscrepancy.NAME_REVERSAL
    distance = _levenshtein(cited_family, truth_family)
    if distance <= _misspelling_tolerance(max(len(cited_family), len(truth_family)), thresholds):
        return IgnoredDiscrepancy.MISSPELLING
    return None


def compare_authors(
    cited: list[PersonName],
    truth: list[PersonName],
    et_al: bool = False,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> AuthorDiff:
    """Diff a cited author list against the true record's author list.

    Misspellings within tolerance, given/family reversals, missing special
    characters, and an 'et al.' list covering the remaining true authors are
    recorded as ignored discrepancies, not errors.
    """
    diff = AuthorDiff()
    unmatched_truth = list(truth)
    for cited_name in cited:
        matched = None
        ignored = None
        for truth_name in unmatched_truth:
            outcome = _names_match(cited_name, truth_name, thresholds)
            if outcome is True:
                matched, ignored = truth_name, None
                break
            if outcome is not None and matched is None:
                matched, ignored = truth_name, outcome
        if matched is None:
            diff.extra.append(cited_name)
        else:
            unmatched_truth.remove(matched)
            if ignored is not None and ignored not in diff.ignored_discrepancies:
                diff.ignored_discrepancies.append(ignored)
    if et_al:
        # A truncated list plus 'et al.' counts as complete; a redundant
        # 'et al.' with every author listed is likewise ignored.
        unmatched_truth = []
        diff.ignored_discrepancies.append(IgnoredDiscrepancy.ET_AL_EXPANSION)
    diff.missing = unmatched_truth
    if diff.missing and diff.extra:
        diff.kind = AuthorDiffKind.BOTH
    elif diff.missing:
        diff.kind = AuthorDiffKind.MISSING
    elif diff.extra:
        diff.kind = AuthorDiffKind.EXTRA
    else:
        diff.kind = AuthorDiffKind.NONE
    return diff


def author_overlap_score(cited: list[PersonName], truth: list[PersonName]) -> float:
    """Fraction of the larger list matched by canonical family name."""
    if not cited and not truth:
        return 1.0
    if not cited or not truth:
        return 0.0
    cited_keys = [canonical_family(n) for n in cited]
    truth_keys = [canonical_family(n) for n in truth]
    remaining = list(truth_keys)
    matched = 0
    for key in cited_keys:
        if key in remaining:
            remaining.remove(key)
            matched += 1
    return matched / max(len(cited_keys), len(truth_keys))


# ---------------------------------------------------------------------------
# Identifier consistency
# ---------------------------------------------------------------------------

class IdentifierStatus(str, Enum):
    ABSENT = "absent"
    VALID_CONSISTENT = "valid_consistent"
    VALID_INCONSISTENT = "valid_inconsistent"
    UNREGISTERED = "unregistered"
    MALFORMED = "malformed"


@dataclass
class IdentifierFinding:
    doi_status: IdentifierStatus = IdentifierStatus.ABSENT
    arxiv_status: IdentifierStatus = IdentifierStatus.ABSENT
    version_note: str | None = None


def check_identifiers(
    ref: ParsedReference,
    resolved: MetadataRecord | None = None,
    arxiv_record: MetadataRecord | None = None,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> IdentifierFinding:
    """Judge DOI / arXiv id validity and consistency with the cited title.

    ``resolved`` / ``arxiv_record`` are the lookup results for the reference's
    identifiers (None meaning the identifier did not resolve).
    """
    finding = IdentifierFinding()
    finding.doi_status = _identifier_status(ref.identifiers.doi, is_valid_doi, resolved, ref, thresholds)
    finding.arxiv_status = _identifier_status(
        ref.identifiers.arxiv_id, is_valid_arxiv_id, arxiv_record, ref, thresholds
    )
    if arxiv_record is not None and arxiv_record.arxiv_versions:
        finding.version_note = _version_drift_note(arxiv_record)
    return finding


def _identifier_status(value, validator, record, ref, thresholds) -> IdentifierStatus:
    if value is None:
        return IdentifierStatus.ABSENT
    if not validator(value):
        return IdentifierStatus.MALFORMED
    if record is None:
        return IdentifierStatus.UNREGISTERED
    if ref.title and title_similarity(ref.title, record.title) < thresholds.rephrase:
        return IdentifierStatus.VALID_INCONSISTENT
    return IdentifierStatus.VALID_CONSISTENT


def _version_drift_note(record: MetadataRecord) -> str | None:
    versions = sorted(record.arxiv_versions, key=lambda v: v.version)
    latest = versions[-1]
    notes = []
    for earlier in versions[:-1]:
        if normalize_title(earlier.title) != normalize_title(latest.title):
            notes.append(f"title differs in v{earlier.version}: {earlier.title!r}")
        elif [canonical_family(a) for a in earlier.authors] != [
            canonical_family(a) for a in latest.authors
        ]:
            notes.append(f"author list differs in v{earlier.version}")
    return "; ".join(notes) if notes else None


# ---------------------------------------------------------------------------
# Severity classification
# ---------------------------------------------------------------------------

@dataclass
class Classification:
    severity: Severity
    matched: CandidateMatch | None
    author_diff: AuthorDiff
    identifier_finding: IdentifierFinding
    llm_markers: list[LlmUrlMarker]
    needs_triage: bool
    rationale: str


_PRIORITY_RANK = {source: rank for rank, source in enumerate(SOURCE_PRIORITY)}


def _candidate_order_key(candidate: CandidateMatch):
    # Deterministic under any input permutation: score, location confirmation,
    # source priority, author score, then native id as the final tie-break.
    return (
        candidate.title_score,
        candidate.location_confirmed,
        -_PRIORITY_RANK[candidate.record.source],
        candidate.author_score,
        candidate.record.source_native_id,
    )


def classify_citation(
    ref: ParsedReference,
    candidates: list[CandidateMatch],
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
    doi_record: MetadataRecord | None = None,
    arxiv_record: MetadataRecord | None = None,
) -> Classification:
    """Assign a severity, author diff, and identifier finding to one citation.

    ``doi_record``/``arxiv_record`` should be the identifier-resolution results
    when the pipeline performed them; otherwise they are recovered from the
    candidate list when possible.
    """
    if doi_record is None and ref.identifiers.doi:
        doi_record = next(
            (c.record for c in candidates if c.record.doi == ref.identifiers.doi), None
        )
    if arxiv_record is None and ref.identifiers.arxiv_id:
        arxiv_record = next(
            (c.record for c in candidates if c.record.arxiv_id == ref.identifiers.arxiv_id),
            None,
        )
    finding = check_identifiers(ref, doi_record, arxiv_record, thresholds)

    best = max(candidates, key=_candidate_order_key) if candidates else None
    if best is None:
        severity = Severity.MYSTERIOUS
        rationale = "no candidate from any searched source"
    elif best.title_score >= 1.0:
        severity = Severity.OK
        rationale = "exact title match"
    elif best.title_score >= thresholds.minor:
        severity = Severity.MINOR_ERROR
        rationale = (
            f"title similarity {best.title_score:.3f} >= {thresholds.minor:.2f}: "
            "small title defects (typo or a few missing words)"
        )
    elif best.title_score >= thresholds.rephrase:
        severity = Severity.REPHRASED_TITLE
        rationale = (
            f"title similarity {best.title_score:.3f} in "
            f"[{thresholds.rephrase:.2f}, {thresholds.minor:.2f}): nominated as "
            "rephrased; semantic equivalence needs human confirmation"
        )
    else:
        severity = Severity.MYSTERIOUS
        rationale = (
            f"best candidate similarity {best.title_score:.3f} < "
            f"{thresholds.rephrase:.2f}: no sufficiently similar publication found"
        )

    matched = best if severity < Severity.MYSTERIOUS else None
    if matched is not None:
        if matched.location_confirmed:
            rationale += "; location confirmed"
        else:
            rationale += "; cited location not confirmed"
        author_diff = compare_authors(
            ref.authors, list(matched.record.authors), ref.et_al, thresholds
        )
    else:
        author_diff = AuthorDiff(kind=AuthorDiffKind.NOT_APPLICABLE)

    needs_triage = severity >= Severity.REPHRASED_TITLE or ref.format_id is None
    if ref.format_id is None:
        rationale += "; entry did not match any known reference format"

    return Classification(
        severity=severity,
        matched=matched,
        author_diff=author_diff,
        identifier_finding=finding,
        llm_markers=list(ref.llm_markers),
        needs_triage=needs_triage,
        rationale=rationale,
    )
