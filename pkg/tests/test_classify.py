"""Scoring and classification tests, checked against independent oracles."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bibforge import FAMILY_NAMES, GIVEN_NAMES, TITLE_WORDS
from citecheck.classify import (
    AuthorDiffKind,
    IdentifierStatus,
    IgnoredDiscrepancy,
    Severity,
    check_identifiers,
    classify_citation,
    compare_authors,
    title_similarity,
)
from citecheck.extract import BibEntry
from citecheck.names import PersonName
from citecheck.parse import parse_reference
from citecheck.sources.models import ArxivVersion, CandidateMatch, MetadataRecord, SourceId
from oracles import oracle_title_similarity


def ref_of(text: str):
    return parse_reference(BibEntry(1, text, "paper"))


def candidate(title, score=None, source=SourceId.CROSSREF, confirmed=False, native="n1",
              authors=(), doi=None, year=2020):
    record = MetadataRecord(
        title=title,
        authors=tuple(authors),
        source=source,
        source_native_id=native,
        doi=doi,
        year=year,
    )
    return CandidateMatch(
        record=record,
        title_score=score if score is not None else 1.0,
        author_score=1.0,
        location_confirmed=confirmed,
    )


# ---------------------------------------------------------------------------
# title similarity
# ---------------------------------------------------------------------------

def test_identity():
    assert title_similarity("A Fast Solver", "A Fast Solver") == 1.0


def test_normalization_equivalent():
    assert title_similarity("A Fast Solver", "a fast solver.") == 1.0


def test_diacritics_fold():
    assert title_similarity("Efficient Métodos Numéricos", "efficient metodos numericos") == 1.0


def test_subtitle_truncation_both_directions():
    full = "Adaptive Solvers: A Practical Guide To Tuning"
    short = "Adaptive Solvers"
    assert title_similarity(full, short) == 1.0
    assert title_similarity(short, full) == 1.0


def test_one_word_off_long_title():
    a = "one two three four five six seven eight nine ten"
    b = "one two three four five six seven eight nine zzz"
    assert title_similarity(a, b) == pytest.approx(0.9)


def test_short_titles_use_character_level():
    # 2 tokens: word-level would give 0.5, char-level is much higher
    assert title_similarity("deep learning", "deep learnincg") > 0.85


def test_unrelated_titles_score_low():
    assert title_similarity(
        "Sparse Solvers for Exascale Systems",
        "Quantum Holographic Ledger Synergies",
    ) < 0.3


def random_title(rng: random.Random) -> str:
    n = rng.randint(1, 12)
    words = [rng.choice(TITLE_WORDS) for _ in range(n)]
    text = " ".join(words)
    if rng.random() < 0.3:
        text = text.replace(" ", ": ", 1)
    if rng.random() < 0.3:
        text = text.title()
    if rng.random() < 0.2:
        text += "."
    if rng.random() < 0.2:
        text = text.replace("e", "é", 1)
    return text


def test_oracle_equivalence_500_pairs():
    rng = random.Random(1234)
    for _ in range(500):
        a, b = random_title(rng), random_title(rng)
        assert abs(title_similarity(a, b) - oracle_title_similarity(a, b)) <= 1e-9, (a, b)


@settings(max_examples=120, deadline=None)
@given(st.text(min_size=1, max_size=60), st.text(min_size=1, max_size=60))
def test_symmetry_and_range(a, b):
    sab = title_similarity(a, b)
    assert sab == title_similarity(b, a)
    assert 0.0 <= sab <= 1.0
    assert title_similarity(a, a) == 1.0


# ---------------------------------------------------------------------------
# compare_authors
# ---------------------------------------------------------------------------

def person(given, family):
    return PersonName(family=family, given=given, raw=f"{given} {family}".strip())


def test_exact_author_lists():
    cited = [person("J.", "Smith"), person("A.", "Jones")]
    truth = [person("Jane", "Smith"), person("Alan", "Jones")]
    diff = compare_authors(cited, truth)
    assert diff.kind is AuthorDiffKind.NONE
    assert diff.missing == [] and diff.extra == []


def test_missing_author():
    diff = compare_authors([person("J.", "Smith")], [person("J.", "Smith"), person("A.", "Jones")])
    assert diff.kind is AuthorDiffKind.MISSING
    assert [p.family for p in diff.missing] == ["Jones"]


def test_extra_author():
    diff = compare_authors(
        [person("J.", "Smith"), person("Z.", "Invented")], [person("J.", "Smith")]
    )
    assert diff.kind is AuthorDiffKind.EXTRA
    assert [p.family for p in diff.extra] == ["Invented"]


def test_both_missing_and_extra():
    diff = compare_authors(
        [person("J.", "Smith"), person("Z.", "Invented")],
        [person("J.", "Smith"), person("A.", "Jones")],
    )
    assert diff.kind is AuthorDiffKind.BOTH


def test_name_reversal_ignored():
    # given/family swapped in the citation
    diff = compare_authors([person("Smith", "Jane")], [person("Jane", "Smith")])
    assert diff.kind is AuthorDiffKind.NONE
    assert IgnoredDiscrepancy.NAME_REVERSAL in diff.ignored_discrepancies


def test_misspelling_within_tolerance_ignored():
    diff = compare_authors([person("G.", "Johanson")], [person("G.", "Johansson")])
    assert diff.kind is AuthorDiffKind.NONE
    assert IgnoredDiscrepancy.MISSPELLING in diff.ignored_discrepancies


def test_special_characters_ignored():
    diff = compare_authors([person("M.", "Muller")], [person("M.", "Müller")])
    assert diff.kind is AuthorDiffKind.NONE
    assert IgnoredDiscrepancy.SPECIAL_CHARACTERS in diff.ignored_discrepancies


def test_et_al_prefix_counts_as_complete():
    truth = [person("A.", "First"), person("B.", "Second"), person("C.", "Third")]
    diff = compare_authors([person("A.", "First")], truth, et_al=True)
    assert diff.kind is AuthorDiffKind.NONE
    assert IgnoredDiscrepancy.ET_AL_EXPANSION in diff.ignored_discrepancies


def test_et_al_does_not_hide_extras():
    truth = [person("A.", "First"), person("B.", "Second")]
    diff = compare_authors([person("Z.", "Fabricated")], truth, et_al=True)
    assert diff.kind is AuthorDiffKind.EXTRA


def test_planted_author_diff_oracle():
    # randomized truth lists with planted deletions/insertions vs a
    # set-difference oracle over canonical names
    rng = random.Random(77)
    for _ in range(300):
        n = rng.randint(1, 8)
        families = rng.sample(FAMILY_NAMES, k=n)
        truth = [person(rng.choice(GIVEN_NAMES), f) for f in families]
        cited = list(truth)
        deleted = []
        if n > 1:
            for _ in range(rng.randint(0, min(2, n - 1))):
                deleted.append(cited.pop(rng.randrange(len(cited))))
        inserted = []
        for _ in range(rng.randint(0, 2)):
            fam = rng.choice([f for f in FAMILY_NAMES if f not in families])
            extra = person(rng.choice(GIVEN_NAMES), fam + "xx")  # far from all truths
            inserted.append(extra)
            cited.insert(rng.randrange(len(cited) + 1), extra)
        diff = compare_authors(cited, truth)
        assert sorted(p.family for p in diff.missing) == sorted(p.family for p in deleted)
        assert sorted(p.family for p in diff.extra) == sorted(p.family for p in inserted)
        expected_kind = (
            AuthorDiffKind.BOTH if deleted and inserted
            else AuthorDiffKind.MISSING if deleted
            else AuthorDiffKind.EXTRA if inserted
            else AuthorDiffKind.NONE
        )
        assert diff.kind is expected_kind


def test_conservation_invariant():
    rng = random.Random(5)
    for _ in range(100):
        truth = [person("A.", f) for f in rng.sample(FAMILY_NAMES, k=rng.randint(0, 6))]
        cited = [person("B.", f) for f in rng.sample(FAMILY_NAMES, k=rng.randint(0, 6))]
        diff = compare_authors(cited, truth)
        matched_cited = len(cited) - len(diff.extra)
        matched_truth = len(truth) - len(diff.missing)
        assert matched_cited == matched_truth  # alignment is one-to-one


# ---------------------------------------------------------------------------
# classify_citation ladder
# ---------------------------------------------------------------------------

REF = ref_of('J. Smith, "Exact Title Words Here," in Proc. Conf, 2020, pp. 1–3.')


def test_exact_match_is_ok():
    cls = classify_citation(REF, [candidate("Exact Title Words Here", confirmed=True)])
    assert cls.severity is Severity.OK
    assert cls.needs_triage is False
    assert cls.matched is not None


def test_minor_error_band():
    cls = classify_citation(REF, [candidate("x", score=0.93, confirmed=True)])
    assert cls.severity is Severity.MINOR_ERROR
    assert cls.needs_triage is False


def test_rephrased_band_needs_triage():
    cls = classify_citation(REF, [candidate("x", score=0.7, confirmed=True)])
    assert cls.severity is Severity.REPHRASED_TITLE
    assert cls.needs_triage is True


def test_below_band_is_mysterious():
    cls = classify_citation(REF, [candidate("x", score=0.3)])
    assert cls.severity is Severity.MYSTERIOUS
    assert cls.needs_triage is True
    assert cls.matched is None
    assert cls.author_diff.kind is AuthorDiffKind.NOT_APPLICABLE


def test_no_candidates_is_mysterious():
    cls = classify_citation(REF, [])
    assert cls.severity is Severity.MYSTERIOUS
    assert cls.needs_triage is True


def test_threshold_boundaries_pin_to_better_class():
    assert classify_citation(REF, [candidate("x", score=0.90)]).severity is Severity.MINOR_ERROR
    assert classify_citation(REF, [candidate("x", score=0.60)]).severity is Severity.REPHRASED_TITLE
    just_below_minor = classify_citation(REF, [candidate("x", score=0.8999999)])
    assert just_below_minor.severity is Severity.REPHRASED_TITLE
    just_below_rephrase = classify_citation(REF, [candidate("x", score=0.5999999)])
    assert just_below_rephrase.severity is Severity.MYSTERIOUS


def test_monotonicity_in_best_score():
    scores = [0.1, 0.45, 0.6, 0.75, 0.9, 0.97, 1.0]
    severities = [classify_citation(REF, [candidate("x", score=s)]).severity for s in scores]
    assert severities == sorted(severities, reverse=True)


def test_candidate_permutation_stability(rng):
    candidates = [
        candidate("x", score=0.8, source=SourceId.DBLP, native="d1"),
        candidate("x", score=0.8, source=SourceId.CROSSREF, native="c1"),
        candidate("x", score=0.95, source=SourceId.OSTI, native="o1"),
        candidate("x", score=0.95, source=SourceId.OSTI, native="o2", confirmed=True),
    ]
    baseline = classify_citation(REF, candidates)
    for _ in range(10):
        rng.shuffle(candidates)
        again = classify_citation(REF, candidates)
        assert again.severity is baseline.severity
        assert again.matched.record.source_native_id == baseline.matched.record.source_native_id


def test_tie_break_prefers_location_then_source_priority():
    tie = [
        candidate("x", score=0.9, source=SourceId.DBLP, native="d"),
        candidate("x", score=0.9, source=SourceId.CROSSREF, native="c"),
    ]
    cls = classify_citation(REF, tie)
    assert cls.matched.record.source is SourceId.CROSSREF
    tie_confirmed = tie + [candidate("x", score=0.9, source=SourceId.OSTI, native="o", confirmed=True)]
    cls = classify_citation(REF, tie_confirmed)
    assert cls.matched.record.source is SourceId.OSTI


def test_unparsed_entry_always_enters_triage():
    ref = ref_of("garbled beyond recognition 123")
    assert ref.format_id is None
    cls = classify_citation(ref, [candidate("Whatever Title", score=1.0)])
    assert cls.needs_triage is True


def test_location_mismatch_noted_in_rationale():
    cls = classify_citation(REF, [candidate("Exact Title Words Here", confirmed=False)])
    assert cls.severity is Severity.OK
    assert "not confirmed" in cls.rationale


# ---------------------------------------------------------------------------
# check_identifiers
# ---------------------------------------------------------------------------

def rec(title, source=SourceId.CROSSREF, doi=None, versions=None, arxiv_id=None):
    return MetadataRecord(
        title=title,
        authors=(),
        source=source,
        source_native_id="x",
        doi=doi,
        arxiv_id=arxiv_id,
        arxiv_versions=versions,
    )


def test_absent_identifiers():
    finding = check_identifiers(ref_of("A. B. No Ids Here. Venue, 2020."))
    assert finding.doi_status is IdentifierStatus.ABSENT
    assert finding.arxiv_status is IdentifierStatus.ABSENT


def test_doi_consistent():
    ref = ref_of('J. S. "Exact Title Here," in Proc. C, 2020. https://doi.org/10.1000/abc')
    finding = check_identifiers(ref, resolved=rec("Exact Title Here", doi="10.1000/abc"))
    assert finding.doi_status is IdentifierStatus.VALID_CONSISTENT


def test_doi_inconsistent_when_unrelated():
    ref = ref_of('J. S., "Sparse Solver Methods For Clusters," in Proc. C, 2020. doi:10.1000/abc')
    unrelated = rec("Completely Different Topic Entirely About Biology Wetlands")
    finding = check_identifiers(ref, resolved=unrelated)
    assert oracle_title_similarity(ref.title, unrelated.title) < 0.6
    assert finding.doi_status is IdentifierStatus.VALID_INCONSISTENT


def test_doi_unregistered():
    ref = ref_of('J. S., "Any Title Words," in Proc. C, 2020. doi:10.1000/fake-doi-xyz')
    finding = check_identifiers(ref, resolved=None)
    assert finding.doi_status is IdentifierStatus.UNREGISTERED


def test_arxiv_version_drift_noted():
    ref = ref_of('A. B., "Stable Title Words," arXiv preprint arXiv:2104.01777, 2021.')
    versions = (
        ArxivVersion(1, "Old Different Title Words", (PersonName(family="B"),)),
        ArxivVersion(2, "Stable Title Words", (PersonName(family="B"),)),
    )
    record = rec("Stable Title Words", source=SourceId.ARXIV, versions=versions, arxiv_id="2104.01777")
    finding = check_identifiers(ref, arxiv_record=record)
    assert finding.arxiv_status is IdentifierStatus.VALID_CONSISTENT
    assert finding.version_note is not None and "v1" in finding.version_note


def test_no_version_note_when_stable():
    ref = ref_of('A. B., "Stable Title Words," arXiv preprint arXiv:2104.01777, 2021.')
    versions = (
        ArxivVersion(1, "Stable Title Words", (PersonName(family="B"),)),
        ArxivVersion(2, "Stable Title Words", (PersonName(family="B"),)),
    )
    record = rec("Stable Title Words", source=SourceId.ARXIV, versions=versions, arxiv_id="2104.01777")
    assert check_identifiers(ref, arxiv_record=record).version_note is None
