"""Walkthrough: title similarity, author diffing, and the severity ladder."""

from citecheck import (
    BibEntry,
    CandidateMatch,
    MetadataRecord,
    PersonName,
    SourceId,
    classify_citation,
    compare_authors,
    parse_reference,
    title_similarity,
)

print("=== title similarity ===")
pairs = [
    ("A Fast Solver for Sparse Systems", "A Fast Solver for Sparse Systems"),
    ("A Fast Solver for Sparse Systems", "a fast solver for sparse systems."),
    ("Adaptive Solvers: A Practical Guide", "Adaptive Solvers"),
    ("Energy Aware Scheduling of Tensor Workloads Across Accelerated Nodes",
     "Energy Efficient Scheduling of Tensor Pipelines Across Heterogeneous Nodes"),
    ("Sparse Solvers for Exascale Systems", "Quantum Holographic Ledger Synergies"),
]
for a, b in pairs:
    print(f"  {title_similarity(a, b):.3f}  {a!r} vs {b!r}")

print("\n=== author diff with ignore rules ===")
truth = [PersonName(family="Smith", given="Jane"), PersonName(family="Müller", given="Greta")]
cases = {
    "exact": [PersonName(family="Smith", given="J."), PersonName(family="Müller", given="G.")],
    "missing one": [PersonName(family="Smith", given="J.")],
    "reversed + unfolded": [PersonName(family="Jane", given="Smith"), PersonName(family="Muller", given="G.")],
    "extra fabricated": [PersonName(family="Smith", given="J."), PersonName(family="Müller", given="G."),
                         PersonName(family="Invented", given="Z.")],
}
for label, cited in cases.items():
    diff = compare_authors(cited, truth)
    ignored = ", ".join(d.value for d in diff.ignored_discrepancies) or "none"
    print(f"  {label:22s} kind={diff.kind.value:8s} missing={[p.family for p in diff.missing]} "
          f"extra={[p.family for p in diff.extra]} ignored={ignored}")

print("\n=== severity ladder ===")
ref = parse_reference(BibEntry(
    1,
    'J. Smith, "Dynamic Load Balancing Strategies for Distributed Stencil '
    'Computations Under Measurement Noise," in Proc. ICPP, 2021, pp. 45–58.',
    "demo",
))

def candidate(title, score_hint):
    record = MetadataRecord(
        title=title, authors=(PersonName(family="Smith", given="Jane"),),
        source=SourceId.DBLP, source_native_id="conf/icpp/x",
        venue="Proc. ICPP", year=2021, pages="45-58",
    )
    return CandidateMatch(record=record, title_score=title_similarity(ref.title, title),
                          author_score=1.0, location_confirmed=True)

scenarios = {
    "identical title": ref.title,
    "one-word typo": ref.title.replace("Balancing", "Balacning"),
    "rephrased": "Dynamic Load Balancing Methods for Distributed Stencil "
                 "Computations Under Sampling Noise",
    "unrelated": "Caring for Indoor Plants in Low Light",
}
for label, candidate_title in scenarios.items():
    cls = classify_citation(ref, [candidate(candidate_title, label)])
    print(f"  {label:16s} -> {cls.severity.label:15s} triage={cls.needs_triage}")
    print(f"                   {cls.rationale}")

print("\nno candidates at all:")
cls = classify_citation(ref, [])
print(f"  -> {cls.severity.label}, triage={cls.needs_triage}: {cls.rationale}")
