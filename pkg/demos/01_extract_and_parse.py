"""Walkthrough: from raw paper text to structured references.

Runs fully offline; no setup needed.
"""

from citecheck import SourceKind, extract_text, isolate_bibliography, parse_reference, split_entries

PAPER = """Adaptive Methods in Practice

The body of the paper would go here. Note that the word references can
appear in running text without confusing the extractor.

References
[1] J. Smith and A. Jones, "A Fast Solver for Sparse Systems," in Proc. XYZ,
2019, pp. 1–10.
[2] Jane Smith, Wei Chen, and Ana Rossi. 2020. Communication Avoiding Methods.
In Proceedings of the International Conference on Supercomputing (ICS 2020).
ACM, 101–112. https://doi.org/10.5555/3295500.3356181
[3] M. Novak et al., "Asynchronous Collectives," arXiv preprint arXiv:2104.01777v2, 2021.
[4] R. Keller, "A Helpful Post," Tech Blog, 2024. [Online]. Available:
https://blog.example/post?utm_source=chatgpt.com
[5] ???unstructured garbage that matches no format???
"""

doc = extract_text(PAPER, SourceKind.PLAIN_TEXT)
bib = isolate_bibliography(doc)
print(f"bibliography starts at offset {bib.start_offset} "
      f"(heading: {bib.heading_matched!r})\n")

entries = split_entries(bib, paper_id="demo-paper")
print(f"{len(entries)} entries found\n")

for entry in entries:
    ref = parse_reference(entry)
    print(f"[{entry.index}] format={ref.format_id} confidence={ref.parse_confidence}")
    print(f"    title:   {ref.title!r}")
    print(f"    authors: {[a.display() for a in ref.authors]}"
          + (" + et al." if ref.et_al else ""))
    print(f"    venue:   {ref.venue!r}  year: {ref.year}  pages: {ref.pages!r}")
    if ref.identifiers.doi:
        print(f"    doi:     {ref.identifiers.doi}")
    if ref.identifiers.arxiv_id:
        print(f"    arxiv:   {ref.identifiers.arxiv_id} (v{ref.identifiers.arxiv_version})")
    for marker in ref.llm_markers:
        print(f"    !! LLM URL marker: {marker.marker} in {marker.url}")
    print()
