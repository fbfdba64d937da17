"""Walkthrough: a complete offline run against recorded responses.

Builds a two-paper corpus and a warm response cache in a temp directory,
runs the pipeline with the network disabled, prints the reports, then records
a human verdict and shows the override taking effect.
"""

import json
import tempfile
from pathlib import Path

from citecheck import RunConfig, RunStore, SearchPlan, Severity, SourceId, Verdict, run_pipeline
from citecheck.report import render_report
from citecheck.sources import ResponseCache
from citecheck.sources.clients import canonical_title_query

GOOD_TITLE = "Mixed Precision Preconditioning Techniques for Exascale Simulations"
FAKE_TITLE = "Hyperdimensional Oracle Fabrics for Transcendent Swarm Cognition"

PAPERS = {
    "clean": f"""A Clean Paper
References
[1] I. Petrov, "{GOOD_TITLE}," in Proc. Euro-Par Parallel Processing Workshops, 2018, pp. 201–214.
""",
    "suspect": f"""A Paper With a Fabricated Reference
References
[1] I. Petrov, "{GOOD_TITLE}," in Proc. Euro-Par Parallel Processing Workshops, 2018, pp. 201–214.
[2] H. Fakename, "{FAKE_TITLE}," in Proc. Imaginary Symposium, 2025, pp. 1–12.
""",
}


def dblp_payload(hits):
    return json.dumps({"result": {"hits": {"hit": hits}}}).encode()


def record_hit(title, family, given, venue, year, pages, key):
    return {"info": {"title": f"{title}.", "authors": {"author": [{"text": f"{given} {family}"}]},
                     "venue": venue, "year": str(year), "pages": pages, "key": key}}


with tempfile.TemporaryDirectory() as tmp:
    root = Path(tmp)
    papers = root / "papers"
    papers.mkdir()
    for name, text in PAPERS.items():
        (papers / f"{name}.txt").write_text(text)

    # record the aggregator responses the run will need
    cache = ResponseCache(root / "cache")
    cache.put("dblp", f"title:{canonical_title_query(GOOD_TITLE)}", dblp_payload([
        record_hit(GOOD_TITLE, "Petrov", "Igor",
                   "Proc. Euro-Par Parallel Processing Workshops", 2018, "201-214",
                   "conf/europar/Petrov18"),
    ]))
    cache.put("dblp", f"title:{canonical_title_query(FAKE_TITLE)}", dblp_payload([]))

    result = run_pipeline(RunConfig(
        input_paths=(papers,),
        out_dir=root / "run",
        offline=True,
        cache_dir=root / "cache",
        plan=SearchPlan((SourceId.DBLP,)),
        corpus_id="demo-corpus",
    ))

    print("=== machine reports ===")
    for report in result.reports:
        print(render_report(report, "text").decode())
    for stats in result.corpora:
        print(render_report(stats, "text").decode())

    store = RunStore(result.run_dir)
    print("=== triage queue ===")
    for item in store.triage_items():
        print(f"  {item.citation_key}: {item.severity.label} -- {item.rationale}")

    print("\nreviewer confirms the fabricated reference really does not exist...")
    store.record_verdict(Verdict("suspect", 2, Severity.MYSTERIOUS,
                                 reviewer="demo-reviewer", note="no trace anywhere"))
    print("...and downgrades nothing; then a second look finds it was a typo:")
    store.record_verdict(Verdict("suspect", 2, Severity.MINOR_ERROR,
                                 reviewer="demo-reviewer", note="found under corrected title"))

    effective = store.effective_report("suspect")
    print(f"\neffective max severity for 'suspect' after verdicts: "
          f"{effective.max_severity.label}")
    print(f"pending triage items now: {len(store.triage_items())}")
