"""A small fixed corpus of three plain-text papers plus the recorded payloads
that let the pipeline run fully offline against a warm cache.

Everything here is literal (no RNG) so rendered run outputs are byte-stable
and can be pinned as golden files.

Expected machine classifications:
  alpha: [1] ok  [2] ok          [3] minor_error (one-word typo)
  beta:  [1] ok  [2] rephrased   [3] ok + chatgpt URL marker
  gamma: [1] ok  [2] mysterious  (fabricated; every source misses)
"""

from __future__ import annotations

from pathlib import Path

import payloads as pl
from citecheck.sources.cache import ResponseCache

ALPHA1_TITLE = "Adaptive Sparse Solvers for Heterogeneous Memory Clusters"
ALPHA2_TITLE = "Communication Avoiding Iterative Methods at Extreme Scale"
ALPHA2_DOI = "10.5555/3295500.3356181"
ALPHA3_TRUE = "Dynamic Load Balancing Strategies for Distributed Stencil Computations Under Measurement Noise"
ALPHA3_CITED = "Dynamic Load Balacning Strategies for Distributed Stencil Computations Under Measurement Noise"

BETA1_TITLE = "Resilient Checkpointing Under Silent Data Corruption"
BETA2_TRUE = "Energy Aware Scheduling of Tensor Workloads Across Accelerated Nodes"
BETA2_CITED = "Energy Efficient Scheduling of Tensor Pipelines Across Heterogeneous Nodes"
BETA3_TITLE = "Understanding Silent Data Corruption in Large Scale Systems"
BETA3_URL = "https://wiki.example.org/sdc-guide?utm_source=chatgpt.com"

GAMMA1_TITLE = "Mixed Precision Preconditioning Techniques for Exascale Simulations"
GAMMA2_TITLE = "Quantum Holographic Ledger Fabrics for Neuromorphic Blockchain Synergy"

PAPERS = {
    "alpha": f"""Adaptive Methods in Practice
A synthetic paper used to exercise the verification pipeline end to end.

References
[1] J. Smith and A. Jones, "{ALPHA1_TITLE}," in Proc. Int. Conf. on Parallel Processing, 2019, pp. 45–58.
[2] Jane Smith, Wei Chen, and Ana Rossi. 2020. {ALPHA2_TITLE}. In Proceedings of the International Conference on Supercomputing (ICS 2020). ACM, 101–112. https://doi.org/{ALPHA2_DOI}
[3] M. Novak. {ALPHA3_CITED}. Parallel Computing, 2021.
""",
    "beta": f"""Checkpointing Revisited
Another synthetic paper; its second reference rephrases the true title.

References
[1] L. Garcia, "{BETA1_TITLE}," IEEE Trans. Parallel Distrib. Syst., vol. 31, no. 4, pp. 812–825, 2020.
[2] P. Okafor and T. Tanaka, "{BETA2_CITED}," in Proc. IEEE Int. Symp. on Cluster Computing, 2022, pp. 77–89.
[3] R. Keller, "{BETA3_TITLE}," HPC Community Wiki, 2024. [Online]. Available: {BETA3_URL}
""",
    "gamma": f"""On Fabricated Sources
The second reference of this synthetic paper does not exist anywhere.

References
[1] I. Petrov, "{GAMMA1_TITLE}," in Proc. Euro-Par Parallel Processing Workshops, 2018, pp. 201–214.
[2] H. Fakename and Z. Nonexist, "{GAMMA2_TITLE}," in Proc. Imaginary Symposium on Invented Results, 2025, pp. 1–12.
""",
}


def write_papers(input_dir: Path) -> Path:
    input_dir.mkdir(parents=True, exist_ok=True)
    for paper_id, text in PAPERS.items():
        (input_dir / f"{paper_id}.txt").write_text(text, encoding="utf-8")
    return input_dir


def seed_cache(cache_dir: Path) -> None:
    """Record every response the offline run will need (plan: crossref,dblp)."""
    cache = ResponseCache(cache_dir)

    def dblp(title_queried, hits):
        pl.seed_title_search(cache, "dblp", title_queried, pl.dblp_search_payload(hits))

    def crossref_empty(title_queried):
        pl.seed_title_search(cache, "crossref", title_queried, pl.crossref_search_payload([]))

    # alpha [1]: exact dblp hit, venue+pages confirm the location -> early exit
    dblp(ALPHA1_TITLE, [
        pl.dblp_hit(ALPHA1_TITLE, [("Jane", "Smith"), ("Alan", "Jones")],
                    venue="Proc. Int. Conf. on Parallel Processing", year=2019,
                    pages="45-58", key="conf/icpp/SmithJ19"),
    ])
    # alpha [2]: registered DOI -> crossref resolves it, location confirmed
    pl.seed_doi_lookup(cache, "crossref", ALPHA2_DOI, pl.crossref_doi_payload(
        pl.crossref_item(ALPHA2_TITLE,
                         [("Jane", "Smith"), ("Wei", "Chen"), ("Ana", "Rossi")],
                         venue="Proceedings of the International Conference on Supercomputing",
                         year=2020, doi=ALPHA2_DOI, pages="101-112")
    ))
    # alpha [3]: cited title has a typo; dblp still finds the true record
    dblp(ALPHA3_CITED, [
        pl.dblp_hit(ALPHA3_TRUE, [("Mira", "Novak")], venue="Parallel Computing",
                    year=2021, key="journals/pc/Novak21"),
    ])
    crossref_empty(ALPHA3_CITED)

    # beta [1]: exact journal hit with matching volume pages
    dblp(BETA1_TITLE, [
        pl.dblp_hit(BETA1_TITLE, [("Luis", "Garcia")],
                    venue="IEEE Trans. Parallel Distrib. Syst.", year=2020,
                    pages="812-825", key="journals/tpds/Garcia20"),
    ])
    # beta [2]: the true record, reworded in the citation
    dblp(BETA2_CITED, [
        pl.dblp_hit(BETA2_TRUE, [("Pat", "Okafor"), ("Tomo", "Tanaka")],
                    venue="Proc. IEEE Int. Symp. on Cluster Computing", year=2022,
                    pages="77-89", key="conf/cluster/OkaforT22"),
    ])
    crossref_empty(BETA2_CITED)
    # beta [3]: web resource with an LLM marker; title exists, no pages to confirm
    dblp(BETA3_TITLE, [
        pl.dblp_hit(BETA3_TITLE, [("Rolf", "Keller")], venue="CoRR", year=2024,
                    key="journals/corr/Keller24"),
    ])
    crossref_empty(BETA3_TITLE)

    # gamma [1]: exact conference hit
    dblp(GAMMA1_TITLE, [
        pl.dblp_hit(GAMMA1_TITLE, [("Igor", "Petrov")],
                    venue="Proc. Euro-Par Parallel Processing Workshops", year=2018,
                    pages="201-214", key="conf/europar/Petrov18"),
    ])
    # gamma [2]: fabricated -> recorded not-found everywhere
    dblp(GAMMA2_TITLE, [])
    crossref_empty(GAMMA2_TITLE)


def run_args(input_dir: Path, out_dir: Path, cache_dir: Path) -> list[str]:
    return [
        "run",
        "--input", str(input_dir),
        "--out", str(out_dir),
        "--offline",
        "--cache-dir", str(cache_dir),
        "--plan", "crossref,dblp",
        "--corpus-id", "demo",
    ]
