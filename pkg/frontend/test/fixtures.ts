import type { CandidateEvidence, SeverityLabel, TriageItem } from "../src/types";

export const RUBRIC = [
  "1. Web-search the cited title and authors.",
  "2. If the search does not validate the citation, or returns only ResearchGate uploads, open the cited location (journal volume, proceedings, pages) and check it directly.",
  "3. For arXiv preprints, compare earlier versions for title and author changes.",
  "4. Record a verdict with the evidence link that settled it.",
];

function tokens(title: string): string[] {
  return title.toLowerCase().replace(/[^\w\s]/g, " ").split(/\s+/).filter(Boolean);
}

export function makeCandidate(title: string, overrides: Partial<CandidateEvidence> = {}): CandidateEvidence {
  return {
    source: "dblp",
    native_id: "conf/x/y1",
    title,
    title_tokens: tokens(title),
    authors: ["Jane Smith"],
    venue: "Proc. Example Conf.",
    year: 2021,
    doi: null,
    arxiv_id: null,
    title_score: 0.8,
    author_score: 1.0,
    location_confirmed: false,
    links: ["https://dblp.org/rec/conf/x/y1"],
    ...overrides,
  };
}

export function makeItem(
  key: string,
  severity: SeverityLabel,
  citedTitle: string,
  candidates: CandidateEvidence[] = [],
): TriageItem {
  const [paperId, index] = [key.split(":")[0], Number(key.split(":")[1])];
  return {
    citation_key: key,
    paper_id: paperId,
    index,
    raw_text: `Raw entry text for ${key}: "${citedTitle}."`,
    severity,
    rationale: `machine rationale for ${key}`,
    status: "pending",
    parsed: {
      title: citedTitle,
      authors: [{ family: "Smith", given: "J.", raw: "J. Smith" }],
      venue: "Proc. Example Conf.",
      year: 2021,
      pages: null,
      format_id: 1,
      et_al: false,
      doi: null,
      arxiv_id: null,
      urls: [],
    },
    classification: { severity, needs_triage: true, rationale: `machine rationale for ${key}` },
    candidates,
    cited_title_tokens: tokens(citedTitle),
  };
}

/** Queue as the service would serve it: severity descending, then paper id. */
export function threeItemQueue(): TriageItem[] {
  return [
    makeItem("gamma:2", "mysterious", "Quantum Holographic Ledger Fabrics", []),
    makeItem("alpha:7", "mysterious", "Invented Results in Imaginary Venues", []),
    makeItem(
      "beta:2",
      "rephrased_title",
      "Energy Efficient Scheduling of Tensor Pipelines",
      [makeCandidate("Energy Aware Scheduling of Tensor Workloads")],
    ),
  ];
}

export function tenItemQueue(): TriageItem[] {
  const severities: SeverityLabel[] = [
    "mysterious", "mysterious", "mysterious",
    "rephrased_title", "rephrased_title", "rephrased_title", "rephrased_title",
    "minor_error", "minor_error", "ok",
  ];
  return severities.map((severity, i) => {
    const cited = `Cited Title Number ${i} With Some Distinct Words`;
    const candidate = makeCandidate(`Found Title Number ${i} With Other Distinct Words`, {
      native_id: `rec/${i}`,
      title_score: severity === "ok" ? 1.0 : 0.7,
    });
    return makeItem(`paper${String(i).padStart(2, "0")}:${i + 1}`, severity, cited, [candidate]);
  });
}
