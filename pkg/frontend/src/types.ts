// Payload shapes served by the triage API. These mirror the service's
// canonical JSON schema; the UI never invents fields of its own.

export type SeverityLabel = "ok" | "minor_error" | "rephrased_title" | "mysterious";

export interface CandidateEvidence {
  source: string;
  native_id: string;
  title: string;
  title_tokens: string[];
  authors: string[];
  venue: string | null;
  year: number | null;
  doi: string | null;
  arxiv_id: string | null;
  title_score: number;
  author_score: number;
  location_confirmed: boolean;
  links: string[];
}

export interface ParsedFields {
  title: string | null;
  authors: { family: string; given: string | null; raw: string }[];
  venue: string | null;
  year: number | null;
  pages: string | null;
  format_id: number | null;
  et_al: boolean;
  doi: string | null;
  arxiv_id: string | null;
  urls: string[];
}

export interface TriageItem {
  citation_key: string;
  paper_id: string;
  index: number;
  raw_text: string;
  severity: SeverityLabel;
  rationale: string;
  status: "pending" | "decided";
  parsed: ParsedFields;
  classification: { severity: SeverityLabel; needs_triage: boolean; rationale: string };
  candidates: CandidateEvidence[];
  cited_title_tokens: string[];
}

export interface TriageResponse {
  run_id: string;
  pending: number;
  rubric: string[];
  items: TriageItem[];
}

export interface VerdictPayload {
  paper_id: string;
  index: number;
  decided_severity: SeverityLabel;
  reviewer: string;
  note: string;
  evidence_url: string | null;
}

export interface VerdictAck {
  recorded: boolean;
  citation_key: string;
  decided_severity: SeverityLabel;
  decided_at: number;
  pending: number;
}
