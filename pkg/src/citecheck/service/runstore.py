"""Run directory state: machine records, append-only verdict log, triage queue.

Layout of one run directory:

    config.json                   config snapshot
    run.json                      paper ids, per-paper failures, corpus groups
    papers/<paper_id>.json        machine report (classifications, no verdicts)
    papers/<paper_id>.candidates.json   per-citation candidate evidence
    reports/...                   rendered reports (anonymized when salted)
    verdicts.ndjson               append-only human verdict log
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..classify import Severity, normalize_title
from ..errors import StaleRun, UnknownCitation, UnknownRun
from ..report import (
    PaperReport,
    Verdict,
    build_paper_report,
    canonical_json_bytes,
    citation_to_json,
    effective_verdicts,
    paper_report_from_json,
    render_report,
)
from ..sources.transport import Clock, SystemClock

# The manual validation protocol shown to reviewers; a hit that appears only
# on ResearchGate does not count as evidence of existence.
TRIAGE_RUBRIC = (
    "1. Web-search the cited title and authors.",
    "2. If the search does not validate the citation, or returns only "
    "ResearchGate uploads, open the cited location (journal volume, "
    "proceedings, pages) and check it directly.",
    "3. For arXiv preprints, compare earlier versions for title and author "
    "changes.",
    "4. Record a verdict with the evidence link that settled it.",
)


@dataclass
class TriageItem:
    citation_key: str
    paper_id: str
    index: int
    raw_text: str
    severity: Severity
    rationale: str
    needs_triage: bool
    status: str  # pending | decided
    parsed: dict
    classification: dict
    candidates: list[dict] = field(default_factory=list)
    cited_title_tokens: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "citation_key": self.citation_key,
            "paper_id": self.paper_id,
            "index": self.index,
            "raw_text": self.raw_text,
            "severity": self.severity.label,
            "rationale": self.rationale,
            "status": self.status,
            "parsed": self.parsed,
            "classification": self.classification,
            "candidates": self.candidates,
            "cited_title_tokens": self.cited_title_tokens,
        }


def parse_citation_key(key: str) -> tuple[str, int]:
    paper_id, _, index = key.rpartition(":")
    if not paper_id or not index.isdigit():
        raise UnknownCitation(f"malformed citation key {key!r}")
    return paper_id, int(index)


class RunStore:
    """One run directory. Reads tolerate concurrent verdict appends."""

    def __init__(self, run_dir: str | Path, clock: Clock | None = None):
        self.run_dir = Path(run_dir)
        self.clock = clock or SystemClock()

    @property
    def run_id(self) -> str:
        return self.run_dir.name

    def _check_exists(self):
        if not self.run_dir.is_dir() or not (self.run_dir / "run.json").exists():
            raise StaleRun(f"run directory {self.run_dir} is missing")

    # -- written by the pipeline -------------------------------------------

    def initialize(self, config_snapshot: dict) -> None:
        (self.run_dir / "papers").mkdir(parents=True, exist_ok=True)
        (self.run_dir / "reports").mkdir(parents=True, exist_ok=True)
        (self.run_dir / "config.json").write_bytes(canonical_json_bytes(config_snapshot))
        log = self.run_dir / "verdicts.ndjson"
        if not log.exists():
            log.touch()

    def write_summary(self, summary: dict) -> None:
        (self.run_dir / "run.json").write_bytes(canonical_json_bytes(summary))

    def write_machine_report(self, report: PaperReport, candidates: dict[int, list[dict]]) -> None:
        papers = self.run_dir / "papers"
        (papers / f"{report.paper_id}.json").write_bytes(render_report(report, "json"))
        (papers / f"{report.paper_id}.candidates.json").write_bytes(
            canonical_json_bytes({str(k): v for k, v in candidates.items()})
        )

    # -- read side -----------------------------------------------------------

    def summary(self) -> dict:
        self._check_exists()
        return json.loads((self.run_dir / "run.json").read_bytes())

    def paper_ids(self) -> list[str]:
        return self.summary().get("papers", [])

    def load_machine_report(self, paper_id: str) -> PaperReport:
        path = self.run_dir / "papers" / f"{paper_id}.json"
        if not path.exists():
            raise UnknownCitation(f"no paper {paper_id!r} in run {self.run_id}")
        return paper_report_from_json(json.loads(path.read_bytes()))

    def load_candidates(self, paper_id: str) -> dict[int, list[dict]]:
        path = self.run_dir / "papers" / f"{paper_id}.candidates.json"
        if not path.exists():
            return {}
        raw = json.loads(path.read_bytes())
        return {int(k): v for k, v in raw.items()}

    # -- verdicts -------------------------------------------------------------

    def load_verdicts(self) -> list[Verdict]:
        self._check_exists()
        log = self.run_dir / "verdicts.ndjson"
        verdicts = []
        if log.exists():
            for line in log.read_text("utf-8").splitlines():
                if not line.strip():
                    continue
                data = json.loads(line)
                verdicts.append(
                    Verdict(
                        paper_id=data["paper_id"],
                        index=data["index"],
                        decided_severity=Severity.from_label(data["decided_severity"]),
                        reviewer=data["reviewer"],
                        note=data.get("note", ""),
                        evidence_url=data.get("evidence_url"),
                        decided_at=data["decided_at"],
                    )
                )
        return verdicts

    def record_verdict(self, verdict: Verdict) -> Verdict:
        """Append to the verdict log; prior entries are never rewritten."""
        self._check_exists()
        known = {
            (record.entry.paper_id, record.entry.index)
            for paper_id in self.paper_ids()
            for record in self.load_machine_report(paper_id).citations
        }
        if verdict.citation_key not in known:
            raise UnknownCitation(
                f"citation {verdict.paper_id}:{verdict.index} not in run {self.run_id}"
            )
        if verdict.decided_at == 0.0:
            verdict = Verdict(
                paper_id=verdict.paper_id,
                index=verdict.index,
                decided_severity=verdict.decided_severity,
                reviewer=verdict.reviewer,
                note=verdict.note,
                evidence_url=verdict.evidence_url,
                decided_at=self.clock.now(),
            )
        line = canonical_json_bytes(
            {
                "paper_id": verdict.paper_id,
                "index": verdict.index,
                "decided_severity": verdict.decided_severity.label,
                "reviewer": verdict.reviewer,
                "note": verdict.note,
                "evidence_url": verdict.evidence_url,
                "decided_at": verdict.decided_at,
            }
        )
        with open(self.run_dir / "verdicts.ndjson", "ab") as handle:
            handle.write(line)
        return verdict

    # -- effective views ------------------------------------------------------

    def effective_report(self, paper_id: str) -> PaperReport:
        machine = self.load_machine_report(paper_id)
        verdicts = [v for v in self.load_verdicts() if v.paper_id == paper_id]
        return build_paper_report(
            paper_id,
            [(r.entry, r.parsed, r.classification) for r in machine.citations],
            verdicts,
        )

    def triage_items(
        self,
        severity: Severity | None = None,
        paper: str | None = None,
        status: str = "pending",
    ) -> list[TriageItem]:
        """Flagged citations, most severe first; pending means no verdict yet."""
        decided = effective_verdicts(self.load_verdicts())
        items = []
        for paper_id in self.paper_ids():
            if paper is not None and paper_id != paper:
                continue
            machine = self.load_machine_report(paper_id)
            candidates = self.load_candidates(paper_id)
            for record in machine.citations:
                if not record.classification.needs_triage:
                    continue
                key = (paper_id, record.entry.index)
                item_status = "decided" if key in decided else "pending"
                if status != "all" and item_status != status:
                    continue
                if severity is not None and record.classification.severity is not severity:
                    continue
                payload = citation_to_json(record)
                title = record.parsed.title
                items.append(
                    TriageItem(
                        citation_key=f"{paper_id}:{record.entry.index}",
                        paper_id=paper_id,
                        index=record.entry.index,
                        raw_text=record.entry.raw_text,
                        severity=record.classification.severity,
                        rationale=record.classification.rationale,
                        needs_triage=True,
                        status=item_status,
                        parsed=payload["parsed"],
                        classification=payload["classification"],
                        candidates=candidates.get(record.entry.index, []),
                        cited_title_tokens=normalize_title(title).split() if title else [],
                    )
                )
        items.sort(key=lambda item: (-item.severity, item.paper_id, item.index))
        return items


def list_runs(runs_root: str | Path) -> list[str]:
    root = Path(runs_root)
    if not root.is_dir():
        return []
    return sorted(
        child.name for child in root.iterdir() if (child / "run.json").exists()
    )


def open_run(runs_root: str | Path, run_id: str) -> RunStore:
    run_dir = Path(runs_root) / run_id
    if not (run_dir / "run.json").exists():
        raise UnknownRun(f"no run {run_id!r} under {runs_root}")
    return RunStore(run_dir)
