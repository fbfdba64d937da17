"""Local HTTP API for the triage UI.

Loopback-first and unauthenticated by default; pass a shared token to require
an Authorization header for team triage setups. All payloads use the same
canonical JSON schema as the report module.
"""

from __future__ import annotations

import logging
from pathlib import Path

from fastapi import Depends, FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..classify import Severity, normalize_title
from ..errors import StaleRun, UnknownCitation, UnknownRun, UsageError
from ..report import Verdict, citation_to_json, paper_report_to_json, render_report
from .runstore import TRIAGE_RUBRIC, RunStore, list_runs, open_run, parse_citation_key

logger = logging.getLogger(__name__)

MEDIA_TYPES = {"json": "application/json", "csv": "text/csv", "text": "text/plain"}


class VerdictPayload(BaseModel):
    paper_id: str
    index: int
    decided_severity: str
    reviewer: str
    note: str = ""
    evidence_url: str | None = None


def create_app(runs_root: str | Path, token: str | None = None) -> FastAPI:
    runs_root = Path(runs_root)
    app = FastAPI(title="citecheck triage service", version="0.1.0")

    def check_token(request: Request):
        if token and request.headers.get("authorization") != f"Bearer {token}":
            raise HTTPException(status_code=401, detail="missing or wrong token")

    def get_store(run_id: str) -> RunStore:
        try:
            return open_run(runs_root, run_id)
        except UnknownRun as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.exception_handler(StaleRun)
    async def stale_run_handler(request, exc):
        return JSONResponse(status_code=410, content={"detail": str(exc)})

    @app.get("/runs")
    def runs(_: None = Depends(check_token)):
        return {"runs": list_runs(runs_root)}

    @app.get("/runs/{run_id}/triage")
    def triage(
        run_id: str,
        severity: str | None = Query(default=None),
        paper: str | None = Query(default=None),
        status: str = Query(default="pending"),
        _: None = Depends(check_token),
    ):
        store = get_store(run_id)
        severity_filter = None
        if severity is not None:
            try:
                severity_filter = Severity.from_label(severity)
            except KeyError:
                raise HTTPException(status_code=422, detail=f"unknown severity {severity!r}")
        if status not in ("pending", "decided", "all"):
            raise HTTPException(status_code=422, detail=f"unknown status {status!r}")
        items = store.triage_items(severity=severity_filter, paper=paper, status=status)
        return {
            "run_id": run_id,
            "pending": sum(1 for i in items if i.status == "pending"),
            "rubric": list(TRIAGE_RUBRIC),
            "items": [item.to_json() for item in items],
        }

    @app.post("/runs/{run_id}/verdicts")
    def post_verdict(run_id: str, payload: VerdictPayload, _: None = Depends(check_token)):
        store = get_store(run_id)
        try:
            severity = Severity.from_label(payload.decided_severity)
        except KeyError:
            raise HTTPException(
                status_code=422, detail=f"unknown severity {payload.decided_severity!r}"
            )
        verdict = Verdict(
            paper_id=payload.paper_id,
            index=payload.index,
            decided_severity=severity,
            reviewer=payload.reviewer,
            note=payload.note,
            evidence_url=payload.evidence_url,
        )
        try:
            recorded = store.record_verdict(verdict)
        except UnknownCitation as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        remaining = sum(1 for i in store.triage_items() if i.status == "pending")
        return {
            "recorded": True,
            "citation_key": f"{recorded.paper_id}:{recorded.index}",
            "decided_severity": recorded.decided_severity.label,
            "decided_at": recorded.decided_at,
            "pending": remaining,
        }

    @app.get("/runs/{run_id}/report")
    def report(
        run_id: str,
        scope: str = Query(default="corpus"),
        format: str = Query(default="json"),
        paper: str | None = Query(default=None),
        _: None = Depends(check_token),
    ):
        store = get_store(run_id)
        if format not in MEDIA_TYPES:
            raise HTTPException(status_code=422, detail=f"unknown format {format!r}")
        try:
            if scope == "paper":
                if not paper:
                    raise HTTPException(status_code=422, detail="scope=paper needs ?paper=<id>")
                body = render_report(store.effective_report(paper), format)
            elif scope == "corpus":
                from ..report import aggregate_corpus

                reports = [store.effective_report(pid) for pid in store.paper_ids()]
                corpus_id = store.summary().get("corpora", ["corpus"])[0]
                body = render_report(aggregate_corpus(reports, corpus_id), format)
            else:
                raise HTTPException(status_code=422, detail=f"unknown scope {scope!r}")
        except (UnknownCitation, UsageError) as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return Response(content=body, media_type=MEDIA_TYPES[format])

    @app.get("/runs/{run_id}/citations/{key}")
    def citation(run_id: str, key: str, _: None = Depends(check_token)):
        store = get_store(run_id)
        try:
            paper_id, index = parse_citation_key(key)
            machine = store.load_machine_report(paper_id)
        except UnknownCitation as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        record = next((r for r in machine.citations if r.entry.index == index), None)
        if record is None:
            raise HTTPException(status_code=404, detail=f"no citation {key!r}")
        verdicts = [
            {
                "decided_severity": v.decided_severity.label,
                "reviewer": v.reviewer,
                "note": v.note,
                "evidence_url": v.evidence_url,
                "decided_at": v.decided_at,
            }
            for v in store.load_verdicts()
            if v.citation_key == (paper_id, index)
        ]
        payload = citation_to_json(record)
        payload["paper_id"] = paper_id
        payload["citation_key"] = key
        payload["candidates"] = store.load_candidates(paper_id).get(index, [])
        payload["cited_title_tokens"] = (
            normalize_title(record.parsed.title).split() if record.parsed.title else []
        )
        payload["verdict_history"] = verdicts
        payload["rubric"] = list(TRIAGE_RUBRIC)
        return payload

    @app.get("/runs/{run_id}/paper/{paper_id}")
    def paper(run_id: str, paper_id: str, _: None = Depends(check_token)):
        store = get_store(run_id)
        try:
            return paper_report_to_json(store.effective_report(paper_id))
        except UnknownCitation as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    ui_dist = _ui_dist_dir()
    if ui_dist is not None:
        app.mount("/", StaticFiles(directory=ui_dist, html=True), name="ui")

    return app


def _ui_dist_dir() -> Path | None:
    import os

    candidates = []
    env = os.environ.get("CITECHECK_UI_DIST")
    if env:
        candidates.append(Path(env))
    # src/citecheck/service/api.py -> repo root, for source checkouts
    candidates.append(Path(__file__).resolve().parents[3] / "frontend" / "dist")
    candidates.append(Path.cwd() / "frontend" / "dist")
    for candidate in candidates:
        if candidate.is_dir() and (candidate / "index.html").exists():
            return candidate
    return None


def serve(runs_root: str | Path, host: str = "127.0.0.1", port: int = 8737, token: str | None = None):
    import uvicorn

    app = create_app(runs_root, token=token)
    logger.info("serving triage API for %s on http://%s:%d", runs_root, host, port)
    uvicorn.run(app, host=host, port=port)
