"""Pipeline orchestration, run state, and the local triage HTTP API."""

from .pipeline import RunConfig, RunResult, process_paper, run_pipeline
from .runstore import TRIAGE_RUBRIC, RunStore, TriageItem, list_runs, open_run

__all__ = [
    "TRIAGE_RUBRIC",
    "RunConfig",
    "RunResult",
    "RunStore",
    "TriageItem",
    "list_runs",
    "open_run",
    "process_paper",
    "run_pipeline",
]
