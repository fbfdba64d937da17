"""Command-line interface: run, triage, report, cache."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .classify import Severity, Thresholds
from .errors import CitecheckError, UsageError
from .identifiers import DEFAULT_LLM_MARKERS
from .service.pipeline import RunConfig, run_pipeline
from .service.runstore import RunStore
from .sources import ResponseCache, SearchPlan


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CitecheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="citecheck")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="verify the citations of one or more papers")
    run.add_argument("--input", action="append", required=True,
                     help="paper file (.pdf/.txt) or directory; repeatable")
    run.add_argument("--out", required=True, help="run directory to create/update")
    run.add_argument("--offline", action="store_true",
                     help="never open a network connection; serve from cache only")
    run.add_argument("--cache-dir", default=None,
                     help="response cache directory (env CITECHECK_CACHE_DIR)")
    run.add_argument("--config", default=None, help="JSON config file with defaults")
    run.add_argument("--contact", default=None,
                     help="contact email/URL sent to the public APIs (env CITECHECK_CONTACT)")
    run.add_argument("--corpus-id", default=None)
    run.add_argument("--anonymize-salt", default=None)
    run.add_argument("--plan", default=None,
                     help="comma-separated source subset, e.g. crossref,dblp,arxiv")
    run.add_argument("--grammar-file", default=None,
                     help="override the shipped reference-format pattern file")
    run.add_argument("--minor-threshold", type=float, default=None)
    run.add_argument("--rephrase-threshold", type=float, default=None)
    run.add_argument("--max-results", type=int, default=None)
    run.add_argument("--rate", type=float, default=None, help="requests per second per source")
    run.add_argument("--workers", type=int, default=None)
    run.add_argument("--refresh", action="store_true", help="bypass cached responses")
    run.add_argument("--debug", action="store_true",
                     help="write per-entry intermediate records under the run dir")
    run.set_defaults(handler=cmd_run)

    triage = sub.add_parser("triage", help="human validation loop")
    triage_sub = triage.add_subparsers(dest="triage_command", required=True)
    serve = triage_sub.add_parser("serve", help="serve the triage API (and UI bundle if built)")
    serve.add_argument("--run", required=True, help="run directory")
    serve.add_argument("--port", type=int, default=8737)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--token", default=None, help="require this bearer token")
    serve.set_defaults(handler=cmd_triage_serve)
    listing = triage_sub.add_parser("list", help="list pending triage items")
    listing.add_argument("--run", required=True)
    listing.add_argument("--severity", default=None)
    listing.add_argument("--status", default="pending", choices=["pending", "decided", "all"])
    listing.set_defaults(handler=cmd_triage_list)

    report = sub.add_parser("report", help="render a report with verdicts applied")
    report.add_argument("--run", required=True)
    report.add_argument("--scope", default="corpus", choices=["paper", "corpus"])
    report.add_argument("--paper", default=None)
    report.add_argument("--format", default="json", choices=["json", "csv", "text"])
    report.set_defaults(handler=cmd_report)

    cache = sub.add_parser("cache", help="inspect or evict cached API responses")
    cache_sub = cache.add_subparsers(dest="cache_command", required=True)
    inspect = cache_sub.add_parser("inspect")
    inspect.add_argument("--cache-dir", required=True)
    inspect.set_defaults(handler=cmd_cache_inspect)
    evict = cache_sub.add_parser("evict")
    evict.add_argument("--cache-dir", required=True)
    evict.add_argument("--key", default=None, help="digest of one entry")
    evict.add_argument("--expired", action="store_true", help="only expired entries")
    evict.set_defaults(handler=cmd_cache_evict)

    return parser


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    return json.loads(Path(path).read_text("utf-8"))


def cmd_run(args) -> int:
    file_config = _load_config_file(args.config)

    def pick(cli_value, key, default):
        if cli_value is not None:
            return cli_value
        return file_config.get(key, default)

    thresholds = Thresholds(
        minor=pick(args.minor_threshold, "minor_threshold", 0.90),
        rephrase=pick(args.rephrase_threshold, "rephrase_threshold", 0.60),
    )
    plan_names = pick(args.plan, "plan", None)
    plan = SearchPlan.from_names(plan_names) if isinstance(plan_names, str) else (
        SearchPlan(tuple(plan_names)) if plan_names else SearchPlan()
    )
    config = RunConfig(
        input_paths=tuple(Path(p) for p in args.input),
        out_dir=Path(args.out),
        offline=args.offline or file_config.get("offline", False),
        cache_dir=_opt_path(pick(args.cache_dir, "cache_dir", os.environ.get("CITECHECK_CACHE_DIR"))),
        contact=pick(args.contact, "contact", os.environ.get("CITECHECK_CONTACT")),
        plan=plan,
        thresholds=thresholds,
        corpus_id=pick(args.corpus_id, "corpus_id", None),
        anonymize_salt=pick(args.anonymize_salt, "anonymize_salt", None),
        refresh=args.refresh,
        grammar_file=_opt_path(pick(args.grammar_file, "grammar_file", None)),
        max_results=pick(args.max_results, "max_results", 5),
        rate_per_second=pick(args.rate, "rate_per_second", 1.0),
        workers=pick(args.workers, "workers", 1),
        debug=args.debug,
        llm_markers=tuple(file_config.get("llm_markers", DEFAULT_LLM_MARKERS)),
    )
    result = run_pipeline(config)
    print(f"run complete: {len(result.reports)} paper(s) -> {result.run_dir}")
    for stats in result.corpora:
        print(
            f"  {stats.corpus_id}: {stats.paper_count} papers, "
            f"{stats.fraction_with_issue:.1%} with rephrased-or-worse citations"
        )
    if result.errors:
        print(f"  quarantined failures: {len(result.errors)} (see run.json)")
    pending = RunStore(result.run_dir).triage_items()
    if pending:
        print(f"  {len(pending)} citation(s) awaiting triage "
              f"(citecheck triage serve --run {result.run_dir})")
    return 0


def _opt_path(value) -> Path | None:
    return Path(value) if value else None


def cmd_triage_serve(args) -> int:
    from .service.api import serve

    run_dir = Path(args.run)
    if not (run_dir / "run.json").exists():
        raise UsageError(f"{run_dir} is not a run directory")
    serve(run_dir.parent, host=args.host, port=args.port, token=args.token)
    return 0


def cmd_triage_list(args) -> int:
    store = RunStore(Path(args.run))
    severity = Severity.from_label(args.severity) if args.severity else None
    items = store.triage_items(severity=severity, status=args.status)
    for item in items:
        print(f"{item.citation_key}\t{item.severity.label}\t{item.status}\t{item.rationale}")
    print(f"{len(items)} item(s)")
    return 0


def cmd_report(args) -> int:
    from .report import aggregate_corpus, render_report

    store = RunStore(Path(args.run))
    if args.scope == "paper":
        if not args.paper:
            raise UsageError("--scope paper requires --paper <id>")
        body = render_report(store.effective_report(args.paper), args.format)
    else:
        reports = [store.effective_report(pid) for pid in store.paper_ids()]
        if not reports:
            raise UsageError("run has no papers")
        corpus_id = store.summary().get("corpora", ["corpus"])[0]
        body = render_report(aggregate_corpus(reports, corpus_id), args.format)
    sys.stdout.buffer.write(body)
    return 0


def cmd_cache_inspect(args) -> int:
    cache = ResponseCache(args.cache_dir)
    entries = cache.entries()
    for info in entries:
        state = "expired" if info.expired else "fresh"
        print(f"{info.digest[:16]}  {info.source:12s} {state:8s} {info.size:8d}B  {info.query}")
    print(f"{len(entries)} entr(ies)")
    return 0


def cmd_cache_evict(args) -> int:
    cache = ResponseCache(args.cache_dir)
    removed = cache.evict(digest=args.key, expired_only=args.expired)
    print(f"evicted {removed} entr(ies)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
