"""Command line entry points: batch extract, corpus eval, serve, CSV export."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from .config import load_config
from .errors import CorpusInvalid, DasToolError
from .evaluation import evaluate
from .extraction import extract
from .ingest import InputDescriptor, load_document

_EXTENSION_FORMATS = {".txt": "plain_text", ".json": "sectioned", ".pdf": "pdf"}


def _collect_paths(paths: list[str]) -> list[Path]:
    collected: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            for child in path.rglob("*"):
                if not child.is_file():
                    continue
                if child.name.endswith(".gold.json"):
                    continue
                if child.suffix.lower() in _EXTENSION_FORMATS:
                    collected.append(child)
        else:
            collected.append(path)
    return sorted(set(collected), key=str)


def _format_for(path: Path, forced: Optional[str]) -> str:
    if forced:
        return {"plain": "plain_text"}.get(forced, forced)
    return _EXTENSION_FORMATS.get(path.suffix.lower(), "plain_text")


def _extract_one(job: tuple[str, str, object, Optional[str]]) -> tuple[str, Optional[str], Optional[str]]:
    path_str, fmt, config_source, converter = job
    try:
        config = load_config(config_source)
        data = Path(path_str).read_bytes()
        document = load_document(
            InputDescriptor(format=fmt, data=data, metadata={"origin": path_str}),
            heading_lexicon=config.heading_lexicon,
            pdf_converter=converter,
        )
        return path_str, extract(document, config).to_json(), None
    except (DasToolError, OSError) as exc:
        return path_str, None, f"{type(exc).__name__}: {exc}"


def cmd_extract(args: argparse.Namespace) -> int:
    try:
        load_config(args.config or "builtin")  # fail fast on a broken config
    except DasToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    paths = _collect_paths(args.paths)
    jobs = [
        (str(p), _format_for(p, args.format), args.config or "builtin", args.pdf_converter)
        for p in paths
    ]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_extract_one, jobs))
    else:
        results = [_extract_one(job) for job in jobs]

    lines = []
    errors = []
    for path_str, line, error in results:
        if error is not None:
            errors.append(f"{path_str}: {error}")
        else:
            lines.append(line)
    payload = "".join(line + "\n" for line in lines)
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    for error in errors:
        print(f"error: {error}", file=sys.stderr)
    return 1 if errors else 0


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config or "builtin")
        report = evaluate(args.corpus_dir, config)
    except (CorpusInvalid, DasToolError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.format_table())
    out = Path(args.output or "eval_report.json")
    out.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
    print(f"report written to {out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    host, _, port_str = args.addr.rpartition(":")
    host = host or "127.0.0.1"
    try:
        port = int(port_str)
    except ValueError:
        print(f"error: bad address {args.addr!r}, expected host:port", file=sys.stderr)
        return 2
    try:
        app = create_app(
            store_path=args.store,
            config_source=args.config or "builtin",
            pdf_converter=args.pdf_converter,
            static_dir=args.static,
        )
    except DasToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: server failed to start: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    import httpx

    params = {
        key: value
        for key, value in (
            ("category", args.category),
            ("decision", args.decision),
            ("min_confidence", args.min_confidence),
            ("document_id", args.document_id),
        )
        if value is not None
    }
    url = args.url.rstrip("/") + "/v1/export.csv"
    try:
        response = httpx.get(url, params=params, timeout=60)
    except httpx.HTTPError as exc:
        print(f"error: request failed: {exc}", file=sys.stderr)
        return 1
    if response.status_code != 200:
        print(f"error: server returned {response.status_code}: {response.text}", file=sys.stderr)
        return 1
    if args.output:
        Path(args.output).write_bytes(response.content)
    else:
        sys.stdout.write(response.text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dastool",
        description="Detect, classify, and curate data access statements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract statements from files or directories")
    p_extract.add_argument("paths", nargs="+", help="input files or directories")
    p_extract.add_argument("--config", help="config JSON path (default: builtin)")
    p_extract.add_argument("--format", choices=["plain", "plain_text", "sectioned", "pdf"],
                           help="force input format (default: by file extension)")
    p_extract.add_argument("--output", help="write JSONL here instead of stdout")
    p_extract.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_extract.add_argument("--pdf-converter",
                           help="PDF converter command template, e.g. 'pdftotext {path} -'")
    p_extract.set_defaults(func=cmd_extract)

    p_eval = sub.add_parser("eval", help="score the pipeline against a labeled corpus")
    p_eval.add_argument("corpus_dir", help="directory of <name>.txt + <name>.gold.json pairs")
    p_eval.add_argument("--config", help="config JSON path (default: builtin)")
    p_eval.add_argument("--output", help="machine-readable report path (default: eval_report.json)")
    p_eval.set_defaults(func=cmd_eval)

    p_serve = sub.add_parser("serve", help="run the curation HTTP service")
    p_serve.add_argument("--addr", default="127.0.0.1:8000", help="listen address host:port")
    p_serve.add_argument("--store", default="dastool.db", help="sqlite store path")
    p_serve.add_argument("--config", help="config JSON path (default: builtin)")
    p_serve.add_argument("--pdf-converter", help="PDF converter command template")
    p_serve.add_argument("--static", help="directory of dashboard assets to serve at /")
    p_serve.set_defaults(func=cmd_serve)

    p_export = sub.add_parser("export", help="download the CSV export from a running service")
    p_export.add_argument("--url", default="http://127.0.0.1:8000", help="service base URL")
    p_export.add_argument("--category")
    p_export.add_argument("--decision")
    p_export.add_argument("--min-confidence", dest="min_confidence")
    p_export.add_argument("--document-id", dest="document_id")
    p_export.add_argument("--output", help="write CSV here instead of stdout")
    p_export.set_defaults(func=cmd_export)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
