"""Command-line interface: index, search, summarize, serve."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .errors import CompsumError
from .pipeline import derive_doc_id, index_document, load_checked
from .dom import load_document
from .search import search as run_search
from .store import DocumentStore
from .summarize import (
    FeatureQuery,
    WeightParams,
    comparative_to_dict,
    compose_comparative,
    extract_summary,
    render_comparative_html,
)


def _store_dir(value: str | None) -> Path:
    return Path(value or os.environ.get("STORE_DIR", "store"))


def _cmd_index(args: argparse.Namespace) -> int:
    store = DocumentStore(_store_dir(args.store))
    if args.doc_id and len(args.sources) > 1:
        raise CompsumError("--doc-id only applies to a single source")
    seen: set[str] = set()
    fetched_any = False
    for source in args.sources:
        doc_id = args.doc_id or derive_doc_id(source)
        while doc_id in seen:
            doc_id += "-2"
        seen.add(doc_id)
        is_url = source.startswith(("http://", "https://"))
        if is_url and fetched_any and args.delay > 0:
            time.sleep(args.delay)
        raw = load_document(source, doc_id, timeout=args.timeout)
        fetched_any = fetched_any or is_url
        record = index_document(raw, alpha=args.alpha)
        store.store_document(record)
        print(record.doc_id)
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    store = DocumentStore(_store_dir(args.store))
    results = run_search(store, args.query, args.limit)
    for r in results:
        print(f"{r.doc_id}\t{r.score:.4f}\t{r.title}\t{r.snippet}")
    return 0


def _load_synonyms(path: str | None) -> dict[str, list[str]] | None:
    if not path:
        return None
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return {str(k): [str(v) for v in vals] for k, vals in data.items()}


def _cmd_summarize(args: argparse.Namespace) -> int:
    store = DocumentStore(_store_dir(args.store))
    doc_ids = [d.strip() for d in args.docs.split(",") if d.strip()]
    if not doc_ids:
        raise CompsumError("--docs must name at least one document")
    features = [f.strip() for f in args.features.split(",") if f.strip()]
    if not features:
        raise CompsumError("--features must name at least one feature keyword")

    if args.sentences is not None:
        params = WeightParams(
            gamma=args.gamma, alpha_tag=args.alpha_tag, beta_loc=args.beta_loc,
            max_sentences=args.sentences,
        )
    else:
        params = WeightParams(
            gamma=args.gamma, alpha_tag=args.alpha_tag, beta_loc=args.beta_loc,
            ratio=args.ratio,
        )
    fq = FeatureQuery.from_raw(args.query, features, _load_synonyms(args.synonyms))
    summaries = [
        extract_summary(load_checked(store, doc_id), fq, params) for doc_id in doc_ids
    ]
    comparative = compose_comparative(summaries, fq)
    if args.format == "json":
        output = json.dumps(
            comparative_to_dict(comparative), ensure_ascii=False, separators=(",", ":")
        )
    else:
        output = render_comparative_html(comparative)
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        print(output)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(_store_dir(args.store), args.ui_dir)
    port = args.port or int(os.environ.get("PORT", "8000"))
    uvicorn.run(app, host=args.host, port=port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compsum",
        description="Comparative summaries of web pages from concept-block segmentation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="ingest, segment, and store documents")
    p_index.add_argument("sources", nargs="+", help="HTML file paths or http(s) URLs")
    p_index.add_argument("--store", help="store directory (default $STORE_DIR or ./store)")
    p_index.add_argument("--alpha", type=float, default=0.6,
                         help="topic-block merge threshold (default 0.6)")
    p_index.add_argument("--doc-id", help="explicit doc id (single source only)")
    p_index.add_argument("--timeout", type=float, default=10.0, help="fetch timeout seconds")
    p_index.add_argument("--delay", type=float, default=0.0,
                         help="politeness delay in seconds between URL fetches")
    p_index.set_defaults(func=_cmd_index)

    p_search = sub.add_parser("search", help="keyword search over the store")
    p_search.add_argument("query")
    p_search.add_argument("--store")
    p_search.add_argument("--limit", type=int, default=10)
    p_search.set_defaults(func=_cmd_search)

    p_sum = sub.add_parser("summarize", help="comparative summary for selected documents")
    p_sum.add_argument("--store")
    p_sum.add_argument("--docs", required=True, help="comma-separated doc ids, column order")
    p_sum.add_argument("--query", default="", help="generic query string")
    p_sum.add_argument("--features", required=True, help="comma-separated feature keywords")
    p_sum.add_argument("--sentences", type=int, default=None, help="sentence budget per document")
    p_sum.add_argument("--ratio", type=float, default=0.3,
                       help="fraction of block sentences to keep (used when --sentences unset)")
    p_sum.add_argument("--gamma", type=float, default=0.5)
    p_sum.add_argument("--alpha-tag", dest="alpha_tag", type=float, default=1.0)
    p_sum.add_argument("--beta-loc", dest="beta_loc", type=float, default=1.0)
    p_sum.add_argument("--synonyms", help="JSON file mapping term -> [equivalents]")
    p_sum.add_argument("--format", choices=("html", "json"), default="html")
    p_sum.add_argument("--out", help="write output to a file instead of stdout")
    p_sum.set_defaults(func=_cmd_summarize)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--store")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--ui-dir", help="directory of built UI assets")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CompsumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
