"""HTTP service exposing documents, search, and comparative summaries.

Endpoints:
    GET  /api/documents   -> indexed documents
    POST /api/search      -> {"query": ..., "limit": ...}
    POST /api/summarize   -> SummarizeRequest body; JSON or HTML response
    GET  /ui/*            -> static UI assets (when a UI build is present)

Responses are rendered to bytes with fixed JSON options, so identical
requests over an unchanged store produce byte-identical bodies.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import HTMLResponse, RedirectResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import DocumentNotFoundError, EmptyQueryError
from .pipeline import load_checked
from .search import SearchIndex
from .store import DocumentStore
from .summarize import (
    ComparativeSummary,
    FeatureQuery,
    WeightParams,
    comparative_to_dict,
    compose_comparative,
    extract_summary,
    render_comparative_html,
)


class SearchBody(BaseModel):
    query: str = ""
    limit: int = 10


class SummarizeBody(BaseModel):
    doc_ids: list[str] = []
    query: str = ""
    features: list[str] = []
    max_sentences: int | None = None
    ratio: float | None = None
    gamma: float = 0.5
    alpha_tag: float = 1.0
    beta_loc: float = 1.0
    synonyms: dict[str, list[str]] | None = None


def _json_response(data) -> Response:
    body = json.dumps(data, ensure_ascii=False, separators=(",", ":")).encode("utf-8")
    return Response(content=body, media_type="application/json")


def _summarize(store: DocumentStore, body: SummarizeBody) -> ComparativeSummary:
    if not body.doc_ids:
        raise HTTPException(status_code=400, detail="doc_ids must be non-empty")
    if not [f for f in body.features if f.strip()]:
        raise HTTPException(status_code=400, detail="features must be non-empty")
    try:
        params = WeightParams(
            gamma=body.gamma,
            alpha_tag=body.alpha_tag,
            beta_loc=body.beta_loc,
            max_sentences=body.max_sentences,
            ratio=body.ratio if body.max_sentences is None else None,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    fq = FeatureQuery.from_raw(body.query, body.features, body.synonyms)
    summaries = []
    for doc_id in body.doc_ids:
        try:
            record = load_checked(store, doc_id)
        except DocumentNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        summaries.append(extract_summary(record, fq, params))
    return compose_comparative(summaries, fq)


def create_app(store_dir: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    store = DocumentStore(store_dir)
    app = FastAPI(title="compsum", docs_url=None, redoc_url=None)
    state = {"index": None}

    def search_index() -> SearchIndex:
        if state["index"] is None:
            state["index"] = SearchIndex.from_store(store)
        return state["index"]

    @app.get("/api/documents")
    def api_documents() -> Response:
        docs = [
            {"doc_id": d, "source": s, "title": t, "indexed_at": ts}
            for d, s, t, ts in store.list_documents()
        ]
        return _json_response(docs)

    @app.post("/api/search")
    def api_search(body: SearchBody) -> Response:
        try:
            results = search_index().search(body.query, body.limit)
        except (EmptyQueryError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return _json_response(
            [
                {
                    "doc_id": r.doc_id,
                    "source": r.source,
                    "title": r.title,
                    "score": r.score,
                    "snippet": r.snippet,
                }
                for r in results
            ]
        )

    @app.post("/api/summarize")
    def api_summarize(body: SummarizeBody, request: Request) -> Response:
        summary = _summarize(store, body)
        fmt = request.query_params.get("format")
        if fmt is None:
            accept = request.headers.get("accept", "")
            fmt = "html" if "text/html" in accept and "application/json" not in accept else "json"
        if fmt == "html":
            return HTMLResponse(content=render_comparative_html(summary))
        if fmt != "json":
            raise HTTPException(status_code=400, detail=f"unknown format: {fmt}")
        return _json_response(comparative_to_dict(summary))

    ui_path = Path(ui_dir) if ui_dir else Path(os.environ.get("UI_DIR", "frontend/dist"))
    if ui_path.is_dir():
        app.mount("/ui", StaticFiles(directory=ui_path, html=True), name="ui")

        @app.get("/")
        def root() -> RedirectResponse:
            return RedirectResponse(url="/ui/")

    return app
