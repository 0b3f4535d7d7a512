"""HTTP JSON API over a search index.

GET /api/health            liveness plus document count
GET /api/search            q (required), level, offset, limit, explain
GET /api/document/{id}     stored metadata; add ?q= for a score breakdown

A static directory (the browser client build) can be mounted at the
root; the API itself is self-contained JSON.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from .index import Searcher
from .ontology import QueryError
from .scoring import RelevanceLevel, score_breakdown

_LEVEL_PARAM = {
    "high": RelevanceLevel.HIGH,
    "medium": RelevanceLevel.MEDIUM,
    "low": RelevanceLevel.LOW,
}


def create_app(searcher: Searcher, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="fuzzyrank", docs_url=None, redoc_url=None)

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "docs": len(searcher.index.doc_meta)}

    @app.get("/api/search")
    def search(
        q: str | None = None,
        level: str | None = None,
        offset: int = 0,
        limit: int = 20,
        explain: bool = False,
    ) -> dict:
        if not q or not q.strip():
            raise HTTPException(status_code=400, detail="missing query parameter q")
        if level is not None and level not in _LEVEL_PARAM:
            raise HTTPException(
                status_code=400,
                detail=f"level must be one of {sorted(_LEVEL_PARAM)}",
            )
        if offset < 0 or limit < 1:
            raise HTTPException(status_code=400, detail="bad offset or limit")
        try:
            all_results = searcher.search(q, explain=explain)
        except QueryError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        # level_counts reports the query's full distribution; the level
        # filter and pagination narrow only the returned page.
        level_counts = {name: 0 for name in _LEVEL_PARAM}
        for r in all_results:
            level_counts[r.level.name.lower()] += 1
        wanted = _LEVEL_PARAM.get(level or "")
        results = [r for r in all_results if wanted is None or r.level is wanted]
        entries = []
        for r in results[offset : offset + limit]:
            entry = r.to_dict()
            entry["level_label"] = entry.pop("label")
            entry["score"] = entry.pop("total")
            entries.append(entry)
        return {
            "query": q,
            "total_hits": len(results),
            "offset": offset,
            "limit": limit,
            "level_counts": level_counts,
            "results": entries,
        }

    @app.get("/api/document/{doc_id}")
    def document(doc_id: str, q: str | None = None) -> dict:
        meta = searcher.index.doc_meta.get(doc_id)
        if meta is None:
            raise HTTPException(status_code=404, detail=f"no document {doc_id!r}")
        out = {
            "doc_id": doc_id,
            "title": meta.title,
            "date": meta.date,
            "abstract": meta.abstract,
            "n_tokens": meta.n_tokens,
        }
        if q:
            try:
                profile = searcher.document_profile(q, doc_id)
            except QueryError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            out["breakdown"] = score_breakdown(profile, searcher.index.config.scoring)
        return out

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")
    return app
