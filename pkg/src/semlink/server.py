"""HTTP service over a store snapshot.

Every request reads one immutable Snapshot; POST /api/reload rebuilds it
from disk and swaps the reference, so concurrent requests see either the
old or the new store, never a blend.  Context selection happens per
request via repeatable ?context= parameters, which is what lets a reader
flip link sets without any server-side session state.
"""

from __future__ import annotations

import threading
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware

from semlink.pipeline import (
    InvalidContext, Snapshot, UnknownContext, UnknownDocument,
    build_snapshot, decorate_document, select_links,
)
from semlink.rdf import ParseError, SemlinkError
from semlink.store import Store

XHTML = "application/xhtml+xml"


class SnapshotHolder:
    def __init__(self, store: Store):
        self.store = store
        self._lock = threading.Lock()
        self._snapshot = build_snapshot(store)

    @property
    def current(self) -> Snapshot:
        return self._snapshot

    def reload(self) -> Snapshot:
        snap = build_snapshot(self.store)
        with self._lock:
            self._snapshot = snap
        return snap


def _guard(fn, *args):
    """Run a pipeline call, translating domain errors to HTTP ones."""
    try:
        return fn(*args)
    except (UnknownDocument, UnknownContext) as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from None
    except (InvalidContext, ParseError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    except SemlinkError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def create_app(store_root) -> FastAPI:
    app = FastAPI(title="semlink", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    holder = SnapshotHolder(Store(store_root))
    app.state.holder = holder

    @app.get("/api/documents")
    def list_documents() -> list[str]:
        return sorted(holder.current.documents)

    @app.get("/api/contexts")
    def list_contexts() -> list[dict]:
        snap = holder.current
        return [
            {
                "path": path,
                "creator": ctx.creator,
                "title": ctx.title,
                "description": ctx.description,
            }
            for path, ctx in sorted(snap.contexts.items())
        ]

    @app.get("/api/documents/{path:path}")
    def get_document(path: str,
                     context: list[str] = Query(default=[])) -> Response:
        body = _guard(decorate_document, holder.current, path, context)
        return Response(content=body, media_type=XHTML)

    @app.get("/api/links/{path:path}")
    def get_links(path: str,
                  document: Optional[str] = None,
                  context: list[str] = Query(default=[])) -> list[dict]:
        doc_path = document if document is not None else path
        selected = _guard(select_links, holder.current, doc_path, context)
        return [
            {
                "link": sel.link.value,
                "source": sel.inner.object.value,
                "target": sel.inner.subject.value,
                "arcrole": sel.inner.predicate.value,
                "title": sel.title,
            }
            for sel in selected
        ]

    @app.post("/api/reload")
    def reload() -> dict:
        snap = holder.reload()
        return {
            "documents": len(snap.documents),
            "metadata": len(snap.metadata),
            "linkbases": len(snap.linkbases),
            "contexts": len(snap.contexts),
            "errors": len(snap.errors),
        }

    return app
