"""HTTP front of the annotation store.

JSON in and out except for the XML export endpoint. Domain errors map
onto status codes: validation 400, unknown ids 404, conflicts 409.
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..errors import (
    ConflictError,
    NotFoundError,
    SemLabelError,
    ValidationError,
)
from ..ontology_store import ConceptId
from .store import AnnotationRecord, AnnotationStore, DecisionEvent

__all__ = ["create_app"]


class SubmitRequest(BaseModel):
    text: str
    doc_id: str | None = None
    source: str = ""


class DecisionRequest(BaseModel):
    action: str
    target: str | None = None
    actor: str = ""


def _record_json(record: AnnotationRecord) -> dict:
    occ = record.occurrence
    return {
        "annotation_id": record.annotation_id,
        "doc_id": occ.doc_id,
        "start": occ.start,
        "end": occ.end,
        "surface": occ.surface,
        "normalized_key": occ.normalized_key,
        "candidates": [c.curie for c in occ.candidates],
        "candidate_states": {c.curie: record.candidate_states[c].value for c in occ.candidates},
        "span_state": record.span_state.value,
        "updated_at": record.updated_at,
    }


def _event_json(event: DecisionEvent) -> dict:
    return {
        "event_id": event.event_id,
        "annotation_id": event.annotation_id,
        "action": event.action.value,
        "target": event.target.curie if event.target else None,
        "actor": event.actor,
        "timestamp": event.timestamp,
    }


def create_app(store: AnnotationStore) -> FastAPI:
    app = FastAPI(title="semlabel annotation service", docs_url=None, redoc_url=None)
    # the review UI is served as static files from whatever origin is handy
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(SemLabelError)
    async def _domain_error(request: Request, exc: SemLabelError) -> JSONResponse:
        if isinstance(exc, NotFoundError):
            status = 404
        elif isinstance(exc, ConflictError):
            status = 409
        elif isinstance(exc, ValidationError):
            status = 400
        else:
            status = 500
        return JSONResponse({"error": str(exc)}, status_code=status)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "documents": len(store.doc_ids)}

    @app.post("/documents", status_code=201)
    def submit(req: SubmitRequest) -> dict:
        doc_id, records = store.submit_document(req.text, req.doc_id, req.source)
        return {"doc_id": doc_id, "annotations": [_record_json(r) for r in records]}

    @app.get("/documents/{doc_id}/annotations")
    def annotations(doc_id: str) -> dict:
        records = store.annotations(doc_id)
        doc = store.document(doc_id)
        return {
            "doc_id": doc_id,
            "text": doc.text,
            "source": doc.source,
            "annotations": [_record_json(r) for r in records],
        }

    @app.post("/annotations/{annotation_id}/decision")
    def decide(annotation_id: str, req: DecisionRequest) -> dict:
        target = ConceptId.parse(req.target) if req.target else None
        updated = store.record_decision(annotation_id, req.action, target, req.actor)
        return {"updated": [_record_json(r) for r in updated]}

    @app.get("/documents/{doc_id}/export.xml")
    def export(doc_id: str) -> Response:
        xml = store.export_xml(doc_id)
        return Response(content=xml, media_type="application/xml")

    @app.get("/decisions")
    def decisions(since: str | None = None) -> dict:
        return {"decisions": [_event_json(e) for e in store.decisions(since)]}

    return app
