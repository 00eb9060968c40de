"""Human validation of auto-generated annotations, with XML export."""

from .store import (
    Action,
    AnnotationRecord,
    AnnotationStore,
    CandidateState,
    DecisionEvent,
    DocumentRecord,
    SpanState,
)
from .xml_io import (
    ExportedDocument,
    ExportedSpan,
    export_document,
    parse_export,
    reserialize,
    strip_terms,
)

__all__ = [
    "Action",
    "AnnotationRecord",
    "AnnotationStore",
    "CandidateState",
    "DecisionEvent",
    "DocumentRecord",
    "SpanState",
    "ExportedDocument",
    "ExportedSpan",
    "export_document",
    "parse_export",
    "reserialize",
    "strip_terms",
    "create_app",
]


def create_app(store: AnnotationStore):
    """Deferred import so the core package works without FastAPI installed."""
    from .app import create_app as _create_app

    return _create_app(store)
