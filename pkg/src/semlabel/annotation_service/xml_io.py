"""Inline-XML export of validated documents.

Schema: a ``document`` root (attributes ``id``, ``exported_at``) with a
single ``text`` child holding the original text, where each active
annotated span is wrapped in a ``term`` element:

    <term id="a1" refs="ChEBI:17245" status="confirmed" rejected="...">CO</term>

``refs`` lists the confirmed concept ids when any exist, otherwise the
still-undecided ones; ``rejected`` appears only when nonempty; ``status``
is ``auto`` (untouched), ``confirmed`` (≥1 confirmed), or ``partial``
(some rejected, none confirmed). Spans marked not-bio are emitted as
plain text. Every original character is preserved: stripping the term
tags recovers the document byte-identically, and export → parse →
export is a fixed point.

``exported_at`` is the timestamp of the last decision applied to the
document (its creation time when undecided), never the wall clock, so
identical state always serializes identically.
"""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from ..errors import ValidationError
from ..ontology_store import ConceptId
from .store import AnnotationRecord, CandidateState, DocumentRecord, SpanState

__all__ = [
    "ExportedSpan",
    "ExportedDocument",
    "export_document",
    "parse_export",
    "reserialize",
    "strip_terms",
]


@dataclass(frozen=True)
class ExportedSpan:
    local_id: str
    start: int
    end: int
    surface: str
    refs: tuple[ConceptId, ...]
    rejected: tuple[ConceptId, ...]
    status: str


@dataclass(frozen=True)
class ExportedDocument:
    doc_id: str
    exported_at: str
    text: str
    spans: tuple[ExportedSpan, ...]


def _esc_text(value: str) -> str:
    value = value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    return value.replace("\r", "&#13;")


def _esc_attr(value: str) -> str:
    value = _esc_text(value).replace('"', "&quot;")
    return value.replace("\t", "&#9;").replace("\n", "&#10;")


def _serialize(doc: ExportedDocument) -> str:
    out = io.StringIO()
    out.write(
        f'<document id="{_esc_attr(doc.doc_id)}" exported_at="{_esc_attr(doc.exported_at)}">'
    )
    out.write("<text>")
    cursor = 0
    for span in doc.spans:
        out.write(_esc_text(doc.text[cursor : span.start]))
        refs = " ".join(c.curie for c in span.refs)
        out.write(f'<term id="{_esc_attr(span.local_id)}" refs="{_esc_attr(refs)}"')
        if span.rejected:
            rejected = " ".join(c.curie for c in span.rejected)
            out.write(f' rejected="{_esc_attr(rejected)}"')
        out.write(f' status="{span.status}">')
        out.write(_esc_text(doc.text[span.start : span.end]))
        out.write("</term>")
        cursor = span.end
    out.write(_esc_text(doc.text[cursor:]))
    out.write("</text></document>")
    return out.getvalue()


def _span_of(record: AnnotationRecord, ordinal: int) -> ExportedSpan:
    confirmed = []
    rejected = []
    auto = []
    for concept in record.occurrence.candidates:
        state = record.candidate_states[concept]
        if state is CandidateState.CONFIRMED:
            confirmed.append(concept)
        elif state is CandidateState.REJECTED:
            rejected.append(concept)
        else:
            auto.append(concept)
    if confirmed:
        status = "confirmed"
        refs = confirmed
    elif rejected:
        status = "partial"
        refs = auto
    else:
        status = "auto"
        refs = auto
    return ExportedSpan(
        local_id=f"a{ordinal}",
        start=record.occurrence.start,
        end=record.occurrence.end,
        surface=record.occurrence.surface,
        refs=tuple(sorted(refs)),
        rejected=tuple(sorted(rejected)),
        status=status,
    )


def export_document(doc: DocumentRecord, records: list[AnnotationRecord]) -> str:
    """Serialize one document with its active spans inline."""
    active = [r for r in records if r.span_state is SpanState.ACTIVE]
    active.sort(key=lambda r: r.occurrence.start)
    spans = tuple(_span_of(record, i + 1) for i, record in enumerate(active))
    exported_at = doc.created_at
    for record in records:
        if record.updated_at > exported_at:
            exported_at = record.updated_at
    return _serialize(ExportedDocument(doc.doc_id, exported_at, doc.text, spans))


def parse_export(xml_text: str) -> ExportedDocument:
    """Recover document text and span metadata from an export."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise ValidationError(f"not well-formed XML: {exc}") from exc
    if root.tag != "document":
        raise ValidationError(f"expected <document> root, got <{root.tag}>")
    text_el = root.find("text")
    if text_el is None:
        raise ValidationError("missing <text> element")
    parts: list[str] = []
    spans: list[ExportedSpan] = []
    if text_el.text:
        parts.append(text_el.text)
    pos = len(text_el.text or "")
    for child in text_el:
        if child.tag != "term":
            raise ValidationError(f"unexpected <{child.tag}> inside <text>")
        surface = child.text or ""
        refs = tuple(
            ConceptId.parse(tok) for tok in (child.get("refs") or "").split() if tok
        )
        rejected = tuple(
            ConceptId.parse(tok) for tok in (child.get("rejected") or "").split() if tok
        )
        status = child.get("status") or "auto"
        if status not in ("auto", "confirmed", "partial"):
            raise ValidationError(f"unknown term status {status!r}")
        spans.append(
            ExportedSpan(
                local_id=child.get("id") or "",
                start=pos,
                end=pos + len(surface),
                surface=surface,
                refs=refs,
                rejected=rejected,
                status=status,
            )
        )
        parts.append(surface)
        pos += len(surface)
        if child.tail:
            parts.append(child.tail)
            pos += len(child.tail)
    return ExportedDocument(
        doc_id=root.get("id") or "",
        exported_at=root.get("exported_at") or "",
        text="".join(parts),
        spans=tuple(spans),
    )


def reserialize(doc: ExportedDocument) -> str:
    """Re-emit a parsed export; composing with parse_export is a fixed point."""
    return _serialize(doc)


def strip_terms(xml_text: str) -> str:
    """Original document text, tags removed, byte-identical."""
    return parse_export(xml_text).text
