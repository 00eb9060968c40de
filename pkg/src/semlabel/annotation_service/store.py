"""Event-sourced annotation state.

The store's durable form is three files in a data directory: the
submitted documents, the auto-generated annotation baseline, and an
append-only JSONL decision log. Current state is always the fold of the
log over the baseline, and reopening a directory replays it; nothing
else is persisted, so state can never disagree with the log.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import IO, Iterable

from ..corpus_matcher import Document, Occurrence, TermIndex, scan_document
from ..errors import (
    ConfigurationError,
    ConflictError,
    NotFoundError,
    ParseError,
    ValidationError,
)
from ..formats import escape_field, iter_records, unescape_field
from ..ontology_store import ConceptId

__all__ = [
    "Action",
    "CandidateState",
    "SpanState",
    "DecisionEvent",
    "AnnotationRecord",
    "DocumentRecord",
    "AnnotationStore",
]


class CandidateState(str, Enum):
    AUTO = "auto"
    CONFIRMED = "confirmed"
    REJECTED = "rejected"


class SpanState(str, Enum):
    ACTIVE = "active"
    NOT_BIO = "not_bio"


class Action(str, Enum):
    CONFIRM_CANDIDATE = "confirm_candidate"
    REJECT_CANDIDATE = "reject_candidate"
    MARK_NOT_BIO = "mark_not_bio"
    DELETE_ALL_SAME = "delete_all_same"


@dataclass(frozen=True)
class DecisionEvent:
    event_id: int
    annotation_id: str
    action: Action
    target: ConceptId | None
    actor: str
    timestamp: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "event_id": self.event_id,
                "annotation_id": self.annotation_id,
                "action": self.action.value,
                "target": self.target.curie if self.target else None,
                "actor": self.actor,
                "timestamp": self.timestamp,
            },
            ensure_ascii=False,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> "DecisionEvent":
        obj = json.loads(line)
        target = obj.get("target")
        return cls(
            event_id=int(obj["event_id"]),
            annotation_id=obj["annotation_id"],
            action=Action(obj["action"]),
            target=ConceptId.parse(target) if target else None,
            actor=obj.get("actor", ""),
            timestamp=obj["timestamp"],
        )


@dataclass
class AnnotationRecord:
    annotation_id: str
    occurrence: Occurrence
    candidate_states: dict[ConceptId, CandidateState]
    span_state: SpanState
    updated_at: str

    @property
    def doc_id(self) -> str:
        return self.occurrence.doc_id


@dataclass(frozen=True)
class DocumentRecord:
    doc_id: str
    source: str
    created_at: str
    text: str


def _validate_text(text: str) -> None:
    if not text:
        raise ValidationError("document text must be nonempty")
    for ch in text:
        code = ord(ch)
        if code < 0x20 and ch not in "\t\n\r":
            raise ValidationError(
                f"text contains control character U+{code:04X}, which XML cannot carry"
            )


def _validate_doc_id(doc_id: str) -> None:
    if not doc_id:
        raise ValidationError("doc_id must be nonempty")
    if any(ch.isspace() for ch in doc_id):
        raise ValidationError(f"doc_id must not contain whitespace: {doc_id!r}")
    if doc_id.startswith("#"):
        raise ValidationError(f"doc_id must not start with '#': {doc_id!r}")


class AnnotationStore:
    """Documents, their annotations, and the decision log.

    All mutating calls are serialized under one lock, which gives the
    per-document write ordering guarantee trivially. Pass ``index=None``
    to open an existing directory read-only for export and replay; only
    ``submit_document`` needs the index.
    """

    def __init__(self, index: TermIndex | None = None, data_dir: str | Path | None = None):
        self._index = index
        self._lock = threading.RLock()
        self._documents: dict[str, DocumentRecord] = {}
        self._annotations: dict[str, AnnotationRecord] = {}
        self._doc_annotations: dict[str, list[str]] = {}
        self._events: list[DecisionEvent] = []
        self._next_annotation = 1
        self._next_event = 1
        self._last_ts = ""
        self._dir: Path | None = None
        self._doc_fh: IO[str] | None = None
        self._ann_fh: IO[str] | None = None
        self._event_fh: IO[str] | None = None
        if data_dir is not None:
            self._dir = Path(data_dir)
            self._dir.mkdir(parents=True, exist_ok=True)
            self._load()

    # -- construction ---------------------------------------------------

    def _load(self) -> None:
        assert self._dir is not None
        doc_path = self._dir / "documents.tsv"
        ann_path = self._dir / "annotations.tsv"
        event_path = self._dir / "events.jsonl"
        if doc_path.exists():
            for lineno, fields in iter_records(doc_path, 4):
                doc_id, source, created_at, text_raw = fields
                self._documents[doc_id] = DocumentRecord(
                    doc_id, source, created_at, unescape_field(text_raw)
                )
                self._doc_annotations.setdefault(doc_id, [])
        if ann_path.exists():
            for lineno, fields in iter_records(ann_path, 7):
                aid, doc_id, start_raw, end_raw, surface_raw, key_raw, cand_raw = fields
                doc = self._documents.get(doc_id)
                if doc is None:
                    raise ParseError(
                        str(ann_path), lineno, f"annotation for unknown document {doc_id!r}"
                    )
                candidates = tuple(
                    ConceptId.parse(part) for part in cand_raw.split(",") if part
                )
                occurrence = Occurrence(
                    doc_id,
                    int(start_raw),
                    int(end_raw),
                    unescape_field(surface_raw),
                    unescape_field(key_raw),
                    candidates,
                )
                record = AnnotationRecord(
                    annotation_id=aid,
                    occurrence=occurrence,
                    candidate_states={c: CandidateState.AUTO for c in candidates},
                    span_state=SpanState.ACTIVE,
                    updated_at=doc.created_at,
                )
                self._annotations[aid] = record
                self._doc_annotations[doc_id].append(aid)
                if aid.startswith("a") and aid[1:].isdigit():
                    self._next_annotation = max(self._next_annotation, int(aid[1:]) + 1)
        if event_path.exists():
            with event_path.open("r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    event = DecisionEvent.from_json(line)
                    self._apply(event)
                    self._events.append(event)
                    self._next_event = max(self._next_event, event.event_id + 1)
                    self._last_ts = max(self._last_ts, event.timestamp)

    def close(self) -> None:
        for fh in (self._doc_fh, self._ann_fh, self._event_fh):
            if fh is not None:
                fh.close()
        self._doc_fh = self._ann_fh = self._event_fh = None

    def __enter__(self) -> "AnnotationStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- persistence ----------------------------------------------------

    def _append(self, which: str, line: str) -> None:
        if self._dir is None:
            return
        fh = getattr(self, f"_{which}_fh")
        if fh is None:
            names = {"doc": "documents.tsv", "ann": "annotations.tsv", "event": "events.jsonl"}
            fh = (self._dir / names[which]).open("a", encoding="utf-8")
            setattr(self, f"_{which}_fh", fh)
        fh.write(line + "\n")
        fh.flush()

    def _timestamp(self) -> str:
        now = datetime.now(timezone.utc)
        ts = now.isoformat(timespec="microseconds")
        if ts <= self._last_ts:
            bumped = datetime.fromisoformat(self._last_ts) + timedelta(microseconds=1)
            ts = bumped.isoformat(timespec="microseconds")
        self._last_ts = ts
        return ts

    # -- mutation -------------------------------------------------------

    def submit_document(
        self, text: str, doc_id: str | None = None, source: str = ""
    ) -> tuple[str, list[AnnotationRecord]]:
        """Store a document, auto-annotate it, persist both, return the records."""
        with self._lock:
            if self._index is None:
                raise ConfigurationError("this store was opened without an index; cannot scan")
            _validate_text(text)
            if doc_id is None:
                n = len(self._documents) + 1
                while f"doc-{n}" in self._documents:
                    n += 1
                doc_id = f"doc-{n}"
            else:
                _validate_doc_id(doc_id)
                if doc_id in self._documents:
                    raise ConflictError(f"document {doc_id!r} already exists")
            created_at = self._timestamp()
            doc = DocumentRecord(doc_id, source, created_at, text)
            occurrences = scan_document(self._index, Document(doc_id, text, source))
            records = []
            for occ in occurrences:
                aid = f"a{self._next_annotation}"
                self._next_annotation += 1
                records.append(
                    AnnotationRecord(
                        annotation_id=aid,
                        occurrence=occ,
                        candidate_states={c: CandidateState.AUTO for c in occ.candidates},
                        span_state=SpanState.ACTIVE,
                        updated_at=created_at,
                    )
                )
            self._documents[doc_id] = doc
            self._doc_annotations[doc_id] = [r.annotation_id for r in records]
            for record in records:
                self._annotations[record.annotation_id] = record
            self._append(
                "doc",
                f"{doc_id}\t{escape_field(source)}\t{created_at}\t{escape_field(text)}",
            )
            for record in records:
                occ = record.occurrence
                self._append(
                    "ann",
                    f"{record.annotation_id}\t{doc_id}\t{occ.start}\t{occ.end}\t"
                    f"{escape_field(occ.surface)}\t{escape_field(occ.normalized_key)}\t"
                    + ",".join(c.curie for c in occ.candidates),
                )
            return doc_id, records

    def record_decision(
        self,
        annotation_id: str,
        action: Action | str,
        target: ConceptId | None = None,
        actor: str = "",
    ) -> list[AnnotationRecord]:
        """Validate, log, and apply one decision; returns the records it changed."""
        with self._lock:
            record = self._annotations.get(annotation_id)
            if record is None:
                raise NotFoundError(f"unknown annotation {annotation_id!r}")
            if isinstance(action, str):
                try:
                    action = Action(action)
                except ValueError:
                    raise ValidationError(f"unknown action {action!r}") from None
            if action in (Action.CONFIRM_CANDIDATE, Action.REJECT_CANDIDATE):
                if target is None:
                    raise ValidationError(f"{action.value} requires a target concept")
                if target not in record.candidate_states:
                    raise ValidationError(
                        f"{target.curie} is not a candidate of {annotation_id}"
                    )
                if (
                    action is Action.REJECT_CANDIDATE
                    and record.span_state is SpanState.NOT_BIO
                ):
                    raise ConflictError(
                        f"{annotation_id} is marked not-bio; confirming a candidate re-activates it"
                    )
            else:
                if target is not None:
                    raise ValidationError(f"{action.value} does not take a target")
            event = DecisionEvent(
                event_id=self._next_event,
                annotation_id=annotation_id,
                action=action,
                target=target,
                actor=actor,
                timestamp=self._timestamp(),
            )
            self._next_event += 1
            self._append("event", event.to_json())
            self._events.append(event)
            return self._apply(event)

    def _apply(self, event: DecisionEvent) -> list[AnnotationRecord]:
        """Fold one event into state. Shared by live decisions and replay."""
        record = self._annotations.get(event.annotation_id)
        if record is None:
            raise ParseError(
                "events.jsonl", event.event_id, f"event names unknown annotation {event.annotation_id!r}"
            )
        if event.action is Action.CONFIRM_CANDIDATE:
            assert event.target is not None
            record.candidate_states[event.target] = CandidateState.CONFIRMED
            record.span_state = SpanState.ACTIVE
            record.updated_at = event.timestamp
            return [record]
        if event.action is Action.REJECT_CANDIDATE:
            assert event.target is not None
            record.candidate_states[event.target] = CandidateState.REJECTED
            record.updated_at = event.timestamp
            return [record]
        if event.action is Action.MARK_NOT_BIO:
            self._mark_not_bio(record, event.timestamp)
            return [record]
        # DeleteAllSame fans out over the currently-active same-key spans of
        # the document; the fan-out set is recomputed on replay, not stored.
        key = record.occurrence.normalized_key
        touched = []
        for aid in self._doc_annotations[record.doc_id]:
            sibling = self._annotations[aid]
            if (
                sibling.span_state is SpanState.ACTIVE
                and sibling.occurrence.normalized_key == key
            ):
                self._mark_not_bio(sibling, event.timestamp)
                touched.append(sibling)
        return touched

    @staticmethod
    def _mark_not_bio(record: AnnotationRecord, timestamp: str) -> None:
        record.span_state = SpanState.NOT_BIO
        for candidate in record.candidate_states:
            record.candidate_states[candidate] = CandidateState.REJECTED
        record.updated_at = timestamp

    # -- queries --------------------------------------------------------

    @property
    def doc_ids(self) -> list[str]:
        return list(self._documents)

    def document(self, doc_id: str) -> DocumentRecord:
        doc = self._documents.get(doc_id)
        if doc is None:
            raise NotFoundError(f"unknown document {doc_id!r}")
        return doc

    def annotations(self, doc_id: str) -> list[AnnotationRecord]:
        self.document(doc_id)
        return [self._annotations[aid] for aid in self._doc_annotations[doc_id]]

    def annotation(self, annotation_id: str) -> AnnotationRecord:
        record = self._annotations.get(annotation_id)
        if record is None:
            raise NotFoundError(f"unknown annotation {annotation_id!r}")
        return record

    def decisions(self, since: str | None = None) -> list[DecisionEvent]:
        """Chronological decision log; ``since`` filters inclusively."""
        if since is None:
            return list(self._events)
        return [e for e in self._events if e.timestamp >= since]

    def export_xml(self, doc_id: str) -> str:
        from .xml_io import export_document

        with self._lock:
            doc = self.document(doc_id)
            return export_document(doc, self.annotations(doc_id))
