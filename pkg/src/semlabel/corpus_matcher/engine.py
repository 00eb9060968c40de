"""Document and corpus scanning.

A document is matched against the index through a "shadow" of its text:
the same character expansion the key normalizer applies (Greek spelling,
compatibility forms, dash/whitespace collapsing), built per character so
every shadow position maps back to an original offset. The automaton
runs over the lowercased shadow; candidate windows are then verified for
expansion alignment, token boundaries in the original text, and the
exact-case rule for short acronym keys, and finally reduced
leftmost-longest.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Callable, Iterable, Iterator, Mapping

from ..errors import ConsistencyError
from ..ontology_store import ConceptId
from ..text import DASH_CHARS, is_short_acronym, is_word_char
from . import backend
from .index import TIER_ORIGINAL, TIER_PRIMARY, TermIndex

__all__ = ["Document", "Occurrence", "FoundStats", "scan_document", "scan_corpus"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    source: str = ""


@dataclass(frozen=True)
class Occurrence:
    doc_id: str
    start: int
    end: int
    surface: str
    normalized_key: str
    candidates: tuple[ConceptId, ...]


def _boundary_ok(text: str, start: int, end: int) -> bool:
    # A span edge that falls inside a token is rejected. Hyphens join
    # tokens, so scanning continues across them: "pre-cat" has no
    # boundary before "cat".
    if is_word_char(text[start]):
        j = start - 1
        while j >= 0 and text[j] in DASH_CHARS:
            j -= 1
        if j >= 0 and is_word_char(text[j]):
            return False
    if is_word_char(text[end - 1]):
        j = end
        n = len(text)
        while j < n and text[j] in DASH_CHARS:
            j += 1
        if j < n and is_word_char(text[j]):
            return False
    return True


def scan_document(index: TermIndex, doc: Document, *, kernels=None) -> list[Occurrence]:
    """Return the document's occurrences, non-overlapping, sorted by start."""
    if kernels is None:
        kernels = backend.kernels
    text = doc.text
    if not text or not index.patterns:
        return []
    shadow_low, shadow_pres, idx = kernels.build_shadow(text)
    if not shadow_low:
        return []
    hits = kernels.find_hits(shadow_low, index.automaton)
    if not hits:
        return []

    pattern_lens = index.pattern_lens
    pattern_keys = index.pattern_keys
    n_shadow = len(idx)
    candidates: set[tuple[int, int, str]] = set()
    for end_i, pid in hits:
        a = end_i - pattern_lens[pid] + 1
        # Edges must not split a multi-character expansion of one
        # original character ("alpha" inside expanded "TNFα" is fine,
        # "lpha" is not).
        if a > 0 and idx[a - 1] == idx[a]:
            continue
        if end_i + 1 < n_shadow and idx[end_i + 1] == idx[end_i]:
            continue
        start = idx[a]
        end = idx[end_i] + 1
        if not _boundary_ok(text, start, end):
            continue
        pres = shadow_pres[a : end_i + 1]
        if is_short_acronym(pres):
            for key in pattern_keys[pid]:
                if key == pres:
                    candidates.add((start, end, key))
                    break
        else:
            pattern = index.patterns[pid]
            for key in pattern_keys[pid]:
                if key == pattern:
                    candidates.add((start, end, key))
                    break

    if not candidates:
        return []
    ordered = sorted(candidates, key=lambda m: (m[0], -m[1], m[2]))
    occurrences: list[Occurrence] = []
    cursor = 0
    for start, end, key in ordered:
        if start < cursor:
            continue
        occurrences.append(
            Occurrence(doc.doc_id, start, end, text[start:end], key, index.entries[key])
        )
        cursor = end
    return occurrences


class FoundStats:
    """Per-key and per-concept match counters for one corpus scan.

    All index keys are present from the start with zero counts, so
    "never found" and "not indexed" stay distinguishable. Per-document
    partials merge associatively; worker processes therefore return raw
    occurrences and the parent folds them in.
    """

    __slots__ = (
        "docs_scanned",
        "duplicate_docs",
        "key_docs",
        "key_occurrences",
        "concept_docs",
        "_concept_keys",
        "_key_tiers",
    )

    def __init__(
        self,
        key_docs: dict[str, int],
        key_occurrences: dict[str, int],
        concept_docs: dict[ConceptId, list[int]],
        docs_scanned: int = 0,
        duplicate_docs: int = 0,
        *,
        concept_keys: Mapping[ConceptId, tuple[str, ...]] | None = None,
        key_tiers: Mapping[str, tuple[tuple[ConceptId, int], ...]] | None = None,
    ):
        self.docs_scanned = docs_scanned
        self.duplicate_docs = duplicate_docs
        self.key_docs = key_docs
        self.key_occurrences = key_occurrences
        self.concept_docs = concept_docs
        self._concept_keys = concept_keys
        self._key_tiers = key_tiers

    @classmethod
    def for_index(cls, index: TermIndex) -> "FoundStats":
        concept_keys: dict[ConceptId, list[str]] = {c: [] for c in index.concepts}
        for key, pairs in index.key_concept_tiers.items():
            for concept, _tier in pairs:
                concept_keys[concept].append(key)
        return cls(
            {k: 0 for k in index.entries},
            {k: 0 for k in index.entries},
            {c: [0, 0, 0] for c in index.concepts},
            concept_keys={c: tuple(v) for c, v in concept_keys.items()},
            key_tiers=index.key_concept_tiers,
        )

    def record_document(self, occurrences: Iterable[Occurrence]) -> None:
        """Fold one scanned document's occurrences into the counters."""
        if self._key_tiers is None:
            raise ConsistencyError("stats object was loaded from file; it cannot record documents")
        self.docs_scanned += 1
        per_key: dict[str, int] = {}
        for occ in occurrences:
            per_key[occ.normalized_key] = per_key.get(occ.normalized_key, 0) + 1
        if not per_key:
            return
        best_tier: dict[ConceptId, int] = {}
        for key, count in per_key.items():
            self.key_docs[key] += 1
            self.key_occurrences[key] += count
            for concept, tier in self._key_tiers[key]:
                old = best_tier.get(concept)
                if old is None or tier < old:
                    best_tier[concept] = tier
        for concept, tier in best_tier.items():
            counts = self.concept_docs[concept]
            counts[2] += 1
            if tier <= TIER_ORIGINAL:
                counts[1] += 1
            if tier == TIER_PRIMARY:
                counts[0] += 1

    def merge(self, other: "FoundStats") -> None:
        """Fold another partial over the same index into this one."""
        if set(other.key_docs) != set(self.key_docs):
            raise ConsistencyError("cannot merge stats built over different indexes")
        self.docs_scanned += other.docs_scanned
        self.duplicate_docs += other.duplicate_docs
        for key, n in other.key_docs.items():
            self.key_docs[key] += n
        for key, n in other.key_occurrences.items():
            self.key_occurrences[key] += n
        for concept, counts in other.concept_docs.items():
            mine = self.concept_docs[concept]
            mine[0] += counts[0]
            mine[1] += counts[1]
            mine[2] += counts[2]

    def found(self, key: str) -> bool:
        return self.key_docs.get(key, 0) > 0

    def variants_found(self, concept: ConceptId) -> int:
        """Number of the concept's distinct normalized variants seen in the corpus."""
        if self._concept_keys is None:
            raise ConsistencyError("stats object was loaded from file; index context is gone")
        keys = self._concept_keys.get(concept)
        if keys is None:
            raise ConsistencyError(f"concept {concept.curie} is not in the scanned index")
        return sum(1 for k in keys if self.key_docs[k] > 0)

    def max_found_variants(self) -> int:
        if self._concept_keys is None:
            raise ConsistencyError("stats object was loaded from file; index context is gone")
        best = 0
        for concept in self._concept_keys:
            n = self.variants_found(concept)
            if n > best:
                best = n
        return best

    def docs_with_concept(self, concept: ConceptId) -> tuple[int, int, int]:
        """(docs via primary name, docs via any original name, docs via any variant)."""
        counts = self.concept_docs[concept]
        return counts[0], counts[1], counts[2]


_WORKER_INDEX: TermIndex | None = None


def _init_worker(index: TermIndex) -> None:
    global _WORKER_INDEX
    _WORKER_INDEX = index


def _scan_one(job: tuple[str, str, str]) -> tuple[str, list[Occurrence]]:
    doc_id, source, text = job
    assert _WORKER_INDEX is not None
    occs = scan_document(_WORKER_INDEX, Document(doc_id, text, source))
    return doc_id, occs


def scan_corpus(
    index: TermIndex,
    documents: Iterable,
    *,
    workers: int = 1,
    on_result: Callable[[str, list[Occurrence]], None] | None = None,
) -> FoundStats:
    """Scan a document stream; return aggregated FoundStats.

    ``documents`` yields objects with doc_id/text/source attributes.
    Duplicate doc_ids are skipped with a warning and counted. Memory
    stays bounded by the index plus one document (plus worker queues
    when ``workers`` > 1); occurrences are handed to ``on_result`` per
    document and dropped.
    """
    stats = FoundStats.for_index(index)
    seen: set[str] = set()

    def fresh() -> Iterator[tuple[str, str, str]]:
        for doc in documents:
            if doc.doc_id in seen:
                stats.duplicate_docs += 1
                log.warning("duplicate doc_id %r skipped", doc.doc_id)
                continue
            seen.add(doc.doc_id)
            yield doc.doc_id, getattr(doc, "source", ""), doc.text

    if workers <= 1:
        for doc_id, source, text in fresh():
            occs = scan_document(index, Document(doc_id, text, source))
            stats.record_document(occs)
            if on_result is not None:
                on_result(doc_id, occs)
        return stats

    ctx = get_context()
    with ctx.Pool(processes=workers, initializer=_init_worker, initargs=(index,)) as pool:
        for doc_id, occs in pool.imap(_scan_one, fresh(), chunksize=8):
            stats.record_document(occs)
            if on_result is not None:
                on_result(doc_id, occs)
    return stats
