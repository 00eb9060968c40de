"""Ontology-level variability and ambiguity aggregation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from ..corpus_matcher import FoundStats
from ..errors import ConsistencyError
from ..ontology_store import ConceptId, OntologySnapshot
from ..variant_generator import Provenance, TermVariant
from .metrics import prior_precision, prior_recall

__all__ = [
    "AmbiguityRow",
    "AmbiguityReport",
    "VariabilityRow",
    "VariabilityReport",
    "ambiguity_report",
    "variability_report",
    "RETRIEVAL_MODES",
]

RETRIEVAL_MODES = ("primary", "original", "all")


@dataclass(frozen=True)
class AmbiguityRow:
    ontology: str
    n_same_spelling_within: int
    n_same_spelling_across: int
    n_same_spelling_total: int
    max_objects_per_spelling: int
    smallest_expected_precision: float


@dataclass(frozen=True)
class AmbiguityReport:
    rows: tuple[AmbiguityRow, ...]
    collisions: Mapping[str, tuple[ConceptId, ...]]
    max_objects_per_spelling: int

    def objects_sharing(self, key: str) -> tuple[ConceptId, ...]:
        """Concepts sharing a normalized key; empty when unshared or unknown."""
        return self.collisions.get(key, ())


@dataclass(frozen=True)
class VariabilityRow:
    ontology: str
    n_ids: int
    n_synonyms: int
    avg_synonyms: float
    n_synonyms_found: int
    n_variants: int
    avg_variants: float
    n_variants_found: int
    max_found_variants_per_concept: int
    smallest_expected_recall: float | None


@dataclass(frozen=True)
class VariabilityReport:
    rows: tuple[VariabilityRow, ...]
    histogram: tuple[tuple[int, str, int], ...]
    retrieval_series: tuple[tuple[str, str, float], ...]
    docs_scanned: int
    duplicate_docs: int


def _check_coverage(snapshot: OntologySnapshot, seen: set[ConceptId]) -> None:
    for concept_id in snapshot.concepts:
        if concept_id not in seen:
            raise ConsistencyError(f"no variants were generated for {concept_id.curie}")
    for concept_id in seen:
        if concept_id not in snapshot.concepts:
            raise ConsistencyError(
                f"variant stream mentions {concept_id.curie}, which is not in the snapshot"
            )


def ambiguity_report(
    snapshot: OntologySnapshot, variants: Iterable[TermVariant]
) -> AmbiguityReport:
    """Classify shared spellings per ontology.

    A colliding key counts as within-ontology for an ontology that
    contributes at least two of its concepts, and as across-ontology for
    one that contributes exactly one; the two classes partition the
    colliding keys that touch an ontology, so the total is their sum.
    """
    key_concepts: dict[str, set[ConceptId]] = {}
    seen: set[ConceptId] = set()
    for variant in variants:
        seen.add(variant.concept)
        key_concepts.setdefault(variant.normalized_key, set()).add(variant.concept)
    _check_coverage(snapshot, seen)

    collisions = {
        key: tuple(sorted(concepts))
        for key, concepts in key_concepts.items()
        if len(concepts) >= 2
    }
    global_max = 1
    rows = []
    for ontology in snapshot.ontology_names():
        within = across = 0
        max_objects = 1
        for key, concepts in collisions.items():
            own = sum(1 for c in concepts if c.ontology == ontology)
            if own == 0:
                continue
            if own >= 2:
                within += 1
            else:
                across += 1
            if len(concepts) > max_objects:
                max_objects = len(concepts)
        rows.append(
            AmbiguityRow(
                ontology,
                within,
                across,
                within + across,
                max_objects,
                prior_precision(max_objects),
            )
        )
        if max_objects > global_max:
            global_max = max_objects
    return AmbiguityReport(tuple(rows), collisions, global_max)


class _ConceptTally:
    # Found counts are over distinct normalized keys: surfaces that collapse
    # to one spelling are a single retrievable unit, and the recall prior
    # 1/max_found would double-count them otherwise.
    __slots__ = ("variants", "found_keys", "originals", "found_original_keys")

    def __init__(self):
        self.variants = 0
        self.found_keys: set[str] = set()
        self.originals = 0
        self.found_original_keys: set[str] = set()

    @property
    def variants_found(self) -> int:
        return len(self.found_keys)

    @property
    def originals_found(self) -> int:
        return len(self.found_original_keys)


def variability_report(
    snapshot: OntologySnapshot,
    variants: Iterable[TermVariant],
    found_stats: FoundStats,
) -> VariabilityReport:
    """Aggregate name/variant counts and corpus hit rates per ontology."""
    key_docs = found_stats.key_docs
    tallies: dict[ConceptId, _ConceptTally] = {}
    for variant in variants:
        docs = key_docs.get(variant.normalized_key)
        if docs is None:
            raise ConsistencyError(
                f"variant key {variant.normalized_key!r} is missing from the scan statistics"
            )
        tally = tallies.get(variant.concept)
        if tally is None:
            tally = tallies[variant.concept] = _ConceptTally()
        tally.variants += 1
        if docs > 0:
            tally.found_keys.add(variant.normalized_key)
        if variant.provenance is Provenance.ORIGINAL:
            tally.originals += 1
            if docs > 0:
                tally.found_original_keys.add(variant.normalized_key)
    _check_coverage(snapshot, set(tallies))

    rows = []
    hist_synonyms: Counter[int] = Counter()
    hist_variants: Counter[int] = Counter()
    hist_found: Counter[int] = Counter()
    retrieval: list[tuple[str, str, float]] = []
    for ontology in snapshot.ontology_names():
        own_concepts = snapshot.by_ontology(ontology)
        n_ids = len(own_concepts)
        n_synonyms = 0
        n_synonyms_found = 0
        n_variants = 0
        n_variants_found = 0
        max_found = 0
        mode_docs = [0, 0, 0]
        for concept in own_concepts:
            concept_id = concept.id
            tally = tallies[concept_id]
            if tally.originals != concept.n_names:
                raise ConsistencyError(
                    f"{concept_id.curie}: snapshot has {concept.n_names} names but the "
                    f"variant stream carries {tally.originals} original variants"
                )
            n_synonyms += concept.n_names
            n_synonyms_found += tally.originals_found
            n_variants += tally.variants
            n_variants_found += tally.variants_found
            if tally.variants_found > max_found:
                max_found = tally.variants_found
            hist_synonyms[concept.n_names] += 1
            hist_variants[tally.variants] += 1
            hist_found[tally.variants_found] += 1
            if concept_id in found_stats.concept_docs:
                p, o, a = found_stats.docs_with_concept(concept_id)
                mode_docs[0] += p
                mode_docs[1] += o
                mode_docs[2] += a
        rows.append(
            VariabilityRow(
                ontology,
                n_ids,
                n_synonyms,
                n_synonyms / n_ids,
                n_synonyms_found,
                n_variants,
                n_variants / n_ids,
                n_variants_found,
                max_found,
                prior_recall(max_found) if max_found >= 1 else None,
            )
        )
        if mode_docs[2] > 0:
            for mode, total in zip(RETRIEVAL_MODES, mode_docs):
                retrieval.append((mode, ontology, total / mode_docs[2]))

    histogram: list[tuple[int, str, int]] = []
    for series, counter in (
        ("synonyms", hist_synonyms),
        ("variants", hist_variants),
        ("found", hist_found),
    ):
        for x in sorted(counter):
            histogram.append((x, series, counter[x]))
    histogram.sort(key=lambda row: (row[0], row[1]))
    return VariabilityReport(
        tuple(rows),
        tuple(histogram),
        tuple(retrieval),
        found_stats.docs_scanned,
        found_stats.duplicate_docs,
    )
