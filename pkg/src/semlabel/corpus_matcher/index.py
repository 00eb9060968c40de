"""Scan index: normalized keys, their concepts, and the compiled automaton."""

from __future__ import annotations

from array import array
from typing import Iterable, Iterator, Mapping

from ..errors import ConfigurationError
from ..ontology_store import ConceptId
from ..variant_generator import Provenance, TermVariant
from .automaton import build_automaton

__all__ = ["TermIndex", "build_index", "TIER_PRIMARY", "TIER_ORIGINAL", "TIER_GENERATED"]

# Per (key, concept) provenance tier. Lower is stronger: 0 means the key is
# the concept's primary name, 1 some other name that ships with the ontology,
# 2 a generated spelling only.
TIER_PRIMARY = 0
TIER_ORIGINAL = 1
TIER_GENERATED = 2


class TermIndex:
    """Immutable lookup structure over the variant set of one or more ontologies.

    ``entries`` maps each normalized key to the concepts it may denote,
    sorted by CURIE. ``key_concept_tiers`` carries the same pairs plus the
    provenance tier used for found-statistics. Keys that contain an
    uppercase letter survived normalization as short acronyms and require
    an exact (case-sensitive) surface to match.
    """

    __slots__ = (
        "entries",
        "key_concept_tiers",
        "case_sensitive_keys",
        "concepts",
        "patterns",
        "pattern_keys",
        "pattern_lens",
        "automaton",
    )

    def __init__(
        self,
        entries: dict[str, tuple[ConceptId, ...]],
        key_concept_tiers: dict[str, tuple[tuple[ConceptId, int], ...]],
        concepts: tuple[ConceptId, ...],
    ):
        self.entries: Mapping[str, tuple[ConceptId, ...]] = entries
        self.key_concept_tiers: Mapping[str, tuple[tuple[ConceptId, int], ...]] = (
            key_concept_tiers
        )
        self.case_sensitive_keys = frozenset(k for k in entries if k != k.lower())
        self.concepts = concepts
        patterns = sorted({k.lower() for k in entries})
        by_pattern: dict[str, list[str]] = {p: [] for p in patterns}
        for key in entries:
            by_pattern[key.lower()].append(key)
        self.patterns: tuple[str, ...] = tuple(patterns)
        self.pattern_keys: tuple[tuple[str, ...], ...] = tuple(
            tuple(sorted(by_pattern[p])) for p in patterns
        )
        self.pattern_lens = array("i", [len(p) for p in patterns])
        self.automaton = build_automaton(self.patterns)

    @property
    def n_keys(self) -> int:
        return len(self.entries)

    @property
    def n_concepts(self) -> int:
        return len(self.concepts)

    def keys(self) -> Iterator[str]:
        return iter(self.entries)

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def concepts_for(self, key: str) -> tuple[ConceptId, ...]:
        return self.entries[key]


def build_index(variants: Iterable[TermVariant]) -> TermIndex:
    """Aggregate variants by normalized key and compile the automaton.

    The primary tier of a concept is attached to the key of its first
    original-provenance variant in stream order, which by generator
    convention is the primary name itself.
    """
    key_concepts: dict[str, dict[ConceptId, int]] = {}
    primary_key: dict[ConceptId, str] = {}
    concept_set: set[ConceptId] = set()
    n = 0
    for variant in variants:
        n += 1
        key = variant.normalized_key
        concept = variant.concept
        concept_set.add(concept)
        if variant.provenance is Provenance.ORIGINAL:
            tier = TIER_ORIGINAL
            if concept not in primary_key:
                primary_key[concept] = key
        else:
            tier = TIER_GENERATED
        per_key = key_concepts.setdefault(key, {})
        old = per_key.get(concept)
        if old is None or tier < old:
            per_key[concept] = tier
    if n == 0:
        raise ConfigurationError("cannot build an index from zero variants")

    for concept, key in primary_key.items():
        key_concepts[key][concept] = TIER_PRIMARY

    entries: dict[str, tuple[ConceptId, ...]] = {}
    tiers: dict[str, tuple[tuple[ConceptId, int], ...]] = {}
    for key in sorted(key_concepts):
        per_key = key_concepts[key]
        ordered = tuple(sorted(per_key))
        entries[key] = ordered
        tiers[key] = tuple((c, per_key[c]) for c in ordered)
    return TermIndex(entries, tiers, tuple(sorted(concept_set)))
