"""Ingestion of ontology term lists into an immutable in-memory snapshot.

The on-disk format is one concept per line::

    <ontology> <TAB> <local_id> <TAB> <primary_name> <TAB> <syn1>|<syn2>|...

Synonyms are pipe-separated; literal pipes, tabs, and backslashes inside
names are escaped (``\\|``, ``\\t``, ``\\\\``). ``#`` starts a comment line.
The synonym field may be empty or absent for concepts with a single name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import ConflictError, ParseError, ValidationError
from .formats import escape_field, iter_records, split_pipes, unescape_field
from .text import normalize_term

__all__ = [
    "ConceptId",
    "Concept",
    "OntologyInfo",
    "OntologySnapshot",
    "ingest_ontology",
    "load_snapshot",
    "save_snapshot",
    "normalize_term",
]


@dataclass(frozen=True, order=True)
class ConceptId:
    ontology: str
    local_id: str

    @property
    def curie(self) -> str:
        return f"{self.ontology}:{self.local_id}"

    @classmethod
    def parse(cls, curie: str) -> "ConceptId":
        ontology, sep, local_id = curie.partition(":")
        if not sep or not ontology or not local_id:
            raise ValidationError(f"not an <ontology>:<local_id> identifier: {curie!r}")
        return cls(ontology, local_id)

    def __str__(self) -> str:
        return self.curie


@dataclass(frozen=True)
class Concept:
    id: ConceptId
    primary_name: str
    synonyms: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.primary_name or not self.primary_name.strip():
            raise ValidationError(f"{self.id.curie}: empty primary name")
        for syn in self.synonyms:
            if not syn or not syn.strip():
                raise ValidationError(f"{self.id.curie}: empty synonym")

    def names(self) -> tuple[str, ...]:
        """Primary name first, then synonyms, original spelling preserved."""
        return (self.primary_name, *self.synonyms)

    @property
    def n_names(self) -> int:
        return 1 + len(self.synonyms)


@dataclass(frozen=True)
class OntologyInfo:
    name: str
    source: str
    n_concepts: int


class OntologySnapshot:
    """Immutable view over a set of ingested concepts.

    Iteration order is ingestion order, which makes every downstream
    artifact (variant dumps, reports) reproducible from the same inputs.
    """

    def __init__(self, concepts: Iterable[Concept], ontologies: Iterable[OntologyInfo]):
        ordered: dict[ConceptId, Concept] = {}
        for concept in concepts:
            if concept.id in ordered:
                raise ConflictError(f"duplicate concept id {concept.id.curie}")
            ordered[concept.id] = concept
        self._concepts: Mapping[ConceptId, Concept] = MappingProxyType(ordered)
        self.ontologies: tuple[OntologyInfo, ...] = tuple(ontologies)
        self.created_at: datetime = datetime.now(timezone.utc)

    @property
    def concepts(self) -> Mapping[ConceptId, Concept]:
        return self._concepts

    def __len__(self) -> int:
        return len(self._concepts)

    def __iter__(self) -> Iterator[Concept]:
        return iter(self._concepts.values())

    def __contains__(self, concept_id: ConceptId) -> bool:
        return concept_id in self._concepts

    def get(self, concept_id: ConceptId) -> Concept | None:
        return self._concepts.get(concept_id)

    def by_ontology(self, name: str) -> list[Concept]:
        return [c for c in self if c.id.ontology == name]

    def ontology_names(self) -> list[str]:
        seen: dict[str, None] = {}
        for concept in self:
            seen.setdefault(concept.id.ontology, None)
        return list(seen)


def _parse_concept(path, lineno, fields) -> Concept:
    ontology, local_id, primary_raw, syn_field = fields
    if not ontology or not local_id:
        raise ParseError(path, lineno, "empty ontology or local id")
    primary = unescape_field(primary_raw).strip()
    if not primary:
        raise ParseError(path, lineno, f"{ontology}:{local_id}: empty primary name")
    synonyms: list[str] = []
    seen = {primary}
    if syn_field:
        for item in split_pipes(syn_field):
            name = unescape_field(item).strip()
            if not name:
                raise ParseError(path, lineno, f"{ontology}:{local_id}: empty synonym entry")
            if name in seen:
                continue  # exact duplicates carry no information
            seen.add(name)
            synonyms.append(name)
    # reject names that normalize to nothing before they poison the index
    for name in (primary, *synonyms):
        normalize_term(name)
    return Concept(ConceptId(ontology, local_id), primary, tuple(synonyms))


def ingest_ontology(paths: Iterable[str | Path]) -> OntologySnapshot:
    """Parse one or more term-list files into a snapshot.

    Raises :class:`ParseError` with path and line number on malformed
    records, and :class:`ConflictError` naming the id when the same
    ``<ontology>:<local_id>`` appears twice.
    """
    concepts: dict[ConceptId, Concept] = {}
    infos: list[OntologyInfo] = []
    for path in paths:
        per_file: dict[str, int] = {}
        for lineno, fields in iter_records(path, 4, min_fields=3):
            concept = _parse_concept(path, lineno, fields)
            if concept.id in concepts:
                raise ConflictError(f"duplicate concept id {concept.id.curie} at {path}:{lineno}")
            concepts[concept.id] = concept
            per_file[concept.id.ontology] = per_file.get(concept.id.ontology, 0) + 1
        for name, count in per_file.items():
            infos.append(OntologyInfo(name=name, source=str(path), n_concepts=count))
    return OntologySnapshot(concepts.values(), infos)


def save_snapshot(snapshot: OntologySnapshot, path: str | Path) -> None:
    """Write a snapshot back to the ingestion format, one concept per line.

    Output is byte-deterministic for a given snapshot: no timestamps, and
    record order is ingestion order.
    """
    with Path(path).open("w", encoding="utf-8", newline="") as out:
        out.write("# ontology\tlocal_id\tprimary_name\tsynonyms\n")
        for concept in snapshot:
            syn = "|".join(escape_field(s, pipes=True) for s in concept.synonyms)
            out.write(
                f"{concept.id.ontology}\t{concept.id.local_id}\t"
                f"{escape_field(concept.primary_name)}\t{syn}\n"
            )


def load_snapshot(path: str | Path) -> OntologySnapshot:
    return ingest_ontology([path])
