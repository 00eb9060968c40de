"""Variant dump file: one surface per line, replayable provenance."""

from __future__ import annotations

from pathlib import Path
from typing import IO, Iterator

from ..errors import ParseError
from ..formats import escape_field, iter_records, unescape_field
from ..ontology_store import ConceptId
from ..text import normalize_term
from .generator import Provenance, TermVariant

__all__ = ["write_variants", "read_variants"]

_HEADER = "# ontology\tlocal_id\tsurface\tprovenance\ttrace"


def write_variants(out: IO[str], variants) -> int:
    """Stream variants to the dump format; returns the number written."""
    out.write(_HEADER + "\n")
    n = 0
    for v in variants:
        trace = ",".join(v.rule_trace)
        out.write(
            f"{v.concept.ontology}\t{v.concept.local_id}\t"
            f"{escape_field(v.surface)}\t{v.provenance.value}\t{trace}\n"
        )
        n += 1
    return n


def read_variants(path: str | Path) -> Iterator[TermVariant]:
    """Parse a dump written by :func:`write_variants`.

    Normalized keys are recomputed from the surfaces, so a dump can never
    disagree with the normalizer that will index it.
    """
    for lineno, fields in iter_records(path, 5, min_fields=4):
        ontology, local_id, surface_raw, provenance_raw = fields[:4]
        trace_raw = fields[4] if len(fields) > 4 else ""
        if not ontology or not local_id:
            raise ParseError(str(path), lineno, "empty ontology or local id")
        surface = unescape_field(surface_raw)
        try:
            provenance = Provenance(provenance_raw)
        except ValueError:
            raise ParseError(
                str(path), lineno, f"unknown provenance {provenance_raw!r}"
            ) from None
        trace = tuple(trace_raw.split(",")) if trace_raw else ()
        yield TermVariant(
            surface=surface,
            normalized_key=normalize_term(surface),
            concept=ConceptId(ontology, local_id),
            provenance=provenance,
            rule_trace=trace,
        )
