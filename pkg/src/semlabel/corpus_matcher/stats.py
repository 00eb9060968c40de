"""On-disk forms of scan output: occurrence stream and found-stats."""

from __future__ import annotations

from typing import IO, Iterator

from ..errors import ParseError
from ..formats import escape_field, iter_records, unescape_field
from ..ontology_store import ConceptId
from .engine import FoundStats, Occurrence

__all__ = [
    "write_occurrences",
    "read_occurrences",
    "write_found_stats",
    "read_found_stats",
]

_STATS_HEADER = "# semlabel found-stats v1"


def write_occurrences(out: IO[str], occurrences: list[Occurrence]) -> None:
    for occ in occurrences:
        out.write(
            "\t".join(
                (
                    escape_field(occ.doc_id),
                    str(occ.start),
                    str(occ.end),
                    escape_field(occ.surface),
                    escape_field(occ.normalized_key),
                    ",".join(c.curie for c in occ.candidates),
                )
            )
            + "\n"
        )


def read_occurrences(path: str) -> Iterator[Occurrence]:
    for lineno, fields in iter_records(path, 6):
        doc_id = unescape_field(fields[0])
        try:
            start = int(fields[1])
            end = int(fields[2])
        except ValueError:
            raise ParseError(path, lineno, "span offsets must be integers") from None
        candidates = tuple(
            ConceptId.parse(part) for part in fields[5].split(",") if part
        )
        yield Occurrence(
            doc_id,
            start,
            end,
            unescape_field(fields[3]),
            unescape_field(fields[4]),
            candidates,
        )


def write_found_stats(out: IO[str], stats: FoundStats) -> None:
    """Serialize counters deterministically (keys and concepts sorted)."""
    out.write(_STATS_HEADER + "\n")
    out.write(f"scanned\t{stats.docs_scanned}\n")
    out.write(f"duplicates\t{stats.duplicate_docs}\n")
    for key in sorted(stats.key_docs):
        out.write(
            f"K\t{escape_field(key)}\t{stats.key_docs[key]}\t{stats.key_occurrences[key]}\n"
        )
    for concept in sorted(stats.concept_docs):
        p, o, a = stats.docs_with_concept(concept)
        out.write(f"C\t{concept.curie}\t{p}\t{o}\t{a}\n")


def read_found_stats(path: str) -> FoundStats:
    """Load counters written by ``write_found_stats``.

    The result supports the counter queries but not further recording;
    the index context is not serialized.
    """
    key_docs: dict[str, int] = {}
    key_occurrences: dict[str, int] = {}
    concept_docs: dict[ConceptId, list[int]] = {}
    docs_scanned = 0
    duplicate_docs = 0
    saw_header = False
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise ParseError(path, 0, f"cannot open: {exc.strerror or exc}") from exc
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if lineno == 1:
                if line != _STATS_HEADER:
                    raise ParseError(path, 1, "not a found-stats file")
                saw_header = True
                continue
            if not line:
                continue
            fields = line.split("\t")
            tag = fields[0]
            try:
                if tag == "scanned" and len(fields) == 2:
                    docs_scanned = int(fields[1])
                elif tag == "duplicates" and len(fields) == 2:
                    duplicate_docs = int(fields[1])
                elif tag == "K" and len(fields) == 4:
                    key = unescape_field(fields[1])
                    key_docs[key] = int(fields[2])
                    key_occurrences[key] = int(fields[3])
                elif tag == "C" and len(fields) == 5:
                    concept = ConceptId.parse(fields[1])
                    concept_docs[concept] = [int(fields[2]), int(fields[3]), int(fields[4])]
                else:
                    raise ParseError(path, lineno, f"unrecognized record {tag!r}")
            except ValueError:
                raise ParseError(path, lineno, "malformed count") from None
    if not saw_header:
        raise ParseError(path, 0, "empty found-stats file")
    return FoundStats(key_docs, key_occurrences, concept_docs, docs_scanned, duplicate_docs)
