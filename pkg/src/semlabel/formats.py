"""Line-oriented file formats shared by the CLI and the library.

Every format is tab-separated UTF-8 with ``#`` comment lines. Fields that
can legally contain tabs, newlines, pipes, or backslashes are escaped with
backslash sequences so a record is always exactly one physical line.
"""

from __future__ import annotations

import io
from collections.abc import Iterable, Iterator
from pathlib import Path

from .errors import ParseError

__all__ = [
    "escape_field",
    "unescape_field",
    "iter_records",
    "read_corpus",
    "write_corpus",
    "CorpusRecord",
]

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r", "|": "|"}


def escape_field(value: str, *, pipes: bool = False) -> str:
    out = []
    for ch in value:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif pipes and ch == "|":
            out.append("\\|")
        else:
            out.append(ch)
    return "".join(out)


def unescape_field(value: str) -> str:
    if "\\" not in value:
        return value
    out = []
    it = iter(range(len(value)))
    i = 0
    n = len(value)
    while i < n:
        ch = value[i]
        if ch == "\\" and i + 1 < n:
            nxt = value[i + 1]
            if nxt in _UNESCAPES:
                out.append(_UNESCAPES[nxt])
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def split_pipes(value: str) -> list[str]:
    """Split a pipe-delimited list field, honoring ``\\|`` escapes."""
    items = []
    cur = []
    i = 0
    n = len(value)
    while i < n:
        ch = value[i]
        if ch == "\\" and i + 1 < n:
            cur.append(ch)
            cur.append(value[i + 1])
            i += 2
            continue
        if ch == "|":
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
        i += 1
    items.append("".join(cur))
    return items


def iter_records(path: str | Path, n_fields: int, *, min_fields: int | None = None) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(lineno, fields)`` from a TSV file, skipping comments and blanks.

    Records with a field count outside ``[min_fields, n_fields]`` raise
    :class:`ParseError` naming the path and line.
    """
    low = n_fields if min_fields is None else min_fields
    path = Path(path)
    try:
        handle = path.open("r", encoding="utf-8", newline="")
    except OSError as exc:
        raise ParseError(path, 0, f"cannot open file: {exc}") from exc
    with handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if not (low <= len(fields) <= n_fields):
                raise ParseError(
                    path,
                    lineno,
                    f"expected {n_fields} tab-separated fields, got {len(fields)}",
                )
            while len(fields) < n_fields:
                fields.append("")
            yield lineno, fields


class CorpusRecord:
    """One document of a scanning corpus: ``doc_id``, ``source``, raw text."""

    __slots__ = ("doc_id", "source", "text")

    def __init__(self, doc_id: str, source: str, text: str):
        self.doc_id = doc_id
        self.source = source
        self.text = text

    def __repr__(self):
        return f"CorpusRecord({self.doc_id!r}, {self.source!r}, {len(self.text)} chars)"

    def __eq__(self, other):
        return (
            isinstance(other, CorpusRecord)
            and (self.doc_id, self.source, self.text)
            == (other.doc_id, other.source, other.text)
        )


def read_corpus(path: str | Path) -> Iterator[CorpusRecord]:
    """Stream ``<doc_id> <source> <text>`` records; text unescapes tabs/newlines."""
    for lineno, (doc_id, source, text) in _three_fields(path):
        if not doc_id:
            raise ParseError(path, lineno, "empty doc_id")
        yield CorpusRecord(doc_id, source, unescape_field(text))


def _three_fields(path):
    for lineno, fields in iter_records(path, 3):
        yield lineno, fields


def write_corpus(path: str | Path, records: Iterable[CorpusRecord]) -> int:
    count = 0
    with Path(path).open("w", encoding="utf-8", newline="") as out:
        for rec in records:
            out.write(
                f"{rec.doc_id}\t{rec.source}\t{escape_field(rec.text)}\n"
            )
            count += 1
    return count


def open_text_out(path: str | Path) -> io.TextIOWrapper:
    return Path(path).open("w", encoding="utf-8", newline="")
