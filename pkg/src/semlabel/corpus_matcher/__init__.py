"""Multi-pattern corpus scanning over the variant index."""

from .backend import SCAN_BACKEND
from .engine import Document, FoundStats, Occurrence, scan_corpus, scan_document
from .index import (
    TIER_GENERATED,
    TIER_ORIGINAL,
    TIER_PRIMARY,
    TermIndex,
    build_index,
)
from .stats import (
    read_found_stats,
    read_occurrences,
    write_found_stats,
    write_occurrences,
)

__all__ = [
    "SCAN_BACKEND",
    "Document",
    "FoundStats",
    "Occurrence",
    "scan_corpus",
    "scan_document",
    "TermIndex",
    "build_index",
    "TIER_PRIMARY",
    "TIER_ORIGINAL",
    "TIER_GENERATED",
    "read_found_stats",
    "read_occurrences",
    "write_found_stats",
    "write_occurrences",
]
