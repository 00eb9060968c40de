"""Deterministic report files.

``report.csv`` holds both per-ontology tables, each introduced by a
``#``-prefixed section marker and a header row. The figure series files
are plain three-column TSV (``x<TAB>series<TAB>y``) for external
plotting. Floats are written with shortest-round-trip ``repr`` so the
files are exact; nothing in any output depends on the clock.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .analysis import AmbiguityReport, VariabilityReport

__all__ = [
    "write_report_csv",
    "write_fig_retrieval",
    "write_fig_histogram",
    "write_summary",
    "write_all",
]

VARIABILITY_HEADER = [
    "ontology",
    "n_ids",
    "n_synonyms",
    "avg_synonyms",
    "n_synonyms_found",
    "n_variants",
    "avg_variants",
    "n_variants_found",
    "max_found_variants_per_concept",
    "smallest_expected_recall",
]

AMBIGUITY_HEADER = [
    "ontology",
    "n_same_spelling_within",
    "n_same_spelling_across",
    "n_same_spelling_total",
    "max_objects_per_spelling",
    "smallest_expected_precision",
]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_report_csv(
    path: str | Path, variability: VariabilityReport, ambiguity: AmbiguityReport
) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        fh.write("# variability, one row per ontology\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(VARIABILITY_HEADER)
        for row in variability.rows:
            writer.writerow(
                [
                    row.ontology,
                    row.n_ids,
                    row.n_synonyms,
                    _fmt(row.avg_synonyms),
                    row.n_synonyms_found,
                    row.n_variants,
                    _fmt(row.avg_variants),
                    row.n_variants_found,
                    row.max_found_variants_per_concept,
                    _fmt(row.smallest_expected_recall),
                ]
            )
        fh.write("# ambiguity, one row per ontology\n")
        writer.writerow(AMBIGUITY_HEADER)
        for row in ambiguity.rows:
            writer.writerow(
                [
                    row.ontology,
                    row.n_same_spelling_within,
                    row.n_same_spelling_across,
                    row.n_same_spelling_total,
                    row.max_objects_per_spelling,
                    _fmt(row.smallest_expected_precision),
                ]
            )


def write_fig_retrieval(path: str | Path, variability: VariabilityReport) -> None:
    """Documents retrieved per search mode, relative to the all-variants mode."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        for mode, ontology, ratio in variability.retrieval_series:
            fh.write(f"{mode}\t{ontology}\t{_fmt(ratio)}\n")


def write_fig_histogram(path: str | Path, variability: VariabilityReport) -> None:
    """Concept counts by number of names, variants, and found variants."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        for x, series, y in variability.histogram:
            fh.write(f"{x}\t{series}\t{y}\n")


def write_summary(
    path: str | Path, variability: VariabilityReport, ambiguity: AmbiguityReport
) -> None:
    lines = [
        f"documents scanned: {variability.docs_scanned}"
        + (
            f" (skipped {variability.duplicate_docs} duplicate ids)"
            if variability.duplicate_docs
            else ""
        )
    ]
    for row in variability.rows:
        lines.append(
            f"{row.ontology}: {row.n_ids} concepts, {row.n_synonyms} names "
            f"(avg {row.avg_synonyms:.4f}), {row.n_variants} variants "
            f"(avg {row.avg_variants:.4f}); found {row.n_synonyms_found}/{row.n_synonyms} "
            f"names and {row.n_variants_found}/{row.n_variants} variants; "
            f"max variants found for one concept: {row.max_found_variants_per_concept}"
            + (
                f"; smallest expected recall {row.smallest_expected_recall:.4f}"
                if row.smallest_expected_recall is not None
                else ""
            )
        )
    for row in ambiguity.rows:
        lines.append(
            f"{row.ontology}: {row.n_same_spelling_total} shared spellings "
            f"({row.n_same_spelling_within} within, {row.n_same_spelling_across} across); "
            f"at most {row.max_objects_per_spelling} objects share one spelling; "
            f"smallest expected precision {row.smallest_expected_precision:.4f}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_all(
    out_dir: str | Path, variability: VariabilityReport, ambiguity: AmbiguityReport
) -> list[Path]:
    """Write the full report set into a directory; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    targets = [
        (out / "report.csv", lambda p: write_report_csv(p, variability, ambiguity)),
        (out / "summary.txt", lambda p: write_summary(p, variability, ambiguity)),
        (out / "fig_retrieval.tsv", lambda p: write_fig_retrieval(p, variability)),
        (out / "fig_histogram.tsv", lambda p: write_fig_histogram(p, variability)),
    ]
    for path, writer in targets:
        writer(path)
    return [path for path, _ in targets]
