"""Variability/ambiguity uncertainty model and report generation."""

from .analysis import (
    RETRIEVAL_MODES,
    AmbiguityReport,
    AmbiguityRow,
    VariabilityReport,
    VariabilityRow,
    ambiguity_report,
    variability_report,
)
from .metrics import (
    RetrievalOutcome,
    combined_priors,
    empirical_precision,
    empirical_recall,
    prior_precision,
    prior_recall,
)
from .reports import (
    write_all,
    write_fig_histogram,
    write_fig_retrieval,
    write_report_csv,
    write_summary,
)

__all__ = [
    "RETRIEVAL_MODES",
    "AmbiguityReport",
    "AmbiguityRow",
    "VariabilityReport",
    "VariabilityRow",
    "ambiguity_report",
    "variability_report",
    "RetrievalOutcome",
    "combined_priors",
    "empirical_precision",
    "empirical_recall",
    "prior_precision",
    "prior_recall",
    "write_all",
    "write_fig_histogram",
    "write_fig_retrieval",
    "write_report_csv",
    "write_summary",
]
