"""Retrieval uncertainty metrics.

Priors assume every variant (or every sharing concept) is equally likely:
querying one spelling of a concept with n spellings retrieves 1/n of its
papers, and a spelling shared by m concepts is on target 1/m of the time.
Empirical counterparts divide observed counts and refuse undefined
denominators instead of coercing them to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UndefinedMetricError, ValidationError

__all__ = [
    "RetrievalOutcome",
    "prior_recall",
    "prior_precision",
    "combined_priors",
    "empirical_recall",
    "empirical_precision",
]


def prior_recall(n_variants: int) -> float:
    """Expected recall when querying one of ``n_variants`` equiprobable spellings."""
    if not isinstance(n_variants, int) or isinstance(n_variants, bool) or n_variants < 1:
        raise ValidationError(f"variant count must be a positive integer, got {n_variants!r}")
    return 1.0 / n_variants


def prior_precision(n_concepts_sharing: int) -> float:
    """Expected precision when a spelling is shared by that many concepts."""
    if (
        not isinstance(n_concepts_sharing, int)
        or isinstance(n_concepts_sharing, bool)
        or n_concepts_sharing < 1
    ):
        raise ValidationError(
            f"sharing-concept count must be a positive integer, got {n_concepts_sharing!r}"
        )
    return 1.0 / n_concepts_sharing


def combined_priors(n_variants: int, n_concepts_sharing: int) -> tuple[float, float]:
    """Joint lower bounds under both effects.

    Variability does not cost precision and ambiguity does not cost
    recall, so each bound is the corresponding single-factor prior times
    an explicit unit factor.
    """
    recall_bound = prior_recall(n_variants) * 1.0
    precision_bound = prior_precision(n_concepts_sharing) * 1.0
    return recall_bound, precision_bound


@dataclass(frozen=True)
class RetrievalOutcome:
    """One query's result against a gold document set."""

    retrieved: frozenset[str]
    relevant: frozenset[str]
    retrieved_relevant: frozenset[str] = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "retrieved_relevant", frozenset(self.retrieved) & frozenset(self.relevant)
        )


def empirical_recall(outcome: RetrievalOutcome) -> float:
    if not outcome.relevant:
        raise UndefinedMetricError("recall is undefined with an empty relevant set")
    return len(outcome.retrieved_relevant) / len(outcome.relevant)


def empirical_precision(outcome: RetrievalOutcome) -> float:
    if not outcome.retrieved:
        raise UndefinedMetricError("precision is undefined with an empty retrieved set")
    return len(outcome.retrieved_relevant) / len(outcome.retrieved)
