"""Breadth-first closure of the rewrite rules over a concept's names."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from ..errors import ConfigurationError, NotFoundError
from ..ontology_store import Concept, ConceptId
from ..text import normalize_term
from .rules import RuleGroup, RuleSet, default_ruleset

__all__ = [
    "Provenance",
    "TermVariant",
    "generate_variants",
    "generate_all",
    "variant_count",
    "replay_trace",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10_000


class Provenance(Enum):
    ORIGINAL = "original"
    GENERATED = "generated"


@dataclass(frozen=True)
class TermVariant:
    surface: str
    normalized_key: str
    concept: ConceptId
    provenance: Provenance
    rule_trace: tuple[str, ...] = ()


_shared_ruleset: RuleSet | None = None


def _ruleset() -> RuleSet:
    global _shared_ruleset
    if _shared_ruleset is None:
        _shared_ruleset = default_ruleset()
    return _shared_ruleset


def generate_variants(
    concept: Concept,
    budget: int = DEFAULT_BUDGET,
    *,
    ruleset: RuleSet | None = None,
    groups: Iterable[RuleGroup] | None = None,
) -> tuple[TermVariant, ...]:
    """Expand a concept's names into the closure of all rule rewrites.

    Returns variants in breadth-first discovery order: the primary name
    first, then the remaining original names, then generated spellings.
    Exact duplicate surfaces are produced once, by their first derivation.
    Expansion stops at ``budget`` total variants; a budget smaller than
    the number of original names is a configuration error.
    """
    seeds = concept.names()
    if budget < len(seeds):
        raise ConfigurationError(
            f"budget {budget} below the {len(seeds)} original names of {concept.id.curie}"
        )
    rules = (ruleset or _ruleset()).rules(groups)
    out: dict[str, TermVariant] = {}
    queue: deque[str] = deque()
    for seed in seeds:
        if seed in out:
            continue
        out[seed] = TermVariant(seed, normalize_term(seed), concept.id, Provenance.ORIGINAL)
        queue.append(seed)
    while queue and len(out) < budget:
        current = queue.popleft()
        trace = out[current].rule_trace
        for rule in rules:
            for rewrite in rule.applications(current):
                surface = rewrite.surface.strip()
                if not surface or surface in out:
                    continue
                out[surface] = TermVariant(
                    surface,
                    normalize_term(surface),
                    concept.id,
                    Provenance.GENERATED,
                    trace + (f"{rule.id}@{rewrite.site}",),
                )
                queue.append(surface)
                if len(out) >= budget:
                    return tuple(out.values())
    return tuple(out.values())


def generate_all(
    concepts: Iterable[Concept],
    budget: int = DEFAULT_BUDGET,
    *,
    ruleset: RuleSet | None = None,
    groups: Iterable[RuleGroup] | None = None,
) -> dict[ConceptId, tuple[TermVariant, ...]]:
    rs = ruleset or _ruleset()
    return {
        concept.id: generate_variants(concept, budget, ruleset=rs, groups=groups)
        for concept in concepts
    }


def variant_count(
    variants: Mapping[ConceptId, tuple[TermVariant, ...]], concept_id: ConceptId
) -> int:
    """Size of a concept's generated set; unknown concepts raise, never 0."""
    found = variants.get(concept_id)
    if found is None:
        raise NotFoundError(f"no variants generated for {concept_id.curie}")
    return len(found)


def replay_trace(seed: str, rule_trace: Iterable[str], ruleset: RuleSet | None = None) -> str:
    """Re-run a recorded derivation from a seed surface."""
    rs = ruleset or _ruleset()
    surface = seed
    for entry in rule_trace:
        rule_id, _, site = entry.rpartition("@")
        surface = rs[rule_id].apply_at(surface, int(site))
    return surface
