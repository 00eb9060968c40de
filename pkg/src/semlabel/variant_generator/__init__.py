"""Spelling-variant generation for ontology terms."""

from .dump import read_variants, write_variants
from .generator import (
    DEFAULT_BUDGET,
    Provenance,
    TermVariant,
    generate_all,
    generate_variants,
    replay_trace,
    variant_count,
)
from .rules import RuleGroup, RuleSet, default_ruleset, load_rule_file

__all__ = [
    "DEFAULT_BUDGET",
    "read_variants",
    "write_variants",
    "Provenance",
    "TermVariant",
    "RuleGroup",
    "RuleSet",
    "default_ruleset",
    "load_rule_file",
    "generate_all",
    "generate_variants",
    "replay_trace",
    "variant_count",
]
