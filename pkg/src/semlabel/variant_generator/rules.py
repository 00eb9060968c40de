"""Rewrite rules for spelling-variant generation.

Rules are grouped the way terminology work usually slices them:
orthographic, acronym, inflectional, morphological, structural. Each
registered rule id rewrites a surface at exactly one site per
application, so a ``rule_id@site`` trace entry replays deterministically.
Bidirectional config entries register the reverse mechanism as a sibling
rule with the ``~rev`` suffix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable

from ..errors import ConfigurationError, ParseError
from ..text import GREEK_NAME_TO_LATIN, GREEK_NAME_TO_LETTER, GREEK_TO_NAME

__all__ = [
    "RuleGroup",
    "Rewrite",
    "Rule",
    "RuleSet",
    "split_tokens",
    "join_tokens",
    "default_ruleset",
    "load_rule_file",
]


class RuleGroup(Enum):
    ORTHOGRAPHIC = "orthographic"
    ACRONYM = "acronym"
    INFLECTIONAL = "inflectional"
    MORPHOLOGICAL = "morphological"
    STRUCTURAL = "structural"


@dataclass(frozen=True)
class Rewrite:
    surface: str
    site: int


_SEP_CHARS = " ­‐‑‒–—―−-"
# the literal '-' must stay last in the class or it forms a range
_SEP_RE = re.compile(f"[{_SEP_CHARS}]+")


def split_tokens(surface: str) -> tuple[list[str], list[str]]:
    """Split into tokens and the separator runs between them.

    ``len(seps) == len(tokens) - 1``; separators are runs of spaces and
    dashes. Other punctuation stays attached to its token.
    """
    tokens = _SEP_RE.split(surface)
    seps = _SEP_RE.findall(surface)
    # leading/trailing separators produce empty edge tokens; glue them back
    # so rewrites never invent or drop surface padding
    if tokens and tokens[0] == "" and seps:
        tokens = [seps[0] + tokens[1], *tokens[2:]]
        seps = seps[1:]
    if tokens and tokens[-1] == "" and seps:
        tokens = [*tokens[:-2], tokens[-2] + seps[-1]]
        seps = seps[:-1]
    return tokens, seps


def join_tokens(tokens: list[str], seps: list[str]) -> str:
    parts = [tokens[0]]
    for sep, tok in zip(seps, tokens[1:]):
        parts.append(sep)
        parts.append(tok)
    return "".join(parts)


def _sep_is_hyphen(sep: str) -> bool:
    return any(ch != " " for ch in sep)


class Rule:
    """One-directional rewrite mechanism with a stable id."""

    def __init__(
        self,
        rule_id: str,
        group: RuleGroup,
        applications: Callable[[str], list[Rewrite]],
        apply_at: Callable[[str, int], str],
        *,
        direction: str = "forward",
    ):
        if direction not in ("forward", "both"):
            raise ConfigurationError(f"{rule_id}: direction must be 'forward' or 'both'")
        self.id = rule_id
        self.group = group
        self.direction = direction
        self._applications = applications
        self._apply_at = apply_at

    def applications(self, surface: str) -> list[Rewrite]:
        return self._applications(surface)

    def apply_at(self, surface: str, site: int) -> str:
        return self._apply_at(surface, site)

    def __repr__(self):
        return f"Rule({self.id})"


def _junction_rule(rule_id, predicate, new_sep):
    def applications(surface):
        tokens, seps = split_tokens(surface)
        out = []
        for j, sep in enumerate(seps):
            if predicate(sep):
                out.append(Rewrite(join_tokens(tokens, seps[:j] + [new_sep] + seps[j + 1 :]), j))
        return out

    def apply_at(surface, site):
        tokens, seps = split_tokens(surface)
        if not (0 <= site < len(seps)) or not predicate(seps[site]):
            raise ConfigurationError(f"{rule_id}: not applicable at junction {site} of {surface!r}")
        return join_tokens(tokens, seps[:site] + [new_sep] + seps[site + 1 :])

    return applications, apply_at


def _token_map_rule(rule_id, mapper):
    """mapper(token, index, n_tokens) -> replacement or None."""

    def applications(surface):
        tokens, seps = split_tokens(surface)
        out = []
        for t, token in enumerate(tokens):
            replacement = mapper(token, t, len(tokens))
            if replacement is not None and replacement != token:
                out.append(Rewrite(join_tokens(tokens[:t] + [replacement] + tokens[t + 1 :], seps), t))
        return out

    def apply_at(surface, site):
        tokens, seps = split_tokens(surface)
        if not (0 <= site < len(tokens)):
            raise ConfigurationError(f"{rule_id}: no token {site} in {surface!r}")
        replacement = mapper(tokens[site], site, len(tokens))
        if replacement is None or replacement == tokens[site]:
            raise ConfigurationError(f"{rule_id}: not applicable to token {site} of {surface!r}")
        return join_tokens(tokens[:site] + [replacement] + tokens[site + 1 :], seps)

    return applications, apply_at


# --- orthographic -----------------------------------------------------

def _greek_spell_applications(surface):
    out = []
    for i, ch in enumerate(surface):
        if ch in GREEK_TO_NAME:
            out.append(Rewrite(surface[:i] + GREEK_TO_NAME[ch] + surface[i + 1 :], i))
    return out


def _greek_spell_apply_at(surface, site):
    if not (0 <= site < len(surface)) or surface[site] not in GREEK_TO_NAME:
        raise ConfigurationError(f"orth.spell_greek: no Greek letter at offset {site}")
    return surface[:site] + GREEK_TO_NAME[surface[site]] + surface[site + 1 :]


def _greek_letter_mapper(token, t, n):
    return GREEK_NAME_TO_LETTER.get(token.lower())


def _greek_latin_mapper(token, t, n):
    if t != n - 1:  # trailing token only; "a" elsewhere is just an article
        return None
    return GREEK_NAME_TO_LATIN.get(token.lower())


_ROMAN_OF_ARABIC = {}
_ARABIC_OF_ROMAN = {}


def _build_roman_tables():
    ones = ["", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"]
    for n in range(1, 21):
        tens, rest = divmod(n, 10)
        roman = "x" * tens + ones[rest]
        _ROMAN_OF_ARABIC[str(n)] = roman
        _ARABIC_OF_ROMAN[roman] = str(n)
        _ARABIC_OF_ROMAN[roman.upper()] = str(n)


_build_roman_tables()


def _arabic_to_roman_lower(token, t, n):
    return _ROMAN_OF_ARABIC.get(token)


def _arabic_to_roman_upper(token, t, n):
    roman = _ROMAN_OF_ARABIC.get(token)
    return roman.upper() if roman else None


def _roman_to_arabic(token, t, n):
    return _ARABIC_OF_ROMAN.get(token)


def _lowercase_applications(surface):
    low = surface.lower()
    if low != surface:
        return [Rewrite(low, 0)]
    return []


def _lowercase_apply_at(surface, site):
    low = surface.lower()
    if site != 0 or low == surface:
        raise ConfigurationError(f"orth.lowercase: not applicable to {surface!r}")
    return low


# --- inflectional ------------------------------------------------------

_VOWELS = set("aeiou")


def _pluralize(token: str) -> str | None:
    if not token.isalpha() or len(token) < 2:
        return None
    low = token.lower()
    if low.endswith("s"):
        return None
    if low.endswith(("x", "z", "ch", "sh")):
        return token + "es"
    if low.endswith("y") and len(token) > 2 and low[-2] not in _VOWELS:
        return token[:-1] + ("IES" if token[-1].isupper() else "ies")
    return token + ("S" if token[-1].isupper() and token.isupper() else "s")


def _singularize(token: str) -> str | None:
    if not token.isalpha():
        return None
    low = token.lower()
    if low.endswith("ies") and len(token) > 4:
        return token[:-3] + ("Y" if token[-1].isupper() else "y")
    if low.endswith(("xes", "zes", "ches", "shes", "sses")) and len(token) > 4:
        return token[:-2]
    if low.endswith("s") and not low.endswith(("ss", "us", "is")) and len(token) >= 3:
        return token[:-1]
    return None


def _final_token_rule(rule_id, mapper):
    def wrapped(token, t, n):
        if t != n - 1:
            return None
        return mapper(token)

    return _token_map_rule(rule_id, wrapped)


# --- structural --------------------------------------------------------

def _shift_rule(rule_id, left_hyphen: bool):
    """Swap a (hyphen, space) junction pair, moving the hyphen one slot."""

    def predicate(seps, j):
        a, b = _sep_is_hyphen(seps[j]), _sep_is_hyphen(seps[j + 1])
        return (a and not b) if left_hyphen else (not a and b)

    def applications(surface):
        tokens, seps = split_tokens(surface)
        out = []
        for j in range(len(seps) - 1):
            if predicate(seps, j):
                new = list(seps)
                new[j], new[j + 1] = (" ", "-") if left_hyphen else ("-", " ")
                out.append(Rewrite(join_tokens(tokens, new), j))
        return out

    def apply_at(surface, site):
        tokens, seps = split_tokens(surface)
        if not (0 <= site < len(seps) - 1) or not predicate(seps, site):
            raise ConfigurationError(f"{rule_id}: not applicable at junction {site} of {surface!r}")
        new = list(seps)
        new[site], new[site + 1] = (" ", "-") if left_hyphen else ("-", " ")
        return join_tokens(tokens, new)

    return applications, apply_at


_TRAILING_NUMBER_RE = re.compile(r"^([^\W\d_]+)(\d+)$")


def _split_number_rule(rule_id, sep):
    def mapper(token, t, n):
        if t != n - 1:
            return None
        match = _TRAILING_NUMBER_RE.match(token)
        if not match:
            return None
        return match.group(1) + sep + match.group(2)

    return _token_map_rule(rule_id, mapper)


# --- data-driven rules (acronym lexicon, spelling maps) -----------------

def _suffix_rule(rule_id, old: str, new: str):
    def mapper(token, t, n):
        if token.lower().endswith(old) and len(token) > len(old):
            return token[: len(token) - len(old)] + new
        return None

    return _token_map_rule(rule_id, mapper)


def _phrase_contract_rule(rule_id, phrase: str, abbrev: str):
    """Replace a token subsequence spelling out ``phrase`` with ``abbrev``."""
    phrase_tokens = [t.lower() for t in split_tokens(phrase)[0]]
    width = len(phrase_tokens)

    def matches_at(tokens, i):
        if i + width > len(tokens):
            return False
        return [t.lower() for t in tokens[i : i + width]] == phrase_tokens

    def rebuild(tokens, seps, i):
        new_tokens = tokens[:i] + [abbrev] + tokens[i + width :]
        new_seps = seps[:i] + seps[i + width - 1 :]
        return join_tokens(new_tokens, new_seps)

    def applications(surface):
        tokens, seps = split_tokens(surface)
        return [
            Rewrite(rebuild(tokens, seps, i), i)
            for i in range(len(tokens))
            if matches_at(tokens, i)
        ]

    def apply_at(surface, site):
        tokens, seps = split_tokens(surface)
        if not matches_at(tokens, site):
            raise ConfigurationError(f"{rule_id}: phrase not at token {site} of {surface!r}")
        return rebuild(tokens, seps, site)

    return applications, apply_at


def _phrase_expand_rule(rule_id, phrase: str, abbrev: str):
    def mapper(token, t, n):
        if token == abbrev:
            return phrase
        return None

    return _token_map_rule(rule_id, mapper)


def _token_swap_rule(rule_id, old: str, new: str):
    def mapper(token, t, n):
        if token.lower() == old.lower():
            return new
        return None

    return _token_map_rule(rule_id, mapper)


# --- rule set ----------------------------------------------------------

class RuleSet:
    """Ordered, id-addressable collection of rules.

    Iteration respects group order (orthographic, acronym, inflectional,
    morphological, structural) then registration order, which pins the
    breadth-first exploration order of the generator.
    """

    def __init__(self):
        self._rules: dict[str, Rule] = {}

    def register(self, rule: Rule) -> None:
        if rule.id in self._rules:
            raise ConfigurationError(f"duplicate rule id {rule.id}")
        self._rules[rule.id] = rule

    def __contains__(self, rule_id: str) -> bool:
        return rule_id in self._rules

    def __getitem__(self, rule_id: str) -> Rule:
        rule = self._rules.get(rule_id)
        if rule is None:
            raise ConfigurationError(f"unknown rule id {rule_id}")
        return rule

    def __len__(self):
        return len(self._rules)

    def rules(self, groups: Iterable[RuleGroup] | None = None) -> list[Rule]:
        wanted = set(RuleGroup) if groups is None else set(groups)
        ordered = []
        for group in RuleGroup:
            if group not in wanted:
                continue
            ordered.extend(r for r in self._rules.values() if r.group is group)
        return ordered

    def ids(self) -> list[str]:
        return list(self._rules)


def _register_builtins(rs: RuleSet) -> None:
    g = RuleGroup.ORTHOGRAPHIC
    rs.register(Rule("orth.spell_greek", g, _greek_spell_applications, _greek_spell_apply_at, direction="both"))
    rs.register(Rule("orth.greek_letter", g, *_token_map_rule("orth.greek_letter", _greek_letter_mapper), direction="both"))
    rs.register(Rule("orth.greek_latin", g, *_token_map_rule("orth.greek_latin", _greek_latin_mapper)))
    rs.register(Rule("orth.hyphen_to_space", g, *_junction_rule("orth.hyphen_to_space", _sep_is_hyphen, " "), direction="both"))
    rs.register(Rule("orth.space_to_hyphen", g, *_junction_rule("orth.space_to_hyphen", lambda s: not _sep_is_hyphen(s), "-"), direction="both"))
    rs.register(Rule("orth.fuse", g, *_junction_rule("orth.fuse", lambda s: True, "")))
    rs.register(Rule("orth.arabic_to_roman", g, *_token_map_rule("orth.arabic_to_roman", _arabic_to_roman_lower), direction="both"))
    rs.register(Rule("orth.arabic_to_roman_upper", g, *_token_map_rule("orth.arabic_to_roman_upper", _arabic_to_roman_upper), direction="both"))
    rs.register(Rule("orth.roman_to_arabic", g, *_token_map_rule("orth.roman_to_arabic", _roman_to_arabic), direction="both"))
    rs.register(Rule("orth.lowercase", g, _lowercase_applications, _lowercase_apply_at))

    g = RuleGroup.INFLECTIONAL
    rs.register(Rule("infl.plural", g, *_final_token_rule("infl.plural", _pluralize), direction="both"))
    rs.register(Rule("infl.singular", g, *_final_token_rule("infl.singular", _singularize), direction="both"))

    g = RuleGroup.STRUCTURAL
    rs.register(Rule("struct.shift_hyphen_right", g, *_shift_rule("struct.shift_hyphen_right", True), direction="both"))
    rs.register(Rule("struct.shift_hyphen_left", g, *_shift_rule("struct.shift_hyphen_left", False), direction="both"))
    rs.register(Rule("struct.split_number", g, *_split_number_rule("struct.split_number", " "), direction="both"))
    rs.register(Rule("struct.split_number_hyphen", g, *_split_number_rule("struct.split_number_hyphen", "-"), direction="both"))


_GROUP_BY_NAME = {grp.value: grp for grp in RuleGroup}


def load_rule_file(rs: RuleSet, path: str | Path) -> int:
    """Register data rules from a config file.

    Format: ``<group> <TAB> <rule-id> <TAB> <pattern> <TAB> <replacement>
    <TAB> <direction>`` where direction is ``both`` or ``forward``.
    Acronym entries treat the pattern as a spelled-out phrase and the
    replacement as its abbreviation; morphological entries as token
    suffixes; all other groups as whole-token literals.
    """
    count = 0
    for lineno, fields in iter_rule_records(path):
        group_name, rule_id, pattern, replacement, direction = fields
        group = _GROUP_BY_NAME.get(group_name)
        if group is None:
            raise ParseError(path, lineno, f"unknown rule group {group_name!r}")
        if direction not in ("both", "forward"):
            raise ParseError(path, lineno, f"direction must be 'both' or 'forward', got {direction!r}")
        pattern = unescape_rule_field(pattern)
        replacement = unescape_rule_field(replacement)
        if not pattern or not replacement:
            raise ParseError(path, lineno, "empty pattern or replacement")
        if group is RuleGroup.ACRONYM:
            fwd = _phrase_contract_rule(rule_id, pattern, replacement)
            rev = _phrase_expand_rule(f"{rule_id}~rev", pattern, replacement)
        elif group is RuleGroup.MORPHOLOGICAL:
            fwd = _suffix_rule(rule_id, pattern.lower(), replacement)
            rev = _suffix_rule(f"{rule_id}~rev", replacement.lower(), pattern)
        else:
            fwd = _token_swap_rule(rule_id, pattern, replacement)
            rev = _token_swap_rule(f"{rule_id}~rev", replacement, pattern)
        rs.register(Rule(rule_id, group, *fwd, direction=direction))
        count += 1
        if direction == "both":
            rs.register(Rule(f"{rule_id}~rev", group, *rev, direction="both"))
            count += 1
    return count


def iter_rule_records(path):
    from ..formats import iter_records

    return iter_records(path, 5)


def unescape_rule_field(value: str) -> str:
    from ..formats import unescape_field

    return unescape_field(value)


def _data_path(name: str) -> Path:
    return Path(str(resources.files("semlabel.variant_generator").joinpath("data", name)))


def default_ruleset() -> RuleSet:
    """Builtin mechanisms plus the shipped acronym and spelling lexicons."""
    rs = RuleSet()
    _register_builtins(rs)
    load_rule_file(rs, _data_path("acronyms.tsv"))
    load_rule_file(rs, _data_path("british_american.tsv"))
    return rs
