"""Character-level canonicalization used by every term-handling module.

A single normal form is shared by the ontology store, the variant
generator, and the corpus matcher, so that "TNF-α", "TNF  alpha" and
"tnf alpha" all collapse to one retrieval key. The matcher additionally
needs a character-by-character view of the same transformation (see
:func:`expand_char`) to map matches in normalized space back to byte
offsets in the original document.
"""

from __future__ import annotations

import unicodedata

from .errors import ValidationError

__all__ = [
    "GREEK_TO_NAME",
    "GREEK_NAME_TO_LETTER",
    "GREEK_NAME_TO_LATIN",
    "DASH_CHARS",
    "normalize_term",
    "is_short_acronym",
    "is_word_char",
    "expand_char",
]

# Spelled-out names for the full Greek alphabet, both cases. The lowercase
# name is the canonical form; case of the source letter is deliberately
# dropped because spelled-out Greek is conventionally written in lowercase.
_GREEK_NAMES = [
    ("alpha", "α", "Α"),
    ("beta", "β", "Β"),
    ("gamma", "γ", "Γ"),
    ("delta", "δ", "Δ"),
    ("epsilon", "ε", "Ε"),
    ("zeta", "ζ", "Ζ"),
    ("eta", "η", "Η"),
    ("theta", "θ", "Θ"),
    ("iota", "ι", "Ι"),
    ("kappa", "κ", "Κ"),
    ("lambda", "λ", "Λ"),
    ("mu", "μ", "Μ"),
    ("nu", "ν", "Ν"),
    ("xi", "ξ", "Ξ"),
    ("omicron", "ο", "Ο"),
    ("pi", "π", "Π"),
    ("rho", "ρ", "Ρ"),
    ("sigma", "σ", "Σ"),
    ("tau", "τ", "Τ"),
    ("upsilon", "υ", "Υ"),
    ("phi", "φ", "Φ"),
    ("chi", "χ", "Χ"),
    ("psi", "ψ", "Ψ"),
    ("omega", "ω", "Ω"),
]

GREEK_TO_NAME: dict[str, str] = {}
for _name, _lower, _upper in _GREEK_NAMES:
    GREEK_TO_NAME[_lower] = _name
    GREEK_TO_NAME[_upper] = _name
GREEK_TO_NAME["ς"] = "sigma"  # final sigma

GREEK_NAME_TO_LETTER: dict[str, str] = {n: lo for n, lo, _ in _GREEK_NAMES}

# Single-Latin-letter fallback: the conventional ASCII stand-in is the
# first letter of the spelled-out name ("alpha" -> "a").
GREEK_NAME_TO_LATIN: dict[str, str] = {n: n[0] for n, _, _ in _GREEK_NAMES}

# Every character treated as a hyphen. NFKC already folds the fullwidth
# and small forms into U+002D, but the typographic dashes survive it.
DASH_CHARS = frozenset(
    "-"
    "­"  # soft hyphen
    "‐"  # hyphen
    "‑"  # non-breaking hyphen
    "‒"  # figure dash
    "–"  # en dash
    "—"  # em dash
    "―"  # horizontal bar
    "−"  # minus sign
)

_ACRONYM_MAX_LEN = 4


def is_word_char(ch: str) -> bool:
    """Letters and digits (Greek included) bind into tokens; all else splits."""
    return ch.isalnum()


def is_short_acronym(term: str) -> bool:
    """True for single tokens of at most four characters holding an uppercase letter.

    Such surfaces keep their case through normalization so that the gene
    symbol "CAT" and the animal "cat" stay distinct retrieval keys.
    """
    return (
        len(term) <= _ACRONYM_MAX_LEN
        and " " not in term
        and any(c.isupper() for c in term)
    )


def normalize_term(surface: str) -> str:
    """Map a raw surface form to its canonical retrieval key.

    Steps, in order: Unicode NFKC, Greek letters to spelled-out names,
    hyphens/dashes and whitespace runs to a single space, then lowercase
    unless the result is a short acronym (see :func:`is_short_acronym`).
    The function is idempotent and raises on surfaces that are empty after
    trimming.
    """
    if surface is None or not surface.strip():
        raise ValidationError("cannot normalize an empty term")
    folded = unicodedata.normalize("NFKC", surface)
    parts = []
    for ch in folded:
        if ch in GREEK_TO_NAME:
            parts.append(GREEK_TO_NAME[ch])
        elif ch in DASH_CHARS or ch.isspace():
            parts.append(" ")
        else:
            parts.append(ch)
    collapsed = " ".join("".join(parts).split())
    if not collapsed:
        raise ValidationError("term is empty after normalization")
    if is_short_acronym(collapsed):
        return collapsed
    return collapsed.lower()


_EXPAND_CACHE: dict[str, tuple[str, str]] = {}


def expand_char(ch: str) -> tuple[str, str]:
    """Per-character slice of the :func:`normalize_term` pipeline.

    Returns ``(lowered, preserved)`` expansions of equal length. Whitespace
    and dashes expand to a single space (run collapsing is the caller's
    job); Greek letters expand to their spelled-out names. ``preserved``
    differs from ``lowered`` only in letter case, which lets the matcher
    re-check the short-acronym case rule on a candidate window without
    re-normalizing it.
    """
    cached = _EXPAND_CACHE.get(ch)
    if cached is not None:
        return cached
    low_parts: list[str] = []
    pres_parts: list[str] = []
    for c in unicodedata.normalize("NFKC", ch):
        if c in GREEK_TO_NAME:
            name = GREEK_TO_NAME[c]
            low_parts.append(name)
            pres_parts.append(name)
        elif c in DASH_CHARS or c.isspace():
            low_parts.append(" ")
            pres_parts.append(" ")
        else:
            low = c.lower()
            low_parts.append(low)
            # rare multi-char lowerings are padded so both sides stay aligned
            pres_parts.append(c + low[1:] if len(low) > 1 else c)
    result = ("".join(low_parts), "".join(pres_parts))
    _EXPAND_CACHE[ch] = result
    return result
