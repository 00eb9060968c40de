"""Pure-Python scan kernels.

Reference implementation of the two hot loops: shadow-text construction
and the automaton walk. The compiled kernel in ``_scan_cy`` mirrors this
behaviour exactly; both are exercised against each other in the tests.
"""

from __future__ import annotations

from array import array

from ..text import expand_char

BACKEND_NAME = "python"


def _ascii_tables():
    spaceish = []
    lowers = []
    for code in range(128):
        ch = chr(code)
        if ch == "-" or ch.isspace():
            spaceish.append(True)
            lowers.append(" ")
        else:
            spaceish.append(False)
            lowers.append(ch.lower())
    return spaceish, lowers


_SPACEISH, _LOWERS = _ascii_tables()


def build_shadow(text: str) -> tuple[str, str, array]:
    """Return (lowered shadow, case-preserved shadow, origin index per char).

    Both shadows have identical length. Runs of whitespace and dash
    characters collapse to a single space; leading and trailing runs are
    dropped entirely. Greek letters expand to their spelled names and
    compatibility forms are decomposed, one original character possibly
    contributing several shadow positions (all sharing its index).
    """
    low_parts: list[str] = []
    pres_parts: list[str] = []
    idx: list[int] = []
    pending_space = -1
    for i, ch in enumerate(text):
        code = ord(ch)
        if code < 128:
            if _SPACEISH[code]:
                if idx:
                    pending_space = i
                continue
            if pending_space >= 0:
                low_parts.append(" ")
                pres_parts.append(" ")
                idx.append(pending_space)
                pending_space = -1
            low_parts.append(_LOWERS[code])
            pres_parts.append(ch)
            idx.append(i)
            continue
        lowered, preserved = expand_char(ch)
        for lo_c, pr_c in zip(lowered, preserved):
            if lo_c == " ":
                if idx:
                    pending_space = i
                continue
            if pending_space >= 0:
                low_parts.append(" ")
                pres_parts.append(" ")
                idx.append(pending_space)
                pending_space = -1
            low_parts.append(lo_c)
            pres_parts.append(pr_c)
            idx.append(i)
    return "".join(low_parts), "".join(pres_parts), array("i", idx)


def find_hits(shadow: str, automaton) -> list[tuple[int, int]]:
    """Walk the automaton over ``shadow``; return (end position, pattern id) pairs."""
    children = automaton.children
    fail = automaton.fail
    out = automaton.out
    root = children[0]
    state = 0
    hits: list[tuple[int, int]] = []
    for i, ch in enumerate(shadow):
        if state == 0:
            state = root.get(ch, 0)
        else:
            while True:
                nxt = children[state].get(ch)
                if nxt is not None:
                    state = nxt
                    break
                state = fail[state]
                if state == 0:
                    state = root.get(ch, 0)
                    break
        pids = out[state]
        if pids:
            for pid in pids:
                hits.append((i, pid))
    return hits
