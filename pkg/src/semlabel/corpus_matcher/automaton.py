"""Aho-Corasick automaton over normalized pattern strings.

Built once per index. Two views of the transition table are kept: the
dict-per-state form the pure-Python kernel walks directly, and a flat
CSR (sorted char / next-state arrays per state) layout for the compiled
kernel. Output lists are fully propagated along failure links so a scan
never has to chase them.
"""

from __future__ import annotations

from array import array
from collections import deque
from typing import Sequence

__all__ = ["Automaton", "build_automaton"]


class Automaton:
    __slots__ = (
        "children",
        "fail",
        "out",
        "trans_start",
        "trans_char",
        "trans_next",
        "out_start",
        "out_pid",
        "root_ascii",
        "fail_arr",
    )

    def __init__(self, children, fail, out):
        self.children: list[dict[str, int]] = children
        self.fail: list[int] = fail
        self.out: list[tuple[int, ...]] = out
        self._flatten()

    def _flatten(self):
        n_states = len(self.children)
        trans_start = array("i", [0] * (n_states + 1))
        trans_char = array("I")
        trans_next = array("i")
        out_start = array("i", [0] * (n_states + 1))
        out_pid = array("i")
        for s in range(n_states):
            items = sorted((ord(ch), nxt) for ch, nxt in self.children[s].items())
            for code, nxt in items:
                trans_char.append(code)
                trans_next.append(nxt)
            trans_start[s + 1] = len(trans_char)
            for pid in self.out[s]:
                out_pid.append(pid)
            out_start[s + 1] = len(out_pid)
        root_ascii = array("i", [0] * 128)
        for ch, nxt in self.children[0].items():
            code = ord(ch)
            if code < 128:
                root_ascii[code] = nxt
        self.trans_start = trans_start
        self.trans_char = trans_char
        self.trans_next = trans_next
        self.out_start = out_start
        self.out_pid = out_pid
        self.root_ascii = root_ascii
        self.fail_arr = array("i", self.fail)

    @property
    def n_states(self) -> int:
        return len(self.children)


def build_automaton(patterns: Sequence[str]) -> Automaton:
    """Construct the automaton for a sequence of distinct nonempty patterns."""
    children: list[dict[str, int]] = [{}]
    out: list[list[int]] = [[]]
    for pid, pattern in enumerate(patterns):
        state = 0
        for ch in pattern:
            nxt = children[state].get(ch)
            if nxt is None:
                children.append({})
                out.append([])
                nxt = len(children) - 1
                children[state][ch] = nxt
            state = nxt
        out[state].append(pid)

    fail = [0] * len(children)
    queue: deque[int] = deque()
    for state in children[0].values():
        queue.append(state)
    while queue:
        r = queue.popleft()
        for ch, s in children[r].items():
            queue.append(s)
            f = fail[r]
            while f and ch not in children[f]:
                f = fail[f]
            candidate = children[f].get(ch, 0)
            fail[s] = candidate if candidate != s else 0
            if out[fail[s]]:
                out[s] = out[s] + out[fail[s]]
    return Automaton(children, fail, [tuple(o) for o in out])
