# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels.

Mirrors ``_scan_py`` exactly: same shadow construction, same automaton
walk. Non-ASCII characters still go through the shared (cached)
``expand_char`` so the two backends cannot drift on Unicode handling;
the ASCII fast path and the state machine run as C loops.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

from array import array

from semlabel.text import expand_char

from semlabel.corpus_matcher import _scan_py

cdef extern from "Python.h":
    object PyUnicode_FromKindAndData(int kind, const void *buffer, Py_ssize_t size)
    int PyUnicode_4BYTE_KIND
    Py_UCS4 PyUnicode_READ_CHAR(object u, Py_ssize_t i)
    Py_ssize_t PyUnicode_GET_LENGTH(object u)

BACKEND_NAME = "cython"

cdef int _ASCII_SPACEISH[128]
cdef Py_UCS4 _ASCII_LOWER[128]

def _init_tables():
    spaceish, lowers = _scan_py._SPACEISH, _scan_py._LOWERS
    cdef int code
    for code in range(128):
        _ASCII_SPACEISH[code] = 1 if spaceish[code] else 0
        _ASCII_LOWER[code] = <Py_UCS4> ord(lowers[code])

_init_tables()

_expand_char = expand_char


def build_shadow(text):
    """See ``_scan_py.build_shadow``; identical contract."""
    cdef Py_ssize_t n = PyUnicode_GET_LENGTH(text)
    cdef Py_ssize_t cap = 2 * n + 8
    cdef Py_UCS4 *low_buf = <Py_UCS4 *> malloc(cap * sizeof(Py_UCS4))
    cdef Py_UCS4 *pres_buf = <Py_UCS4 *> malloc(cap * sizeof(Py_UCS4))
    cdef int *idx_buf = <int *> malloc(cap * sizeof(int))
    if low_buf == NULL or pres_buf == NULL or idx_buf == NULL:
        free(low_buf); free(pres_buf); free(idx_buf)
        raise MemoryError()
    cdef Py_ssize_t used = 0
    cdef Py_ssize_t pending_space = -1
    cdef Py_ssize_t i, j, m, need
    cdef Py_UCS4 ch, lo_c, pr_c
    cdef unsigned int code
    cdef object expansion, lowered, preserved
    try:
        for i in range(n):
            ch = PyUnicode_READ_CHAR(text, i)
            code = <unsigned int> ch
            if code < 128:
                if _ASCII_SPACEISH[code]:
                    if used > 0:
                        pending_space = i
                    continue
                if used + 2 > cap:
                    cap = cap * 2 + 8
                    low_buf = <Py_UCS4 *> realloc(low_buf, cap * sizeof(Py_UCS4))
                    pres_buf = <Py_UCS4 *> realloc(pres_buf, cap * sizeof(Py_UCS4))
                    idx_buf = <int *> realloc(idx_buf, cap * sizeof(int))
                    if low_buf == NULL or pres_buf == NULL or idx_buf == NULL:
                        raise MemoryError()
                if pending_space >= 0:
                    low_buf[used] = <Py_UCS4> 32
                    pres_buf[used] = <Py_UCS4> 32
                    idx_buf[used] = <int> pending_space
                    used += 1
                    pending_space = -1
                low_buf[used] = _ASCII_LOWER[code]
                pres_buf[used] = ch
                idx_buf[used] = <int> i
                used += 1
                continue
            expansion = _expand_char(text[i])
            lowered = expansion[0]
            preserved = expansion[1]
            m = PyUnicode_GET_LENGTH(lowered)
            need = used + 2 * m + 2
            if need > cap:
                cap = need if need > cap * 2 else cap * 2
                low_buf = <Py_UCS4 *> realloc(low_buf, cap * sizeof(Py_UCS4))
                pres_buf = <Py_UCS4 *> realloc(pres_buf, cap * sizeof(Py_UCS4))
                idx_buf = <int *> realloc(idx_buf, cap * sizeof(int))
                if low_buf == NULL or pres_buf == NULL or idx_buf == NULL:
                    raise MemoryError()
            for j in range(m):
                lo_c = PyUnicode_READ_CHAR(lowered, j)
                if lo_c == <Py_UCS4> 32:
                    if used > 0:
                        pending_space = i
                    continue
                if pending_space >= 0:
                    low_buf[used] = <Py_UCS4> 32
                    pres_buf[used] = <Py_UCS4> 32
                    idx_buf[used] = <int> pending_space
                    used += 1
                    pending_space = -1
                pr_c = PyUnicode_READ_CHAR(preserved, j)
                low_buf[used] = lo_c
                pres_buf[used] = pr_c
                idx_buf[used] = <int> i
                used += 1
        low = PyUnicode_FromKindAndData(PyUnicode_4BYTE_KIND, low_buf, used)
        pres = PyUnicode_FromKindAndData(PyUnicode_4BYTE_KIND, pres_buf, used)
        idx = array("i")
        if used:
            idx.frombytes(PyBytes_FromStringAndSize(<char *> idx_buf, used * sizeof(int)))
        return low, pres, idx
    finally:
        free(low_buf)
        free(pres_buf)
        free(idx_buf)


def find_hits(shadow, automaton):
    """See ``_scan_py.find_hits``; identical contract."""
    cdef int[::1] trans_start = automaton.trans_start
    cdef unsigned int[::1] trans_char = automaton.trans_char
    cdef int[::1] trans_next = automaton.trans_next
    cdef int[::1] fail = automaton.fail_arr
    cdef int[::1] out_start = automaton.out_start
    cdef int[::1] out_pid = automaton.out_pid
    cdef int[::1] root_ascii = automaton.root_ascii
    cdef Py_ssize_t n = PyUnicode_GET_LENGTH(shadow)
    cdef Py_ssize_t i
    cdef int state = 0
    cdef int nxt, lo, hi, mid, k
    cdef unsigned int c
    hits = []
    for i in range(n):
        c = <unsigned int> PyUnicode_READ_CHAR(shadow, i)
        while True:
            if state == 0 and c < 128:
                state = root_ascii[c]
                break
            nxt = -1
            lo = trans_start[state]
            hi = trans_start[state + 1]
            while lo < hi:
                mid = (lo + hi) >> 1
                if trans_char[mid] == c:
                    nxt = trans_next[mid]
                    break
                elif trans_char[mid] < c:
                    lo = mid + 1
                else:
                    hi = mid
            if nxt >= 0:
                state = nxt
                break
            if state == 0:
                break
            state = fail[state]
        if out_start[state] != out_start[state + 1]:
            for k in range(out_start[state], out_start[state + 1]):
                hits.append((i, out_pid[k]))
    return hits
