# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled least-model closure over CSR rule arrays.

Same contract as the pure-Python fallback: ``closure(prep, blocking)``
returns a bytearray marking the least set of symbols closed under the rules
none of whose weak-body symbols is blocked.
"""

from array import array
from libc.stdlib cimport malloc, free


cdef class Prepared:
    cdef public int n
    cdef public int nrules
    cdef int[:] heads
    cdef int[:] pos_ptr
    cdef int[:] neg_ptr
    cdef int[:] neg_idx
    cdef int[:] occ_ptr
    cdef int[:] occ_idx

    def __init__(self, int n, heads, pos, neg):
        cdef list occ = [[] for _ in range(n)]
        self.n = n
        self.nrules = len(heads)
        self.heads = array("i", heads)
        pp = array("i", [0])
        for r, body in enumerate(pos):
            pp.append(pp[-1] + len(body))
            for s in body:
                occ[s].append(r)
        self.pos_ptr = pp
        np_ = array("i", [0])
        ni = array("i")
        for body in neg:
            ni.extend(body)
            np_.append(len(ni))
        self.neg_ptr = np_
        self.neg_idx = ni if len(ni) else array("i", [0])
        op = array("i", [0])
        oi = array("i")
        for lst in occ:
            oi.extend(lst)
            op.append(len(oi))
        self.occ_ptr = op
        self.occ_idx = oi if len(oi) else array("i", [0])


def prepare(n, heads, pos, neg):
    return Prepared(n, heads, pos, neg)


def closure(Prepared prep, const unsigned char[:] blocking):
    cdef int n = prep.n, nr = prep.nrules
    cdef bytearray result = bytearray(n)
    cdef unsigned char[:] out = result
    cdef int *count
    cdef int *stack
    cdef int top = 0, r, k, s, h, c
    cdef bint active
    if n == 0:
        return result
    count = <int *> malloc(max(nr, 1) * sizeof(int))
    stack = <int *> malloc(n * sizeof(int))
    if count == NULL or stack == NULL:
        free(count)
        free(stack)
        raise MemoryError()
    try:
        for r in range(nr):
            active = True
            for k in range(prep.neg_ptr[r], prep.neg_ptr[r + 1]):
                if blocking[prep.neg_idx[k]]:
                    active = False
                    break
            if not active:
                count[r] = -1
                continue
            c = prep.pos_ptr[r + 1] - prep.pos_ptr[r]
            count[r] = c
            if c == 0:
                h = prep.heads[r]
                if h >= 0 and not out[h]:
                    out[h] = 1
                    stack[top] = h
                    top += 1
        while top > 0:
            top -= 1
            s = stack[top]
            for k in range(prep.occ_ptr[s], prep.occ_ptr[s + 1]):
                r = prep.occ_idx[k]
                c = count[r]
                if c > 0:
                    c -= 1
                    count[r] = c
                    if c == 0:
                        h = prep.heads[r]
                        if h >= 0 and not out[h]:
                            out[h] = 1
                            stack[top] = h
                            top += 1
    finally:
        free(count)
        free(stack)
    return result
