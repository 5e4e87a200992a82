"""Pure-Python least-model closure (fallback for the compiled kernel).

Rules are given over integer symbols.  A rule is *active* when none of its
weakly negated symbols is marked in ``blocking``; the closure is the least
set of symbols closed under the active rules, read as Horn clauses.  Rules
whose head is ``-1`` (constraints) never derive anything.
"""

from __future__ import annotations


class Prepared:
    __slots__ = ("n", "heads", "pos", "neg", "occ", "npos")

    def __init__(self, n, heads, pos, neg):
        self.n = n
        self.heads = list(heads)
        self.pos = [list(b) for b in pos]
        self.neg = [list(b) for b in neg]
        self.npos = [len(b) for b in self.pos]
        occ = [[] for _ in range(n)]
        for r, body in enumerate(self.pos):
            for s in body:
                occ[s].append(r)
        self.occ = occ


def prepare(n, heads, pos, neg):
    return Prepared(n, heads, pos, neg)


def closure(prep: Prepared, blocking) -> bytearray:
    out = bytearray(prep.n)
    heads = prep.heads
    count = prep.npos[:]
    stack = []
    for r, body in enumerate(prep.neg):
        for s in body:
            if blocking[s]:
                count[r] = -1
                break
        else:
            if count[r] == 0:
                h = heads[r]
                if h >= 0 and not out[h]:
                    out[h] = 1
                    stack.append(h)
    occ = prep.occ
    while stack:
        s = stack.pop()
        for r in occ[s]:
            c = count[r]
            if c > 0:
                c -= 1
                count[r] = c
                if c == 0:
                    h = heads[r]
                    if h >= 0 and not out[h]:
                        out[h] = 1
                        stack.append(h)
    return out
