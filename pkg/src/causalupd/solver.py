"""Answer sets of finite propositional extended logic programs.

Literals are handled as plain propositional symbols; an answer set is a
consistent set S equal to the least model of the reduct P^S that violates
no constraint.  Enumeration guesses the status of the symbols that occur
under ``not`` and prunes with a two-sided propagation: a lower bound from
rules that are surely applicable and an upper bound from rules that are
possibly applicable.
"""

from __future__ import annotations

import itertools
import os
from typing import Iterable, Sequence

from . import kernel
from .lang import ELP, Literal, Program, Rule, body_true, is_consistent, satisfies

__all__ = [
    "CapacityError",
    "DEFAULT_ATOM_CAP",
    "atom_cap",
    "set_atom_cap",
    "gl_reduct",
    "least_model",
    "answer_sets",
    "answer_sets_bruteforce",
    "is_answer_set",
    "bel_contains",
    "bel_contains_all",
    "equivalent",
    "project",
    "sort_key",
    "sort_sets",
    "consistent_interpretations",
]

DEFAULT_ATOM_CAP = 24
_cap_override: int | None = None


class CapacityError(RuntimeError):
    """Raised when an enumeration would exceed the configured bound."""

    def __init__(self, what: str, size: int, bound: int):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: {size} exceeds the atom cap of {bound} "
                         f"(raise it with --atom-cap or UPD_ATOM_CAP)")


def atom_cap() -> int:
    if _cap_override is not None:
        return _cap_override
    env = os.environ.get("UPD_ATOM_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_ATOM_CAP


def set_atom_cap(value: int | None) -> None:
    """Override the capacity bound for this process (``None`` restores the default)."""
    global _cap_override
    _cap_override = value


def sort_key(s: Iterable) -> tuple[str, ...]:
    return tuple(sorted(str(l) for l in s))


def sort_sets(sets: Iterable[frozenset]) -> list[frozenset]:
    return sorted(set(sets), key=sort_key)


def project(s: Iterable[Literal], atoms) -> frozenset[Literal]:
    return frozenset(l for l in s if l.atom in atoms)


# ---------------------------------------------------------------------------
# reduct and least model


def _rules(p) -> Sequence[Rule]:
    return p.rules if isinstance(p, Program) else tuple(p)


def gl_reduct(p: Program | Iterable[Rule], s) -> Program:
    """{ r+ | r in P, r not defeated by S }."""
    out = []
    for r in _rules(p):
        if not any(l in s for l in r.neg):
            out.append(r.reduct())
    return Program(tuple(out), ELP)


def _horn_closure(rules: Sequence[Rule]) -> set[Literal]:
    """Least set of literals closed under the (basic) rules, constraints ignored."""
    derived: set[Literal] = set()
    waiting: dict[Literal, list[int]] = {}
    count = []
    stack = []
    for i, r in enumerate(rules):
        need = set(r.pos)
        count.append(len(need))
        for l in need:
            waiting.setdefault(l, []).append(i)
        if not need and r.head is not None and r.head not in derived:
            derived.add(r.head)
            stack.append(r.head)
    while stack:
        l = stack.pop()
        for i in waiting.get(l, ()):
            count[i] -= 1
            if count[i] == 0:
                h = rules[i].head
                if h is not None and h not in derived:
                    derived.add(h)
                    stack.append(h)
    return derived


def least_model(b: Program | Iterable[Rule]) -> frozenset[Literal] | None:
    """Least model of a basic program, or ``None`` if it is inconsistent or kills a constraint."""
    rules = _rules(b)
    if any(r.neg for r in rules):
        raise ValueError("least_model expects a basic program")
    m = _horn_closure(rules)
    if not is_consistent(m):
        return None
    for r in rules:
        if r.head is None and body_true(r, m):
            return None
    return frozenset(m)


def is_answer_set(p: Program | Iterable[Rule], s) -> bool:
    s = frozenset(s)
    if not is_consistent(s):
        return False
    return least_model(gl_reduct(p, s)) == s


# ---------------------------------------------------------------------------
# enumeration

_UNK, _TRUE, _FALSE = 0, 1, 2


class _Compiled:
    def __init__(self, rules: Sequence[Rule]):
        sym: dict[Literal, int] = {}

        def idx(l: Literal) -> int:
            i = sym.get(l)
            if i is None:
                i = sym[l] = len(sym)
            return i

        heads, pos, neg = [], [], []
        for r in rules:
            if r.head is not None and not isinstance(r.head, Literal):
                raise ValueError("answer_sets expects an extended program (weak heads found)")
            heads.append(-1 if r.head is None else idx(r.head))
            pos.append([idx(l) for l in r.pos])
            neg.append([idx(l) for l in r.neg])
        self.sym = sym
        self.lits = list(sym)
        self.n = len(sym)
        self.heads, self.pos, self.neg = heads, pos, neg
        self.prep = kernel.prepare(self.n, heads, pos, neg)
        self.branch = sorted({s for body in neg for s in body}, key=lambda s: str(self.lits[s]))
        self.pairs = [(i, sym[l.complement()]) for l, i in sym.items()
                      if l.neg and l.complement() in sym]
        self.constraints = [(pos[k], neg[k]) for k, h in enumerate(heads) if h < 0]

    def propagate(self, assign: bytearray) -> bytearray | None:
        """Tighten ``assign`` in place; return the lower bound, or None on conflict."""
        branch = self.branch
        n = self.n
        while True:
            low_block = bytearray(n)
            up_block = bytearray(n)
            for s in branch:
                a = assign[s]
                if a != _FALSE:
                    low_block[s] = 1
                if a == _TRUE:
                    up_block[s] = 1
            lower = kernel.closure(self.prep, low_block)
            upper = kernel.closure(self.prep, up_block)
            changed = False
            for s in branch:
                a = assign[s]
                if a == _TRUE:
                    if not upper[s]:
                        return None
                elif a == _FALSE:
                    if lower[s]:
                        return None
                elif lower[s]:
                    assign[s] = _TRUE
                    changed = True
                elif not upper[s]:
                    assign[s] = _FALSE
                    changed = True
            for i, j in self.pairs:
                if lower[i] and lower[j]:
                    return None
            for cpos, cneg in self.constraints:
                if all(lower[s] for s in cpos) and all(assign[s] == _FALSE for s in cneg):
                    return None
            if not changed:
                return lower

    def solve(self, limit: int | None = None) -> list[frozenset[Literal]]:
        assign = bytearray(self.n)
        root = self.propagate(assign)
        if root is None:
            return []
        free = sum(1 for s in self.branch if assign[s] == _UNK)
        cap = atom_cap()
        if free > cap:
            raise CapacityError("undetermined negated symbols", free, cap)
        found: list[frozenset[Literal]] = []
        self._search(assign, found, limit)
        return found

    def _search(self, assign: bytearray, found: list, limit: int | None) -> bool:
        for s in self.branch:
            if assign[s] == _UNK:
                break
        else:
            lower = self.propagate(assign)
            if lower is not None:
                found.append(frozenset(self.lits[i] for i in range(self.n) if lower[i]))
            return limit is not None and len(found) >= limit
        for value in (_TRUE, _FALSE):
            child = bytearray(assign)
            child[s] = value
            if self.propagate(child) is None:
                continue
            if self._search(child, found, limit):
                return True
        return False


def answer_sets(p: Program | Iterable[Rule], limit: int | None = None) -> list[frozenset[Literal]]:
    """All answer sets, sorted lexicographically by their sorted literal names.

    With ``limit`` the search stops after that many answer sets (unsorted
    prefix of the search order, then sorted); useful for satisfiability tests.
    """
    rules = _rules(p)
    found = _Compiled(rules).solve(limit)
    return sort_sets(found)


def consistent_interpretations(atoms: Iterable[str]):
    """Every consistent set of literals over ``atoms`` (3^n of them)."""
    atoms = sorted(atoms)
    for choice in itertools.product((0, 1, 2), repeat=len(atoms)):
        yield frozenset(Literal(a, c == 2) for a, c in zip(atoms, choice) if c)


def answer_sets_bruteforce(p: Program | Iterable[Rule], max_atoms: int = 8) -> list[frozenset[Literal]]:
    """Reference oracle: test every consistent literal set over the program's atoms."""
    rules = _rules(p)
    atoms = {a for r in rules for a in r.atoms()}
    if len(atoms) > max_atoms:
        raise CapacityError("atoms for brute-force enumeration", len(atoms), max_atoms)
    return sort_sets(s for s in consistent_interpretations(atoms) if is_answer_set(rules, s))


# ---------------------------------------------------------------------------
# belief sets


def bel_contains(p: Program | Iterable[Rule], r: Rule) -> bool:
    """r in Bel(P): r holds in every answer set (vacuous when there are none)."""
    return all(satisfies(s, r) for s in answer_sets(p))


def bel_contains_all(p: Program | Iterable[Rule], q: Iterable[Rule]) -> bool:
    q = list(q)
    return all(satisfies(s, r) for s in answer_sets(p) for r in q)


def equivalent(p1: Program | Iterable[Rule], p2: Program | Iterable[Rule], atoms=None) -> bool:
    """Same answer sets modulo ``atoms`` (default: all atoms of both programs)."""
    a1, a2 = answer_sets(p1), answer_sets(p2)
    if atoms is None:
        return set(a1) == set(a2)
    return {project(s, atoms) for s in a1} == {project(s, atoms) for s in a2}
