"""Minimal and strictly minimal update answer sets.

An answer set is *minimal* when no other answer set rejects a proper subset
of its rules.  It is *strictly minimal* when no other answer set is
preferred under the layer-wise order: compare rejections from the most
recent layer downwards and prefer the first proper subset.

Both notions are available two ways.  The direct method compares rejection
sets; the test-program method builds, for each candidate S, a program that
has an answer set exactly when S is beaten, and runs the solver on it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lang import Literal, Program, Rule, UpdateSequence
from .solver import answer_sets, project, sort_sets
from .update import (
    ExtendedAlphabet,
    NotAnAnswerSet,
    RejectionSet,
    build_update_program,
    lift,
    rej,
    update_answer_sets,
)

__all__ = [
    "PreferenceVerdict",
    "is_preferred",
    "preference",
    "minimal_answer_sets",
    "strictly_minimal_answer_sets",
    "build_min_test_program",
    "build_strict_test_program",
    "is_minimal_direct",
    "is_strictly_minimal_direct",
    "is_minimal_by_test",
    "is_strictly_minimal_by_test",
]

METHODS = ("direct", "testprogram")


def _preferred(r1: RejectionSet, r2: RejectionSet) -> bool:
    n = len(r1.per_layer)
    for i in range(n, 0, -1):
        a, b = r1.layer(i), r2.layer(i)
        if a == b:
            continue
        return a < b
    return False


def is_preferred(seq: UpdateSequence, s, s2) -> bool:
    """S is preferred over S': at the highest layer where they differ, Rej_i(S) is a proper subset."""
    return _preferred(rej(seq, s), rej(seq, s2))


@dataclass(frozen=True)
class PreferenceVerdict:
    left: frozenset
    right: frozenset
    relation: str  # left-preferred | right-preferred | incomparable | equal-rejections


def preference(seq: UpdateSequence, s, s2) -> PreferenceVerdict:
    r1, r2 = rej(seq, s), rej(seq, s2)
    if r1 == r2:
        rel = "equal-rejections"
    elif _preferred(r1, r2):
        rel = "left-preferred"
    elif _preferred(r2, r1):
        rel = "right-preferred"
    else:
        rel = "incomparable"
    return PreferenceVerdict(frozenset(s), frozenset(s2), rel)


# ---------------------------------------------------------------------------
# direct method


def is_minimal_direct(seq: UpdateSequence, s, candidates=None) -> bool:
    cands = update_answer_sets(seq) if candidates is None else candidates
    mine = rej(seq, s).all()
    return not any(rej(seq, t).all() < mine for t in cands)


def is_strictly_minimal_direct(seq: UpdateSequence, s, candidates=None) -> bool:
    cands = update_answer_sets(seq) if candidates is None else candidates
    mine = rej(seq, s)
    return not any(_preferred(rej(seq, t), mine) for t in cands)


# ---------------------------------------------------------------------------
# test programs


def _clashes(atom: str, names: dict[str, str]) -> bool:
    for key in ("ok", "eq"):
        stem = names[key]
        if atom.startswith(stem) and (atom == stem or atom[len(stem):].isdigit()):
            return True
    return atom.startswith(names["s"])


def _test_names(seq: UpdateSequence):
    ext = ExtendedAlphabet.fresh(seq)
    taken = seq.alphabet | ext.generated_names(seq)
    tag = ""
    while True:
        names = {"ok": f"ok{tag}", "eq": f"eq{tag}", "s": f"s{tag}_"}
        if not any(_clashes(a, names) for a in taken):
            return ext, names
        tag += "x"


def _checked_lift(seq: UpdateSequence, s) -> frozenset[Literal]:
    try:
        return lift(seq, project(s, seq.alphabet))
    except NotAnAnswerSet:
        raise NotAnAnswerSet("test programs need an update answer set") from None


def build_min_test_program(seq: UpdateSequence, s) -> Program:
    """Update program plus guards that admit only answer sets rejecting strictly fewer rules."""
    lifted = _checked_lift(seq, s)
    ext, nm = _test_names(seq)
    base = build_update_program(seq, alphabet=ext)
    ok = Literal(nm["ok"])
    extra: list[Rule] = []
    for r in seq.rules():
        sr = Literal(f"{nm['s']}{r.name.layer}_{r.name.position}")
        extra.append(Rule(None, (ext.rej(r.name),), (sr,)))
    for r in seq.rules():
        ra = ext.rej(r.name)
        if ra in lifted:
            extra.append(Rule(ok, (), (ra,)))
            extra.append(Rule(Literal(f"{nm['s']}{r.name.layer}_{r.name.position}")))
    extra.append(Rule(None, (), (ok,)))
    return base + extra


def build_strict_test_program(seq: UpdateSequence, s) -> Program:
    """Update program plus layer-indexed guards admitting only answer sets preferred over S."""
    lifted = _checked_lift(seq, s)
    ext, nm = _test_names(seq)
    base = build_update_program(seq, alphabet=ext)
    n = len(seq)
    ok = Literal(nm["ok"])

    def ok_i(i):
        return Literal(f"{nm['ok']}{i}")

    def eq_i(i):
        return Literal(f"{nm['eq']}{i}")

    extra: list[Rule] = []
    for r in seq.rules():
        sr = Literal(f"{nm['s']}{r.name.layer}_{r.name.position}")
        extra.append(Rule(None, (ext.rej(r.name), eq_i(r.name.layer + 1)), (sr,)))
    for r in seq.rules():
        ra = ext.rej(r.name)
        if ra in lifted:
            i = r.name.layer
            extra.append(Rule(ok_i(i), (eq_i(i + 1),), (ra,)))
            extra.append(Rule(Literal(f"{nm['s']}{r.name.layer}_{r.name.position}")))
    for i in range(1, n + 1):
        extra.append(Rule(eq_i(i), (eq_i(i + 1),), (ok_i(i),)))
        extra.append(Rule(ok, (ok_i(i),)))
    extra.append(Rule(None, (), (ok,)))
    extra.append(Rule(eq_i(n + 1)))
    return base + extra


def is_minimal_by_test(seq: UpdateSequence, s) -> bool:
    return not answer_sets(build_min_test_program(seq, s), limit=1)


def is_strictly_minimal_by_test(seq: UpdateSequence, s) -> bool:
    return not answer_sets(build_strict_test_program(seq, s), limit=1)


# ---------------------------------------------------------------------------
# enumeration


def minimal_answer_sets(seq: UpdateSequence, method: str = "direct") -> list[frozenset[Literal]]:
    cands = update_answer_sets(seq)
    if method == "direct":
        keep = [s for s in cands if is_minimal_direct(seq, s, cands)]
    elif method == "testprogram":
        keep = [s for s in cands if is_minimal_by_test(seq, s)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return sort_sets(keep)


def strictly_minimal_answer_sets(seq: UpdateSequence, method: str = "direct") -> list[frozenset[Literal]]:
    cands = update_answer_sets(seq)
    if method == "direct":
        keep = [s for s in cands if is_strictly_minimal_direct(seq, s, cands)]
    elif method == "testprogram":
        keep = [s for s in cands if is_strictly_minimal_by_test(seq, s)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return sort_sets(keep)
