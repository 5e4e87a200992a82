"""Belief-change postulates read as statements about update sequences.

Each catalogue entry turns a classical postulate into a premise and a
conclusion over concrete programs.  An instance *fails* when the premise
holds and the conclusion does not; otherwise it holds (possibly
vacuously).  Expansion is extensional: Bel(X) + P means Bel(Bel(X) with P
added), computed exactly by :func:`causalupd.beliefs.expansion_models`.

Bindings use these names throughout:

``E``
    the epistemic state, an :class:`UpdateSequence` (possibly empty);
``P``, ``P'``, ``P1``, ``P2``, ``P3``
    single programs;
``Q``
    a tuple of programs (the observations following ``E``);
``rule``
    a single rule (only the I3 reading uses it).

Postulates about disjunctions of epistemic states (U7, U8) are catalogued
as not interpretable.  The same module checks the further update
properties (tautologies, parallel updates, iterativity, ...) and the
syntactic condition under which a prefix of a sequence may be compiled
before the rest is applied.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .beliefs import entails, expansion_models, models
from .generate import atoms_named, random_program, random_rule
from .lang import (
    ELP,
    Literal,
    Program,
    Rule,
    UpdateSequence,
    format_interpretation,
    parse_program,
    render_rule,
    satisfies,
)
from .solver import project, sort_sets
from .update import ExtendedAlphabet, build_update_program, update_answer_sets

__all__ = [
    "HOLDS",
    "FAILS",
    "NOT_INTERPRETABLE",
    "Postulate",
    "PostulateInstance",
    "Verdict",
    "CATALOGUE",
    "FIXTURES",
    "postulate",
    "check_postulate",
    "random_instance",
    "RowReport",
    "SuiteReport",
    "run_regression_suite",
    "FURTHER_PROPERTIES",
    "FURTHER_FIXTURES",
    "check_further_property",
    "random_further_instance",
    "iterativity_condition",
    "nested_iterativity_condition",
    "nested_sequence",
    "fully_nested_program",
    "body_unsatisfiable",
    "iterated_equivalent",
    "rows",
]

HOLDS = "holds-on-instance"
FAILS = "fails-on-instance"
NOT_INTERPRETABLE = "not interpretable"

EMPTY = UpdateSequence.of([])


# ---------------------------------------------------------------------------
# small helpers


def _seq(e: UpdateSequence, *programs: Program) -> UpdateSequence:
    return UpdateSequence.of(list(e.programs) + list(programs), ELP)


def _union(*programs: Program) -> Program:
    return Program(tuple(r for p in programs for r in p.rules))


def _fam(family) -> str:
    return "{" + ", ".join(format_interpretation(s) for s in sort_sets(family)) + "}"


def _extra(left: str, a, right: str, b) -> str | None:
    """Describe one answer set present on one side only."""
    for s in sort_sets(set(a) - set(b)):
        return f"{format_interpretation(s)} is an answer set of {left} but not of {right}"
    for s in sort_sets(set(b) - set(a)):
        return f"{format_interpretation(s)} is an answer set of {right} but not of {left}"
    return None


def _violation(name: str, family, rules: Iterable[Rule]) -> str | None:
    rules = list(rules)
    for s in sort_sets(family):
        for r in rules:
            if not satisfies(s, r):
                return f"answer set {format_interpretation(s)} of {name} violates {render_rule(r)}"
    return None


def _satisfied_somewhere(family, rules) -> bool:
    rules = list(rules)
    return any(all(satisfies(s, r) for r in rules) for s in family)


Outcome = tuple[bool, bool, "str | None"]   # premise, conclusion, witness


# ---------------------------------------------------------------------------
# the readings


def _k1(b) -> Outcome:
    # Any answer-set family determines a belief set; computing it is the check.
    models(_seq(b["E"], b["P"]))
    return True, True, None


def _k2(b) -> Outcome:
    fam = models(_seq(b["E"], b["P"]))
    w = _violation("(E, P)", fam, b["P"])
    return True, w is None, w


def _u2(b) -> Outcome:
    e, p = b["E"], b["P"]
    prem = models(e) <= models(p)
    after, before = models(_seq(e, p)), models(e)
    return prem, after == before, _extra("(E, P)", after, "E", before)


def _k3(b) -> Outcome:
    e, p = b["E"], b["P"]
    exp, upd = expansion_models(e, p), models(_seq(e, p))
    bad = sort_sets(exp - upd)
    w = f"{format_interpretation(bad[0])} is an answer set of Bel(E) + P but not of (E, P)" if bad else None
    return True, not bad, w


def _u3(b) -> Outcome:
    e, p = b["E"], b["P"]
    prem = bool(models(e)) and bool(models(p))
    ok = bool(models(_seq(e, p)))
    return prem, ok, None if ok else "(E, P) has no answer set"


def _k4(b) -> Outcome:
    e, p = b["E"], b["P"]
    exp = expansion_models(e, p)
    upd = models(_seq(e, p))
    bad = sort_sets(upd - exp)
    w = f"{format_interpretation(bad[0])} is an answer set of (E, P) but not of Bel(E) + P" if bad else None
    return bool(exp), not bad, w


def _k5(b) -> Outcome:
    e, p = b["E"], b["P"]
    lhs = not models(_seq(e, p))
    rhs = not models(p)
    if lhs == rhs:
        return True, True, None
    w = "(E, P) has no answer set while P has one" if lhs else "P has no answer set while (E, P) has one"
    return True, False, w


def _k6(b) -> Outcome:
    e1, e2, p1, p2 = b["E"], b["E'"], b["P"], b["P'"]
    prem = models(e1) == models(e2) and models(p1) == models(p2)
    a, c = models(_seq(e1, p1)), models(_seq(e2, p2))
    return prem, a == c, _extra("(E, P)", a, "(E', P')", c)


def _k7(b) -> Outcome:
    e, p, p2 = b["E"], b["P"], b["P'"]
    exp = expansion_models(_seq(e, p), p2)
    upd = models(_seq(e, _union(p, p2)))
    bad = sort_sets(exp - upd)
    w = (f"{format_interpretation(bad[0])} is an answer set of Bel((E, P)) + P' "
         "but not of (E, P u P')") if bad else None
    return True, not bad, w


def _u6(b) -> Outcome:
    e, p, p2 = b["E"], b["P"], b["P'"]
    a, c = models(_seq(e, p)), models(_seq(e, p2))
    prem = a <= models(p2) and c <= models(p)
    return prem, a == c, _extra("(E, P)", a, "(E, P')", c)


def _k8(b) -> Outcome:
    e, p, p2 = b["E"], b["P"], b["P'"]
    exp = expansion_models(_seq(e, p), p2)
    upd = models(_seq(e, _union(p, p2)))
    bad = sort_sets(upd - exp)
    w = (f"{format_interpretation(bad[0])} is an answer set of (E, P u P') "
         "but not of Bel((E, P)) + P'") if bad else None
    return bool(exp), not bad, w


def _c1(b) -> Outcome:
    e, p, p2 = b["E"], b["P"], b["P'"]
    prem = entails(p, p2)
    a, c = models(_seq(e, p2, p)), models(_seq(e, p))
    return prem, a == c, _extra("(E, P', P)", a, "(E, P)", c)


def _c2(b) -> Outcome:
    e, p, p2 = b["E"], b["P"], b["P'"]
    prem = not _satisfied_somewhere(models(p), p2)
    a, c = models(_seq(e, p, p2)), models(_seq(e, p2))
    return prem, a == c, _extra("(E, P, P')", a, "(E, P')", c)


def _c3(b) -> Outcome:
    e, p, p2 = b["E"], b["P"], b["P'"]
    prem = entails(_seq(e, p), p2)
    w = _violation("(E, P', P)", models(_seq(e, p2, p)), p2)
    return prem, w is None, w


def _c4(b) -> Outcome:
    e, p, p2 = b["E"], b["P"], b["P'"]
    prem = _satisfied_somewhere(models(_seq(e, p)), p2)
    ok = _satisfied_somewhere(models(_seq(e, p2, p)), p2)
    return prem, ok, None if ok else "no answer set of (E, P', P) satisfies P'"


def _c5(b) -> Outcome:
    e, p, p2 = b["E"], b["P"], b["P'"]
    prem = (not _satisfied_somewhere(models(_seq(e, p)), p2)) and not entails(_seq(e, p2), p)
    ok = not entails(_seq(e, p, p2), p)
    return prem, ok, None if ok else "P is contained in Bel((E, P, P'))"


def _c6(b) -> Outcome:
    e, p, p2 = b["E"], b["P"], b["P'"]
    prem = (not _satisfied_somewhere(models(_seq(e, p)), p2)
            and not _satisfied_somewhere(models(_seq(e, p2)), p))
    fam = models(_seq(e, p, p2))
    good = [s for s in sort_sets(fam) if all(satisfies(s, r) for r in p)]
    w = f"answer set {format_interpretation(good[0])} of (E, P, P') satisfies P" if good else None
    return prem, not good, w


def _i1(b) -> Outcome:
    ok = bool(models(b["E"]))
    return True, ok, None if ok else "E has no answer set, so Bel(E) holds every rule"


def _i3(b) -> Outcome:
    e, r = b["E"], b["rule"]
    facts = Program(tuple(Rule(l) for l in r.pos))
    prem = entails(_seq(e, facts), [Rule(r.head)])
    w = _violation("E", models(e), [r])
    return prem, w is None, w


def _i4(b) -> Outcome:
    e, qs = b["E"], b["Q"]
    prem = entails(e, qs[0])
    a, c = models(_seq(e, *qs)), models(_seq(e, *qs[1:]))
    return prem, a == c, _extra("(E, Q1, ..., Qn)", a, "(E, Q2, ..., Qn)", c)


def _i5(b) -> Outcome:
    e, qs = b["E"], b["Q"]
    prem = models(qs[0]) <= models(qs[1])
    a, c = models(_seq(e, *qs)), models(_seq(e, *qs[1:]))
    return prem, a == c, _extra("(E, Q1, Q2, ..., Qn)", a, "(E, Q2, ..., Qn)", c)


def _i6(b) -> Outcome:
    e, qs = b["E"], b["Q"]
    prem = _satisfied_somewhere(models(_seq(e, qs[0])), qs[1])
    a = models(_seq(e, *qs))
    c = models(_seq(e, qs[0], _union(qs[0], qs[1]), *qs[2:]))
    return prem, a == c, _extra("(E, Q1, Q2, ...)", a, "(E, Q1, Q1 u Q2, ...)", c)


def _n2(b) -> Outcome:
    e, p1, p2, qs = b["E"], b["P1"], b["P2"], b["Q"]
    q = _union(*qs)
    prem = entails(_seq(e, p1), q) and entails(_seq(e, _union(p1, q)), p2)
    w = _violation("(E, P1)", models(_seq(e, p1)), p2)
    return prem, w is None, w


def _n3(b) -> Outcome:
    e, p1, p2, qs = b["E"], b["P1"], b["P2"], b["Q"]
    q = _union(*qs)
    prem = entails(_seq(e, p1), q) and entails(_seq(e, p1), p2)
    w = _violation("(E, P1 u Q)", models(_seq(e, _union(p1, q))), p2)
    return prem, w is None, w


def _n4(b) -> Outcome:
    e, ps = b["E"], b["Q"]
    n = len(ps)
    fams = [models(_seq(e, p)) for p in ps]
    prem = n >= 2 and all(entails(fams[i], ps[(i + 1) % n]) for i in range(n))
    for i in range(1, n):
        if fams[i] != fams[0]:
            return prem, False, _extra("(E, P1)", fams[0], f"(E, P{i + 1})", fams[i])
    return prem, True, None


def _p1(b) -> Outcome:
    e, p1, p2, p3 = b["E"], b["P1"], b["P2"], b["P3"]
    prem = models(p1) == models(p2) and entails(_seq(e, p1), p3)
    w = _violation("(E, P2)", models(_seq(e, p2)), p3)
    return prem, w is None, w


def _p2(b) -> Outcome:
    e, p1, p2, p3 = b["E"], b["P1"], b["P2"], b["P3"]
    # "P1 entails P2" is read through answer sets: P2 is contained in Bel(P1).
    prem = entails(p1, p2) and entails(_seq(e, p3), p1)
    w = _violation("(E, P3)", models(_seq(e, p3)), p2)
    return prem, w is None, w


def _p4(b) -> Outcome:
    e, p1, p2, p3 = b["E"], b["P1"], b["P2"], b["P3"]
    fam = models(_seq(e, p1))
    prem = entails(fam, p2) and entails(fam, p3)
    w = _violation("(E, P1)", fam, _union(p2, p3))
    return prem, w is None, w


# ---------------------------------------------------------------------------
# random instances for the rows that hold


_ATOMS = atoms_named(3)


def _rand_e(rng: random.Random) -> UpdateSequence:
    n = rng.randint(0, 2)
    return UpdateSequence.of([random_program(rng, _ATOMS, 3) for _ in range(n)], ELP)


def _rand_p(rng: random.Random, lo: int = 0, hi: int = 3) -> Program:
    return random_program(rng, _ATOMS, hi, min_rules=lo)


def _believed_rules(rng: random.Random, family, k: int) -> Program:
    """Up to k random rules, each true in every member of ``family``."""
    out = []
    for _ in range(40):
        if len(out) >= k:
            break
        r = random_rule(rng, _ATOMS)
        if all(satisfies(s, r) for s in family):
            out.append(r)
    return Program(tuple(out))


def _gen_e_p(rng):
    return {"E": _rand_e(rng), "P": _rand_p(rng)}


def _gen_e_p_p2(rng):
    return {"E": _rand_e(rng), "P": _rand_p(rng), "P'": _rand_p(rng)}


def _gen_c4(rng):
    e, p = _rand_e(rng), _rand_p(rng)
    fam = models(_seq(e, p))
    pick = sort_sets(fam)[rng.randrange(len(fam))] if fam and rng.random() < 0.8 else None
    p2 = _believed_rules(rng, [pick], 2) if pick is not None else _rand_p(rng)
    return {"E": e, "P": p, "P'": p2}


def _gen_i3(rng):
    e = _rand_e(rng)
    body = tuple(Literal(rng.choice(_ATOMS), rng.random() < 0.4) for _ in range(rng.randint(0, 2)))
    facts = Program(tuple(Rule(l) for l in body))
    fam = models(_seq(e, facts))
    common = sorted(frozenset.intersection(*fam)) if fam else []
    if common and rng.random() < 0.8:
        head = rng.choice(common)
    else:
        head = Literal(rng.choice(_ATOMS), rng.random() < 0.4)
    return {"E": e, "rule": Rule(head, body)}


def _gen_n2(rng):
    e, p1 = _rand_e(rng), _rand_p(rng)
    q = _believed_rules(rng, models(_seq(e, p1)), rng.randint(1, 2))
    qs = tuple(Program((r,)) for r in q.rules) or (Program(),)
    p2 = _believed_rules(rng, models(_seq(e, _union(p1, *qs))), 2)
    return {"E": e, "P1": p1, "P2": p2, "Q": qs}


def _gen_p4(rng):
    e, p1 = _rand_e(rng), _rand_p(rng)
    fam = models(_seq(e, p1))
    return {"E": e, "P1": p1, "P2": _believed_rules(rng, fam, 2), "P3": _believed_rules(rng, fam, 2)}


def _gen_n1(rng):
    return {"E": _rand_e(rng), "P1": _rand_p(rng)}


def _n1(b) -> Outcome:
    return _k2({"E": b["E"], "P": b["P1"]})


def _gen_i1(rng):
    return {"E": _rand_e(rng)}


# ---------------------------------------------------------------------------
# catalogue


@dataclass(frozen=True)
class Postulate:
    id: str
    row: str            # table row label; K2 and U1 share one row, for instance
    group: str          # "revision and update" | "iterated revision" | "consequence relation"
    interpretation: str
    expected: str       # "holds" | "fails" | "not interpretable"
    params: tuple[str, ...] = ()
    check: Callable[[Mapping], Outcome] | None = None
    generate: Callable[[random.Random], dict] | None = None
    note: str = ""


_R, _I, _N = "revision and update", "iterated revision", "consequence relation"

_ENTRIES = [
    Postulate("K1", "K1", _R, "(E, P) represents a belief set", "holds", ("E", "P"), _k1, _gen_e_p),
    Postulate("K2", "K2/U1", _R, "P is contained in Bel((E, P))", "holds", ("E", "P"), _k2, _gen_e_p),
    Postulate("U1", "K2/U1", _R, "P is contained in Bel((E, P))", "holds", ("E", "P"), _k2, _gen_e_p),
    Postulate("U2", "U2", _R, "Bel(P) within Bel(E) implies Bel((E, P)) = Bel(E)", "fails",
              ("E", "P"), _u2),
    Postulate("K3", "K3", _R, "Bel((E, P)) within Bel(Bel(E) + P)", "holds", ("E", "P"), _k3, _gen_e_p,
              "finite alphabets only"),
    Postulate("U3", "U3", _R, "E and P satisfiable implies (E, P) satisfiable", "fails", ("E", "P"), _u3),
    Postulate("K4", "K4", _R, "Bel(E) + P has an answer set implies Bel(Bel(E) + P) within Bel((E, P))",
              "fails", ("E", "P"), _k4),
    Postulate("K5", "K5", _R, "(E, P) is unsatisfiable iff P is unsatisfiable", "fails", ("E", "P"), _k5,
              note="read as a biconditional"),
    Postulate("K6", "K6/U4", _R, "E equivalent to E' and P to P' implies (E, P) equivalent to (E', P')",
              "fails", ("E", "E'", "P", "P'"), _k6),
    Postulate("U4", "K6/U4", _R, "E equivalent to E' and P to P' implies (E, P) equivalent to (E', P')",
              "fails", ("E", "E'", "P", "P'"), _k6),
    Postulate("K7", "K7/U5", _R, "Bel((E, P u P')) within Bel(Bel((E, P)) + P')", "holds",
              ("E", "P", "P'"), _k7, _gen_e_p_p2, "finite alphabets only"),
    Postulate("U5", "K7/U5", _R, "Bel((E, P u P')) within Bel(Bel((E, P)) + P')", "holds",
              ("E", "P", "P'"), _k7, _gen_e_p_p2, "finite alphabets only"),
    Postulate("U6", "U6", _R,
              "Bel(P') within Bel((E, P)) and Bel(P) within Bel((E, P')) implies Bel((E, P)) = Bel((E, P'))",
              "fails", ("E", "P", "P'"), _u6),
    Postulate("U7", "U7", _R, "involves disjunction of epistemic states", "not interpretable"),
    Postulate("U8", "U8", _R, "involves disjunction of epistemic states", "not interpretable"),
    Postulate("K8", "K8", _R,
              "Bel((E, P)) + P' satisfiable implies Bel(Bel((E, P)) + P') within Bel((E, P u P'))",
              "fails", ("E", "P", "P'"), _k8),
    Postulate("C1", "C1", _I, "P' within Bel(P) implies Bel((E, P', P)) = Bel((E, P))", "fails",
              ("E", "P", "P'"), _c1),
    Postulate("C2", "C2", _I, "no answer set of P satisfies P' implies Bel((E, P, P')) = Bel((E, P'))",
              "fails", ("E", "P", "P'"), _c2),
    Postulate("C3", "C3", _I, "P' within Bel((E, P)) implies P' within Bel((E, P', P))", "fails",
              ("E", "P", "P'"), _c3),
    Postulate("C4", "C4", _I,
              "some answer set of (E, P) satisfies P' implies some answer set of (E, P', P) does",
              "holds", ("E", "P", "P'"), _c4, _gen_c4),
    Postulate("C5", "C5", _I,
              "no answer set of (E, P) satisfies P' and P not within Bel((E, P')) "
              "implies P not within Bel((E, P, P'))", "fails", ("E", "P", "P'"), _c5),
    Postulate("C6", "C6", _I,
              "no answer set of (E, P) satisfies P' and none of (E, P') satisfies P "
              "implies none of (E, P, P') satisfies P", "fails", ("E", "P", "P'"), _c6),
    Postulate("I1", "I1", _I, "Bel(E) is consistent", "fails", ("E",), _i1),
    Postulate("I2", "I2", _I, "P is contained in Bel((E, P))", "holds", ("E", "P"), _k2, _gen_e_p),
    Postulate("I3", "I3", _I, "L0 in Bel((E, {L1., ..., Lk.})) implies (L0 :- L1, ..., Lk) in Bel(E)",
              "holds", ("E", "rule"), _i3, _gen_i3),
    Postulate("I4", "I4", _I, "Q1 within Bel(E) implies Bel((E, Q1, ..., Qn)) = Bel((E, Q2, ..., Qn))",
              "fails", ("E", "Q"), _i4),
    Postulate("I5", "I5", _I, "Bel(Q2) within Bel(Q1) implies Bel((E, Q1, Q2, ...)) = Bel((E, Q2, ...))",
              "fails", ("E", "Q"), _i5),
    Postulate("I6", "I6", _I,
              "some answer set of (E, Q1) satisfies Q2 implies "
              "Bel((E, Q1, Q2, ...)) = Bel((E, Q1, Q1 u Q2, ...))", "fails", ("E", "Q"), _i6,
              note="right-hand side uses Q1 u Q2"),
    Postulate("N1", "N1", _N, "P1 is contained in Bel((E, P1))", "holds", ("E", "P1"), _n1, _gen_n1),
    Postulate("N2", "N2", _N,
              "Q within Bel((E, P1)) and P2 within Bel((E, P1 u Q)) implies P2 within Bel((E, P1))",
              "holds", ("E", "P1", "P2", "Q"), _n2, _gen_n2),
    Postulate("N3", "N3", _N,
              "Q within Bel((E, P1)) and P2 within Bel((E, P1)) implies P2 within Bel((E, P1 u Q))",
              "fails", ("E", "P1", "P2", "Q"), _n3),
    Postulate("N4", "N4", _N,
              "a cycle of programs each believed after the previous one implies equal belief sets",
              "fails", ("E", "Q"), _n4),
    Postulate("P1", "P1", _N, "P1 equivalent to P2 and P3 within Bel((E, P1)) implies P3 within Bel((E, P2))",
              "fails", ("E", "P1", "P2", "P3"), _p1),
    Postulate("P2", "P2", _N, "P2 within Bel(P1) and P1 within Bel((E, P3)) implies P2 within Bel((E, P3))",
              "fails", ("E", "P1", "P2", "P3"), _p2, note="entailment between programs read via answer sets"),
    Postulate("P4", "P4", _N, "P2 and P3 within Bel((E, P1)) implies P2 u P3 within Bel((E, P1))",
              "holds", ("E", "P1", "P2", "P3"), _p4, _gen_p4),
]

CATALOGUE: dict[str, Postulate] = {p.id: p for p in _ENTRIES}


def postulate(pid: str) -> Postulate:
    try:
        return CATALOGUE[pid]
    except KeyError:
        raise KeyError(f"unknown postulate {pid!r}; known: {', '.join(CATALOGUE)}") from None


def rows() -> list[str]:
    """Distinct table rows in catalogue order."""
    seen: list[str] = []
    for p in _ENTRIES:
        if p.row not in seen:
            seen.append(p.row)
    return seen


# ---------------------------------------------------------------------------
# instances and verdicts


@dataclass(frozen=True)
class PostulateInstance:
    id: str
    bindings: Mapping[str, object]
    expected: str = "holds"        # what this instance should show: "holds" | "fails"
    source: str = ""

    def __post_init__(self):
        p = postulate(self.id)
        if p.expected != NOT_INTERPRETABLE and set(self.bindings) != set(p.params):
            raise ValueError(f"{self.id} binds {sorted(self.bindings)}, expected {sorted(p.params)}")


@dataclass(frozen=True)
class Verdict:
    id: str
    status: str
    premise: bool | None = None
    witness: str | None = None

    @property
    def fails(self) -> bool:
        return self.status == FAILS


def check_postulate(inst: PostulateInstance) -> Verdict:
    p = postulate(inst.id)
    if p.check is None:
        return Verdict(inst.id, NOT_INTERPRETABLE)
    premise, conclusion, witness = p.check(inst.bindings)
    if premise and not conclusion:
        return Verdict(inst.id, FAILS, True, witness)
    return Verdict(inst.id, HOLDS, premise, None)


def random_instance(pid: str, rng: random.Random) -> PostulateInstance:
    p = postulate(pid)
    if p.generate is None:
        raise ValueError(f"{pid} has no random generator (its row is expected to fail)")
    return PostulateInstance(pid, p.generate(rng), "holds", "random")


# ---------------------------------------------------------------------------
# regression fixtures


def _P(text: str) -> Program:
    return parse_program(text)


def _E(*texts: str) -> UpdateSequence:
    return UpdateSequence.of([_P(t) for t in texts], ELP)


def _fx(pid: str, source: str, **kw) -> PostulateInstance:
    names = {"E2": "E'", "Pp": "P'"}
    return PostulateInstance(pid, {names.get(k, k): v for k, v in kw.items()}, "fails", source)


_K4_E, _K4_P = _E("a. b :- not c. c :- not b."), _P("-a :- b.")
_C3 = dict(E=_E(""), P=_P("a :- not b. b :- not a. g :- a. g :- not g. c."), Pp=_P("g. -c :- not a."))

FIXTURES: list[PostulateInstance] = [
    _fx("U2", "inconsistency removed by an entailed update", E=_E("a. -a."), P=_P("a.")),
    PostulateInstance("U2", {"E": _E("a :- not b."), "P": _P("b :- not a.")}, "holds",
                      "second standard instance; it needs P within Bel(E), weaker than Bel(P) within Bel(E),"
                      " so the premise is false"),
    _fx("U3", "satisfiable parts, unsatisfiable update", E=_E("a :- b, not a."), P=_P("b.")),
    _fx("K4", "expansion excludes an update answer set", E=_K4_E, P=_K4_P),
    _fx("K5", "contradiction in E is not touched by P", E=_E("a. -a."), P=_P("b.")),
    _fx("K6", "irrelevance of syntax", E=_E("a. b."), E2=_E("a. b."), P=_P("-a :- b."), Pp=_P("-b :- a.")),
    _fx("U4", "irrelevance of syntax", E=_E("a. b."), E2=_E("a. b."), P=_P("-a :- b."), Pp=_P("-b :- a.")),
    _fx("U6", "standard counterexample", E=_E("b. d."), P=_P("-a. -e :- d. -d :- e."),
        Pp=_P("-a. -c :- b. -b :- b.")),
    _fx("K8", "empty first update reduces to the K4 instance", E=_K4_E, P=_P(""), Pp=_K4_P),
    _fx("C1", "believed rule added first", E=EMPTY, P=_P("b :- not a."), Pp=_P("a :- not b.")),
    _fx("C2", "earlier update survives", E=_E("a :- b."), P=_P("b."), Pp=_P("-b :- not a.")),
    _fx("C3", "two believed rules added first", **_C3),
    _fx("C5", "independent facts", E=EMPTY, P=_P("a."), Pp=_P("b.")),
    _fx("C6", "independent facts", E=EMPTY, P=_P("a."), Pp=_P("b.")),
    _fx("C6", "without minimization", E=_E("-b. -a :- b."), P=_P("a."), Pp=_P("b.")),
    _fx("I1", "contradictory facts", E=_E("a. -a.")),
    _fx("I4", "believed update adds an answer set", E=_E("a :- not b."), Q=(_P("b :- not a."),)),
    _fx("I5", "a fact fixes one of two choices", E=EMPTY, Q=(_P("a."), _P("a :- not b. b :- not a."))),
    _fx("I6", "repeating Q1 removes an answer set", E=_E("a :- not b. b :- not a."),
        Q=(_P("c."), _P("-c :- a."))),
    _fx("N3", "cautious monotony", E=EMPTY, P1=_P("a :- not b."), P2=_P("a."), Q=(_P("b :- not a."),)),
    _fx("N4", "two mutually believed choices", E=EMPTY, Q=(_P("a :- not b."), _P("b :- not a."))),
    _fx("P1", "left logical equivalence", E=_E("a. b."), P1=_P("-a :- b."), P2=_P("-b :- a."), P3=_P("b.")),
    _fx("P2", "right weakening", E=EMPTY, P1=_P("a :- not b."), P2=_P("a."), P3=_P("b. -a.")),
]


# ---------------------------------------------------------------------------
# suite


@dataclass
class RowReport:
    row: str
    group: str
    expected: str
    fixtures: list[Verdict] = field(default_factory=list)
    random_total: int = 0
    random_nonvacuous: int = 0
    random_failures: list[str] = field(default_factory=list)

    @property
    def observed(self) -> str:
        if self.expected == NOT_INTERPRETABLE:
            return NOT_INTERPRETABLE
        if any(v.fails for v in self.fixtures) or self.random_failures:
            return "fails"
        return "holds"

    @property
    def reproduced(self) -> bool:
        return self.observed == self.expected

    def as_dict(self) -> dict:
        return {
            "row": self.row,
            "group": self.group,
            "expected": self.expected,
            "observed": self.observed,
            "reproduced": self.reproduced,
            "fixtures": [{"status": v.status, "premise": v.premise, "witness": v.witness}
                         for v in self.fixtures],
            "random": {"total": self.random_total, "nonvacuous": self.random_nonvacuous,
                       "failures": list(self.random_failures)},
        }


@dataclass
class SuiteReport:
    rows: list[RowReport]
    seed: int

    @property
    def reproduced(self) -> bool:
        return all(r.reproduced for r in self.rows)

    def render(self) -> str:
        head = f"{'row':7} {'group':20} {'expected':18} {'observed':18} detail"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            if r.expected == "fails":
                hit = sum(v.fails for v in r.fixtures)
                detail = f"{hit}/{len(r.fixtures)} fixtures fail"
                bad = [v for v in r.fixtures if not v.fails]
                if bad:
                    detail += " (premise " + ("false" if bad[0].premise is False else "true") + " on the rest)"
            elif r.expected == "holds":
                detail = f"{r.random_total} random, {r.random_nonvacuous} with premise"
                if r.random_failures:
                    detail += f", {len(r.random_failures)} failing"
            else:
                detail = "disjunction of epistemic states"
            mark = "" if r.reproduced else "  <-- differs"
            lines.append(f"{r.row:7} {r.group:20} {r.expected:18} {r.observed:18} {detail}{mark}")
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {"seed": self.seed, "reproduced": self.reproduced, "rows": [r.as_dict() for r in self.rows]}


def run_regression_suite(seed: int = 0, random_instances: int = 200,
                         only: Iterable[str] | None = None) -> SuiteReport:
    """Every row: fixtures for the failing ones, seeded random instances for the rest."""
    wanted = set(only) if only is not None else None
    reports = []
    for row in rows():
        members = [p for p in _ENTRIES if p.row == row]
        if wanted is not None and not wanted & ({row} | {p.id for p in members}):
            continue
        head = members[0]
        rep = RowReport(row, head.group, head.expected)
        ids = {p.id for p in members}
        rep.fixtures = [check_postulate(f) for f in FIXTURES if f.id in ids]
        if head.generate is not None:
            rng = random.Random(f"{seed}:{row}")
            for _ in range(random_instances):
                inst = random_instance(head.id, rng)
                v = check_postulate(inst)
                rep.random_total += 1
                rep.random_nonvacuous += bool(v.premise)
                if v.fails:
                    rep.random_failures.append(v.witness or "")
        reports.append(rep)
    return SuiteReport(reports, seed)


# ---------------------------------------------------------------------------
# further properties


def _compiled_union(seqs: Iterable[UpdateSequence]) -> Program:
    """Union of update programs, each compiled in its own namespace."""
    rules: list[Rule] = []
    taken: set[str] = set()
    for s in seqs:
        ext = ExtendedAlphabet.fresh(s, taken)
        prog = build_update_program(s, alphabet=ext)
        taken |= prog.atoms()
        rules.extend(prog.rules)
    return Program(tuple(rules))


def _proj(family, atoms) -> frozenset:
    return frozenset(project(s, atoms) for s in family)


def _eq(left: str, a, right: str, b) -> Outcome:
    a, b = frozenset(a), frozenset(b)
    return True, a == b, _extra(left, a, right, b)


def _fp_initialization(b) -> Outcome:
    p = b["P"]
    return _eq("(empty, P)", models(UpdateSequence.of([Program(), p], ELP)), "P", models(p))


def _fp_idempotence(b) -> Outcome:
    p = b["P"]
    return _eq("(P, P)", models(UpdateSequence.of([p, p], ELP)), "P", models(p))


def _fp_absorption(b) -> Outcome:
    e, q = b["E"], b["Q"]
    return _eq("(E, Q, Q)", models(_seq(e, q, q)), "(E, Q)", models(_seq(e, q)))


def _fp_tautologies(b) -> Outcome:
    e, q = b["E"], b["Q"]
    prem = all(r.head is not None and r.pos == (r.head,) and not r.neg for r in q)
    return (prem,) + _eq("(E, Q)", models(_seq(e, q)), "E", models(e))[1:]


def _disjoint(p1: Program, p2: Program) -> bool:
    return not (p1.atoms() & p2.atoms())


def _fp_disjoint(b) -> Outcome:
    p1, p2, q = b["P1"], b["P2"], b["Q"]
    at = p1.atoms() | p2.atoms()
    lhs = models(UpdateSequence.of([_union(p1, p2), q], ELP))
    rhs = models(_compiled_union([UpdateSequence.of([p1, q], ELP), UpdateSequence.of([p2, q], ELP)]))
    return (_disjoint(p1, p2),) + _eq("(P1 u P2, Q)", _proj(lhs, at | q.atoms()),
                                      "(P1, Q) u (P2, Q)", _proj(rhs, at | q.atoms()))[1:]


def _fp_parallel(b) -> Outcome:
    e, q1, q2 = b["E"], b["Q1"], b["Q2"]
    at = set().union(*(p.atoms() for p in e.programs)) | q1.atoms() | q2.atoms()
    lhs = models(_seq(e, _union(q1, q2)))
    rhs = models(_compiled_union([_seq(e, q1), _seq(e, q2)]))
    return (_disjoint(q1, q2),) + _eq("(E, Q1 u Q2)", _proj(lhs, at),
                                      "(E, Q1) u (E, Q2)", _proj(rhs, at))[1:]


def _fp_noninterference(b) -> Outcome:
    e, p1, p2 = b["E"], b["P1"], b["P2"]
    return (_disjoint(p1, p2),) + _eq("(E, P1, P2)", models(_seq(e, p1, p2)),
                                      "(E, P2, P1)", models(_seq(e, p2, p1)))[1:]


def _fp_augmented(b) -> Outcome:
    e, p1, p2 = b["E"], b["P1"], b["P2"]
    prem = set(p1.rules) <= set(p2.rules)
    return (prem,) + _eq("(E, P1, P2)", models(_seq(e, p1, p2)), "(E, P2)", models(_seq(e, p2)))[1:]


def _fp_iterativity(b) -> Outcome:
    seq = UpdateSequence.of([b["P1"], b["P2"], b["P3"]], ELP)
    flat = models(seq)
    nested = _proj(models(nested_sequence(seq, 2)), seq.alphabet)
    return _eq("P1 * P2 * P3", flat, "(P1 * P2) * P3", nested)


FURTHER_PROPERTIES: dict[str, tuple[str, Callable[[Mapping], Outcome]]] = {
    "initialization": ("holds", _fp_initialization),
    "idempotence": ("holds", _fp_idempotence),
    "absorption": ("holds", _fp_absorption),
    "tautologies": ("fails", _fp_tautologies),
    "disjoint-update": ("holds", _fp_disjoint),
    "parallel-updates": ("fails", _fp_parallel),
    "noninterference": ("holds", _fp_noninterference),
    "augmented-update": ("holds", _fp_augmented),
    "iterativity": ("fails", _fp_iterativity),
}

FURTHER_FIXTURES: dict[str, dict] = {
    "tautologies": {"E": _E("a.", "-a."), "Q": _P("a :- a.")},
    "parallel-updates": {"E": _E("a."), "Q1": _P("-a."), "Q2": _P("")},
    "iterativity": {"P1": _P(""), "P2": _P("a. -a."), "P3": _P("a.")},
}


def check_further_property(name: str, instance: Mapping) -> Verdict:
    try:
        _, fn = FURTHER_PROPERTIES[name]
    except KeyError:
        raise KeyError(f"unknown property {name!r}; known: {', '.join(FURTHER_PROPERTIES)}") from None
    premise, conclusion, witness = fn(instance)
    if premise and not conclusion:
        return Verdict(name, FAILS, True, witness)
    return Verdict(name, HOLDS, premise, None)


def random_further_instance(name: str, rng: random.Random) -> dict:
    left, right = atoms_named(2), ["b0", "b1"]
    if name == "initialization" or name == "idempotence":
        return {"P": _rand_p(rng)}
    if name in ("absorption", "tautologies"):
        e = _rand_e(rng)
        if name == "tautologies":
            ls = [Literal(rng.choice(_ATOMS), rng.random() < 0.4) for _ in range(rng.randint(1, 2))]
            return {"E": e, "Q": Program(tuple(Rule(l, (l,)) for l in ls))}
        return {"E": e, "Q": _rand_p(rng)}
    if name == "disjoint-update":
        return {"P1": random_program(rng, left, 3), "P2": random_program(rng, right, 3),
                "Q": random_program(rng, left + right, 3)}
    if name == "parallel-updates":
        return {"E": _rand_e(rng), "Q1": random_program(rng, left, 2), "Q2": random_program(rng, right, 2)}
    if name == "noninterference":
        e = UpdateSequence.of([random_program(rng, left + right, 3) for _ in range(rng.randint(0, 2))], ELP)
        return {"E": e, "P1": random_program(rng, left, 3), "P2": random_program(rng, right, 3)}
    if name == "augmented-update":
        p1 = _rand_p(rng)
        return {"E": _rand_e(rng), "P1": p1, "P2": _union(p1, _rand_p(rng, 0, 2))}
    if name == "iterativity":
        return {"P1": _rand_p(rng), "P2": _rand_p(rng), "P3": _rand_p(rng)}
    raise KeyError(name)


# ---------------------------------------------------------------------------
# compiling a prefix first


def body_unsatisfiable(r: Rule) -> bool:
    """Syntactic test: L and -L both positive, or L both positive and weakly negated."""
    pos = set(r.pos)
    return any(l.complement() in pos for l in pos) or bool(pos & set(r.neg))


def _sub_body(r: Rule, of: Rule) -> bool:
    return set(r.pos) <= set(of.pos) and set(r.neg) <= set(of.neg)


def _conflicting_pairs(prog: Program):
    rules = [r for r in prog.rules if isinstance(r.head, Literal)]
    for k, r1 in enumerate(rules):
        for r2 in rules[k + 1:]:
            if r1.head == r2.head.complement():
                yield r1, r2


def _pair_ok(seq: UpdateSequence, i: int, m: int, r1: Rule, r2: Rule) -> bool:
    n = len(seq)
    # (i) a later rule of the prefix subsumes one of the two
    for j in range(i + 1, m + 1):
        for r in seq.programs[j - 1].rules:
            if (r.head == r1.head and _sub_body(r, r1)) or (r.head == r2.head and _sub_body(r, r2)):
                return True
    # (ii) one later program restates both, and nothing after it touches either head
    for j in range(m + 1, n + 1):
        prog = seq.programs[j - 1].rules
        if (any(r.head == r1.head and _sub_body(r, r1) for r in prog)
                and any(r.head == r2.head and _sub_body(r, r2) for r in prog)
                and not any(r.head in (r1.head, r2.head)
                            for jj in range(j + 1, n + 1) for r in seq.programs[jj - 1].rules)):
            return True
    # (iii) the bodies cannot hold together
    return body_unsatisfiable(Rule(None, r1.pos + r2.pos, r1.neg + r2.neg))


def iterativity_condition(seq: UpdateSequence, m: int) -> bool:
    """Every conflicting pair inside P1..Pm is harmless, so the prefix may be compiled first."""
    n = len(seq)
    if not 2 <= m < n:
        raise ValueError(f"need 2 <= m < n, got m={m}, n={n}")
    return all(_pair_ok(seq, i, m, r1, r2)
               for i in range(1, m + 1) for r1, r2 in _conflicting_pairs(seq.programs[i - 1]))


def nested_iterativity_condition(seq: UpdateSequence) -> bool:
    """Every conflicting pair in every program has jointly unsatisfiable bodies."""
    return all(body_unsatisfiable(Rule(None, r1.pos + r2.pos, r1.neg + r2.neg))
               for p in seq.programs for r1, r2 in _conflicting_pairs(p))


def nested_sequence(seq: UpdateSequence, m: int) -> UpdateSequence:
    """(P1 * ... * Pm) followed by P(m+1), ..., Pn, with the prefix compiled to one program."""
    prefix = UpdateSequence.of(seq.programs[:m], ELP)
    compiled = build_update_program(prefix)
    return UpdateSequence.of([compiled] + list(seq.programs[m:]), ELP)


def fully_nested_program(seq: UpdateSequence) -> Program:
    """(((P1 * P2) * P3) ... ) * Pn, compiling after every step."""
    if not seq.programs:
        return Program()
    acc = seq.programs[0]
    for p in seq.programs[1:]:
        acc = build_update_program(UpdateSequence.of([acc, p], ELP))
    return acc


def iterated_equivalent(seq: UpdateSequence, m: int) -> bool:
    """Do the flat and the prefix-compiled readings agree on the base alphabet?"""
    flat = frozenset(update_answer_sets(seq))
    return flat == _proj(update_answer_sets(nested_sequence(seq, m)), seq.alphabet)

