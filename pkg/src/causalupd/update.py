"""Compilation of update sequences into single programs, and rejection sets.

For a sequence (P1, ..., Pn) the update program copies every rule r of Pi
to layer i, guarded by a fresh atom rej(r) that fires when a complementary
literal is derivable one layer up.  Inertia rules carry each layered literal
down to the base alphabet.  Generated atoms are spelled

* ``lv<i>_<atom>`` for the layer-i copy of an atom, and
* ``rej_<layer>_<position>`` for the rejection atom of a rule.

When the input alphabet itself contains such names (a compiled program
being updated again) a short namespace infix is added, e.g. ``lvx1_a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .lang import (
    ELP,
    Literal,
    Program,
    Rule,
    RuleName,
    UpdateSequence,
    body_true,
    conflicting,
    is_consistent,
)
from .solver import answer_sets, least_model, gl_reduct, project, sort_sets

__all__ = [
    "ExtendedAlphabet",
    "RejectionSet",
    "NotAnAnswerSet",
    "build_update_program",
    "update_answer_sets",
    "update_program_answer_sets",
    "lift",
    "rej",
    "rej_weak",
    "check_declarative",
    "is_update_answer_set",
    "rejected_rules",
]


class NotAnAnswerSet(ValueError):
    pass


@dataclass(frozen=True)
class ExtendedAlphabet:
    """Names of the generated atoms for one compilation."""

    base: frozenset[str]
    layers: int
    ns: str = ""

    @classmethod
    def fresh(cls, seq: UpdateSequence, avoid: Iterable[str] = ()) -> "ExtendedAlphabet":
        """Shortest namespace whose generated names miss the alphabet and ``avoid``."""
        taken = seq.alphabet | frozenset(avoid)
        ns = ""
        while True:
            ext = cls(seq.alphabet, len(seq), ns)
            if not ext.generated_names(seq) & taken:
                return ext
            ns += "x"

    def layered_atom(self, atom: str, i: int) -> str:
        return f"lv{self.ns}{i}_{atom}"

    def layered(self, l: Literal, i: int) -> Literal:
        return Literal(self.layered_atom(l.atom, i), l.neg)

    def rej(self, name: RuleName) -> Literal:
        return Literal(f"rej{self.ns}_{name.layer}_{name.position}")

    def generated_names(self, seq: UpdateSequence) -> set[str]:
        names = {self.layered_atom(a, i) for a in self.base for i in range(1, self.layers + 1)}
        names |= {self.rej(r.name).atom for r in seq.rules()}
        return names

    def rule_of_rej(self, atom: str) -> RuleName | None:
        prefix = f"rej{self.ns}_"
        if not atom.startswith(prefix):
            return None
        try:
            layer, pos = atom[len(prefix):].split("_")
            return RuleName(int(layer), int(pos))
        except ValueError:
            return None


@dataclass(frozen=True)
class RejectionSet:
    """Rejected rule names, one frozenset per layer 1..n."""

    per_layer: tuple[frozenset[RuleName], ...]

    def layer(self, i: int) -> frozenset[RuleName]:
        return self.per_layer[i - 1]

    def all(self) -> frozenset[RuleName]:
        return frozenset().union(*self.per_layer) if self.per_layer else frozenset()

    def __contains__(self, name: RuleName) -> bool:
        return 0 < name.layer <= len(self.per_layer) and name in self.per_layer[name.layer - 1]

    def __iter__(self) -> Iterator[RuleName]:
        return iter(sorted(self.all()))

    def __len__(self) -> int:
        return sum(len(x) for x in self.per_layer)


def _require_elp(seq: UpdateSequence) -> None:
    if seq.mode != ELP:
        raise ValueError("this operation expects a sequence of extended programs")


def build_update_program(seq: UpdateSequence, simplify: bool = False,
                         alphabet: ExtendedAlphabet | None = None) -> Program:
    """The single program whose answer sets encode the update answer sets of ``seq``.

    With ``simplify`` the guard ``not rej(r)`` is dropped for rules of the
    last program, which can never be rejected.
    """
    _require_elp(seq)
    ext = alphabet or ExtendedAlphabet.fresh(seq)
    n = len(seq)
    out: list[Rule] = []
    for i, prog in enumerate(seq.programs, start=1):
        for r in prog.rules:
            if r.head is None:
                out.append(Rule(None, r.pos, r.neg))
                continue
            guard = () if (simplify and i == n) else (ext.rej(r.name),)
            out.append(Rule(ext.layered(r.head, i), r.pos, r.neg + guard))
            if i < n:
                blocker = ext.layered(r.head, i + 1).complement()
                out.append(Rule(ext.rej(r.name), r.pos + (blocker,), r.neg))
    for l in sorted(seq.literals(), key=str):
        for i in range(1, n):
            out.append(Rule(ext.layered(l, i), (ext.layered(l, i + 1),)))
        if n:
            out.append(Rule(l, (ext.layered(l, 1),)))
    return Program(tuple(Rule(r.head, r.pos, r.neg, RuleName(1, k)) for k, r in enumerate(out)), ELP)


def update_program_answer_sets(seq: UpdateSequence, simplify: bool = False) -> list[frozenset[Literal]]:
    return answer_sets(build_update_program(seq, simplify))


def update_answer_sets(seq: UpdateSequence, simplify: bool = False) -> list[frozenset[Literal]]:
    """U(seq): answer sets of the update program restricted to the base alphabet."""
    base = seq.alphabet
    return sort_sets(project(s, base) for s in update_program_answer_sets(seq, simplify))


# ---------------------------------------------------------------------------
# rejection sets


def _rejection(seq: UpdateSequence, s, founded: bool) -> RejectionSet:
    n = len(seq)
    rejected: list[set[RuleName]] = [set() for _ in range(n + 1)]
    active = [[r for r in p.rules if r.head is not None and body_true(r, s)] for p in seq.programs]
    for i in range(n - 1, 0, -1):
        for r in active[i - 1]:
            hit = False
            for j in range(i + 1, n + 1):
                for r2 in active[j - 1]:
                    if founded and r2.name in rejected[j]:
                        continue
                    if conflicting(r, r2):
                        hit = True
                        break
                if hit:
                    break
            if hit:
                rejected[i].add(r.name)
    return RejectionSet(tuple(frozenset(x) for x in rejected[1:]))


def rej(seq: UpdateSequence, s) -> RejectionSet:
    """Founded rejection set: only rules that are not rejected themselves can reject."""
    return _rejection(seq, s, True)


def rej_weak(seq: UpdateSequence, s) -> RejectionSet:
    """Weak rejection set: any applicable conflicting later rule rejects."""
    return _rejection(seq, s, False)


def check_declarative(seq: UpdateSequence, s, variant: str = "founded") -> bool:
    """S is the minimal model of ((U seq) minus R)^S, R the founded or weak rejection set."""
    s = frozenset(s)
    if not is_consistent(s):
        return False
    if variant == "founded":
        r = rej(seq, s)
    elif variant == "weak":
        r = rej_weak(seq, s)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    kept = [x for x in seq.rules() if x.name not in r]
    return least_model(gl_reduct(kept, s)) == s


def is_update_answer_set(seq: UpdateSequence, s) -> bool:
    return check_declarative(seq, s, "founded")


def lift(seq: UpdateSequence, s) -> frozenset[Literal]:
    """The answer set of the update program whose base part is S."""
    s = frozenset(s)
    if not check_declarative(seq, s):
        raise NotAnAnswerSet(f"not an update answer set: {sorted(map(str, s))}")
    ext = ExtendedAlphabet.fresh(seq)
    rejected = rej(seq, s)
    out = set(s)
    out.update(ext.rej(name) for name in rejected.all())
    for i, prog in enumerate(seq.programs, start=1):
        for r in prog.rules:
            if r.head is None or r.name in rejected or not body_true(r, s):
                continue
            out.update(ext.layered(r.head, j) for j in range(1, i + 1))
    return frozenset(out)


def rejected_rules(seq: UpdateSequence, names: Iterable[RuleName]) -> list[Rule]:
    return [seq.rule(n) for n in sorted(names)]
