"""Two independent semantics that agree with update answer sets.

Inheritance programs attach programs to objects ordered by specificity; a
rule is overridden when a more specific conflicting rule has a true head
and the overridden rule's body holds.  Reading the sequence P1..Pn as
objects with on < ... < o1 (the newest is the most specific) gives the same
answer sets as the update semantics.

Justified updates work on sequences of in-rules and out-rules.  Rejection
there is relative to a state j and ignores whether the rejecting rule is
itself rejected; prefixes of the residue must remain satisfiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lang import ELP, Literal, Program, Rule, RuleName, UpdateSequence, body_true, conflicting, is_consistent
from .solver import (
    CapacityError,
    answer_sets,
    atom_cap,
    consistent_interpretations,
    gl_reduct,
    least_model,
    sort_sets,
)

__all__ = [
    "InheritanceProgram",
    "to_inheritance",
    "OVERRIDE_MODES",
    "overrides",
    "overridden",
    "inheritance_reduct",
    "is_inh_answer_set",
    "inh_answer_sets",
    "IOSequence",
    "rejected_at_state",
    "justified_update",
    "justified_updates",
]


@dataclass(frozen=True)
class InheritanceProgram:
    """Objects (id, program) with a strict order; ``less`` holds pairs (o, o') meaning o < o'."""

    objects: tuple[tuple[str, Program], ...]
    less: frozenset[tuple[str, str]]

    def __post_init__(self):
        ids = [o for o, _ in self.objects]
        if len(set(ids)) != len(ids):
            raise ValueError("object identifiers must be distinct")
        for a, b in self.less:
            if a == b:
                raise ValueError("the inheritance order must be irreflexive")
            if a not in ids or b not in ids:
                raise ValueError(f"order mentions unknown object {a if a not in ids else b!r}")
        for a, b in self.less:
            for c, d in self.less:
                if b == c and (a, d) not in self.less:
                    raise ValueError("the inheritance order must be transitive")

    def is_linear(self) -> bool:
        ids = [o for o, _ in self.objects]
        return all((a, b) in self.less or (b, a) in self.less
                   for k, a in enumerate(ids) for b in ids[k + 1:])

    def tagged_rules(self) -> list[tuple[str, Rule]]:
        return [(o, r) for o, p in self.objects for r in p.rules]

    @property
    def atoms(self) -> frozenset[str]:
        return frozenset(a for _, p in self.objects for a in p.atoms())


def to_inheritance(seq: UpdateSequence) -> InheritanceProgram:
    """Objects o1..on carrying P1..Pn, with later objects more specific."""
    if seq.mode != ELP:
        raise ValueError("inheritance programs are built from extended programs")
    n = len(seq)
    objs = tuple((f"o{i}", p) for i, p in enumerate(seq.programs, start=1))
    less = frozenset((f"o{j}", f"o{i}") for i in range(1, n + 1) for j in range(i + 1, n + 1))
    return InheritanceProgram(objs, less)


OVERRIDE_MODES = ("head", "applicable")


def overrides(ip: InheritanceProgram, tagged1: tuple[str, Rule], tagged2: tuple[str, Rule], i,
              mode: str = "head") -> bool:
    """Does the first rule override the second in I?

    ``mode="head"`` is the classical condition: the overriding rule is more
    specific, conflicts, has a true head, and the overridden rule's body is
    true.  ``mode="applicable"`` additionally asks for the overriding rule's
    body to be true, so a rule can only override while it is applicable.
    """
    (o1, r1), (o2, r2) = tagged1, tagged2
    if not ((o1, o2) in ip.less and conflicting(r1, r2) and r1.head in i and body_true(r2, i)):
        return False
    if mode == "applicable":
        return body_true(r1, i)
    if mode != "head":
        raise ValueError(f"unknown override mode {mode!r}")
    return True


def overridden(ip: InheritanceProgram, i, mode: str = "head") -> list[bool]:
    """Per tagged rule (in ``tagged_rules`` order): is it overridden in I?"""
    tagged = ip.tagged_rules()
    return [any(overrides(ip, t1, t2, i, mode) for t1 in tagged) for t2 in tagged]


def inheritance_reduct(ip: InheritanceProgram, i, mode: str = "head") -> Program:
    """G_I: drop overridden or defeated rules, then strip the weak bodies."""
    i = frozenset(i)
    tagged = ip.tagged_rules()
    flags = overridden(ip, i, mode)
    kept = [r for (_, r), over in zip(tagged, flags) if not over]
    return gl_reduct(kept, i)


def is_inh_answer_set(ip: InheritanceProgram, i, mode: str = "head") -> bool:
    i = frozenset(i)
    if not is_consistent(i):
        return False
    return least_model(inheritance_reduct(ip, i, mode)) == i


def _check_cap(what: str, n: int) -> None:
    cap = atom_cap()
    if n > cap:
        raise CapacityError(what, n, cap)


def inh_answer_sets(ip: InheritanceProgram, mode: str = "head") -> list[frozenset[Literal]]:
    """All answer sets, by testing every consistent interpretation over the program's atoms."""
    if not ip.is_linear():
        raise ValueError("only linear inheritance orders are supported")
    atoms = ip.atoms
    _check_cap("atoms for inheritance answer set enumeration", len(atoms))
    return sort_sets(s for s in consistent_interpretations(atoms) if is_inh_answer_set(ip, s, mode))


# ---------------------------------------------------------------------------
# justified updates


@dataclass(frozen=True)
class IOSequence:
    """A sequence of in-rules (head A) and out-rules (head -A) over plain atoms.

    Bodies hold atoms (``in``) and weakly negated atoms (``out``); the
    ``in(a)``/``out(a)`` surface syntax parses to exactly this shape.
    """

    seq: UpdateSequence

    def __post_init__(self):
        for r in self.seq.rules():
            if r.head is None:
                raise ValueError(f"{r.name}: in/out sequences have no constraints")
            if not isinstance(r.head, Literal):
                raise ValueError(f"{r.name}: heads must be in(a) or out(a)")
            if any(l.neg for l in r.pos + r.neg):
                raise ValueError(f"{r.name}: bodies of in/out rules mention plain atoms only")

    @classmethod
    def of(cls, programs: Sequence[Program]) -> "IOSequence":
        return cls(UpdateSequence.of(programs, ELP))

    def __len__(self) -> int:
        return len(self.seq)


def _seq_of(x) -> UpdateSequence:
    return x.seq if isinstance(x, IOSequence) else x


def rejected_at_state(io, s, j: int) -> frozenset[RuleName]:
    """Rules of P_i (i < j) with an applicable conflicting rule in some P_k, i < k <= j."""
    seq = _seq_of(io)
    out = set()
    for i in range(1, j):
        for r in seq.programs[i - 1].rules:
            if r.head is None or not body_true(r, s):
                continue
            if any(conflicting(r, r2) and body_true(r2, s)
                   for k in range(i + 1, j + 1) for r2 in seq.programs[k - 1].rules):
                out.add(r.name)
    return frozenset(out)


def _residue(seq: UpdateSequence, gone, upto: int) -> list[Rule]:
    return [r for p in seq.programs[:upto] for r in p.rules if r.name not in gone]


def justified_update(io, s, j: int) -> bool:
    """Is S a justified update at state j?  Accepts an IOSequence or any extended sequence."""
    seq = _seq_of(io)
    if not 1 <= j <= len(seq):
        raise ValueError(f"state {j} outside 1..{len(seq)}")
    s = frozenset(s)
    if not is_consistent(s):
        return False
    gone = rejected_at_state(seq, s, j)
    if least_model(gl_reduct(_residue(seq, gone, j), s)) != s:
        return False
    return all(answer_sets(_residue(seq, gone, l), limit=1) for l in range(1, j))


def justified_updates(io, j: int) -> list[frozenset[Literal]]:
    seq = _seq_of(io)
    _check_cap("atoms for justified update enumeration", len(seq.alphabet))
    return sort_sets(s for s in consistent_interpretations(seq.alphabet) if justified_update(seq, s, j))
