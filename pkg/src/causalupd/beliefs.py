"""Belief sets of programs and update sequences.

The belief set Bel(X) is the set of rules true in every answer set of X.
Over a finite language it is pinned down by the answer sets themselves, so
the comparisons here work on answer-set families:

* Bel(X) is contained in Bel(Y) exactly when every answer set of Y is one
  of X;
* a program P is contained in Bel(X) when every answer set of X satisfies P;
* the answer sets of the extensional expansion Bel(X) + P are those answer
  sets T of X that satisfy P and are rebuilt from nothing by alternating
  the reduct P^T with "what every answer set of X between here and T
  agrees on".

:class:`BoundedRuleUniverse` materializes Bel(X) over at most three atoms as
a plain rule list.  It is slow and exists to cross-check the algebra above.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .lang import Literal, Program, Rule, UpdateSequence, satisfies
from .solver import CapacityError, answer_sets, answer_sets_bruteforce, gl_reduct, sort_sets
from .update import update_answer_sets

__all__ = [
    "models",
    "is_satisfiable",
    "bel_subset",
    "bel_equal",
    "entails",
    "expansion_models",
    "BoundedRuleUniverse",
    "UNIVERSE_ATOM_BOUND",
]

UNIVERSE_ATOM_BOUND = 3


def models(x) -> frozenset[frozenset[Literal]]:
    """Answer sets of a program, an update sequence, or an explicit family."""
    if isinstance(x, UpdateSequence):
        return frozenset(update_answer_sets(x))
    if isinstance(x, Program):
        return frozenset(answer_sets(x))
    if isinstance(x, (frozenset, set)) and all(isinstance(s, frozenset) for s in x):
        return frozenset(x)
    return frozenset(answer_sets(list(x)))


def is_satisfiable(x) -> bool:
    return bool(models(x))


def bel_subset(x, y) -> bool:
    """Bel(x) is a subset of Bel(y)."""
    return models(y) <= models(x)


def bel_equal(x, y) -> bool:
    return models(x) == models(y)


def entails(x, rules: Iterable[Rule]) -> bool:
    """Every rule is in Bel(x)."""
    rules = list(rules)
    return all(satisfies(s, r) for s in models(x) for r in rules)


def expansion_models(x, p: Iterable[Rule]) -> frozenset[frozenset[Literal]]:
    """Answer sets of Bel(x) together with the rules ``p``."""
    family = models(x)
    rules = list(p)
    out = []
    for t in family:
        if not all(satisfies(t, r) for r in rules):
            continue
        horn = [r for r in gl_reduct(rules, t) if r.head is not None]
        below = [s for s in family if s <= t]
        cur: frozenset[Literal] = frozenset()
        while True:
            agreed = frozenset.intersection(*[s for s in below if cur <= s])
            nxt = agreed | {r.head for r in horn if all(l in agreed for l in r.pos)}
            if nxt == cur:
                break
            cur = nxt
        if cur == t:
            out.append(t)
    return frozenset(out)


@dataclass(frozen=True)
class BoundedRuleUniverse:
    """Every rule over a tiny alphabet: head a literal or empty, each body literal
    independently absent, positive, weakly negated or both."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(set(self.atoms))))
        if len(self.atoms) > UNIVERSE_ATOM_BOUND:
            raise CapacityError("atoms for the materialized rule universe",
                                len(self.atoms), UNIVERSE_ATOM_BOUND)

    @property
    def literals(self) -> tuple[Literal, ...]:
        return tuple(Literal(a, neg) for a in self.atoms for neg in (False, True))

    def rules(self):
        lits = self.literals
        for head in (None,) + lits:
            for choice in itertools.product(range(4), repeat=len(lits)):
                pos = tuple(l for l, c in zip(lits, choice) if c & 1)
                neg = tuple(l for l, c in zip(lits, choice) if c & 2)
                yield Rule(head, pos, neg)

    def __len__(self) -> int:
        return (2 * len(self.atoms) + 1) * 4 ** (2 * len(self.atoms))

    def belief_set(self, x) -> list[Rule]:
        family = models(x)
        return [r for r in self.rules() if all(satisfies(s, r) for s in family)]

    def expansion_models(self, x, p: Iterable[Rule]) -> frozenset[frozenset[Literal]]:
        """Answer sets of the materialized Bel(x) plus ``p``, by brute force."""
        rules = self.belief_set(x) + list(p)
        return frozenset(answer_sets_bruteforce(rules, max_atoms=UNIVERSE_ATOM_BOUND))

    def bel_subset(self, x, y) -> bool:
        return set(self.belief_set(x)) <= set(self.belief_set(y))


def sorted_models(x) -> list[frozenset[Literal]]:
    return sort_sets(models(x))
