"""Seeded random programs and update sequences for property suites.

Everything takes a ``random.Random`` so a suite is reproducible from its
seed.  Atoms are ``a0``, ``a1``, ... which never clash with generated names.
"""

from __future__ import annotations

import random

from .lang import ELP, GLP, Literal, NotAtom, Program, Rule, UpdateSequence

__all__ = ["atoms_named", "random_rule", "random_program", "random_sequence", "random_glp_sequence"]


def atoms_named(n: int) -> list[str]:
    return [f"a{i}" for i in range(n)]


def _literal(rng: random.Random, atoms, strong: float) -> Literal:
    return Literal(rng.choice(atoms), rng.random() < strong)


def random_rule(rng: random.Random, atoms, *, strong: float = 0.4, max_body: int = 2,
                constraints: float = 0.0, basic: bool = False) -> Rule:
    """One extended rule; ``constraints`` is the chance of an empty head."""
    pos = tuple(_literal(rng, atoms, strong) for _ in range(rng.randint(0, max_body)))
    neg = () if basic else tuple(_literal(rng, atoms, strong) for _ in range(rng.randint(0, max_body)))
    head = None if rng.random() < constraints else _literal(rng, atoms, strong)
    return Rule(head, pos, neg)


def random_program(rng: random.Random, atoms, max_rules: int = 3, *, min_rules: int = 0, **kw) -> Program:
    return Program(tuple(random_rule(rng, atoms, **kw) for _ in range(rng.randint(min_rules, max_rules))))


def random_sequence(rng: random.Random, *, atoms: int = 4, programs: int = 3, rules: int = 8,
                    strong: float = 0.4, constraints: float = 0.0) -> UpdateSequence:
    """Up to ``rules`` rules spread over exactly ``programs`` extended programs."""
    names = atoms_named(atoms)
    layers: list[list[Rule]] = [[] for _ in range(programs)]
    for _ in range(rng.randint(1, rules)):
        layers[rng.randrange(programs)].append(
            random_rule(rng, names, strong=strong, constraints=constraints))
    return UpdateSequence.of([Program(tuple(p)) for p in layers], ELP)


def random_glp_sequence(rng: random.Random, *, atoms: int = 4, programs: int = 3,
                        rules: int = 6, weak_heads: float = 0.4) -> UpdateSequence:
    """Generalized programs: heads ``A`` or ``not A``, bodies of atoms and ``not`` atoms."""
    names = atoms_named(atoms)
    layers: list[list[Rule]] = [[] for _ in range(programs)]
    for _ in range(rng.randint(1, rules)):
        a = rng.choice(names)
        head = NotAtom(a) if rng.random() < weak_heads else Literal(a)
        pos = tuple(Literal(rng.choice(names)) for _ in range(rng.randint(0, 2)))
        neg = tuple(Literal(rng.choice(names)) for _ in range(rng.randint(0, 2)))
        layers[rng.randrange(programs)].append(Rule(head, pos, neg))
    return UpdateSequence.of([Program(tuple(p), GLP) for p in layers], GLP)
