"""Causal-rejection updates of extended logic programs."""

from .kernel import BACKEND
from .lang import (
    ELP,
    GLP,
    Literal,
    NotAtom,
    ParseError,
    Program,
    Rule,
    RuleName,
    UpdateSequence,
    parse_program,
    parse_sequence,
)
from .minimality import minimal_answer_sets, strictly_minimal_answer_sets
from .solver import CapacityError, answer_sets, set_atom_cap
from .update import build_update_program, lift, rej, rej_weak, update_answer_sets

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ELP",
    "GLP",
    "Literal",
    "NotAtom",
    "ParseError",
    "Program",
    "Rule",
    "RuleName",
    "UpdateSequence",
    "parse_program",
    "parse_sequence",
    "answer_sets",
    "set_atom_cap",
    "CapacityError",
    "build_update_program",
    "update_answer_sets",
    "lift",
    "rej",
    "rej_weak",
    "minimal_answer_sets",
    "strictly_minimal_answer_sets",
]
