"""Dynamic logic programs and their relation to update answer sets.

Sequences of generalized programs (``not a`` allowed in heads, no strong
negation) get a bottom-up semantics: a total interpretation S is a dynamic
stable model when it equals the Horn closure of the non-rejected rules
together with the defaults ``not A`` for atoms that no rule supports.

Generalized interpretations are stored as the set of true atoms; every other
atom of the alphabet is weakly false.  In the Horn view ``not A`` behaves as
a fresh atom; internally it is encoded as ``Literal(A, neg=True)``, which is
free because generalized programs carry no strong negation.

Extended programs are mapped into generalized ones by spelling ``-a`` as the
atom ``nn_a``.  That spelling never reaches user-facing output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Union

from .lang import (
    ELP,
    GLP,
    Literal,
    NotAtom,
    Program,
    Rule,
    RuleName,
    UpdateSequence,
    format_interpretation,
)
from .solver import CapacityError, _horn_closure, answer_sets, atom_cap, consistent_interpretations, sort_sets
from .update import update_answer_sets

__all__ = [
    "GeneralizedInterpretation",
    "AndNode",
    "OrNode",
    "AndOrGraph",
    "AtomVerdict",
    "AnswerSetCoincidence",
    "CoincidenceReport",
    "rejected",
    "defaults",
    "cn",
    "is_dynamic_stable",
    "dynamic_stable_models",
    "build_dynamic_program",
    "glp_stable_models",
    "dynamic_stable_models_via_program",
    "elp_to_glp",
    "glp_to_elp_interpretation",
    "dynamic_answer_sets",
    "is_dynamic_answer_set",
    "sn",
    "q_translate",
    "COMPLETION_PLACEMENTS",
    "build_andor_graph",
    "reduce_graph",
    "acyclic_path_from",
    "graph_condition",
    "static_certificate",
    "coincidence_check",
]

NN = "nn_"
COMPLETION_PLACEMENTS = ("first", "last")


@dataclass(frozen=True)
class GeneralizedInterpretation:
    """A total assignment: ``positive`` holds, every other atom of ``atoms`` is weakly false."""

    atoms: frozenset[str]
    positive: frozenset[str]

    def __post_init__(self):
        if not self.positive <= self.atoms:
            raise ValueError("positive atoms must belong to the alphabet")

    def holds(self, z: Literal | NotAtom) -> bool:
        if isinstance(z, NotAtom):
            return z.atom not in self.positive
        return z.atom in self.positive

    def elements(self) -> list[str]:
        return [a if a in self.positive else f"not {a}" for a in sorted(self.atoms)]

    def __str__(self) -> str:
        return "{" + ", ".join(self.elements()) + "}"


def _gen(atoms, positive) -> GeneralizedInterpretation:
    return GeneralizedInterpretation(frozenset(atoms), frozenset(positive))


def _head_key(r: Rule) -> tuple[str, bool] | None:
    """(atom, weakly_negated) for the head, None for constraints."""
    if r.head is None:
        return None
    if isinstance(r.head, NotAtom):
        return (r.head.atom, True)
    if r.head.neg:
        raise ValueError("generalized programs carry no strong negation")
    return (r.head.atom, False)


def _body_true(r: Rule, pos: frozenset[str]) -> bool:
    return all(l.atom in pos for l in r.pos) and not any(l.atom in pos for l in r.neg)


def _require_glp(seq: UpdateSequence) -> None:
    for r in seq.rules():
        if any(l.neg for l in r.pos + r.neg) or (isinstance(r.head, Literal) and r.head.neg):
            raise ValueError("expected a sequence of generalized programs (no strong negation)")


# ---------------------------------------------------------------------------
# direct semantics


def rejected(seq: UpdateSequence, pos: Iterable[str]) -> frozenset[RuleName]:
    """Rules overridden by an applicable later rule with the opposite (weak) head."""
    pos = frozenset(pos)
    out = set()
    progs = seq.programs
    for i, p in enumerate(progs):
        for r in p.rules:
            key = _head_key(r)
            if key is None or not _body_true(r, pos):
                continue
            want = (key[0], not key[1])
            if any(_head_key(r2) == want and _body_true(r2, pos)
                   for q in progs[i + 1:] for r2 in q.rules):
                out.add(r.name)
    return frozenset(out)


def defaults(seq: UpdateSequence, pos: Iterable[str]) -> frozenset[str]:
    """Atoms A such that ``not A`` is a default: no rule with head A has a true body."""
    pos = frozenset(pos)
    supported = {r.head.atom for r in seq.rules()
                 if isinstance(r.head, Literal) and _body_true(r, pos)}
    return frozenset(seq.alphabet - supported)


def _horn(r: Rule) -> Rule:
    head = r.head
    if isinstance(head, NotAtom):
        head = Literal(head.atom, True)
    return Rule(head, tuple(r.pos) + tuple(Literal(l.atom, True) for l in r.neg))


def cn(rules: Iterable[Rule], facts: Iterable[Union[Literal, NotAtom]] = ()) -> frozenset[Union[Literal, NotAtom]]:
    """Horn closure with ``not A`` read as an atom of its own.

    Returns atoms as positive Literals and weakly negated atoms as NotAtoms.
    Constraints contribute nothing to the closure.
    """
    horn = [_horn(r) for r in rules if r.head is not None]
    for z in facts:
        horn.append(_horn(Rule(z)))
    closed = _horn_closure(horn)
    return frozenset(NotAtom(l.atom) if l.neg else Literal(l.atom) for l in closed)


def _fixpoint_holds(seq: UpdateSequence, pos: frozenset[str]) -> bool:
    gone = rejected(seq, pos)
    kept = [r for r in seq.rules() if r.name not in gone]
    for r in kept:
        if r.head is None and _body_true(r, pos):
            return False
    closure = cn(kept, [NotAtom(a) for a in defaults(seq, pos)])
    want = {Literal(a) for a in pos} | {NotAtom(a) for a in seq.alphabet - pos}
    return closure == want


def is_dynamic_stable(seq: UpdateSequence, s) -> bool:
    """``s``: a GeneralizedInterpretation or the set of its true atoms."""
    _require_glp(seq)
    pos = s.positive if isinstance(s, GeneralizedInterpretation) else frozenset(s)
    if not pos <= seq.alphabet:
        return False
    return _fixpoint_holds(seq, pos)


def _check_cap(what: str, n: int) -> None:
    cap = atom_cap()
    if n > cap:
        raise CapacityError(what, n, cap)


def _subsets(atoms: list[str]) -> Iterator[frozenset[str]]:
    for k in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, k):
            yield frozenset(combo)


def _sorted_gen(models: Iterable[GeneralizedInterpretation]) -> list[GeneralizedInterpretation]:
    return sorted(set(models), key=lambda g: g.elements())


def dynamic_stable_models(seq: UpdateSequence) -> list[GeneralizedInterpretation]:
    """All dynamic stable models, by testing each of the 2^|At| total interpretations."""
    _require_glp(seq)
    atoms = sorted(seq.alphabet)
    _check_cap("atoms for dynamic stable model enumeration", len(atoms))
    return _sorted_gen(_gen(atoms, s) for s in _subsets(atoms) if _fixpoint_holds(seq, s))


# ---------------------------------------------------------------------------
# the dynamic update program


@dataclass(frozen=True)
class _DynNames:
    ns: str

    def layer(self, a: str, i: int) -> Literal:
        return Literal(f"lv{self.ns}{i}_{a}")

    def layer_neg(self, a: str, i: int) -> Literal:
        return Literal(f"lv{self.ns}{i}n_{a}")

    def dashed(self, a: str) -> Literal:
        return Literal(f"lv{self.ns}n_{a}")

    def prog(self, a: str, i: int) -> Literal:
        return Literal(f"lv{self.ns}p{i}_{a}")

    def prog_neg(self, a: str, i: int) -> Literal:
        return Literal(f"lv{self.ns}p{i}n_{a}")

    def reject(self, x: Literal) -> Literal:
        return Literal(f"rej_{x.atom}")


def _dyn_names(seq: UpdateSequence) -> _DynNames:
    ns = ""
    while any(a.startswith(f"lv{ns}") or a.startswith(f"rej_lv{ns}") for a in seq.alphabet):
        ns += "x"
    return _DynNames(ns)


def build_dynamic_program(seq: UpdateSequence) -> Program:
    """The generalized program whose stable models, restricted to the alphabet, are the dynamic stable models."""
    _require_glp(seq)
    nm = _dyn_names(seq)
    n = len(seq)
    out: list[Rule] = []
    for i, p in enumerate(seq.programs, start=1):
        for r in p.rules:
            body = tuple(r.pos) + tuple(nm.dashed(l.atom) for l in r.neg)
            key = _head_key(r)
            if key is None:
                out.append(Rule(None, body))
            elif key[1]:
                out.append(Rule(nm.prog_neg(key[0], i), body))
            else:
                out.append(Rule(nm.prog(key[0], i), body))
    for a in sorted(seq.alphabet):
        for i in range(1, n + 1):
            out.append(Rule(nm.layer(a, i), (nm.prog(a, i),)))
            out.append(Rule(nm.reject(nm.layer_neg(a, i - 1)), (nm.prog(a, i),)))
            out.append(Rule(nm.layer_neg(a, i), (nm.prog_neg(a, i),)))
            out.append(Rule(nm.reject(nm.layer(a, i - 1)), (nm.prog_neg(a, i),)))
            out.append(Rule(nm.layer_neg(a, i), (nm.layer_neg(a, i - 1),), (nm.reject(nm.layer_neg(a, i - 1)),)))
            out.append(Rule(nm.layer(a, i), (nm.layer(a, i - 1),), (nm.reject(nm.layer(a, i - 1)),)))
        out.append(Rule(nm.layer_neg(a, 0)))
        out.append(Rule(Literal(a), (nm.layer(a, n),)))
        out.append(Rule(nm.dashed(a), (nm.layer_neg(a, n),)))
        out.append(Rule(NotAtom(a), (nm.layer_neg(a, n),)))
    return Program(tuple(Rule(r.head, r.pos, r.neg, RuleName(1, k)) for k, r in enumerate(out)), GLP)


def glp_stable_models(p: Program | Iterable[Rule]) -> list[frozenset[str]]:
    """Stable models S = Cn(P u S^-) of a generalized program, as sets of true atoms.

    A rule ``not A :- B`` only forbids A once B holds, so it becomes the
    constraint ``:- B, A`` and the rest is an ordinary answer-set problem.
    """
    rules = p.rules if isinstance(p, Program) else tuple(p)
    out = []
    for r in rules:
        if isinstance(r.head, NotAtom):
            out.append(Rule(None, tuple(r.pos) + (Literal(r.head.atom),), r.neg))
        else:
            out.append(r)
    return [frozenset(l.atom for l in s) for s in answer_sets(out)]


def dynamic_stable_models_via_program(seq: UpdateSequence) -> list[GeneralizedInterpretation]:
    atoms = seq.alphabet
    return _sorted_gen(_gen(atoms, s & atoms) for s in glp_stable_models(build_dynamic_program(seq)))


# ---------------------------------------------------------------------------
# extended programs and the Q bridge


def _nn(l: Literal) -> Literal:
    return Literal(NN + l.atom) if l.neg else l


def elp_to_glp(seq: UpdateSequence, emulation: str = "first") -> UpdateSequence:
    """Spell ``-a`` as ``nn_a`` and add the rules ``not a :- nn_a`` and ``not nn_a :- a``.

    As with the completion rules of :func:`q_translate`, the emulation rules
    go into a new earliest program by default so that they never reject a
    rule of the input; ``emulation="last"`` appends them to the last program.
    """
    if seq.mode != ELP:
        raise ValueError("expected a sequence of extended programs")
    if emulation not in COMPLETION_PLACEMENTS:
        raise ValueError(f"unknown emulation placement {emulation!r}")
    if any(a.startswith(NN) for a in seq.alphabet):
        raise ValueError(f"atoms starting with {NN!r} are reserved for the negation encoding")
    progs = []
    for p in seq.programs:
        progs.append([Rule(None if r.head is None else _nn(r.head),
                           tuple(map(_nn, r.pos)), tuple(map(_nn, r.neg))) for r in p.rules])
    emu = []
    for a in sorted(seq.alphabet):
        emu.append(Rule(NotAtom(a), (Literal(NN + a),)))
        emu.append(Rule(NotAtom(NN + a), (Literal(a),)))
    if emulation == "first":
        progs.insert(0, emu)
    elif progs:
        progs[-1].extend(emu)
    return UpdateSequence.of([Program(tuple(p), GLP) for p in progs], GLP)


def glp_to_elp_interpretation(pos: Iterable[str]) -> frozenset[Literal]:
    return frozenset(Literal(a[len(NN):], True) if a.startswith(NN) else Literal(a) for a in pos)


def _elp_to_positive(s: Iterable[Literal]) -> frozenset[str]:
    return frozenset(NN + l.atom if l.neg else l.atom for l in s)


def is_dynamic_answer_set(seq: UpdateSequence, s, encoded: UpdateSequence | None = None) -> bool:
    s = frozenset(s)
    if any(l.complement() in s for l in s):
        return False
    enc = encoded or elp_to_glp(seq)
    pos = _elp_to_positive(s)
    return pos <= enc.alphabet and _fixpoint_holds(enc, pos)


def dynamic_answer_sets(seq: UpdateSequence, emulation: str = "first") -> list[frozenset[Literal]]:
    """Consistent S whose completion by weak negation is a dynamic stable model of the encoded sequence."""
    _check_cap("atoms for dynamic answer set enumeration", len(seq.alphabet))
    enc = elp_to_glp(seq, emulation)
    return sort_sets(s for s in consistent_interpretations(seq.alphabet)
                     if is_dynamic_answer_set(seq, s, enc))


def sn(r: Rule) -> Rule:
    """Weak negation in the head becomes strong negation."""
    if isinstance(r.head, NotAtom):
        return Rule(Literal(r.head.atom, True), r.pos, r.neg, r.name)
    return r


def q_translate(seq: UpdateSequence, completion: str = "first") -> UpdateSequence:
    """Extended sequence with sn applied to every program plus the completion rules -A :- not A.

    The completion rules exist only to make answer sets complete and must
    not override anything.  Placed in a new earliest program (the default)
    they cannot; appended to the last program (``completion="last"``) they
    can reject earlier rules whose head is false, which admits
    self-supporting answer sets without a dynamic counterpart.
    """
    _require_glp(seq)
    if completion not in COMPLETION_PLACEMENTS:
        raise ValueError(f"unknown completion placement {completion!r}")
    progs = [[sn(r) for r in p.rules] for p in seq.programs]
    comp = [Rule(Literal(a, True), (), (Literal(a),)) for a in sorted(seq.alphabet)]
    if completion == "first":
        progs.insert(0, comp)
    elif progs:
        progs[-1].extend(comp)
    return UpdateSequence.of([Program(tuple(p), ELP) for p in progs], ELP)


# ---------------------------------------------------------------------------
# AND/OR graphs


class AndNode(NamedTuple):
    rule: RuleName

    def __str__(self) -> str:
        return str(self.rule)


class OrNode(NamedTuple):
    atom: str
    weak: bool = False

    def __str__(self) -> str:
        return f"not {self.atom}" if self.weak else self.atom


Node = Union[AndNode, OrNode]


@dataclass(frozen=True)
class AndOrGraph:
    """Nodes with one connector (ordered output tuple) each.

    An AND node with no outputs is a leaf (a fact).  An OR node with no
    outputs is a dead end, except for the weak nodes listed in ``grounded``,
    which reduction turns into leaves because their atom has no support.
    """

    connectors: dict = field(hash=False)
    grounded: frozenset = frozenset()

    @property
    def nodes(self) -> frozenset[Node]:
        return frozenset(self.connectors)

    def outputs(self, node: Node) -> tuple[Node, ...]:
        return self.connectors[node]

    def edges(self) -> Iterator[tuple[Node, Node]]:
        for a, outs in self.connectors.items():
            for b in outs:
                yield a, b

    def __contains__(self, node) -> bool:
        return node in self.connectors

    def render(self) -> str:
        lines = []
        for node in sorted(self.connectors, key=lambda n: (isinstance(n, OrNode), str(n))):
            outs = ", ".join(map(str, self.connectors[node]))
            mark = " (leaf)" if node in self.grounded else ""
            lines.append(f"{node} -> [{outs}]{mark}")
        return "\n".join(lines) + ("\n" if lines else "")


def _or_of_head(r: Rule) -> OrNode | None:
    key = _head_key(r)
    return None if key is None else OrNode(*key)


def _body_nodes(r: Rule) -> tuple[OrNode, ...]:
    return tuple(OrNode(l.atom) for l in r.pos) + tuple(OrNode(l.atom, True) for l in r.neg)


def build_andor_graph(seq: UpdateSequence) -> AndOrGraph:
    _require_glp(seq)
    conn: dict[Node, tuple] = {}
    ors: dict[OrNode, list[AndNode]] = {}
    for r in seq.rules():
        body = _body_nodes(r)
        conn[AndNode(r.name)] = body
        for z in body:
            ors.setdefault(z, [])
        h = _or_of_head(r)
        if h is not None:
            ors.setdefault(h, []).append(AndNode(r.name))
    for z, rs in ors.items():
        conn[z] = tuple(rs)
    return AndOrGraph(conn)


def reduce_graph(g: AndOrGraph, seq: UpdateSequence, s) -> AndOrGraph:
    """Drop rejected and inapplicable rules, then ground ``not A`` when A has lost all support."""
    pos = s.positive if isinstance(s, GeneralizedInterpretation) else frozenset(s)
    gone_rej = rejected(seq, pos)
    drop = {AndNode(r.name) for r in seq.rules() if r.name in gone_rej or not _body_true(r, pos)}
    conn = {}
    for node, outs in g.connectors.items():
        if node in drop:
            continue
        conn[node] = tuple(o for o in outs if o not in drop)
    heads_rejected = {seq.rule(n).head.atom for n in gone_rej
                      if isinstance(seq.rule(n).head, Literal)}
    grounded = set()
    for node in list(conn):
        if isinstance(node, OrNode) and node.weak:
            if not conn.get(OrNode(node.atom), ()) and node.atom not in heads_rejected:
                conn[node] = ()
                grounded.add(node)
    return AndOrGraph(conn, frozenset(grounded))


def _solvable(g: AndOrGraph) -> set[Node]:
    """Least fixpoint: nodes rooting a path whose associated graph is acyclic and ends in leaves."""
    solved: set[Node] = set()
    parents: dict[Node, list[Node]] = {}
    missing: dict[Node, int] = {}
    queue = []
    for node, outs in g.connectors.items():
        if not outs:
            if isinstance(node, AndNode) or node in g.grounded:
                solved.add(node)
                queue.append(node)
            continue
        missing[node] = len(set(outs)) if isinstance(node, AndNode) else 1
        for o in set(outs):
            parents.setdefault(o, []).append(node)
    while queue:
        o = queue.pop()
        for p in parents.get(o, ()):
            if p in solved:
                continue
            missing[p] -= 1
            if missing[p] == 0:
                solved.add(p)
                queue.append(p)
    return solved


def acyclic_path_from(g: AndOrGraph, root: Node) -> bool:
    if root not in g:
        raise KeyError(f"node {root} is not in the graph")
    return root in _solvable(g)


@dataclass(frozen=True)
class AtomVerdict:
    atom: str
    condition: str  # "no-applicable-rule" | "acyclic-path" | "violated"


def graph_condition(seq: UpdateSequence, s) -> tuple[bool, list[AtomVerdict]]:
    """Check, for every false atom, that no rule supports it or ``not A`` roots an acyclic path."""
    pos = s.positive if isinstance(s, GeneralizedInterpretation) else frozenset(s)
    reduced = reduce_graph(build_andor_graph(seq), seq, pos)
    solved = _solvable(reduced)
    trace = []
    ok = True
    for a in sorted(seq.alphabet - pos):
        if not any(isinstance(r.head, Literal) and r.head.atom == a and _body_true(r, pos)
                   for r in seq.rules()):
            trace.append(AtomVerdict(a, "no-applicable-rule"))
        elif OrNode(a, True) in solved:
            trace.append(AtomVerdict(a, "acyclic-path"))
        else:
            trace.append(AtomVerdict(a, "violated"))
            ok = False
    return ok, trace


def static_certificate(seq: UpdateSequence) -> tuple[bool, list[str]]:
    """Syntactic sufficient test for coincidence: every cycle through ``not A`` passes through A.

    Returns the verdict and the atoms whose weak node lies on a cycle avoiding A.
    """
    g = build_andor_graph(seq)
    succ: dict[Node, set[Node]] = {}
    for a, b in g.edges():
        succ.setdefault(a, set()).add(b)
    offenders = []
    for node in sorted((n for n in g.nodes if isinstance(n, OrNode) and n.weak), key=str):
        banned = OrNode(node.atom)
        seen = set()
        stack = [x for x in succ.get(node, ()) if x != banned]
        found = False
        while stack:
            x = stack.pop()
            if x == node:
                found = True
                break
            if x in seen:
                continue
            seen.add(x)
            stack.extend(y for y in succ.get(x, ()) if y != banned)
        if found:
            offenders.append(node.atom)
    return not offenders, offenders


@dataclass(frozen=True)
class AnswerSetCoincidence:
    answer_set: frozenset[Literal]
    graph_says_dynamic: bool
    fixpoint_says_dynamic: bool
    trace: tuple[AtomVerdict, ...]

    @property
    def verdict(self) -> str:
        return "dynamic" if self.fixpoint_says_dynamic else "not-dynamic"


@dataclass(frozen=True)
class CoincidenceReport:
    level: str
    entries: tuple[AnswerSetCoincidence, ...]
    certificate: bool | None  # None: not applicable at the extended level
    certificate_offenders: tuple[str, ...]

    @property
    def agrees(self) -> bool:
        return all(e.graph_says_dynamic == e.fixpoint_says_dynamic for e in self.entries)

    @property
    def coincide(self) -> bool:
        return all(e.fixpoint_says_dynamic for e in self.entries)

    def render(self) -> str:
        if self.certificate is None:
            cert = "not applicable"
        elif self.certificate:
            cert = "holds"
        else:
            cert = "fails at not " + ", not ".join(self.certificate_offenders)
        lines = [f"level: {self.level}", f"static certificate: {cert}"]
        for e in self.entries:
            lines.append(f"{format_interpretation(e.answer_set)}: {e.verdict}")
            for v in e.trace:
                lines.append(f"  {_display_atom(v.atom)}: {v.condition}")
        return "\n".join(lines) + "\n"


def _display_atom(a: str) -> str:
    return "-" + a[len(NN):] if a.startswith(NN) else a


def coincidence_check(seq: UpdateSequence, level: str = GLP, completion: str = "first") -> CoincidenceReport:
    """Compare update answer sets with dynamic models, answer set by answer set.

    At the generalized level the answer sets are those of the Q translation;
    at the extended level they are the update answer sets of ``seq`` itself
    and the graph is built over the negation-encoded sequence.
    """
    if level == GLP:
        glp = seq
        candidates = update_answer_sets(q_translate(seq, completion))
        to_pos = lambda s: frozenset(l.atom for l in s if not l.neg)  # noqa: E731
    elif level == ELP:
        glp = elp_to_glp(seq, completion)
        candidates = update_answer_sets(seq)
        to_pos = _elp_to_positive
    else:
        raise ValueError(f"unknown level {level!r}")
    entries = []
    for s in candidates:
        pos = to_pos(s)
        ok, trace = graph_condition(glp, pos)
        entries.append(AnswerSetCoincidence(s, ok, _fixpoint_holds(glp, pos), tuple(trace)))
    if level == GLP:
        cert, offenders = static_certificate(glp)
    else:
        cert, offenders = None, []
    return CoincidenceReport(level, tuple(entries), cert, tuple(offenders))
