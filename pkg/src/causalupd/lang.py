"""Abstract syntax, parsing and printing for extended and generalized logic programs.

A program is written one rule per statement::

    sleep :- not tv_on.
    -tv_on :- power_failure.
    :- a, b.

Strong negation is a leading ``-``; weak (default) negation is the keyword
``not``.  Generalized programs (mode ``"glp"``) may carry ``not a`` in the
head but no strong negation.  A text holding several programs separates
them with a line reading ``#update.``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

__all__ = [
    "ELP",
    "GLP",
    "RESERVED_PREFIXES",
    "Literal",
    "NotAtom",
    "RuleName",
    "Rule",
    "Program",
    "UpdateSequence",
    "ParseError",
    "lit",
    "parse_literal",
    "parse_rule",
    "parse_program",
    "parse_sequence",
    "split_sequence_text",
    "render_rule",
    "render_program",
    "render_sequence",
    "conflicting",
    "body_true",
    "satisfies",
    "is_consistent",
    "format_interpretation",
    "Interpretation",
]

ELP = "elp"
GLP = "glp"

RESERVED_PREFIXES = ("rej_", "lv", "ok", "eq", "s_", "nn_")

_ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class Literal(NamedTuple):
    """An atom, possibly under strong negation."""

    atom: str
    neg: bool = False

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.neg)

    def __str__(self) -> str:
        return "-" + self.atom if self.neg else self.atom


class NotAtom(NamedTuple):
    """A weakly negated atom in head position (generalized programs only)."""

    atom: str

    def __str__(self) -> str:
        return "not " + self.atom


Head = Union[Literal, NotAtom, None]
Interpretation = frozenset  # frozenset[Literal]


class RuleName(NamedTuple):
    """Structural rule name: 1-based program index, 0-based position."""

    layer: int
    position: int

    def __str__(self) -> str:
        return f"r{self.layer}.{self.position}"


@dataclass(frozen=True, slots=True)
class Rule:
    head: Head
    pos: tuple[Literal, ...] = ()
    neg: tuple[Literal, ...] = ()
    name: RuleName | None = field(default=None, compare=False)

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    @property
    def is_basic(self) -> bool:
        return not self.neg

    def body_literals(self) -> set[Literal]:
        return set(self.pos) | set(self.neg)

    def literals(self) -> set[Literal]:
        out = self.body_literals()
        if isinstance(self.head, Literal):
            out.add(self.head)
        elif isinstance(self.head, NotAtom):
            out.add(Literal(self.head.atom))
        return out

    def atoms(self) -> set[str]:
        return {l.atom for l in self.literals()}

    def reduct(self) -> "Rule":
        """The basic rule r+ (weak body dropped)."""
        return Rule(self.head, self.pos, (), self.name)

    def __str__(self) -> str:
        return render_rule(self)


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...] = ()
    mode: str = ELP

    def __post_init__(self):
        if not isinstance(self.rules, tuple):
            object.__setattr__(self, "rules", tuple(self.rules))
        if self.mode not in (ELP, GLP):
            raise ValueError(f"unknown program mode {self.mode!r}")

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __add__(self, other: "Program | Iterable[Rule]") -> "Program":
        extra = other.rules if isinstance(other, Program) else tuple(other)
        return Program(self.rules + extra, self.mode)

    def atoms(self) -> frozenset[str]:
        return frozenset(a for r in self.rules for a in r.atoms())

    def literals(self) -> frozenset[Literal]:
        return frozenset(l for r in self.rules for l in r.literals())

    def __str__(self) -> str:
        return render_program(self)


@dataclass(frozen=True)
class UpdateSequence:
    """Programs P1..Pn, later ones more recent; rules carry (layer, position) names."""

    programs: tuple[Program, ...] = ()
    mode: str = ELP
    alphabet: frozenset[str] = frozenset()

    @classmethod
    def of(cls, programs: Iterable[Program | Iterable[Rule]], mode: str | None = None) -> "UpdateSequence":
        progs = [p if isinstance(p, Program) else Program(tuple(p)) for p in programs]
        if mode is None:
            mode = GLP if any(p.mode == GLP for p in progs) else ELP
        named = []
        for i, p in enumerate(progs, start=1):
            rules = tuple(replace(r, name=RuleName(i, j)) for j, r in enumerate(p.rules))
            named.append(Program(rules, mode))
        alphabet = frozenset(a for p in named for a in p.atoms())
        return cls(tuple(named), mode, alphabet)

    def __len__(self) -> int:
        return len(self.programs)

    def __iter__(self) -> Iterator[Program]:
        return iter(self.programs)

    def __getitem__(self, i: int) -> Program:
        return self.programs[i]

    def rules(self) -> Iterator[Rule]:
        for p in self.programs:
            yield from p.rules

    def rule(self, name: RuleName) -> Rule:
        return self.programs[name.layer - 1].rules[name.position]

    def union(self) -> Program:
        return Program(tuple(self.rules()), self.mode)

    def literals(self) -> frozenset[Literal]:
        return frozenset(l for p in self.programs for l in p.literals())

    def extend(self, *programs: Program | Iterable[Rule]) -> "UpdateSequence":
        return UpdateSequence.of(list(self.programs) + list(programs), self.mode)

    def __str__(self) -> str:
        return render_sequence(self)


# ---------------------------------------------------------------------------
# parsing


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"line {line}, column {column}"
        if source:
            where = f"{source}: {where}"
        super().__init__(f"{where}: {message}")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<punct>[.,()\-])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


class _Tok(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, source: str | None) -> list[_Tok]:
    toks = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        val = m.group()
        col = m.start() - line_start + 1
        if kind == "bad":
            raise ParseError(f"unexpected character {val!r}", line, col, source)
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind if kind != "punct" else val, val, line, col))
        nl = val.count("\n")
        if nl:
            line += nl
            line_start = m.start() + val.rfind("\n") + 1
    toks.append(_Tok("eof", "", line, len(text) - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, mode: str, allow_reserved: bool, source: str | None):
        self.toks = _tokenize(text, source)
        self.i = 0
        self.mode = mode
        self.allow_reserved = allow_reserved
        self.source = source

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, tok.line, tok.col, self.source)

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            shown = t.text or "end of input"
            raise self.error(f"expected {kind!r}, found {shown!r}")
        return self.take()

    def atom(self) -> str:
        t = self.peek()
        if t.kind != "ident" or t.text in ("not",):
            raise self.error(f"expected an atom, found {t.text or 'end of input'!r}")
        if not _ATOM_RE.match(t.text):
            raise self.error(f"atom {t.text!r} must start with a lowercase letter")
        if not self.allow_reserved and t.text.startswith(RESERVED_PREFIXES):
            raise self.error(f"atom {t.text!r} uses a reserved prefix")
        self.take()
        return t.text

    def _sugar(self) -> tuple[str, str] | None:
        t = self.peek()
        if t.kind == "ident" and t.text in ("in", "out") and self.peek(1).kind == "(":
            self.take()
            self.take()
            a = self.atom()
            self.expect(")")
            return t.text, a
        return None

    def _strong(self) -> bool:
        if self.peek().kind == "-":
            if self.mode == GLP:
                raise self.error("strong negation is not available in generalized programs")
            self.take()
            return True
        return False

    def head(self) -> Head:
        t = self.peek()
        if t.kind == "ident" and t.text == "not" and self.peek(1).kind == "ident":
            if self.mode != GLP:
                raise self.error("weak negation in a rule head needs GLP mode")
            self.take()
            return NotAtom(self.atom())
        sug = self._sugar()
        if sug is not None:
            kind, a = sug
            if kind == "out":
                if self.mode == GLP:
                    return NotAtom(a)
                return Literal(a, True)
            return Literal(a)
        neg = self._strong()
        return Literal(self.atom(), neg)

    def body(self) -> tuple[list[Literal], list[Literal]]:
        pos: list[Literal] = []
        neg: list[Literal] = []
        while True:
            sug = self._sugar()
            if sug is not None:
                kind, a = sug
                (pos if kind == "in" else neg).append(Literal(a))
            else:
                weak = False
                t = self.peek()
                if t.kind == "ident" and t.text == "not" and self.peek(1).kind in ("ident", "-"):
                    self.take()
                    weak = True
                strong = self._strong()
                (neg if weak else pos).append(Literal(self.atom(), strong))
            if self.peek().kind == ",":
                self.take()
                continue
            return pos, neg

    def rule(self) -> Rule:
        head: Head = None
        if self.peek().kind != "if":
            head = self.head()
        pos: list[Literal] = []
        neg: list[Literal] = []
        if self.peek().kind == "if":
            self.take()
            if head is not None or self.peek().kind != ".":
                pos, neg = self.body()
        elif head is None:
            raise self.error("empty rule")
        self.expect(".")
        return Rule(head, tuple(pos), tuple(neg))

    def program(self) -> list[Rule]:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.rule())
        return rules


_SEPARATOR_RE = re.compile(r"^[ \t]*#update\.[ \t]*$", re.MULTILINE)


def split_sequence_text(text: str) -> list[str]:
    """Split a text at lines consisting of ``#update.``.

    Line numbers inside each chunk are preserved by padding with newlines so
    that error locations refer to the original file.
    """
    chunks = []
    last = 0
    for m in _SEPARATOR_RE.finditer(text):
        chunks.append((last, text[last:m.start()]))
        last = m.end()
    chunks.append((last, text[last:]))
    return ["\n" * text.count("\n", 0, start) + body for start, body in chunks]


def parse_program(text: str, mode: str = ELP, *, allow_reserved: bool = False,
                  source: str | None = None, layer: int | None = None) -> Program:
    m = _SEPARATOR_RE.search(text)
    if m:
        line = text.count("\n", 0, m.start()) + 1
        raise ParseError("'#update.' separator inside a single program", line, 1, source)
    rules = _Parser(text, mode, allow_reserved, source).program()
    rules = [replace(r, name=RuleName(layer or 1, j)) for j, r in enumerate(rules)]
    return Program(tuple(rules), mode)


def parse_rule(text: str, mode: str = ELP, *, allow_reserved: bool = False) -> Rule:
    p = parse_program(text, mode, allow_reserved=allow_reserved)
    if len(p) != 1:
        raise ParseError(f"expected exactly one rule, found {len(p)}", 1, 1)
    return p.rules[0]


def parse_literal(text: str) -> Literal:
    text = text.strip()
    neg = text.startswith("-")
    a = text[1:] if neg else text
    if not _ATOM_RE.match(a):
        raise ParseError(f"bad literal {text!r}", 1, 1)
    return Literal(a, neg)


def lit(text: str) -> Literal:
    return parse_literal(text)


def parse_sequence(texts: Sequence[str] | str, mode: str = ELP, *,
                   sources: Sequence[str] | None = None) -> UpdateSequence:
    """Parse an ordered list of program texts; each text may embed separators."""
    if isinstance(texts, str):
        texts = [texts]
    programs = []
    for k, text in enumerate(texts):
        src = sources[k] if sources else None
        for chunk in split_sequence_text(text):
            programs.append(parse_program(chunk, mode, source=src))
    return UpdateSequence.of(programs, mode)


# ---------------------------------------------------------------------------
# printing


def render_rule(r: Rule) -> str:
    body = [str(l) for l in r.pos] + ["not " + str(l) for l in r.neg]
    head = "" if r.head is None else str(r.head)
    if not body:
        return head + "." if head else ":- ."
    if head:
        return f"{head} :- {', '.join(body)}."
    return f":- {', '.join(body)}."


def render_program(p: Program | Iterable[Rule]) -> str:
    rules = p.rules if isinstance(p, Program) else p
    return "".join(render_rule(r) + "\n" for r in rules)


def render_sequence(seq: UpdateSequence) -> str:
    return "#update.\n".join(render_program(p) for p in seq.programs)


def format_interpretation(s: Iterable) -> str:
    return "{" + ", ".join(sorted(str(l) for l in s)) + "}"


# ---------------------------------------------------------------------------
# elementary semantics


def conflicting(r1: Rule, r2: Rule) -> bool:
    """Heads are complementary literals; constraints and weak heads never conflict."""
    h1, h2 = r1.head, r2.head
    if not isinstance(h1, Literal) or not isinstance(h2, Literal):
        return False
    return h1.atom == h2.atom and h1.neg != h2.neg


def body_true(r: Rule, s) -> bool:
    for l in r.pos:
        if l not in s:
            return False
    for l in r.neg:
        if l in s:
            return False
    return True


def satisfies(s, r: Rule) -> bool:
    """I |= r for an extended rule (weak heads are read as 'atom is false')."""
    if not body_true(r, s):
        return True
    if r.head is None:
        return False
    if isinstance(r.head, NotAtom):
        return Literal(r.head.atom) not in s
    return r.head in s


def is_consistent(s: Iterable[Literal]) -> bool:
    seen = set(s)
    return not any(l.neg and Literal(l.atom) in seen for l in seen)
