"""Command-line interface.

Input files are read in argument order and form the update sequence; a
single file may also hold several programs separated by ``#update.``
lines.  ``-`` reads standard input.

Exit status: 0 when ``solve`` finds at least one answer set (and for the
other subcommands on success), 1 when ``solve`` finds none or a postulate
report differs from the expected verdicts, 2 on usage, parse and capacity
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Sequence

from . import altsem, dynlp, minimality, postulates, update
from .lang import ELP, GLP, Literal, ParseError, RuleName, UpdateSequence, parse_sequence, render_program
from .lang import render_rule, render_sequence
from .solver import CapacityError, project, set_atom_cap, sort_sets

SEMANTICS = ("update", "minimal", "strict", "dynamic", "inheritance", "justified")

EXIT_OK, EXIT_NONE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def read_sequence(paths: Sequence[str], mode: str) -> UpdateSequence:
    texts, sources = [], []
    for path in paths:
        if path == "-":
            texts.append(sys.stdin.read())
            sources.append("<stdin>")
        else:
            with open(path, encoding="utf-8") as fh:
                texts.append(fh.read())
            sources.append(path)
    return parse_sequence(texts, mode, sources=sources)


# ---------------------------------------------------------------------------
# answer sets per semantics


def _literal_strings(s) -> list[str]:
    return sorted(str(x) for x in s)


def _render_set(items: Iterable[str]) -> str:
    return "{" + ", ".join(items) + "}"


def _record(seq: UpdateSequence, literals: list[str], names: Iterable[RuleName]) -> dict:
    return {
        "literals": literals,
        "rejected": [{"layer": n.layer, "position": n.position, "rule": render_rule(seq.rule(n))}
                     for n in sorted(names)],
    }


def solve(seq: UpdateSequence, semantics: str, *, method: str = "direct", state: int | None = None,
          override: str = "head", simplify: bool = False) -> list[dict]:
    """Answer sets under ``semantics`` as records {literals, rejected}."""
    if semantics == "justified" and state is None:
        raise UsageError("--semantics=justified needs --state")
    if seq.mode == GLP and semantics not in ("dynamic", "update"):
        raise UsageError("generalized programs support --semantics=dynamic or update only")

    if seq.mode == GLP and semantics == "update":
        q = dynlp.q_translate(seq)
        found = sort_sets(project(s, seq.alphabet) for s in update.update_answer_sets(q))
        return [_record(seq, _literal_strings(s), ()) for s in found]

    if semantics in ("update", "minimal", "strict"):
        if semantics == "update":
            found = update.update_answer_sets(seq, simplify)
        elif semantics == "minimal":
            found = minimality.minimal_answer_sets(seq, method)
        else:
            found = minimality.strictly_minimal_answer_sets(seq, method)
        return [_record(seq, _literal_strings(s), update.rej(seq, s).all()) for s in found]

    if semantics == "dynamic":
        if seq.mode == GLP:
            out = []
            for m in dynlp.dynamic_stable_models(seq):
                out.append(_record(seq, m.elements(), dynlp.rejected(seq, m.positive)))
            return out
        enc = dynlp.elp_to_glp(seq)
        out = []
        for s in dynlp.dynamic_answer_sets(seq):
            hit = dynlp.rejected(enc, {dynlp.NN + l.atom if l.neg else l.atom for l in s})
            names = [RuleName(n.layer - 1, n.position) for n in hit if n.layer > 1]
            out.append(_record(seq, _literal_strings(s), names))
        return out

    if semantics == "inheritance":
        ip = altsem.to_inheritance(seq)
        names = [r.name for r in seq.rules()]
        out = []
        for s in altsem.inh_answer_sets(ip, override):
            flags = altsem.overridden(ip, s, override)
            out.append(_record(seq, _literal_strings(s), [n for n, f in zip(names, flags) if f]))
        return out

    if semantics == "justified":
        if not 1 <= state <= len(seq):
            raise UsageError(f"--state must lie in 1..{len(seq)}")
        return [_record(seq, _literal_strings(s), altsem.rejected_at_state(seq, s, state))
                for s in altsem.justified_updates(seq, state)]

    raise UsageError(f"unknown semantics {semantics!r}")


def render_records(records: list[dict], fmt: str, show_rejected: bool) -> str:
    if fmt == "structured":
        return json.dumps(records, indent=2, sort_keys=True) + "\n"
    if not records:
        return "no answer set\n"
    lines = []
    for k, rec in enumerate(records, start=1):
        lines.append(f"answer set {k}: {_render_set(rec['literals'])}")
        if show_rejected:
            if not rec["rejected"]:
                lines.append("  rejected: none")
            for r in rec["rejected"]:
                lines.append(f"  rejected r{r['layer']}.{r['position']}: {r['rule']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_solve(args) -> int:
    seq = read_sequence(args.files, args.mode)
    records = solve(seq, args.semantics, method=args.method, state=args.state,
                    override=args.override, simplify=args.simplify)
    sys.stdout.write(render_records(records, args.format, args.show_rejected))
    return EXIT_OK if records else EXIT_NONE


def _cmd_transform(args) -> int:
    seq = read_sequence(args.files, args.mode)
    target = args.target
    if target == "update":
        if seq.mode != ELP:
            raise UsageError("--target=update needs extended programs; use --target=q first")
        sys.stdout.write(render_program(update.build_update_program(seq, args.simplify)))
    elif target == "dynamic":
        glp = seq if seq.mode == GLP else dynlp.elp_to_glp(seq)
        sys.stdout.write(render_program(dynlp.build_dynamic_program(glp)))
    elif target == "q":
        if seq.mode != GLP:
            raise UsageError("--target=q needs generalized programs (--mode=glp)")
        sys.stdout.write(render_sequence(dynlp.q_translate(seq, args.completion)))
    elif target == "glp":
        if seq.mode != ELP:
            raise UsageError("--target=glp needs extended programs")
        sys.stdout.write(render_sequence(dynlp.elp_to_glp(seq, args.completion)))
    return EXIT_OK


def _cmd_compare(args) -> int:
    seq = read_sequence(args.files, args.mode)
    if seq.mode == GLP:
        upd = {project(s, seq.alphabet) for s in update.update_answer_sets(dynlp.q_translate(seq))}
        dyn = {frozenset(Literal(a) if a in m.positive else Literal(a, True) for a in m.atoms)
               for m in dynlp.dynamic_stable_models(seq)}
    else:
        upd = set(update.update_answer_sets(seq))
        dyn = set(dynlp.dynamic_answer_sets(seq))
    rows = []
    for s in sort_sets(upd | dyn):
        rows.append({"literals": _literal_strings(s), "update": s in upd, "dynamic": s in dyn})
    if args.format == "structured":
        sys.stdout.write(json.dumps(rows, indent=2, sort_keys=True) + "\n")
    else:
        if not rows:
            sys.stdout.write("no answer set under either semantics\n")
        for r in rows:
            yes = lambda b: "yes" if b else "no"  # noqa: E731
            sys.stdout.write(f"{_render_set(r['literals'])}  update: {yes(r['update'])}"
                             f"  dynamic: {yes(r['dynamic'])}\n")
    return EXIT_OK


def _cmd_graph_check(args) -> int:
    seq = read_sequence(args.files, args.mode)
    rep = dynlp.coincidence_check(seq, seq.mode, args.completion)
    if args.format == "structured":
        doc = {
            "level": rep.level,
            "certificate": rep.certificate,
            "certificate_offenders": list(rep.certificate_offenders),
            "agrees": rep.agrees,
            "coincide": rep.coincide,
            "answer_sets": [{"literals": _literal_strings(e.answer_set), "verdict": e.verdict,
                             "graph": e.graph_says_dynamic,
                             "trace": [{"atom": v.atom, "condition": v.condition} for v in e.trace]}
                            for e in rep.entries],
        }
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(rep.render())
    return EXIT_OK


def _cmd_postulates(args) -> int:
    only = [args.id] if args.id else None
    if args.id and args.id not in postulates.CATALOGUE and args.id not in postulates.rows():
        raise UsageError(f"unknown postulate {args.id!r}")
    rep = postulates.run_regression_suite(args.seed, args.random, only)
    if args.format == "structured":
        sys.stdout.write(json.dumps(rep.as_dict(), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(rep.render())
    return EXIT_OK if rep.reproduced else EXIT_NONE


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, files: bool = True) -> None:
    if files:
        p.add_argument("files", nargs="+", help="program files in update order ('-' for stdin)")
        p.add_argument("--mode", choices=(ELP, GLP), default=ELP,
                       help="extended (default) or generalized programs")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--atom-cap", type=int, metavar="N",
                   help="refuse enumerations above N symbols (default 24, or UPD_ATOM_CAP)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="causalupd", description="Updates of extended logic programs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="enumerate answer sets of an update sequence")
    _common(p)
    p.add_argument("--semantics", choices=SEMANTICS, default="update")
    p.add_argument("--method", choices=minimality.METHODS, default="direct",
                   help="how minimal/strict answer sets are checked")
    p.add_argument("--state", type=int, metavar="J", help="state for --semantics=justified")
    p.add_argument("--override", choices=altsem.OVERRIDE_MODES, default="head",
                   help="overriding condition for --semantics=inheritance")
    p.add_argument("--show-rejected", action="store_true", help="list rejected rules per answer set")
    p.add_argument("--simplify", action="store_true", help="drop guards of last-program rules")
    p.set_defaults(run=_cmd_solve)

    p = sub.add_parser("transform", help="print a compiled program")
    _common(p)
    p.add_argument("--target", choices=("update", "dynamic", "q", "glp"), default="update")
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--completion", choices=dynlp.COMPLETION_PLACEMENTS, default="first",
                   help="where auxiliary rules of the q/glp targets go")
    p.set_defaults(run=_cmd_transform)

    p = sub.add_parser("compare", help="update answer sets next to dynamic ones")
    _common(p)
    p.set_defaults(run=_cmd_compare)

    p = sub.add_parser("graph-check", help="graph condition per answer set and the static certificate")
    _common(p)
    p.add_argument("--completion", choices=dynlp.COMPLETION_PLACEMENTS, default="first")
    p.set_defaults(run=_cmd_graph_check)

    p = sub.add_parser("postulates", help="belief-change postulate ledger")
    psub = p.add_subparsers(dest="action", required=True)
    r = psub.add_parser("run", help="check fixtures and random instances")
    _common(r, files=False)
    r.add_argument("--id", help="a single postulate or table row, e.g. C3 or K2/U1")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--random", type=int, default=200, metavar="N", help="random instances per holding row")
    r.set_defaults(run=_cmd_postulates)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:  # argparse reports usage errors itself
        return EXIT_USAGE if e.code else EXIT_OK
    if args.atom_cap is not None:
        if args.atom_cap < 0:
            print("causalupd: --atom-cap must be non-negative", file=sys.stderr)
            return EXIT_USAGE
        set_atom_cap(args.atom_cap)
    try:
        return args.run(args)
    except ParseError as e:
        print(f"causalupd: parse error: {e}", file=sys.stderr)
    except CapacityError as e:
        print(f"causalupd: {e}", file=sys.stderr)
    except (UsageError, ValueError) as e:
        print(f"causalupd: {e}", file=sys.stderr)
    except OSError as e:
        print(f"causalupd: {e.strerror}: {e.filename}", file=sys.stderr)
    finally:
        if args.atom_cap is not None:
            set_atom_cap(None)
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
