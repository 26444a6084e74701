"""Command-line entry point.

Exit codes: 0 when the property holds (word reduced, IN holds, ...), 1 when
it fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Optional, Sequence

from . import game as gm
from .field import PrecisionExhausted
from .graph import (
    INF,
    CoxeterGraph,
    GraphError,
    bicoloured_word,
    catalog,
    extend_pendant,
    find_affine_witness,
    in_violation,
    increase_label,
    load_graph,
)
from .recognizer import build_dfa, check_speyer_property, is_reduced, reduce_fully
from .roots import StateCapExceeded, enumerate_small_roots, render_root, small_roots_dot

OK, FAIL, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def parse_word(text: str, g: CoxeterGraph) -> tuple:
    """Letters separated by whitespace or commas; ``acac`` also works when every vertex name is one character."""
    parts = [p for p in re.split(r"[\s,]+", text.strip()) if p]
    if len(parts) == 1 and parts[0] not in g and all(len(v) == 1 for v in g.vertices):
        parts = list(parts[0])
    return g.check_word(parts)


def format_word(w: Sequence[str]) -> str:
    if not w:
        return "(empty)"
    if all(len(x) == 1 for x in w):
        return "".join(w)
    return " ".join(w)


def _warn_inexact(g: CoxeterGraph) -> None:
    if not g.is_exact:
        print("warning: non-exact arithmetic (edge labels outside {3,4,5,6,inf}); results are approximate", file=sys.stderr)


def _label(tok: str):
    if tok in ("inf", "∞"):
        return INF
    try:
        return int(tok)
    except ValueError:
        raise UsageError(f"bad label {tok!r}") from None


# -- commands ---------------------------------------------------------------


def cmd_check_in(args) -> int:
    g = load_graph(args.graph)
    w = parse_word(args.word, g)
    bad = in_violation(w, g)
    if bad is None:
        print("intervening neighbours: yes")
        return OK
    print(
        f"intervening neighbours: no ({bad.letter} at positions {bad.first + 1} and {bad.second + 1}"
        f" is not separated by {' '.join(bad.missing)})"
    )
    return FAIL


def cmd_reduce(args) -> int:
    g = load_graph(args.graph)
    _warn_inexact(g)
    w = parse_word(args.word, g)
    v = is_reduced(w, g)
    if v.reduced:
        print(f"reduced: {format_word(w)}")
        return OK
    wit = v.witness
    print(f"not reduced: delete positions {wit.i + 1} and {wit.j + 1} ({w[wit.i]}, {w[wit.j]})")
    print(f"shortened: {format_word(wit.shortened)}")
    print(f"reduced form: {format_word(reduce_fully(w, g))}")
    return FAIL


def cmd_smallroots(args) -> int:
    g = load_graph(args.graph)
    _warn_inexact(g)
    small = enumerate_small_roots(g)
    if args.dot:
        sys.stdout.write(small_roots_dot(small))
    else:
        for r in small:
            print(render_root(r))
    return OK


def cmd_dfa(args) -> int:
    g = load_graph(args.graph)
    _warn_inexact(g)
    dfa = build_dfa(g, state_cap=args.state_cap)
    if args.dot:
        sys.stdout.write(dfa.to_dot())
        return OK
    print(f"states: {len(dfa)} (including dead)")
    for k in range(len(dfa.states)):
        row = []
        for x in g.vertices:
            t = dfa.transitions[k, x]
            row.append(f"{x}->{'dead' if t == 'dead' else 'q%d' % t}")
        print(f"q{k}: " + " ".join(row))
    return OK


def cmd_bicolour(args) -> int:
    g = load_graph(args.graph)
    print(format_word(bicoloured_word(g, args.start, args.length)))
    return OK


def cmd_classify(args) -> int:
    g = load_graph(args.graph)
    wit = find_affine_witness(g)
    if wit is None:
        print("no affine subgraph found (finite, or not certified infinite)")
        return FAIL
    print(f"infinite: vertices {' '.join(wit.vertices)} contain {wit.entry.name}")
    return OK


def cmd_catalog(args) -> int:
    entry = catalog(args.family, args.n)
    if args.json:
        print(entry.graph.to_json())
    else:
        sys.stdout.write(f"# affine {entry.name}\n" + entry.graph.to_text())
    return OK


def cmd_game(args) -> int:
    g = load_graph(args.graph)
    _warn_inexact(g)
    w = parse_word(args.word, g)
    if not w:
        raise UsageError("--word must contain at least one letter")
    if args.default_orientation == "bicoloured":
        start = gm.bicoloured_position(g, w[0])
    else:
        start = gm.initial_position(g, w)
    moves = w[1:] if args.steps is None else w[1 : 1 + args.steps]

    p = start
    if args.trace:
        print(gm.render_position(p, g))
    for k, t in enumerate(moves, 2):
        try:
            p = gm.fire(p, t, g)
        except gm.IllegalMove as exc:
            print(f"illegal move at letter {k}: {exc}")
            return FAIL
        if args.trace:
            print(gm.render_position(p, g))

    if args.explore:
        res = gm.explore(p, g, depth_cap=args.depth, state_cap=args.state_cap)
        if isinstance(res, gm.Converged):
            print(f"converged after {res.length} moves: {gm.render_position(res.final, g)}")
        else:
            print(f"open beyond cap: depth {res.depth}, {res.states} positions")
        return OK
    if args.dot:
        sys.stdout.write(gm.position_dot(p, g))
    elif not args.trace:
        print(gm.render_position(p, g))
    return OK


def cmd_speyer(args) -> int:
    if args.graph:
        g = load_graph(args.graph)
    elif args.family:
        g = catalog(args.family, args.n).graph
    else:
        raise UsageError("speyer needs --graph or --family")
    if args.pendant:
        name = args.pendant_name or _fresh_name(g)
        g = extend_pendant(g, args.pendant, name, _label(args.pendant_label))
    if args.raise_label:
        s, t, m = args.raise_label
        g = increase_label(g, s, t, _label(m))
    _warn_inexact(g)
    report = check_speyer_property(g, args.samples, args.max_len, args.seed, force=args.force)
    for w, wit in report.counterexamples[: args.show]:
        print(f"counterexample: {format_word(w)} (delete {wit.i + 1}, {wit.j + 1})")
    print(f"{len(report.counterexamples)} counterexamples")
    return OK if report.ok else FAIL


def _fresh_name(g: CoxeterGraph) -> str:
    k = 0
    while f"p{k}" in g:
        k += 1
    return f"p{k}"


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxwords", description="Reduced words, intervening neighbours and the roots-and-chips game.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-in", help="check the intervening-neighbours property")
    p.add_argument("graph")
    p.add_argument("word")
    p.set_defaults(func=cmd_check_in)

    p = sub.add_parser("reduce", help="decide whether a word is reduced")
    p.add_argument("graph")
    p.add_argument("word")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("smallroots", help="list the small roots")
    p.add_argument("graph")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_smallroots)

    p = sub.add_parser("dfa", help="build the reduced-word automaton")
    p.add_argument("graph")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--state-cap", type=int, default=10**5)
    p.set_defaults(func=cmd_dfa)

    p = sub.add_parser("bicolour", help="print a bicoloured word of a tree")
    p.add_argument("graph")
    p.add_argument("start")
    p.add_argument("length", type=int)
    p.set_defaults(func=cmd_bicolour)

    p = sub.add_parser("classify", help="look for an affine subgraph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", help="emit an affine Coxeter graph")
    p.add_argument("family", help="A, B, C, D (with n), E6, E7, E8, F4, G2; a trailing t or ~ is accepted")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("game", help="play the roots-and-chips game")
    p.add_argument("graph")
    p.add_argument("--word", required=True)
    p.add_argument("--steps", type=int)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--explore", action="store_true")
    p.add_argument("--depth", type=int, default=50)
    p.add_argument("--state-cap", type=int, default=10**5)
    p.add_argument("--dot", action="store_true")
    p.add_argument("--default-orientation", choices=["word", "bicoloured"], default="word")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("speyer", help="sample intervening-neighbours words and check they are reduced")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--family")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pendant", metavar="S", help="attach a new vertex to S first")
    p.add_argument("--pendant-name")
    p.add_argument("--pendant-label", default="3")
    p.add_argument("--raise", dest="raise_label", nargs=3, metavar=("S", "T", "M"), help="raise the S-T edge label to M")
    p.add_argument("--force", action="store_true", help="skip the infinite/irreducible precondition")
    p.add_argument("--show", type=int, default=5, help="counterexamples to print")
    p.set_defaults(func=cmd_speyer)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    try:
        return args.func(args)
    except (GraphError, UsageError, ValueError, OSError, PrecisionExhausted, StateCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
