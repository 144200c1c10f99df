"""Command line interface.

Commands operate on a graph document (JSON; see ``validate_graph``) and
print text, JSON, or DOT.  Exit codes: 0 success, 1 a ring hypothesis
failed (e.g. primitives over Z), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .engine import LeavittAlgebra, in_graded_basic_ideal
from .errors import LeavittError
from .exprs import parse_element
from .graphs import (
    Graph,
    graph_to_doc,
    satisfies_condition_k,
    satisfies_condition_l,
    satisfies_mt3,
    validate_graph,
)
from .lattice import (
    AdmissiblePair,
    IdealGraphConstruction,
    admissible_pair,
    classify,
    default_ideal_graph_bound,
    enumerate_admissible_pairs,
    hasse_edges,
    ideal_graph,
    pair_to_doc,
    prime_graded_basic_ideals,
    primitive_graded_ideals,
    quotient_construction,
    report_to_doc,
    report_to_text,
    subalgebra_graph,
)
from .rings import parse_ring


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except LeavittError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description="Analyze the graded ideal structure of a Leavitt path algebra.",
    )
    sub = parser.add_subparsers(required=True)

    def cmd(name: str, handler, help_: str, ring=False, pair=False, fmt=("text", "json")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("graph", help="path to a graph JSON document")
        if ring:
            p.add_argument("--ring", required=True, help="Z, Q, Z/<n>, or GF(<p>)")
        if pair:
            p.add_argument("--H", default="", help="comma-separated vertices of H")
            p.add_argument("--S", default="", help="comma-separated vertices of S")
        if fmt:
            p.add_argument("--format", choices=fmt, default=fmt[0])
        p.set_defaults(handler=handler)
        return p

    cmd("analyze", _cmd_analyze, "full classification report", ring=True)
    cmd("ideals", _cmd_ideals, "admissible pairs and their Hasse diagram")
    cmd("primes", _cmd_primes, "prime graded basic ideals", ring=True)
    cmd("primitives", _cmd_primitives, "primitive graded ideals", ring=True)
    cmd("quotient", _cmd_quotient, "quotient graph by a pair",
        pair=True, fmt=("json", "dot"))
    cmd("subalgebra", _cmd_subalgebra, "subalgebra graph of a pair",
        pair=True, fmt=("json", "dot"))
    p = cmd("ideal-graph", _cmd_ideal_graph, "graph realising the ideal of a pair",
            pair=True, fmt=("json", "dot"))
    p.add_argument("--bound", type=int, default=None,
                   help="path-length bound for the path vertices (default 2|E|+2)")
    p = cmd("check", _cmd_check, "evaluate graph conditions", fmt=())
    p.add_argument("--conditions", default="L,K,MT3",
                   help="comma-separated subset of L,K,MT3")
    p = cmd("eval", _cmd_eval, "normal form of an element expression",
            ring=True, fmt=())
    p.add_argument("expr", help="element expression, e.g. \"2.e1.e2^* - v3\"")
    p = cmd("member", _cmd_member, "graded-basic-ideal membership of an expression",
            ring=True, pair=True, fmt=())
    p.add_argument("expr", help="element expression")
    return parser


def _load_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return validate_graph(json.load(fh))


def _vertex_list(raw: str) -> list[str]:
    return [v.strip() for v in raw.split(",") if v.strip()]


def _pair_of(args, g: Graph) -> AdmissiblePair:
    return admissible_pair(g, _vertex_list(args.H), _vertex_list(args.S))


def _emit(doc, text: str, args) -> int:
    print(json.dumps(doc, indent=2, sort_keys=True) if args.format == "json" else text)
    return 0


def _cmd_analyze(args) -> int:
    g = _load_graph(args.graph)
    report = classify(g, parse_ring(args.ring))
    return _emit(report_to_doc(report), report_to_text(report), args)


def _cmd_ideals(args) -> int:
    g = _load_graph(args.graph)
    pairs = enumerate_admissible_pairs(g)
    covers = hasse_edges(g, pairs)
    doc = {
        "pairs": [pair_to_doc(p) for p in pairs],
        "hasse": [[lo, hi] for lo, hi in covers],
    }
    lines = [f"admissible pairs ({len(pairs)}):"]
    lines += [f"  [{i}] {p}" for i, p in enumerate(pairs)]
    lines.append("covers (lower < upper):")
    lines += [f"  [{lo}] < [{hi}]" for lo, hi in covers]
    return _emit(doc, "\n".join(lines), args)


def _cmd_primes(args) -> int:
    g = _load_graph(args.graph)
    ring = parse_ring(args.ring)
    if not ring.is_integral_domain():
        print(f"error: coefficient ring {ring} is not an integral domain; "
              "no prime graded basic ideals exist", file=sys.stderr)
        return 1
    pairs = prime_graded_basic_ideals(g, ring)
    return _emit([pair_to_doc(p) for p in pairs], "\n".join(str(p) for p in pairs), args)


def _cmd_primitives(args) -> int:
    g = _load_graph(args.graph)
    ring = parse_ring(args.ring)
    if not ring.is_field():
        print(f"error: coefficient ring {ring} is not a field; "
              "no primitive graded ideals exist", file=sys.stderr)
        return 1
    pairs = primitive_graded_ideals(g, ring)
    return _emit([pair_to_doc(p) for p in pairs], "\n".join(str(p) for p in pairs), args)


def _cmd_quotient(args) -> int:
    g = _load_graph(args.graph)
    qc = quotient_construction(g, _pair_of(args, g))
    primed = {name for _, name in qc.primed_vertices}
    return _emit(graph_to_doc(qc.graph), _to_dot(qc.graph, primed=primed), args)


def _cmd_subalgebra(args) -> int:
    g = _load_graph(args.graph)
    sub = subalgebra_graph(g, _pair_of(args, g))
    return _emit(graph_to_doc(sub), _to_dot(sub), args)


def _cmd_ideal_graph(args) -> int:
    g = _load_graph(args.graph)
    bound = args.bound if args.bound is not None else default_ideal_graph_bound(g)
    built = ideal_graph(g, _pair_of(args, g), bound=bound)
    doc = graph_to_doc(built.graph)
    doc["truncated"] = built.truncated
    doc["bound"] = built.bound
    return _emit(doc, _to_dot(built.graph, construction=built), args)


def _cmd_check(args) -> int:
    g = _load_graph(args.graph)
    available = {
        "L": satisfies_condition_l,
        "K": satisfies_condition_k,
        "MT3": lambda gr: satisfies_mt3(gr, gr.vertex_set),
    }
    for name in _vertex_list(args.conditions):
        if name not in available:
            print(f"error: unknown condition {name!r} (use L, K, MT3)", file=sys.stderr)
            return 2
        print(f"{name}: {'true' if available[name](g) else 'false'}")
    return 0


def _cmd_eval(args) -> int:
    g = _load_graph(args.graph)
    alg = LeavittAlgebra(g, parse_ring(args.ring))
    print(parse_element(alg, args.expr))
    return 0


def _cmd_member(args) -> int:
    g = _load_graph(args.graph)
    alg = LeavittAlgebra(g, parse_ring(args.ring))
    pair = _pair_of(args, g)
    x = parse_element(alg, args.expr)
    print("true" if in_graded_basic_ideal(alg, pair, x) else "false")
    return 0


def _to_dot(
    g: Graph,
    primed: set[str] | None = None,
    construction: IdealGraphConstruction | None = None,
) -> str:
    """DOT export: primed vertices dashed, bundles bold with an infinity
    label, truncated constructions bannered."""
    primed = primed or set()
    path_vertices = (
        {vid for _, vid in construction.path_vertex_ids} if construction else set()
    )
    lines = ["digraph leavitt {"]
    if construction is not None and construction.truncated:
        lines.append(
            f'  label="TRUNCATED: path vertices up to length {construction.bound} only";'
        )
        lines.append("  labelloc=t;")
    for v in g.vertices:
        style = []
        if v in primed:
            style.append("style=dashed")
        if v in path_vertices:
            style.append("shape=box")
        lines.append(f'  "{v}"' + (f" [{', '.join(style)}]" if style else "") + ";")
    for e in g.edges:
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.id}"];')
    for src, dst in g.bundles:
        lines.append(f'  "{src}" -> "{dst}" [label="∞", style=bold];')
    lines.append("}")
    return "\n".join(lines)
