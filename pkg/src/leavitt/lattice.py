"""Admissible pairs, graded-basic-ideal lattices, and ideal classification.

A pair (H, S) with H saturated hereditary and S a set of vertices breaking
for H indexes one graded basic ideal of the Leavitt path algebra of the
graph.  This module enumerates the pairs, computes the lattice operations
through the closed intersection formula, builds the three derived graphs
(quotient, subalgebra, and the graph realising the ideal itself as a Leavitt
path algebra), and implements the prime / primitive classification in terms
of maximal tails and breaking vertices.

The classification functions answer with empty lists when the coefficient
ring fails the relevant hypothesis (integral domain for primeness, field for
primitivity); the honest answer is "none exist", not an exception.  The
report layer attaches the human-readable diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import PairError
from .graphs import (
    Edge,
    Graph,
    VertexSet,
    _breaking_for_unchecked,
    _set_key,
    breaking_vertices,
    breaking_vertices_for,
    is_hereditary,
    is_saturated,
    line_points,
    maximal_tails,
    omega,
    satisfies_condition_k,
    satisfies_condition_l,
    satisfies_mt3,
    saturated_hereditary_sets,
    saturation,
)
from .rings import RingSpec


@dataclass(frozen=True)
class AdmissiblePair:
    """The handle for one graded basic ideal: a saturated hereditary vertex
    set together with a set of its breaking vertices."""

    h: VertexSet
    s: VertexSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", frozenset(self.h))
        object.__setattr__(self, "s", frozenset(self.s))

    def __str__(self) -> str:
        def fmt(xs: VertexSet) -> str:
            return "{" + ",".join(sorted(xs)) + "}"

        return f"({fmt(self.h)}, {fmt(self.s)})"


def pair_key(p: AdmissiblePair) -> tuple:
    return (_set_key(p.h), _set_key(p.s))


@lru_cache(maxsize=None)
def _check_pair_cached(g: Graph, p: AdmissiblePair) -> None:
    stray = (p.h | p.s) - g.vertex_set
    if stray:
        raise PairError(f"unknown vertex {sorted(stray)[0]!r}")
    if not is_hereditary(g, p.h):
        raise PairError(f"{sorted(p.h)} is not hereditary")
    if not is_saturated(g, p.h):
        raise PairError(f"{sorted(p.h)} is not saturated")
    extra = p.s - _breaking_cached(g, p.h)
    if extra:
        raise PairError(
            f"{sorted(extra)[0]!r} is not a breaking vertex for {sorted(p.h)}"
        )


def check_pair(g: Graph, p: AdmissiblePair) -> None:
    """Raise unless p is admissible for g."""
    _check_pair_cached(g, p)


@lru_cache(maxsize=None)
def _breaking_cached(g: Graph, h: VertexSet) -> VertexSet:
    return _breaking_for_unchecked(g, h)


def admissible_pair(g: Graph, hs: Iterable[str], ss: Iterable[str] = ()) -> AdmissiblePair:
    p = AdmissiblePair(frozenset(hs), frozenset(ss))
    check_pair(g, p)
    return p


def enumerate_admissible_pairs(g: Graph) -> list[AdmissiblePair]:
    """Every admissible pair, deterministically ordered.  Includes the bottom
    (empty, empty) and the top (all vertices, empty)."""
    pairs = []
    for h in saturated_hereditary_sets(g):
        b = sorted(_breaking_cached(g, h))
        for size in range(len(b) + 1):
            for chosen in combinations(b, size):
                pairs.append(AdmissiblePair(h, frozenset(chosen)))
    return sorted(pairs, key=pair_key)


def ideal_from_hereditary(g: Graph, xs: Iterable[str]) -> AdmissiblePair:
    """The pair of the ideal generated by a hereditary vertex set: saturate,
    take no breaking vertices."""
    x = g._check_subset(xs)
    if not is_hereditary(g, x):
        raise PairError(f"{sorted(x)} is not hereditary")
    return AdmissiblePair(saturation(g, x), frozenset())


@lru_cache(maxsize=None)
def intersect(g: Graph, p1: AdmissiblePair, p2: AdmissiblePair) -> AdmissiblePair:
    """Meet of two pairs under ideal intersection:
    (H1 & H2, (H1|S1) & (H2|S2) & breaking(H1 & H2))."""
    check_pair(g, p1)
    check_pair(g, p2)
    h = p1.h & p2.h  # intersections of saturated hereditary sets are again such
    s = (p1.h | p1.s) & (p2.h | p2.s) & _breaking_cached(g, h)
    return AdmissiblePair(h, s)


def pair_leq(g: Graph, p1: AdmissiblePair, p2: AdmissiblePair) -> bool:
    """Ideal containment, expressed through the meet: I1 <= I2 iff I1 ^ I2 = I1."""
    return intersect(g, p1, p2) == p1


def hasse_edges(g: Graph, pairs: list[AdmissiblePair]) -> list[tuple[int, int]]:
    """Covering relation of pair_leq over the given (sorted) pair list, as
    index pairs (lower, upper)."""
    n = len(pairs)
    below = [[pair_leq(g, pairs[i], pairs[j]) and i != j for j in range(n)] for i in range(n)]
    covers = []
    for i in range(n):
        for j in range(n):
            if not below[i][j]:
                continue
            if any(below[i][k] and below[k][j] for k in range(n)):
                continue
            covers.append((i, j))
    return covers


# -- derived graphs -----------------------------------------------------------


def _fresh(base: str, taken: set[str]) -> str:
    candidate = base
    while candidate in taken:
        candidate += "'"
    return candidate


@dataclass(frozen=True)
class QuotientConstruction:
    """The quotient graph together with the names chosen for the primed
    copies (one per breaking vertex left out of S, plus their edge copies)."""

    graph: Graph
    primed_vertices: tuple[tuple[str, str], ...]
    primed_edges: tuple[tuple[str, str], ...]


@lru_cache(maxsize=None)
def quotient_construction(g: Graph, p: AdmissiblePair) -> QuotientConstruction:
    check_pair(g, p)
    h = p.h
    leftover = sorted(breaking_vertices_for(g, h) - p.s)
    kept_vertices = [v for v in g.vertices if v not in h]
    taken_v = set(kept_vertices)
    vmap: dict[str, str] = {}
    for v in leftover:
        name = _fresh(v + "'", taken_v)
        taken_v.add(name)
        vmap[v] = name

    kept_edges = [e for e in g.edges if e.dst not in h]
    taken_e = {e.id for e in kept_edges}
    emap: dict[str, str] = {}
    primed_edges = []
    for e in kept_edges:
        if e.dst in vmap:
            name = _fresh(e.id + "'", taken_e)
            taken_e.add(name)
            emap[e.id] = name
            primed_edges.append(Edge(name, e.src, vmap[e.dst]))

    bundles = [b for b in g.bundles if b[1] not in h]
    # a bundle into a leftover breaking vertex is duplicated onto the primed
    # copy, mirroring what the primed edge copies do for named edges
    bundles += [(src, vmap[dst]) for src, dst in bundles if dst in vmap]

    graph = Graph(
        tuple(kept_vertices) + tuple(vmap[v] for v in leftover),
        tuple(kept_edges) + tuple(primed_edges),
        tuple(bundles),
    )
    return QuotientConstruction(
        graph,
        tuple(sorted(vmap.items())),
        tuple(sorted(emap.items())),
    )


def quotient_graph(g: Graph, p: AdmissiblePair) -> Graph:
    """The graph whose Leavitt path algebra is the quotient by the ideal of p."""
    return quotient_construction(g, p).graph


def subalgebra_graph(g: Graph, p: AdmissiblePair) -> Graph:
    """Restriction to H and S: all edges out of H, plus the edges from S
    back into H (bundles from S into H stay bundles)."""
    check_pair(g, p)
    keep = p.h | p.s
    edges = tuple(
        e
        for e in g.edges
        if e.src in p.h or (e.src in p.s and e.dst in p.h)
    )
    bundles = tuple(
        b
        for b in g.bundles
        if b[0] in p.h or (b[0] in p.s and b[1] in p.h)
    )
    return Graph(tuple(sorted(keep)), edges, bundles)


@dataclass(frozen=True)
class IdealGraphConstruction:
    """The graph realising the ideal of (H, S) as a Leavitt path algebra.

    Besides H and S it has one vertex per path that enters H through an edge
    sourced outside H and S, and one per nonempty path ending in S; each such
    path-vertex carries a single edge to the endpoint of its path.  These
    path families are infinite as soon as a cycle or a bundle can feed them;
    then only paths of length <= bound are materialised and ``truncated``
    is set.
    """

    graph: Graph
    truncated: bool
    bound: int
    entry_paths: tuple[tuple[str, ...], ...]
    s_paths: tuple[tuple[str, ...], ...]
    path_vertex_ids: tuple[tuple[tuple[str, ...], str], ...]


def default_ideal_graph_bound(g: Graph) -> int:
    return 2 * len(g.edges) + 2


def ideal_graph(g: Graph, p: AdmissiblePair, bound: int | None = None) -> IdealGraphConstruction:
    """Build the ideal-realising graph.

    H is only required to be hereditary here (with S contained in its
    breaking vertices): the construction is purely combinatorial and is also
    useful for the ideal generated by a non-saturated hereditary set.
    """
    h = g._check_subset(p.h)
    s = g._check_subset(p.s)
    if not is_hereditary(g, h):
        raise PairError(f"{sorted(h)} is not hereditary")
    extra = s - _breaking_for_unchecked(g, h)
    if extra:
        raise PairError(f"{sorted(extra)[0]!r} is not a breaking vertex for {sorted(h)}")
    if bound is None:
        bound = default_ideal_graph_bound(g)
    if bound < 1:
        raise PairError(f"path-length bound must be >= 1, got {bound}")

    hs = h | s
    entry_edges = [e for e in g.edges if e.src not in hs and e.dst in h]

    named_reach = _named_reach(g)
    on_named_cycle = {
        u for u in g.vertices if any(u in named_reach[e.dst] for e in g.out_edges[u])
    }

    def prefix_infinite(targets: set[str]) -> bool:
        # infinitely many named prefixes (a cycle feeds a target), or any
        # bundle feeds one (each bundle is infinitely many parallel edges)
        if any(targets & named_reach[c] for c in on_named_cycle):
            return True
        return any(targets & g.reach[dst] for _, dst in g.bundles)

    f1_infinite = (
        any(src not in hs and dst in h for src, dst in g.bundles)
        or prefix_infinite({e.src for e in entry_edges})
    )
    f2_infinite = bool(s) and (
        any(dst in s or (s & g.reach[dst]) for _, dst in g.bundles)
        or any(s & named_reach[c] for c in on_named_cycle)
    )
    truncated = f1_infinite or f2_infinite
    # when the families are finite no named cycle feeds them, so member
    # lengths are bounded by the vertex count; the cap is just a safety net
    limit = bound if truncated else max(bound, len(g.vertices) + 1)

    def grow_backwards(seeds: list[tuple[str, ...]]) -> list[tuple[str, ...]]:
        members: list[tuple[str, ...]] = []
        level = seeds
        while level:
            members.extend(level)
            level = [
                (e.id,) + path
                for path in level
                if len(path) < limit
                for e in g.in_edges[g.edge_map[path[0]].src]
            ]
        return members

    entry_paths = grow_backwards([(e.id,) for e in entry_edges])
    s_seeds = [(e.id,) for t in sorted(s) for e in g.in_edges[t]]
    s_paths = grow_backwards(s_seeds)

    base_vertices = sorted(hs)
    kept_edges = [e for e in g.edges if e.src in h] + [
        e for e in g.edges if e.src in s and e.dst in h
    ]
    bundles = [b for b in g.bundles if b[0] in h] + [
        b for b in g.bundles if b[0] in s and b[1] in h
    ]

    taken_v = set(base_vertices)
    path_ids: dict[tuple[str, ...], str] = {}
    for path in entry_paths + s_paths:
        name = _fresh(".".join(path), taken_v)
        taken_v.add(name)
        path_ids[path] = name
    taken_e = {e.id for e in kept_edges}
    bar_edges = []
    for path in entry_paths + s_paths:
        name = _fresh("~" + path_ids[path], taken_e)
        taken_e.add(name)
        bar_edges.append(Edge(name, path_ids[path], g.edge_map[path[-1]].dst))

    graph = Graph(
        tuple(base_vertices) + tuple(path_ids[p_] for p_ in entry_paths + s_paths),
        tuple(kept_edges) + tuple(bar_edges),
        tuple(bundles),
    )
    return IdealGraphConstruction(
        graph,
        truncated,
        bound,
        tuple(entry_paths),
        tuple(s_paths),
        tuple(sorted(path_ids.items())),
    )


def _named_reach(g: Graph) -> dict[str, VertexSet]:
    closure = {}
    out = g.out_edges
    for v in g.vertices:
        seen = {v}
        frontier = [v]
        while frontier:
            cur = frontier.pop()
            for e in out[cur]:
                if e.dst not in seen:
                    seen.add(e.dst)
                    frontier.append(e.dst)
        closure[v] = frozenset(seen)
    return closure


# -- prime / primitive classification ----------------------------------------


def ideal_is_prime(g: Graph, ring: RingSpec, p: AdmissiblePair) -> bool:
    """Prime iff the ring is an integral domain and the quotient graph is
    pairwise cofinal.  The improper pair (all vertices, none) is never prime:
    its quotient is the zero ring."""
    q = quotient_graph(g, p)
    if not q.vertices:
        return False
    return ring.is_integral_domain() and satisfies_mt3(q, q.vertex_set)


def prime_graded_basic_ideals(g: Graph, ring: RingSpec) -> list[AdmissiblePair]:
    """Closed form for all prime graded basic ideals: one per maximal tail
    (complement plus all its breaking vertices) and one per breaking vertex
    of the graph (its omega set, leaving that vertex out).  Empty when the
    ring is not an integral domain."""
    if not ring.is_integral_domain():
        return []
    found = set()
    for m in maximal_tails(g):
        h = omega(g, m)
        found.add(AdmissiblePair(h, breaking_vertices_for(g, h)))
    for v in sorted(breaking_vertices(g)):
        h = omega(g, (v,))
        found.add(AdmissiblePair(h, breaking_vertices_for(g, h) - {v}))
    return sorted(found, key=pair_key)


def tail_subgraph(g: Graph, ms: Iterable[str]) -> Graph:
    """The subgraph on a maximal tail: its vertices and every edge or bundle
    ranging in it (sources lie in the tail automatically, because the
    complement is hereditary)."""
    m = g._check_subset(ms)
    edges = tuple(e for e in g.edges if e.dst in m)
    bundles = tuple(b for b in g.bundles if b[1] in m)
    for e in edges:
        if e.src not in m:
            raise PairError(f"{sorted(m)} is not a maximal tail: edge {e.id!r} enters it")
    for src, dst in bundles:
        if src not in m:
            raise PairError(f"{sorted(m)} is not a maximal tail: a bundle enters it")
    return Graph(tuple(sorted(m)), edges, bundles)


def tails_with_condition_l(g: Graph) -> list[VertexSet]:
    """Maximal tails whose own subgraph has an exit on every cycle."""
    return [m for m in maximal_tails(g) if satisfies_condition_l(tail_subgraph(g, m))]


def primitive_graded_ideals(g: Graph, ring: RingSpec) -> list[AdmissiblePair]:
    """Closed form for all primitive graded ideals: as for primes, except
    only tails whose subgraph satisfies the exit condition contribute.
    Empty when the ring is not a field."""
    if not ring.is_field():
        return []
    found = set()
    for m in tails_with_condition_l(g):
        h = omega(g, m)
        found.add(AdmissiblePair(h, breaking_vertices_for(g, h)))
    for v in sorted(breaking_vertices(g)):
        h = omega(g, (v,))
        found.add(AdmissiblePair(h, breaking_vertices_for(g, h) - {v}))
    return sorted(found, key=pair_key)


def algebra_is_prime(g: Graph, ring: RingSpec) -> bool:
    if not g.vertices:
        return False
    return ring.is_integral_domain() and satisfies_mt3(g, g.vertex_set)


def algebra_is_primitive(g: Graph, ring: RingSpec) -> bool:
    if not g.vertices:
        return False
    return (
        ring.is_field()
        and satisfies_condition_l(g)
        and satisfies_mt3(g, g.vertex_set)
    )


def algebra_is_simple_hint(g: Graph, ring: RingSpec) -> bool:
    """Sufficient simplicity criterion: field coefficients, no vertex on
    exactly one closed simple path, no proper maximal tail, no breaking
    vertex.  False means "not determined by this criterion"."""
    if not g.vertices:
        return False
    return (
        ring.is_field()
        and satisfies_condition_k(g)
        and maximal_tails(g) == [g.vertex_set]
        and not breaking_vertices(g)
    )


def all_basic_ideals_graded(g: Graph) -> bool:
    """Exact criterion for the admissible pairs to enumerate every basic
    ideal (not only the graded ones): no vertex on exactly one closed
    simple path."""
    return satisfies_condition_k(g)


def vertex_generates_minimal_left_ideal(g: Graph, ring: RingSpec, v: str) -> bool:
    """A vertex generates a minimal one-sided ideal exactly when the ring is
    a field and its tree has no bifurcations and no closed paths."""
    g._check_vertex(v)
    return ring.is_field() and v in line_points(g)


# -- aggregate report ---------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    graph: Graph
    ring: RingSpec
    admissible_pairs: tuple[AdmissiblePair, ...]
    prime_graded_basic_ideals: tuple[AdmissiblePair, ...]
    primitive_graded_ideals: tuple[AdmissiblePair, ...]
    maximal_tails: tuple[tuple[str, ...], ...]
    breaking_vertices: tuple[str, ...]
    line_points: tuple[str, ...]
    condition_l: bool
    condition_k: bool
    cofinal: bool
    ring_is_integral_domain: bool
    ring_is_field: bool
    algebra_prime: bool
    algebra_primitive: bool
    simple_by_closed_form: bool
    all_basic_ideals_graded: bool
    diagnostics: tuple[str, ...]


def classify(g: Graph, ring: RingSpec) -> ClassificationReport:
    diagnostics = []
    if not ring.is_integral_domain():
        diagnostics.append(
            f"coefficient ring {ring} is not an integral domain: "
            "no prime graded basic ideals exist"
        )
    if not ring.is_field():
        diagnostics.append(
            f"coefficient ring {ring} is not a field: no primitive graded ideals exist"
        )
    return ClassificationReport(
        graph=g,
        ring=ring,
        admissible_pairs=tuple(enumerate_admissible_pairs(g)),
        prime_graded_basic_ideals=tuple(prime_graded_basic_ideals(g, ring)),
        primitive_graded_ideals=tuple(primitive_graded_ideals(g, ring)),
        maximal_tails=tuple(tuple(sorted(m)) for m in maximal_tails(g)),
        breaking_vertices=tuple(sorted(breaking_vertices(g))),
        line_points=tuple(sorted(line_points(g))),
        condition_l=satisfies_condition_l(g),
        condition_k=satisfies_condition_k(g),
        cofinal=satisfies_mt3(g, g.vertex_set) if g.vertices else False,
        ring_is_integral_domain=ring.is_integral_domain(),
        ring_is_field=ring.is_field(),
        algebra_prime=algebra_is_prime(g, ring),
        algebra_primitive=algebra_is_primitive(g, ring),
        simple_by_closed_form=algebra_is_simple_hint(g, ring),
        all_basic_ideals_graded=all_basic_ideals_graded(g),
        diagnostics=tuple(diagnostics),
    )


def pair_to_doc(p: AdmissiblePair) -> dict:
    return {"h": sorted(p.h), "s": sorted(p.s)}


def report_to_doc(rep: ClassificationReport) -> dict:
    from .graphs import graph_to_doc

    return {
        "graph": graph_to_doc(rep.graph),
        "ring": str(rep.ring),
        "flags": {
            "condition_L": rep.condition_l,
            "condition_K": rep.condition_k,
            "MT3": rep.cofinal,
            "ring_is_integral_domain": rep.ring_is_integral_domain,
            "ring_is_field": rep.ring_is_field,
            "algebra_prime": rep.algebra_prime,
            "algebra_primitive": rep.algebra_primitive,
            "simple_by_closed_form": rep.simple_by_closed_form,
            "all_basic_ideals_graded": rep.all_basic_ideals_graded,
        },
        "admissible_pairs": [pair_to_doc(p) for p in rep.admissible_pairs],
        "prime_graded_basic_ideals": [
            pair_to_doc(p) for p in rep.prime_graded_basic_ideals
        ],
        "primitive_graded_ideals": [
            pair_to_doc(p) for p in rep.primitive_graded_ideals
        ],
        "maximal_tails": [list(m) for m in rep.maximal_tails],
        "breaking_vertices": list(rep.breaking_vertices),
        "line_points": list(rep.line_points),
        "diagnostics": list(rep.diagnostics),
    }


def report_to_text(rep: ClassificationReport) -> str:
    lines = [
        f"ring: {rep.ring}",
        f"condition (L): {_yn(rep.condition_l)}",
        f"condition (K): {_yn(rep.condition_k)}",
        f"cofinal (MT3): {_yn(rep.cofinal)}",
        f"ring is integral domain: {_yn(rep.ring_is_integral_domain)}",
        f"ring is field: {_yn(rep.ring_is_field)}",
        f"algebra prime: {_yn(rep.algebra_prime)}",
        f"algebra primitive: {_yn(rep.algebra_primitive)}",
        "simple: "
        + ("yes (by closed form)" if rep.simple_by_closed_form else "not determined by closed form"),
        f"all basic ideals graded: {_yn(rep.all_basic_ideals_graded)}",
        f"maximal tails: {'; '.join('{' + ','.join(m) + '}' for m in rep.maximal_tails) or '(none)'}",
        f"breaking vertices: {', '.join(rep.breaking_vertices) or '(none)'}",
        f"line points: {', '.join(rep.line_points) or '(none)'}",
        f"admissible pairs ({len(rep.admissible_pairs)}):",
    ]
    lines += [f"  {p}" for p in rep.admissible_pairs]
    lines.append(f"prime graded basic ideals ({len(rep.prime_graded_basic_ideals)}):")
    lines += [f"  {p}" for p in rep.prime_graded_basic_ideals]
    lines.append(f"primitive graded ideals ({len(rep.primitive_graded_ideals)}):")
    lines += [f"  {p}" for p in rep.primitive_graded_ideals]
    for d in rep.diagnostics:
        lines.append(f"note: {d}")
    return "\n".join(lines)


def _yn(flag: bool) -> str:
    return "true" if flag else "false"
