"""Finite directed graphs with infinite-emitter bundles, and their predicates.

A graph consists of named vertices, named edges, and *bundles*.  A bundle
``(src, dst)`` stands for countably infinitely many unnamed parallel edges
from ``src`` to ``dst``; it is how infinite emitters are modelled while
keeping every computation on the graph finite.  The conventions:

* for reachability, trees, exits and closed-path classification a bundle
  behaves like at least two anonymous parallel edges;
* for edge counting it behaves like "infinitely many", so a bundle source is
  an infinite emitter and a bundle never contributes to a "finitely many
  edges into ..." count.

``Graph`` values are immutable and hashable; all functions here are pure, so
derived data (adjacency maps, the reachability closure) is memoised on the
graph itself.  Every list-valued result is deterministically ordered.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

from .errors import GraphError

VertexSet = frozenset[str]


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Graph:
    """Immutable directed graph; see the module docstring for bundle semantics.

    Construction canonicalises the field order, so two graphs with the same
    vertices, edges and bundles compare equal regardless of input order.
    The vertex set may be empty (quotient constructions produce the empty
    graph); user-facing input goes through :func:`validate_graph`, which
    rejects that.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    bundles: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        vs = tuple(sorted(self.vertices))
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate vertex id")
        es = tuple(sorted(self.edges, key=lambda e: e.id))
        ids = [e.id for e in es]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})[0]
            raise GraphError(f"duplicate edge id {dup!r}")
        bs = tuple(sorted(set(tuple(b) for b in self.bundles)))
        declared = set(vs)
        for e in es:
            for endpoint in (e.src, e.dst):
                if endpoint not in declared:
                    raise GraphError(
                        f"edge {e.id!r} has dangling endpoint {endpoint!r}"
                    )
        for src, dst in bs:
            for endpoint in (src, dst):
                if endpoint not in declared:
                    raise GraphError(
                        f"bundle {src!r}->{dst!r} has dangling endpoint {endpoint!r}"
                    )
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        object.__setattr__(self, "bundles", bs)

    # -- derived structure (memoised; treat results as read-only) ----------

    @cached_property
    def vertex_set(self) -> VertexSet:
        return frozenset(self.vertices)

    @cached_property
    def out_edges(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[Edge, ...]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.dst].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def out_bundles(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for src, dst in self.bundles:
            out[src].append(dst)
        return {v: tuple(ts) for v, ts in out.items()}

    @cached_property
    def successors(self) -> dict[str, VertexSet]:
        """Successor map over named edges and bundles alike."""
        succ: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            succ[e.src].add(e.dst)
        for src, dst in self.bundles:
            succ[src].add(dst)
        return {v: frozenset(ts) for v, ts in succ.items()}

    @cached_property
    def reach(self) -> dict[str, VertexSet]:
        """Reflexive-transitive reachability closure (named edges + bundles)."""
        closure: dict[str, VertexSet] = {}
        for v in self.vertices:
            seen = {v}
            frontier = [v]
            while frontier:
                cur = frontier.pop()
                for nxt in self.successors[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
            closure[v] = frozenset(seen)
        return closure

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    # -- vertex classification ---------------------------------------------

    def is_sink(self, v: str) -> bool:
        self._check_vertex(v)
        return not self.out_edges[v] and not self.out_bundles[v]

    def is_infinite_emitter(self, v: str) -> bool:
        self._check_vertex(v)
        return bool(self.out_bundles[v])

    def is_finite_emitter(self, v: str) -> bool:
        self._check_vertex(v)
        return bool(self.out_edges[v]) and not self.out_bundles[v]

    def sinks(self) -> VertexSet:
        return frozenset(v for v in self.vertices if self.is_sink(v))

    def infinite_emitters(self) -> VertexSet:
        return frozenset(v for v in self.vertices if self.out_bundles[v])

    def finite_emitters(self) -> VertexSet:
        return frozenset(v for v in self.vertices if self.is_finite_emitter(v))

    def is_row_finite(self) -> bool:
        return not self.bundles

    def _check_vertex(self, v: str) -> None:
        if v not in self.vertex_set:
            raise GraphError(f"unknown vertex {v!r}")

    def _check_subset(self, xs: Iterable[str]) -> VertexSet:
        out = frozenset(xs)
        stray = out - self.vertex_set
        if stray:
            raise GraphError(f"unknown vertex {sorted(stray)[0]!r}")
        return out


class PathCount(Enum):
    """Three-way count of closed simple paths based at a vertex."""

    ZERO = "zero"
    ONE = "one"
    TWO_OR_MORE = "two_or_more"


def _set_key(xs: frozenset[str]) -> tuple[int, tuple[str, ...]]:
    return (len(xs), tuple(sorted(xs)))


# -- construction and serialisation ----------------------------------------


def make_graph(
    vertices: Iterable[str],
    edges: Iterable[tuple[str, str, str]] = (),
    bundles: Iterable[tuple[str, str]] = (),
) -> Graph:
    """Build a graph from plain tuples, rejecting the empty vertex set."""
    vs = tuple(vertices)
    if not vs:
        raise GraphError("empty vertex set")
    return Graph(vs, tuple(Edge(*e) for e in edges), tuple(bundles))


def validate_graph(raw: object) -> Graph:
    """Parse and validate a graph document (the JSON wire format).

    The document is ``{"vertices": [...], "edges": [{"id", "src", "dst"}],
    "bundles": [{"src", "dst"}]}``; ``edges`` and ``bundles`` may be omitted.
    """
    if not isinstance(raw, Mapping):
        raise GraphError("graph document must be a JSON object")
    unknown = set(raw) - {"vertices", "edges", "bundles"}
    if unknown:
        raise GraphError(f"unknown key {sorted(unknown)[0]!r} in graph document")
    vertices = raw.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphError('"vertices" must be a list of strings')
    if not vertices:
        raise GraphError("empty vertex set")
    edges: list[Edge] = []
    for i, item in enumerate(raw.get("edges", [])):
        if not isinstance(item, Mapping) or set(item) != {"id", "src", "dst"}:
            raise GraphError(f'edge #{i} must be an object with keys "id", "src", "dst"')
        if not all(isinstance(item[k], str) for k in ("id", "src", "dst")):
            raise GraphError(f"edge #{i} fields must be strings")
        edges.append(Edge(item["id"], item["src"], item["dst"]))
    bundles: list[tuple[str, str]] = []
    for i, item in enumerate(raw.get("bundles", [])):
        if not isinstance(item, Mapping) or set(item) != {"src", "dst"}:
            raise GraphError(f'bundle #{i} must be an object with keys "src", "dst"')
        if not all(isinstance(item[k], str) for k in ("src", "dst")):
            raise GraphError(f"bundle #{i} fields must be strings")
        bundles.append((item["src"], item["dst"]))
    return Graph(tuple(vertices), tuple(edges), tuple(bundles))


def graph_to_doc(g: Graph) -> dict:
    """Serialise a graph back to the JSON wire format (round-trips)."""
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges],
        "bundles": [{"src": s, "dst": d} for s, d in g.bundles],
    }


def induced_subgraph(g: Graph, keep: Iterable[str]) -> Graph:
    keep_set = g._check_subset(keep)
    return Graph(
        tuple(sorted(keep_set)),
        tuple(e for e in g.edges if e.src in keep_set and e.dst in keep_set),
        tuple(b for b in g.bundles if b[0] in keep_set and b[1] in keep_set),
    )


# -- reachability ------------------------------------------------------------


def reaches(g: Graph, v: str, w: str) -> bool:
    """Is there a directed path from v to w?  Reflexive; bundles count."""
    g._check_vertex(v)
    g._check_vertex(w)
    return w in g.reach[v]


def tree(g: Graph, v: str) -> VertexSet:
    """All vertices reachable from v (including v); always hereditary."""
    g._check_vertex(v)
    return g.reach[v]


# -- hereditary / saturated machinery ---------------------------------------


def is_hereditary(g: Graph, xs: Iterable[str]) -> bool:
    """Closed under edge ranges: arcs leaving the set are forbidden."""
    x = g._check_subset(xs)
    return all(g.successors[v] <= x for v in x)


def is_saturated(g: Graph, xs: Iterable[str]) -> bool:
    """No finite emitter outside the set sends every edge into it.

    Infinite emitters (bundle sources) never force membership, and sinks
    are not emitters at all.
    """
    x = g._check_subset(xs)
    for v in g.vertices:
        if v in x or not g.is_finite_emitter(v):
            continue
        if all(e.dst in x for e in g.out_edges[v]):
            return False
    return True


def saturation(g: Graph, xs: Iterable[str]) -> VertexSet:
    """Least saturated superset: repeatedly absorb forced finite emitters."""
    cur = set(g._check_subset(xs))
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in cur or not g.is_finite_emitter(v):
                continue
            if all(e.dst in cur for e in g.out_edges[v]):
                cur.add(v)
                changed = True
    return frozenset(cur)


def saturated_hereditary_sets(g: Graph) -> list[VertexSet]:
    """All saturated hereditary vertex sets, ordered by size then lexicographically.

    The family is generated as the join-closure of the saturations of the
    vertex trees: any saturated hereditary set is the saturated closure of
    the union of the trees of its members, so this enumeration is complete
    without scanning all vertex subsets.
    """
    return list(_sat_her_cached(g))


@lru_cache(maxsize=None)
def _sat_her_cached(g: Graph) -> tuple[VertexSet, ...]:
    generators = [saturation(g, tree(g, v)) for v in g.vertices]
    found = {frozenset()}
    frontier: list[VertexSet] = [frozenset()]
    while frontier:
        base = frontier.pop()
        for gen in generators:
            # base and gen are hereditary, so the union is hereditary and
            # its saturation is again saturated hereditary.
            joined = saturation(g, base | gen)
            if joined not in found:
                found.add(joined)
                frontier.append(joined)
    return tuple(sorted(found, key=_set_key))


# -- tails, omega sets, breaking vertices ------------------------------------


def omega(g: Graph, xs: Iterable[str]) -> VertexSet:
    """Vertices outside the set from which no member of the set is reachable."""
    x = g._check_subset(xs)
    if not x:
        raise GraphError("omega of the empty set is undefined")
    return frozenset(w for w in g.vertex_set - x if not (g.reach[w] & x))


def satisfies_mt3(g: Graph, ms: Iterable[str]) -> bool:
    """Pairwise cofinality: any two members flow to a common member."""
    m = g._check_subset(ms)
    if not m:
        raise GraphError("cofinality of the empty set is undefined")
    down = {v: g.reach[v] & m for v in m}
    return all(down[v] & down[w] for v in m for w in m)


def maximal_tails(g: Graph) -> list[VertexSet]:
    """All maximal tails: complements of saturated hereditary sets that are
    pairwise cofinal.  Ordered by size then lexicographically."""
    return list(_tails_cached(g))


@lru_cache(maxsize=None)
def _tails_cached(g: Graph) -> tuple[VertexSet, ...]:
    full = g.vertex_set
    tails = [
        m
        for h in _sat_her_cached(g)
        if (m := full - h) and satisfies_mt3(g, m)
    ]
    return tuple(sorted(tails, key=_set_key))


def _breaking_for_unchecked(g: Graph, h: VertexSet) -> VertexSet:
    out = []
    for v in g.vertices:
        if v in h:
            continue
        targets = g.out_bundles[v]
        if not targets or any(t not in h for t in targets):
            continue  # not an infinite emitter, or infinitely many edges escape
        escaping = sum(1 for e in g.out_edges[v] if e.dst not in h)
        if escaping >= 1:
            out.append(v)
    return frozenset(out)


def breaking_vertices_for(g: Graph, hs: Iterable[str]) -> VertexSet:
    """Vertices emitting infinitely many edges into the set and a finite,
    positive number outside it.

    In the bundle model: every bundle from the vertex lands in the set, and
    at least one named edge escapes it.  Always empty on row-finite graphs.
    """
    h = g._check_subset(hs)
    if not is_hereditary(g, h) or not is_saturated(g, h):
        raise GraphError("the set must be saturated and hereditary")
    return _breaking_for_unchecked(g, h)


def breaking_vertices(g: Graph) -> VertexSet:
    """Infinite emitters that break for the set of vertices not reaching them."""
    out = []
    for v in sorted(g.infinite_emitters()):
        # omega({v}) is automatically saturated hereditary for an infinite emitter
        if v in _breaking_for_unchecked(g, omega(g, (v,))):
            out.append(v)
    return frozenset(out)


# -- cycles and the conditions on closed paths --------------------------------


def _count_simple_cycles_at(g: Graph, v: str, cap: int) -> int:
    """Count (up to cap) named closed paths at v with pairwise-distinct
    vertices, as edge sequences, so parallel named edges count separately."""
    count = 0

    def dfs(cur: str, visited: frozenset[str]) -> None:
        nonlocal count
        for e in g.out_edges[cur]:
            if count >= cap:
                return
            if e.dst == v:
                count += 1
            elif e.dst not in visited:
                dfs(e.dst, visited | {e.dst})

    dfs(v, frozenset((v,)))
    return count


def _circuit_vertices(g: Graph) -> VertexSet:
    """Vertices lying on some closed path (named edges or bundles)."""
    return frozenset(
        u for u in g.vertices if any(u in g.reach[z] for z in g.successors[u])
    )


def count_closed_simple_paths(g: Graph, v: str) -> PathCount:
    """Classify the number of closed simple paths based at v as 0, 1 or >= 2.

    Closed simple paths return to v without visiting it in between; inner
    vertices may repeat, so the count is infinite as soon as some inner
    vertex sits on a closed path avoiding v (splicing that loop in produces
    arbitrarily many).  A circuit through a bundle always yields at least
    two, via the bundle's parallel copies.  What remains is the finite count
    of vertex-simple named cycles at v.
    """
    g._check_vertex(v)
    named = _count_simple_cycles_at(g, v, cap=2)
    if named >= 2:
        return PathCount.TWO_OR_MORE
    reach = g.reach
    if any(x in reach[v] and v in reach[y] for x, y in g.bundles):
        return PathCount.TWO_OR_MORE
    if named == 0:
        return PathCount.ZERO
    rest = induced_subgraph(g, g.vertex_set - {v})
    for u in _circuit_vertices(rest):
        if u in reach[v] and v in reach[u]:
            return PathCount.TWO_OR_MORE
    return PathCount.ONE


def satisfies_condition_l(g: Graph) -> bool:
    """Does every cycle have an exit?

    A cycle without an exit consists solely of vertices whose entire named
    out-degree is the single cycle edge and which source no bundle; so the
    check walks the functional graph on those "corridor" vertices.
    """
    corridor = {
        v
        for v in g.vertices
        if len(g.out_edges[v]) == 1 and not g.out_bundles[v]
    }
    for start in corridor:
        cur = start
        seen = {start}
        while True:
            nxt = g.out_edges[cur][0].dst
            if nxt not in corridor:
                break
            if nxt == start:
                return False
            if nxt in seen:
                break  # a cycle not through start; found when started there
            seen.add(nxt)
            cur = nxt
    return True


def satisfies_condition_k(g: Graph) -> bool:
    """No vertex is the base of exactly one closed simple path."""
    return all(
        count_closed_simple_paths(g, v) is not PathCount.ONE for v in g.vertices
    )


def line_points(g: Graph) -> VertexSet:
    """Vertices whose tree contains no bifurcation and no closed path.

    A bifurcation emits two or more edges; a bundle source always counts as
    one (a bundle is at least two parallel edges).
    """
    on_circuit = _circuit_vertices(g)

    def bifurcation(w: str) -> bool:
        return len(g.out_edges[w]) >= 2 or bool(g.out_bundles[w])

    return frozenset(
        v
        for v in g.vertices
        if all(w not in on_circuit and not bifurcation(w) for w in g.reach[v])
    )


# -- path enumeration ---------------------------------------------------------


def paths_up_to(g: Graph, max_len: int) -> list[tuple[str, tuple[str, ...], str]]:
    """All named paths of length <= max_len as (source, edge ids, range),
    including the length-0 path at each vertex.  Deterministic order."""
    paths: list[tuple[str, tuple[str, ...], str]] = [(v, (), v) for v in g.vertices]
    level = paths[:]
    for _ in range(max_len):
        nxt = [
            (src, edges + (e.id,), e.dst)
            for src, edges, dst in level
            for e in g.out_edges[dst]
        ]
        if not nxt:
            break
        paths.extend(nxt)
        level = nxt
    return paths
