"""Exact elements of a Leavitt path algebra, with confluent normal forms.

Elements are finite R-linear combinations of monomials a b* where a and b are
named paths with a common range.  Products are resolved by the path-overlap
rule (the ghost of a path cancels against a real path sharing its source
until a real or ghost remainder, a vertex, or zero is left), and the
finite-emitter relation  v = sum of e e* over the edges at v  is oriented
into a rewrite by designating one *special* edge per finite emitter: a
monomial whose real and ghost parts end in that same special edge expands
into the vertex form minus the other parallel pairs.  Each expansion either
shortens a monomial or replaces its tail with a non-special edge pair, so
rewriting terminates, and the surviving monomials (those not ending in a
common special edge) form the canonical linear basis.  Any total choice of
special edges presents the same algebra; the default picks the
lexicographically least edge at each finite emitter so output is
reproducible.

Bundles are invisible at this level: monomials are over named edges only.
Every construction this package performs (breaking idempotents, quotient
images) touches only the finitely many named edges, so all of them stay
exactly computable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Mapping

from .errors import EngineError
from .graphs import Graph, _breaking_for_unchecked
from .lattice import (
    AdmissiblePair,
    IdealGraphConstruction,
    QuotientConstruction,
    quotient_construction,
)
from .rings import RingElement, RingSpec, Scalar


@dataclass(frozen=True)
class Path:
    """A named path: its source vertex and its edge ids.  No edges means the
    length-0 path at the base vertex."""

    base: str
    edges: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)


def _path_key(p: Path) -> tuple:
    return (len(p.edges), p.base, p.edges)


@dataclass(frozen=True)
class Monomial:
    """a b* for real paths a, b with a common range."""

    alpha: Path
    beta: Path

    @property
    def degree(self) -> int:
        return len(self.alpha) - len(self.beta)


def monomial_key(m: Monomial) -> tuple:
    return (len(m.alpha) + len(m.beta), _path_key(m.alpha), _path_key(m.beta))


@dataclass(frozen=True)
class LeavittAlgebra:
    """The Leavitt path algebra engine for one graph, ring, and special-edge
    choice.  Stateless and hashable; safe to share."""

    graph: Graph
    ring: RingSpec
    special_edges: tuple[tuple[str, str], ...] | None = None

    def __post_init__(self) -> None:
        g = self.graph
        chosen: dict[str, str] = dict(self.special_edges or ())
        for v, eid in chosen.items():
            g._check_vertex(v)
            if not g.is_finite_emitter(v):
                raise EngineError(f"special edge declared at non-finite-emitter {v!r}")
            if eid not in {e.id for e in g.out_edges[v]}:
                raise EngineError(f"special edge {eid!r} is not sourced at {v!r}")
        for v in g.vertices:
            if g.is_finite_emitter(v) and v not in chosen:
                chosen[v] = min(e.id for e in g.out_edges[v])
        object.__setattr__(self, "special_edges", tuple(sorted(chosen.items())))

    @cached_property
    def _special(self) -> dict[str, str]:
        return dict(self.special_edges)

    # -- path and monomial validation ----------------------------------------

    def path(self, edges: Iterable[str] = (), at: str | None = None) -> Path:
        ids = tuple(edges)
        if not ids:
            if at is None:
                raise EngineError("a length-0 path needs its vertex")
            self.graph._check_vertex(at)
            return Path(at)
        emap = self.graph.edge_map
        for eid in ids:
            if eid not in emap:
                raise EngineError(f"unknown edge {eid!r}")
        for a, b in zip(ids, ids[1:]):
            if emap[a].dst != emap[b].src:
                raise EngineError(f"edges {a!r} and {b!r} do not compose")
        base = emap[ids[0]].src
        if at is not None and at != base:
            raise EngineError(f"path starts at {base!r}, not {at!r}")
        return Path(base, ids)

    def path_range(self, p: Path) -> str:
        return self.graph.edge_map[p.edges[-1]].dst if p.edges else p.base

    def _check_monomial(self, m: Monomial) -> None:
        a = self.path(m.alpha.edges, at=m.alpha.base)
        b = self.path(m.beta.edges, at=m.beta.base)
        if self.path_range(a) != self.path_range(b):
            raise EngineError(f"monomial paths have different ranges: {m}")

    # -- element constructors -------------------------------------------------

    def zero(self) -> Element:
        return Element(self, ())

    def element(self, terms: Mapping[Monomial, Scalar]) -> Element:
        checked = {}
        for m, c in terms.items():
            self._check_monomial(m)
            coeff = self.ring.element(c)
            if not coeff.is_zero():
                checked[m] = coeff
        return self._wrap(self._normalize(checked))

    def monomial_element(
        self, alpha: Path, beta: Path, coeff: Scalar = 1
    ) -> Element:
        return self.element({Monomial(alpha, beta): coeff})

    def vertex(self, v: str) -> Element:
        p = self.path(at=v)
        return self.element({Monomial(p, p): 1})

    def edge(self, eid: str) -> Element:
        p = self.path((eid,))
        return self.element({Monomial(p, self.path(at=self.path_range(p))): 1})

    def ghost(self, eid: str) -> Element:
        p = self.path((eid,))
        return self.element({Monomial(self.path(at=self.path_range(p)), p): 1})

    def local_unit(self, xs: Iterable[str]) -> Element:
        """Sum of the given vertices; acts as identity on anything supported
        on paths between them."""
        xset = self.graph._check_subset(xs)
        if not xset:
            raise EngineError("a local unit needs at least one vertex")
        terms: dict[Monomial, Scalar] = {}
        for v in sorted(xset):
            p = self.path(at=v)
            terms[Monomial(p, p)] = 1
        return self.element(terms)

    def one(self) -> Element:
        """The identity (the graph is finite, so the vertex sum is a unit)."""
        return self.local_unit(self.graph.vertices)

    def breaking_idempotent(self, v: str, hs: Iterable[str]) -> Element:
        """v minus the parallel pairs e e* over the finitely many named edges
        at v escaping the set; defined for breaking vertices, self-adjoint
        and idempotent."""
        h = self.graph._check_subset(hs)
        if v not in _breaking_for_unchecked(self.graph, h):
            raise EngineError(f"{v!r} is not a breaking vertex for {sorted(h)}")
        vp = self.path(at=v)
        terms: dict[Monomial, Scalar] = {Monomial(vp, vp): 1}
        for e in self.graph.out_edges[v]:
            if e.dst not in h:
                ep = self.path((e.id,))
                terms[Monomial(ep, ep)] = -1
        return self.element(terms)

    # -- rewriting -------------------------------------------------------------

    def _is_reducible(self, m: Monomial) -> bool:
        if not m.alpha.edges or not m.beta.edges:
            return False
        last = m.alpha.edges[-1]
        if m.beta.edges[-1] != last:
            return False
        return self._special.get(self.graph.edge_map[last].src) == last

    def _expand(self, m: Monomial) -> list[tuple[Monomial, int]]:
        last = m.alpha.edges[-1]
        v = self.graph.edge_map[last].src
        alpha = Path(m.alpha.base, m.alpha.edges[:-1])
        beta = Path(m.beta.base, m.beta.edges[:-1])
        out = [(Monomial(alpha, beta), 1)]
        for e in self.graph.out_edges[v]:
            if e.id != last:
                out.append(
                    (
                        Monomial(
                            Path(alpha.base, alpha.edges + (e.id,)),
                            Path(beta.base, beta.edges + (e.id,)),
                        ),
                        -1,
                    )
                )
        return out

    def _normalize(
        self,
        terms: dict[Monomial, RingElement],
        rng: random.Random | None = None,
    ) -> dict[Monomial, RingElement]:
        """Expand special-edge tails to a fixed point.  The result does not
        depend on the order choices; passing an rng exercises that."""
        pending = {m for m in terms if self._is_reducible(m)}
        while pending:
            if rng is None:
                m = min(pending, key=monomial_key)
            else:
                m = rng.choice(sorted(pending, key=monomial_key))
            pending.discard(m)
            if m not in terms:
                continue
            coeff = terms.pop(m)
            for mono, sign in self._expand(m):
                acc = coeff if sign > 0 else -coeff
                if mono in terms:
                    acc = terms[mono] + acc
                if acc.is_zero():
                    terms.pop(mono, None)
                    pending.discard(mono)
                else:
                    terms[mono] = acc
                    if self._is_reducible(mono):
                        pending.add(mono)
        return terms

    def normalize(
        self,
        raw: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]],
        rng: random.Random | None = None,
    ) -> Element:
        """Normal form of an arbitrary formal combination (repetitions add)."""
        items = raw.items() if isinstance(raw, Mapping) else raw
        terms: dict[Monomial, RingElement] = {}
        for m, c in items:
            self._check_monomial(m)
            coeff = self.ring.element(c)
            acc = terms[m] + coeff if m in terms else coeff
            if acc.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = acc
        return self._wrap(self._normalize(terms, rng=rng))

    def _wrap(self, terms: dict[Monomial, RingElement]) -> Element:
        return Element(self, tuple(sorted(terms.items(), key=lambda t: monomial_key(t[0]))))

    # -- products ---------------------------------------------------------------

    def _mul_monomials(self, m1: Monomial, m2: Monomial) -> Monomial | None:
        b, mu = m1.beta, m2.alpha
        if b.base != mu.base:
            return None
        if len(b.edges) <= len(mu.edges):
            if mu.edges[: len(b.edges)] != b.edges:
                return None
            tail = mu.edges[len(b.edges):]
            return Monomial(Path(m1.alpha.base, m1.alpha.edges + tail), m2.beta)
        if b.edges[: len(mu.edges)] != mu.edges:
            return None
        tail = b.edges[len(mu.edges):]
        return Monomial(m1.alpha, Path(m2.beta.base, m2.beta.edges + tail))

    def multiply(self, x: Element, y: Element) -> Element:
        self._check_operand(x)
        self._check_operand(y)
        terms: dict[Monomial, RingElement] = {}
        for m1, c1 in x.terms:
            for m2, c2 in y.terms:
                prod = self._mul_monomials(m1, m2)
                if prod is None:
                    continue
                acc = c1 * c2
                if prod in terms:
                    acc = terms[prod] + acc
                if acc.is_zero():
                    terms.pop(prod, None)
                else:
                    terms[prod] = acc
        return self._wrap(self._normalize(terms))

    def _check_operand(self, x: Element) -> None:
        if x.algebra != self:
            raise EngineError("operands come from different algebras")


@dataclass(frozen=True)
class Element:
    """A normal-form element; immutable.  Arithmetic goes through the
    algebra, so mixing graphs or rings raises rather than corrupting."""

    algebra: LeavittAlgebra
    terms: tuple[tuple[Monomial, RingElement], ...]

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Monomial) -> RingElement:
        for mono, c in self.terms:
            if mono == m:
                return c
        return self.algebra.ring.zero()

    def support(self) -> tuple[Monomial, ...]:
        return tuple(m for m, _ in self.terms)

    def __add__(self, other: Element) -> Element:
        self.algebra._check_operand(other)
        terms = dict(self.terms)
        for m, c in other.terms:
            acc = terms[m] + c if m in terms else c
            if acc.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = acc
        return self.algebra._wrap(terms)  # sums of normal forms stay normal

    def __neg__(self) -> Element:
        return self.algebra._wrap({m: -c for m, c in self.terms})

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __mul__(self, other: Element) -> Element:
        return self.algebra.multiply(self, other)

    def scale(self, c: Scalar) -> Element:
        coeff = self.algebra.ring.element(c)
        if coeff.is_zero():
            return self.algebra.zero()
        return self.algebra._wrap({m: coeff * v for m, v in self.terms})

    def __rmul__(self, c: Scalar) -> Element:
        return self.scale(c)

    def star(self) -> Element:
        """The involution: a b* becomes b a*; linear over the coefficients.
        Reducibility of a monomial is symmetric in its two paths, so normal
        forms map to normal forms."""
        return self.algebra._wrap(
            {Monomial(m.beta, m.alpha): c for m, c in self.terms}
        )

    def degree_components(self) -> dict[int, Element]:
        """Split by path-length difference; the pieces sum back to self."""
        buckets: dict[int, dict[Monomial, RingElement]] = {}
        for m, c in self.terms:
            buckets.setdefault(m.degree, {})[m] = c
        return {d: self.algebra._wrap(t) for d, t in sorted(buckets.items())}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for m, c in self.terms:
            body = _monomial_str(m)
            if c.is_one():
                chunk = body
            elif (-c).is_one():
                chunk = f"-{body}"
            else:
                chunk = f"{c}.{body}"
            chunks.append(chunk)
        out = chunks[0]
        for chunk in chunks[1:]:
            out += f" - {chunk[1:]}" if chunk.startswith("-") else f" + {chunk}"
        return out


def _monomial_str(m: Monomial) -> str:
    parts = list(m.alpha.edges) + [f"{e}^*" for e in reversed(m.beta.edges)]
    return ".".join(parts) if parts else m.alpha.base


# -- quotient maps and ideal membership ---------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """The algebra map onto the Leavitt path algebra of the quotient graph,
    determined by its images of vertices, edges and ghost edges.  Everything
    in the ideal of the pair (and nothing else) maps to zero."""

    source: LeavittAlgebra
    pair: AdmissiblePair
    construction: QuotientConstruction
    target: LeavittAlgebra
    vertex_images: Mapping[str, Element]
    edge_images: Mapping[str, Element]

    def path_image(self, p: Path) -> Element:
        if not p.edges:
            return self.vertex_images[p.base]
        acc = self.edge_images[p.edges[0]]
        for eid in p.edges[1:]:
            acc = acc * self.edge_images[eid]
        return acc

    def apply(self, x: Element) -> Element:
        self.source._check_operand(x)
        out = self.target.zero()
        for m, c in x.terms:
            img = self.path_image(m.alpha) * self.path_image(m.beta).star()
            out = out + img.scale(c.value)
        return out


@lru_cache(maxsize=None)
def quotient_map(alg: LeavittAlgebra, pair: AdmissiblePair) -> QuotientMap:
    """Build (and memoise) the quotient map for an admissible pair.

    A vertex inside H goes to zero; a breaking vertex left out of S goes to
    the sum of itself and its primed copy; anything else persists.  Edges
    follow their ranges, with primed copies added alongside."""
    g = alg.graph
    qc = quotient_construction(g, pair)
    target = LeavittAlgebra(qc.graph, alg.ring)
    primed_v = dict(qc.primed_vertices)
    primed_e = dict(qc.primed_edges)
    vertex_images: dict[str, Element] = {}
    for v in g.vertices:
        if v in pair.h:
            vertex_images[v] = target.zero()
        elif v in primed_v:
            vertex_images[v] = target.vertex(v) + target.vertex(primed_v[v])
        else:
            vertex_images[v] = target.vertex(v)
    edge_images: dict[str, Element] = {}
    for e in g.edges:
        if e.dst in pair.h:
            edge_images[e.id] = target.zero()
        elif e.dst in primed_v:
            edge_images[e.id] = target.edge(e.id) + target.edge(primed_e[e.id])
        else:
            edge_images[e.id] = target.edge(e.id)
    return QuotientMap(alg, pair, qc, target, vertex_images, edge_images)


def quotient_image(alg: LeavittAlgebra, pair: AdmissiblePair, x: Element) -> Element:
    """Image of x in the Leavitt path algebra of the quotient graph."""
    return quotient_map(alg, pair).apply(x)


def in_graded_basic_ideal(alg: LeavittAlgebra, pair: AdmissiblePair, x: Element) -> bool:
    """Membership in the graded basic ideal of the pair: the quotient image
    vanishes exactly on the ideal."""
    return quotient_image(alg, pair, x).is_zero()


# -- machine-checking generator families ---------------------------------------


def verify_leavitt_family(
    g: Graph,
    vertex_images: Mapping[str, Element],
    edge_images: Mapping[str, Element],
    ghost_images: Mapping[str, Element],
    is_zero: Callable[[Element], bool] | None = None,
) -> list[str]:
    """Check every named-generator relation instance for a putative Leavitt
    family shaped like g: orthogonal idempotent vertices, source/range
    absorption, ghost-edge cancellation, and the finite-emitter sum.  An
    empty result means the universal property provides a homomorphism.

    ``is_zero`` substitutes the equality test; passing an ideal-membership
    predicate checks the relations modulo that ideal.
    """
    for v in g.vertices:
        if v not in vertex_images:
            raise EngineError(f"missing image for vertex {v!r}")
    for e in g.edges:
        if e.id not in edge_images:
            raise EngineError(f"missing image for edge {e.id!r}")
        if e.id not in ghost_images:
            raise EngineError(f"missing image for ghost edge {e.id!r}")
    if not g.vertices:
        return []
    if is_zero is None:
        is_zero = Element.is_zero

    violations = []
    for v in g.vertices:
        for w in g.vertices:
            expected = vertex_images[v] if v == w else None
            prod = vertex_images[v] * vertex_images[w]
            diff = prod - expected if expected is not None else prod
            if not is_zero(diff):
                kind = "not idempotent" if v == w else f"not orthogonal to {w!r}"
                violations.append(f"vertex {v!r}: {kind}")
    for e in g.edges:
        be, ge = edge_images[e.id], ghost_images[e.id]
        checks = [
            (vertex_images[e.src] * be - be, f"edge {e.id!r}: source does not absorb"),
            (be * vertex_images[e.dst] - be, f"edge {e.id!r}: range does not absorb"),
            (vertex_images[e.dst] * ge - ge, f"ghost {e.id!r}: range does not absorb"),
            (ge * vertex_images[e.src] - ge, f"ghost {e.id!r}: source does not absorb"),
        ]
        for diff, message in checks:
            if not is_zero(diff):
                violations.append(message)
    for e in g.edges:
        for f in g.edges:
            prod = ghost_images[e.id] * edge_images[f.id]
            diff = prod - vertex_images[e.dst] if e.id == f.id else prod
            if not is_zero(diff):
                violations.append(f"ghost-edge product {e.id!r}* {f.id!r} wrong")
    for v in sorted(g.finite_emitters()):
        acc = None
        for e in g.out_edges[v]:
            piece = edge_images[e.id] * ghost_images[e.id]
            acc = piece if acc is None else acc + piece
        if not is_zero(vertex_images[v] - acc):
            violations.append(f"finite emitter {v!r}: edge sum does not recover it")
    return violations


def quotient_family_in_source(
    alg: LeavittAlgebra, pair: AdmissiblePair
) -> tuple[QuotientConstruction, dict[str, Element], dict[str, Element], dict[str, Element]]:
    """Images, inside the source algebra, of the quotient graph's generators.

    A breaking vertex left out of S splits into its breaking idempotent (the
    primed copy) and the remainder; its incoming edges split accordingly.
    The family satisfies the quotient graph's relations modulo the ideal of
    the pair, which is what drives the quotient isomorphism.
    """
    g = alg.graph
    qc = quotient_construction(g, pair)
    primed_v = dict(qc.primed_vertices)
    primed_e = dict(qc.primed_edges)
    vertex_images: dict[str, Element] = {}
    for v, vp in primed_v.items():
        breaking = alg.breaking_idempotent(v, pair.h)
        vertex_images[vp] = breaking
        vertex_images[v] = alg.vertex(v) - breaking
    for u in qc.graph.vertices:
        if u not in vertex_images:
            vertex_images[u] = alg.vertex(u)
    edge_images: dict[str, Element] = {}
    ghost_images: dict[str, Element] = {}
    primed_to_original = {ep: e for e, ep in primed_e.items()}
    for edge in qc.graph.edges:
        if edge.id in primed_to_original:
            original = primed_to_original[edge.id]
            img = alg.edge(original) * vertex_images[edge.dst]
        elif edge.id in primed_e:
            img = alg.edge(edge.id) * vertex_images[edge.dst]
        else:
            img = alg.edge(edge.id)
        edge_images[edge.id] = img
        ghost_images[edge.id] = img.star()
    return qc, vertex_images, edge_images, ghost_images


def ideal_family_images(
    alg: LeavittAlgebra,
    pair: AdmissiblePair,
    construction: IdealGraphConstruction,
) -> tuple[dict[str, Element], dict[str, Element], dict[str, Element]]:
    """Images, inside the source algebra, of the generators of the graph
    realising the ideal of the pair: vertices of H persist, vertices of S
    become breaking idempotents, path-vertices become the range projections
    of their paths, and each bar edge maps to its path (times the breaking
    idempotent when the path ends in S).

    Covers the named generators; bundles of the realising graph (the ones
    from S back into H) have no engine representation, and the relation
    checker only examines named instances.
    """
    if construction.truncated:
        raise EngineError("the ideal graph was truncated; no finite family exists")
    path_ids = dict(construction.path_vertex_ids)
    s_paths = set(construction.s_paths)

    def path_element(edges: tuple[str, ...]) -> Element:
        p = alg.path(edges)
        end = alg.path(at=alg.path_range(p))
        return alg.monomial_element(p, end)

    vertex_images: dict[str, Element] = {}
    for v in sorted(pair.h):
        vertex_images[v] = alg.vertex(v)
    for v in sorted(pair.s):
        vertex_images[v] = alg.breaking_idempotent(v, pair.h)
    bar_targets: dict[str, Element] = {}
    for path, vid in path_ids.items():
        pe = path_element(path)
        if path in s_paths:
            pe = pe * alg.breaking_idempotent(alg.path_range(alg.path(path)), pair.h)
        bar_targets[vid] = pe
        vertex_images[vid] = pe * pe.star()
    edge_images: dict[str, Element] = {}
    ghost_images: dict[str, Element] = {}
    for edge in construction.graph.edges:
        if edge.src in bar_targets:
            img = bar_targets[edge.src]
        else:
            img = alg.edge(edge.id)
        edge_images[edge.id] = img
        ghost_images[edge.id] = img.star()
    return vertex_images, edge_images, ghost_images
