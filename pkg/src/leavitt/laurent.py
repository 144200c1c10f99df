"""Matrices of Laurent polynomials as a model of a single-cycle algebra.

The Leavitt path algebra of one cycle of length n is the n-by-n matrix ring
over Laurent polynomials: each vertex becomes a diagonal matrix unit, each
cycle edge the next off-diagonal unit, and the closing edge carries the
variable.  Full verification of that isomorphism is an infinite task, so
:func:`verify_cycle_laurent_model` does the honest desk-scale substitute:
it checks that the correspondence is multiplicative on every pair of
monomials built from paths up to a degree bound, and compatible with the
involution (transpose plus inversion of the variable).
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import Element, LeavittAlgebra, Monomial
from .errors import GraphError
from .graphs import Graph, paths_up_to
from .rings import RingElement, RingSpec

Matrix = tuple[tuple["LaurentPoly", ...], ...]


@dataclass(frozen=True)
class LaurentPoly:
    """Exact Laurent polynomial: sorted (exponent, coefficient) pairs with no
    zero coefficients."""

    ring: RingSpec
    coeffs: tuple[tuple[int, RingElement], ...] = ()

    @staticmethod
    def of(ring: RingSpec, exponent: int = 0, coeff: int = 1) -> LaurentPoly:
        c = ring.element(coeff)
        return LaurentPoly(ring, () if c.is_zero() else ((exponent, c),))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        acc = dict(self.coeffs)
        for exp, c in other.coeffs:
            total = acc[exp] + c if exp in acc else c
            if total.is_zero():
                acc.pop(exp, None)
            else:
                acc[exp] = total
        return LaurentPoly(self.ring, tuple(sorted(acc.items())))

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        acc: dict[int, RingElement] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                exp = e1 + e2
                prod = c1 * c2
                total = acc[exp] + prod if exp in acc else prod
                if total.is_zero():
                    acc.pop(exp, None)
                else:
                    acc[exp] = total
        return LaurentPoly(self.ring, tuple(sorted(acc.items())))

    def invert_variable(self) -> LaurentPoly:
        return LaurentPoly(
            self.ring, tuple(sorted((-e, c) for e, c in self.coeffs))
        )

    def is_zero(self) -> bool:
        return not self.coeffs


def _zero_matrix(ring: RingSpec, n: int) -> Matrix:
    z = LaurentPoly(ring)
    return tuple(tuple(z for _ in range(n)) for _ in range(n))


def _mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for k in range(1, n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_adjoint(a: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(a[j][i].invert_variable() for j in range(n)) for i in range(n)
    )


def _cycle_order(g: Graph) -> tuple[list[str], list[str]]:
    """Vertices and edges of a single cycle, starting at the least vertex.

    Raises unless the graph is exactly one cycle through all its vertices.
    """
    if g.bundles:
        raise GraphError("a cycle graph has no bundles")
    if not g.vertices or len(g.edges) != len(g.vertices):
        raise GraphError("not a single cycle")
    for v in g.vertices:
        if len(g.out_edges[v]) != 1 or len(g.in_edges[v]) != 1:
            raise GraphError("not a single cycle")
    start = g.vertices[0]
    order = [start]
    edge_order = []
    cur = start
    for _ in range(len(g.vertices)):
        e = g.out_edges[cur][0]
        edge_order.append(e.id)
        cur = e.dst
        if cur == start:
            break
        order.append(cur)
    if len(order) != len(g.vertices) or cur != start:
        raise GraphError("not a single cycle")
    return order, edge_order


class _CycleModel:
    def __init__(self, alg: LeavittAlgebra):
        self.alg = alg
        self.ring = alg.ring
        vertices, edges = _cycle_order(alg.graph)
        self.n = len(vertices)
        self.vindex = {v: i for i, v in enumerate(vertices)}
        self.eindex = {e: i for i, e in enumerate(edges)}

    def _unit(self, i: int, j: int, exponent: int = 0) -> Matrix:
        rows = []
        for r in range(self.n):
            row = []
            for c in range(self.n):
                if r == i and c == j:
                    row.append(LaurentPoly.of(self.ring, exponent))
                else:
                    row.append(LaurentPoly(self.ring))
            rows.append(tuple(row))
        return tuple(rows)

    def edge_matrix(self, eid: str) -> Matrix:
        i = self.eindex[eid]
        if i == self.n - 1:
            return self._unit(self.n - 1, 0, exponent=1)
        return self._unit(i, i + 1)

    def monomial_matrix(self, m: Monomial) -> Matrix:
        acc = self._unit(self.vindex[m.alpha.base], self.vindex[m.alpha.base])
        for eid in m.alpha.edges:
            acc = _mat_mul(acc, self.edge_matrix(eid))
        ghost = self._unit(self.vindex[m.beta.base], self.vindex[m.beta.base])
        for eid in m.beta.edges:
            ghost = _mat_mul(ghost, self.edge_matrix(eid))
        return _mat_mul(acc, _mat_adjoint(ghost))

    def element_matrix(self, x: Element) -> Matrix:
        acc = _zero_matrix(self.ring, self.n)
        for m, c in x.terms:
            scaled = tuple(
                tuple(LaurentPoly.of(self.ring, 0, c.value) * entry for entry in row)
                for row in self.monomial_matrix(m)
            )
            acc = _mat_add(acc, scaled)
        return acc


def verify_cycle_laurent_model(
    g: Graph, ring: RingSpec, degree_bound: int = 3
) -> bool:
    """Check the matrix-of-Laurent-polynomials model of a single cycle:
    products of all monomials with paths up to the degree bound, and the
    involution, must match on both sides.  Exact; no ring hypothesis."""
    alg = LeavittAlgebra(g, ring)
    model = _CycleModel(alg)
    paths = paths_up_to(g, degree_bound)
    by_range: dict[str, list] = {}
    for src, edges, dst in paths:
        by_range.setdefault(dst, []).append((src, edges))
    monomials = [
        alg.monomial_element(alg.path(ea, at=sa), alg.path(eb, at=sb))
        for dst, group in sorted(by_range.items())
        for sa, ea in group
        for sb, eb in group
    ]
    for x in monomials:
        if model.element_matrix(x.star()) != _mat_adjoint(model.element_matrix(x)):
            return False
    mats = [model.element_matrix(x) for x in monomials]
    for i, x in enumerate(monomials):
        for j, y in enumerate(monomials):
            if model.element_matrix(x * y) != _mat_mul(mats[i], mats[j]):
                return False
    return True
