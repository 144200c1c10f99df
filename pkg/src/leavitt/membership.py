"""Span-based membership oracle for graded basic ideals.

Independent of the quotient-map membership test: the ideal of a pair (H, S)
is the linear span of the monomials a b* whose common range lies in H,
together with a (v - sum of escaping e e*) b* for v in S.  This module
materialises that spanning set up to a path-length bound, normalises it,
and answers membership questions by exact linear algebra over the
coefficient ring: Gaussian elimination over the rationals and prime fields,
Hermite reduction over the integers, and an integer lifting for Z/n (a
residue vector lies in the span mod n iff, over the integers, it lies in
the span extended by n times each coordinate vector).

The oracle is sound and complete only relative to its bound; it exists to
cross-check the exact quotient route on bounded inputs, not to replace it.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Callable

from .engine import Element, LeavittAlgebra, Monomial
from .errors import RingError
from .lattice import AdmissiblePair, check_pair
from .graphs import paths_up_to

DEFAULT_DEGREE_BOUND = 3
_ENV_BOUND = "LEAVITT_DEGREE_BOUND"


def default_degree_bound() -> int:
    raw = os.environ.get(_ENV_BOUND)
    if raw is None:
        return DEFAULT_DEGREE_BOUND
    try:
        bound = int(raw)
    except ValueError as exc:
        raise RingError(f"{_ENV_BOUND} must be an integer, got {raw!r}") from exc
    if bound < 1:
        raise RingError(f"{_ENV_BOUND} must be >= 1, got {bound}")
    return bound


def spanning_elements(
    alg: LeavittAlgebra, pair: AdmissiblePair, degree_bound: int | None = None
) -> list[Element]:
    """Normal forms of the ideal's spanning set with both paths bounded.
    Zero and duplicate normal forms are dropped."""
    check_pair(alg.graph, pair)
    if degree_bound is None:
        degree_bound = default_degree_bound()
    by_range: dict[str, list] = {}
    for src, edges, dst in paths_up_to(alg.graph, degree_bound):
        by_range.setdefault(dst, []).append((src, edges))
    out: list[Element] = []
    seen = set()
    for v in sorted(pair.h | pair.s):
        group = by_range.get(v, [])
        middle = (
            alg.vertex(v) if v in pair.h else alg.breaking_idempotent(v, pair.h)
        )
        for sa, ea in group:
            left = alg.monomial_element(
                alg.path(ea, at=sa), alg.path(at=v)
            )
            for sb, eb in group:
                right = alg.monomial_element(
                    alg.path(eb, at=sb), alg.path(at=v)
                )
                x = left * middle * right.star()
                if x.is_zero() or x.terms in seen:
                    continue
                seen.add(x.terms)
                out.append(x)
    return out


def membership_oracle(
    alg: LeavittAlgebra, pair: AdmissiblePair, degree_bound: int | None = None
) -> Callable[[Element], bool]:
    """Prepare the span once and return a membership predicate for it."""
    vectors = spanning_elements(alg, pair, degree_bound)
    index: dict[Monomial, int] = {}
    for x in vectors:
        for m, _ in x.terms:
            index.setdefault(m, len(index))
    solver = _make_solver(alg.ring, index, vectors)

    def contains(x: Element) -> bool:
        alg._check_operand(x)
        if x.is_zero():
            return True
        if any(m not in index for m, _ in x.terms):
            return False
        return solver(x)

    return contains


def span_membership(
    alg: LeavittAlgebra,
    pair: AdmissiblePair,
    x: Element,
    degree_bound: int | None = None,
) -> bool:
    """One-shot version of :func:`membership_oracle`."""
    return membership_oracle(alg, pair, degree_bound)(x)


# -- exact solvers -------------------------------------------------------------


def _make_solver(ring, index, vectors) -> Callable[[Element], bool]:
    dim = len(index)

    def densify(x: Element) -> list:
        vec = [0] * dim
        for m, c in x.terms:
            vec[index[m]] = c.value
        return vec

    columns = [densify(x) for x in vectors]
    if ring.kind == "Q":
        solver = _FieldSpan(columns, inv=lambda a: 1 / Fraction(a))
        return lambda x: solver.contains(densify(x))
    if ring.kind == "GF":
        p = ring.modulus
        solver = _FieldSpan(
            [[c % p for c in col] for col in columns],
            inv=lambda a: pow(a, -1, p),
            mod=p,
        )
        return lambda x: solver.contains([c % p for c in densify(x)])
    if ring.kind == "Z/n":
        n = ring.modulus
        lifted = [list(col) for col in columns]
        for i in range(dim):
            extra = [0] * dim
            extra[i] = n
            lifted.append(extra)
        lattice = _IntegerSpan(lifted)
        return lambda x: lattice.contains(densify(x))
    lattice = _IntegerSpan(columns)
    return lambda x: lattice.contains(densify(x))


class _FieldSpan:
    """Row-reduced span over a field (Fractions, or ints mod a prime)."""

    def __init__(self, columns: list[list], inv, mod: int | None = None):
        self.inv = inv
        self.mod = mod
        self.rows: dict[int, list] = {}  # pivot index -> reduced vector
        for col in columns:
            self._insert(list(col))

    def _reduce(self, vec: list) -> list:
        for pivot, row in self.rows.items():
            c = vec[pivot]
            if c:
                for i, r in enumerate(row):
                    if r:
                        vec[i] -= c * r
                        if self.mod:
                            vec[i] %= self.mod
        return vec

    def _insert(self, vec: list) -> None:
        vec = self._reduce(vec)
        pivot = next((i for i, c in enumerate(vec) if c), None)
        if pivot is None:
            return
        scale = self.inv(vec[pivot])
        vec = [c * scale % self.mod if self.mod else c * scale for c in vec]
        self.rows[pivot] = vec

    def contains(self, vec: list) -> bool:
        return all(c == 0 for c in self._reduce(list(vec)))


class _IntegerSpan:
    """Membership in the integer column span via Hermite-style reduction.

    Columns are reduced to echelon form by unimodular column operations; a
    target is in the span iff walking the rows top-down, every pivot row is
    divisible by its pivot (subtracting the forced multiple) and every
    pivot-free row ends up zero.
    """

    def __init__(self, columns: list[list[int]]):
        cols = [list(c) for c in columns if any(c)]
        self.dim = len(columns[0]) if columns else 0
        self.pivots: list[tuple[int, list[int]]] = []  # (row, column) in row order
        for row in range(self.dim):
            live = [c for c in cols if c[row] != 0]
            if not live:
                continue
            while True:
                live = [c for c in cols if c[row] != 0]
                if len(live) <= 1:
                    break
                live.sort(key=lambda c: abs(c[row]))
                base = live[0]
                for other in live[1:]:
                    q = other[row] // base[row]
                    for i in range(self.dim):
                        other[i] -= q * base[i]
            if live:
                col = live[0]
                if col[row] < 0:
                    for i in range(self.dim):
                        col[i] = -col[i]
                self.pivots.append((row, col[:]))
                cols = [c for c in cols if c is not col and any(c)]

    def contains(self, target: list[int]) -> bool:
        residue = list(target)
        by_row = dict((row, col) for row, col in self.pivots)
        for row in range(self.dim):
            col = by_row.get(row)
            if col is None:
                if residue[row] != 0:
                    return False
                continue
            value = residue[row]
            if value % col[row] != 0:
                return False
            q = value // col[row]
            if q:
                for i in range(self.dim):
                    residue[i] -= q * col[i]
        return all(c == 0 for c in residue)
