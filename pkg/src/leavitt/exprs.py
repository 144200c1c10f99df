"""Parser for element expressions.

Grammar (whitespace is free between tokens)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('.' factor)*
    factor := coeff | ident | ident '^*'
    coeff  := int | int '/' int

Identifiers name vertices or edges of the graph; ``e^*`` is the ghost of
edge ``e`` (for a vertex, ``v^*`` is ``v`` itself).  Factors in a term are
multiplied in order; numeric factors scale the term.  Examples:
``2.e1.e2^* - v3``, ``1/2.f``, ``w - f.f^*``.

Element printing (``str(Element)``) emits this same syntax, so output can
be fed back in.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .engine import Element, LeavittAlgebra
from .errors import ExprError

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9']*)"
    r"|(?P<ghost>\^\*)|(?P<op>[.+\-/]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ExprError(f"unexpected character {text[pos:].strip()[0]!r} at {pos}")
        pos = m.end()
        for kind in ("int", "ident", "ghost", "op"):
            value = m.group(kind)
            if value is not None:
                tokens.append((kind if kind != "op" else value, value))
                break
    return tokens


class _Parser:
    def __init__(self, alg: LeavittAlgebra, text: str):
        self.alg = alg
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        if self.pos >= len(self.tokens):
            raise ExprError("unexpected end of expression")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Element:
        acc = self.alg.zero()
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        elif self.peek() == "+":
            self.take()
        if self.peek() is None:
            raise ExprError("empty expression")
        while True:
            acc = acc + self.term().scale(sign)
            nxt = self.peek()
            if nxt is None:
                return acc
            if nxt not in ("+", "-"):
                raise ExprError(f"expected + or -, got {self.tokens[self.pos][1]!r}")
            sign = 1 if nxt == "+" else -1
            self.take()

    def term(self) -> Element:
        coeff = Fraction(1)
        body: Element | None = None
        while True:
            kind = self.peek()
            if kind == "int":
                coeff *= self.number()
            elif kind == "ident":
                factor = self.generator(self.take()[1])
                body = factor if body is None else body * factor
            else:
                raise ExprError(
                    "expected a number, vertex or edge"
                    + (f", got {self.tokens[self.pos][1]!r}" if kind else "")
                )
            if self.peek() == ".":
                self.take()
                continue
            break
        if body is None:
            raise ExprError("a term needs at least one vertex or edge")
        return body.scale(self.alg.ring.element(coeff))

    def number(self) -> Fraction:
        value = Fraction(int(self.take()[1]))
        if self.peek() == "/":
            self.take()
            kind, digits = self.take()
            if kind != "int":
                raise ExprError("expected an integer denominator")
            if int(digits) == 0:
                raise ExprError("zero denominator")
            value /= int(digits)
        return value

    def generator(self, name: str) -> Element:
        ghost = False
        if self.peek() == "ghost":
            self.take()
            ghost = True
        g = self.alg.graph
        is_vertex = name in g.vertex_set
        is_edge = name in g.edge_map
        if is_vertex and is_edge:
            raise ExprError(f"{name!r} names both a vertex and an edge")
        if is_edge:
            return self.alg.ghost(name) if ghost else self.alg.edge(name)
        if is_vertex:
            return self.alg.vertex(name)  # v^* = v
        raise ExprError(f"unknown vertex or edge {name!r}")


def parse_element(alg: LeavittAlgebra, text: str) -> Element:
    """Parse an expression into a normal-form element of the algebra."""
    return _Parser(alg, text).parse()
