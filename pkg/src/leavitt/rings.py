"""Exact coefficient rings: the integers, the rationals, Z/n, and GF(p).

These four families cover every hypothesis split the classification theorems
care about (not a domain / domain but not a field / field) while staying
exactly computable.  Integer arithmetic is arbitrary precision throughout;
rewriting in the symbolic engine can inflate coefficients, and overflow
would silently corrupt normal forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .errors import RingError

_INTEGERS = "Z"
_RATIONALS = "Q"
_INTEGERS_MOD = "Z/n"
_PRIME_FIELD = "GF"

Scalar = Union[int, Fraction, "RingElement"]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    if n in small:
        return True
    if any(n % p == 0 for p in small):
        return False
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RingSpec:
    """One of the supported coefficient rings.

    Use the factory functions (or :func:`parse_ring`) rather than the raw
    constructor; they validate the modulus.
    """

    kind: str
    modulus: int | None = None

    def __str__(self) -> str:
        if self.kind == _INTEGERS_MOD:
            return f"Z/{self.modulus}"
        if self.kind == _PRIME_FIELD:
            return f"GF({self.modulus})"
        return self.kind

    def is_integral_domain(self) -> bool:
        if self.kind == _INTEGERS_MOD:
            return is_prime(self.modulus)
        return True

    def is_field(self) -> bool:
        if self.kind == _INTEGERS:
            return False
        if self.kind == _INTEGERS_MOD:
            return is_prime(self.modulus)
        return True

    # -- element construction ------------------------------------------------

    def element(self, value: Scalar) -> RingElement:
        """Coerce an int, Fraction or same-ring element to canonical form."""
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, Fraction):
            return self._from_fraction(value)
        if isinstance(value, int):
            if self.kind == _RATIONALS:
                return RingElement(self, Fraction(value))
            if self.modulus is not None:
                return RingElement(self, value % self.modulus)
            return RingElement(self, value)
        raise RingError(f"cannot coerce {value!r} into {self}")

    def _from_fraction(self, q: Fraction) -> RingElement:
        if self.kind == _RATIONALS:
            return RingElement(self, q)
        if self.kind == _INTEGERS:
            if q.denominator != 1:
                raise RingError(f"{q} is not an integer")
            return RingElement(self, int(q))
        n = self.modulus
        if gcd(q.denominator, n) != 1:
            raise RingError(f"denominator {q.denominator} is not invertible mod {n}")
        return RingElement(self, q.numerator * pow(q.denominator, -1, n) % n)

    def zero(self) -> RingElement:
        return self.element(0)

    def one(self) -> RingElement:
        return self.element(1)


def integers() -> RingSpec:
    return RingSpec(_INTEGERS)


def rationals() -> RingSpec:
    return RingSpec(_RATIONALS)


def integers_mod(n: int) -> RingSpec:
    if not isinstance(n, int) or n < 2:
        raise RingError(f"modulus must be an integer >= 2, got {n!r}")
    return RingSpec(_INTEGERS_MOD, n)


def prime_field(p: int) -> RingSpec:
    if not isinstance(p, int) or not is_prime(p):
        raise RingError(f"{p!r} is not prime")
    return RingSpec(_PRIME_FIELD, p)


_RING_RE = re.compile(r"^(?:Z|Q|Z/(\d+)|GF\((\d+)\))$")


def parse_ring(text: str) -> RingSpec:
    """Parse "Z", "Q", "Z/<n>" or "GF(<p>)"."""
    m = _RING_RE.match(text.strip())
    if not m:
        raise RingError(f"cannot parse ring {text!r}; expected Z, Q, Z/<n> or GF(<p>)")
    if m.group(1) is not None:
        return integers_mod(int(m.group(1)))
    if m.group(2) is not None:
        return prime_field(int(m.group(2)))
    return integers() if text.strip() == "Z" else rationals()


@dataclass(frozen=True)
class RingElement:
    """A canonical-form element of one of the rings above.

    Residues live in [0, n); rationals are reduced Fractions with positive
    denominator (Fraction guarantees this); integers are plain ints.
    """

    ring: RingSpec
    value: int | Fraction

    def _coerce(self, other: Scalar) -> RingElement:
        return self.ring.element(other)

    def __add__(self, other: Scalar) -> RingElement:
        o = self._coerce(other)
        v = self.value + o.value
        if self.ring.modulus is not None:
            v %= self.ring.modulus
        return RingElement(self.ring, v)

    __radd__ = __add__

    def __neg__(self) -> RingElement:
        v = -self.value
        if self.ring.modulus is not None:
            v %= self.ring.modulus
        return RingElement(self.ring, v)

    def __sub__(self, other: Scalar) -> RingElement:
        return self + (-self._coerce(other))

    def __mul__(self, other: Scalar) -> RingElement:
        o = self._coerce(other)
        v = self.value * o.value
        if self.ring.modulus is not None:
            v %= self.ring.modulus
        return RingElement(self.ring, v)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value == 0

    def is_one(self) -> bool:
        return self.value == 1

    def __str__(self) -> str:
        return str(self.value)
