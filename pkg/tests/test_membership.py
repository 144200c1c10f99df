"""The span membership oracle and its exact linear solvers."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from leavitt import (
    LeavittAlgebra,
    admissible_pair,
    enumerate_admissible_pairs,
    in_graded_basic_ideal,
    integers,
    integers_mod,
    membership_oracle,
    prime_field,
    rationals,
    span_membership,
    spanning_elements,
)
from leavitt.membership import _FieldSpan, _IntegerSpan
from conftest import NAMED_GRAPHS

Z, Q, Z6, F5 = integers(), rationals(), integers_mod(6), prime_field(5)


# -- solvers on known systems -----------------------------------------------------


def test_integer_span_known_cases():
    span = _IntegerSpan([[2, 0], [0, 3]])
    assert span.contains([2, 3])
    assert span.contains([4, 0])
    assert not span.contains([1, 0])  # 1 is not a multiple of 2
    assert not span.contains([0, 1])
    # gcd through combinations: columns (2, 1) and (3, 1) span (1, 0)
    span = _IntegerSpan([[2, 1], [3, 1]])
    assert span.contains([1, 0])
    assert span.contains([0, 1])


def test_integer_span_rectangular():
    # single column: multiples only
    span = _IntegerSpan([[3, 6, 9]])
    assert span.contains([3, 6, 9])
    assert span.contains([-6, -12, -18])
    assert not span.contains([3, 6, 10])
    assert not span.contains([1, 2, 3])


def test_field_span_rationals():
    span = _FieldSpan(
        [[Fraction(2), Fraction(0)], [Fraction(1), Fraction(1)]],
        inv=lambda a: 1 / Fraction(a),
    )
    assert span.contains([Fraction(1), Fraction(0)])
    assert span.contains([Fraction(1, 3), Fraction(7)])


def test_field_span_prime_field():
    p = 5
    span = _FieldSpan([[2, 0]], inv=lambda a: pow(a, -1, p), mod=p)
    assert span.contains([3, 0])  # 2 * 4 = 3 mod 5
    assert not span.contains([0, 1])


def test_integer_lifting_for_composite_modulus():
    # over Z/6 the single vector (2, 0) spans (4, 0) but not (1, 0) or (3, 0)
    g = NAMED_GRAPHS["two_isolated"]
    alg = LeavittAlgebra(g, Z6)
    pair = admissible_pair(g, {"p"})
    oracle = membership_oracle(alg, pair, degree_bound=1)
    assert oracle(alg.vertex("p").scale(4))
    assert oracle(alg.vertex("p"))
    assert not oracle(alg.vertex("q"))


# -- the spanning set ---------------------------------------------------------------


def test_spanning_elements_all_members():
    g = NAMED_GRAPHS["toeplitz"]
    alg = LeavittAlgebra(g, Q)
    pair = admissible_pair(g, {"z"})
    spans = spanning_elements(alg, pair, degree_bound=2)
    assert spans  # f f*, z, f z f* style elements...
    for x in spans:
        assert in_graded_basic_ideal(alg, pair, x)


def test_span_membership_lemma_facts():
    for name in ("toeplitz", "ex_infinite", "a3_branch"):
        g = NAMED_GRAPHS[name]
        for ring in (Q, Z, F5):
            alg = LeavittAlgebra(g, ring)
            for pair in enumerate_admissible_pairs(g):
                oracle = membership_oracle(alg, pair, degree_bound=2)
                for v in g.vertices:
                    assert oracle(alg.vertex(v)) == (v in pair.h), (name, ring, v)


def test_dual_route_agreement_randomized():
    rng = random.Random(424242)
    for name in ("toeplitz", "ex_infinite", "bundle_two_targets", "parallel"):
        g = NAMED_GRAPHS[name]
        for ring in (Q, Z, Z6, F5):
            alg = LeavittAlgebra(g, ring)
            for pair in enumerate_admissible_pairs(g):
                oracle = membership_oracle(alg, pair, degree_bound=2)
                spans = spanning_elements(alg, pair, degree_bound=1)
                # random combinations of spanning elements are members
                for _ in range(5):
                    acc = alg.zero()
                    for x in spans:
                        acc = acc + x.scale(rng.randint(-2, 2))
                    assert oracle(acc)
                    assert in_graded_basic_ideal(alg, pair, acc)
                # vertices plus combinations: both routes must agree
                for v in g.vertices:
                    for x in spans[:3]:
                        probe = alg.vertex(v) + x
                        assert oracle(probe) == in_graded_basic_ideal(
                            alg, pair, probe
                        ), (name, ring, pair, v)


def test_span_membership_one_shot():
    g = NAMED_GRAPHS["ex_infinite"]
    alg = LeavittAlgebra(g, Q)
    pair = admissible_pair(g, {"v"}, {"w"})
    wh = alg.breaking_idempotent("w", {"v"})
    assert span_membership(alg, pair, wh, degree_bound=2)
    assert not span_membership(alg, pair, alg.vertex("w"), degree_bound=2)


def test_degree_bound_env_override(monkeypatch):
    from leavitt.membership import default_degree_bound
    from leavitt import RingError

    assert default_degree_bound() == 3
    monkeypatch.setenv("LEAVITT_DEGREE_BOUND", "5")
    assert default_degree_bound() == 5
    monkeypatch.setenv("LEAVITT_DEGREE_BOUND", "zero")
    with pytest.raises(RingError):
        default_degree_bound()
    monkeypatch.setenv("LEAVITT_DEGREE_BOUND", "0")
    with pytest.raises(RingError):
        default_degree_bound()
