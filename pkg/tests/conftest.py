"""Shared fixtures: the named graph zoo and the exhaustive small-graph family."""

from __future__ import annotations

import random

import pytest

from leavitt import Graph, make_graph

# Named fixtures, each exercising a distinct regime.  "toeplitz" is the
# loop-with-exit graph; "ex_infinite" is the two-vertex graph with a bundle
# w->v and a named loop at w (the canonical non-row-finite example, with
# B_{v} = {w}).
NAMED_GRAPHS: dict[str, Graph] = {
    "single_vertex": make_graph(["v"]),
    "two_isolated": make_graph(["p", "q"]),
    "a2": make_graph(["v1", "v2"], [("e", "v1", "v2")]),
    "a3": make_graph(["v1", "v2", "v3"], [("e1", "v1", "v2"), ("e2", "v2", "v3")]),
    "a3_branch": make_graph(
        ["v1", "v2", "v3", "v4"],
        [("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v2", "v4")],
    ),
    "parallel": make_graph(["v", "w"], [("e1", "v", "w"), ("e2", "v", "w")]),
    "fan": make_graph(["v", "a", "b"], [("e1", "v", "a"), ("e2", "v", "b")]),
    "c1": make_graph(["v"], [("e", "v", "v")]),
    "c2": make_graph(["v1", "v2"], [("e1", "v1", "v2"), ("e2", "v2", "v1")]),
    "c3": make_graph(
        ["v1", "v2", "v3"],
        [("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v3", "v1")],
    ),
    "rose2": make_graph(["v"], [("e1", "v", "v"), ("e2", "v", "v")]),
    "toeplitz": make_graph(["u", "z"], [("e", "u", "u"), ("f", "u", "z")]),
    "two_loops_bridge": make_graph(
        ["a", "b"], [("e1", "a", "a"), ("e2", "b", "b"), ("f", "a", "b")]
    ),
    "diamond": make_graph(
        ["v", "a", "b", "w"],
        [("e1", "v", "a"), ("e2", "v", "b"), ("f1", "a", "w"), ("f2", "b", "w")],
    ),
    "ex_infinite": make_graph(["v", "w"], [("f", "w", "w")], [("w", "v")]),
    "ex_infinite_acyclic": make_graph(["v", "w", "z"], [("h", "w", "z")], [("w", "v")]),
    "bundle_abc": make_graph(["a", "b", "c"], [("g", "a", "c")], [("a", "b")]),
    "bundle_abc_loop": make_graph(
        ["a", "b", "c"], [("g", "a", "c"), ("l", "c", "c")], [("a", "b")]
    ),
    "bundle_two_targets": make_graph(
        ["v", "w", "u"], [("f", "w", "w")], [("w", "v"), ("w", "u")]
    ),
    "bundle_chain": make_graph(
        ["u", "v", "w"], [("g", "u", "w"), ("h", "w", "w")], [("w", "v")]
    ),
    "bundle_escape": make_graph(
        ["u", "v", "w", "z"], [("g", "u", "w"), ("k", "w", "z")], [("w", "v")]
    ),
    "bundle_self": make_graph(["v"], [], [("v", "v")]),
    "mixed_tails": make_graph(
        ["a", "b", "c", "d"],
        [("e1", "a", "b"), ("e2", "a", "c"), ("e3", "c", "d"), ("e4", "d", "c")],
    ),
}


def random_graph(seed: int) -> Graph:
    """A pseudo-random graph within the small-family bounds: at most five
    vertices, six named edges, two bundles."""
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    vertices = [f"v{i}" for i in range(1, n + 1)]
    edges = [
        (f"e{k}", rng.choice(vertices), rng.choice(vertices))
        for k in range(rng.randint(0, 6))
    ]
    bundles = {
        (rng.choice(vertices), rng.choice(vertices))
        for _ in range(rng.randint(0, 2))
    }
    return make_graph(vertices, edges, sorted(bundles))


def exhaustive_family() -> list[tuple[str, Graph]]:
    family = list(NAMED_GRAPHS.items())
    family += [(f"random_{seed}", random_graph(seed)) for seed in range(15)]
    return family


@pytest.fixture(scope="session")
def graphs() -> dict[str, Graph]:
    return dict(NAMED_GRAPHS)


@pytest.fixture(scope="session", params=[name for name, _ in exhaustive_family()])
def family_graph(request) -> Graph:
    return dict(exhaustive_family())[request.param]
