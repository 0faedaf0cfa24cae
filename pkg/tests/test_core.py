import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowk.core import (
    INFINITY,
    DisjointSets,
    GraphError,
    PartialColoring,
    bfs_distances,
    build_graph,
    feasible_pairs,
    greedy_proper_coloring,
    make_instance,
)


def test_build_path_graph():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert g.m == 2
    assert g.edges == ((0, 1), (1, 2))


def test_build_canonicalizes_and_dedups():
    g = build_graph(3, [(1, 0), (0, 1), (1, 2)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.m == 2


def test_self_loop_rejected():
    with pytest.raises(GraphError):
        build_graph(2, [(0, 0)])


def test_out_of_range_rejected():
    with pytest.raises(GraphError):
        build_graph(2, [(0, 2)])


def test_bfs_path():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert bfs_distances(g, 0) == [0, 1, 2]


def test_bfs_disconnected():
    g = build_graph(2, [])
    assert bfs_distances(g, 0) == [0, INFINITY]


def test_bfs_cycle():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert bfs_distances(g, 0) == [0, 1, 2, 1]


def test_feasible_pairs_p3():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert feasible_pairs(g, 2) == {(0, 2)}


def test_feasible_pairs_p4():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert feasible_pairs(g, 2) == {(0, 2), (1, 3)}
    assert feasible_pairs(g, 3) == {(0, 2), (1, 3), (0, 3)}


def test_greedy_coloring_edgeless():
    g = build_graph(5, [])
    colors = greedy_proper_coloring(g)
    assert colors == [1] * 5


def test_greedy_coloring_clique():
    g = build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert sorted(greedy_proper_coloring(g)) == [1, 2, 3, 4]


def test_greedy_coloring_c5_proper():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    colors = greedy_proper_coloring(g)
    assert max(colors) <= 3
    for u, v in g.edges:
        assert colors[u] != colors[v]


def test_instance_drops_edge_requests():
    g = build_graph(3, [(0, 1), (1, 2)])
    inst = make_instance(g, 2, [(0, 1), (0, 2)])
    assert inst.requests == frozenset({(0, 2)})


def test_precoloring_rejects_out_of_range():
    pc = PartialColoring(3, 2)
    with pytest.raises(ValueError):
        pc.set(0, 3)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    picked = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    return build_graph(n, picked)


@given(graphs())
@settings(max_examples=80, deadline=None)
def test_adjacency_round_trip(g):
    rebuilt = set()
    for u in range(g.n):
        for v, e in g.adjacency[u]:
            assert g.edges[e] == (min(u, v), max(u, v))
            rebuilt.add(g.edges[e])
    assert rebuilt == set(g.edges)
    for u, v in g.edges:
        assert u < v


@given(graphs(), st.integers(min_value=1, max_value=5))
@settings(max_examples=60, deadline=None)
def test_feasible_monotone_in_k(g, k):
    assert feasible_pairs(g, k) <= feasible_pairs(g, k + 1)


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_greedy_bound(g):
    colors = greedy_proper_coloring(g)
    for u, v in g.edges:
        assert colors[u] != colors[v]
    assert max(colors, default=0) <= g.max_degree() + 1


def test_disjoint_sets_match_bfs_components():
    rng = random.Random(20240)
    for _ in range(120):
        n = rng.randint(1, 12)
        ds = DisjointSets(n)
        unions = [
            (rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 2 * n))
        ]
        for a, b in unions:
            if a != b:
                ds.union(a, b)
        g = build_graph(n, [(a, b) for a, b in unions if a != b])
        comp = [-1] * n
        c = 0
        for s in range(n):
            if comp[s] != -1:
                continue
            stack = [s]
            comp[s] = c
            while stack:
                x = stack.pop()
                for y, _ in g.adjacency[x]:
                    if comp[y] == -1:
                        comp[y] = c
                        stack.append(y)
            c += 1
        for a in range(n):
            for b in range(n):
                assert (ds.find(a) == ds.find(b)) == (comp[a] == comp[b])
        assert ds.n_classes == c
