"""Shared brute-force oracles, independent of the implementations they check."""

from __future__ import annotations

import itertools

from rainbowk.core import Graph, build_graph, canonical_pair


def all_pairs(n: int):
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def all_graphs(n: int):
    """Every labeled graph on n vertices, one per edge subset."""
    pairs = all_pairs(n)
    for mask in range(1 << len(pairs)):
        yield build_graph(n, [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1])


def enumerate_walks(g: Graph, u: int, v: int, max_len: int):
    """All walks from u to v with 1..max_len edges, as vertex tuples."""
    out = []

    def rec(x, verts):
        if x == v and len(verts) > 1:
            out.append(tuple(verts))
        if len(verts) - 1 >= max_len:
            return
        for y, _ in g.adjacency[x]:
            verts.append(y)
            rec(y, verts)
            verts.pop()

    rec(u, [u])
    return out


def walk_edge_ids(g: Graph, verts) -> list[int]:
    return [g.edge_id(verts[i], verts[i + 1]) for i in range(len(verts) - 1)]


def pair_satisfied_exhaustive(g: Graph, coloring, pair, k: int) -> bool:
    """Does any walk of length <= k join the pair with all-distinct colors?"""
    u, v = pair
    if g.has_edge(u, v):
        return True
    for verts in enumerate_walks(g, u, v, k):
        cs = [coloring[e] for e in walk_edge_ids(g, verts)]
        if len(set(cs)) == len(cs):
            return True
    return False


def simple_paths(g: Graph, u: int, v: int, max_len: int):
    out = []
    def rec(x, verts, eids):
        if x == v:
            out.append(tuple(eids))
            return
        if len(eids) == max_len:
            return
        for y, e in g.adjacency[x]:
            if y not in verts:
                rec(y, verts + (y,), eids + [e])
    rec(u, (u,), [])
    return out


def brute_force_satisfying_colorings(g: Graph, requests, k: int):
    """Yield every total coloring (list) satisfying all requests."""
    req_paths = []
    for u, v in requests:
        req_paths.append(simple_paths(g, u, v, k))
    for colors in itertools.product(range(1, k + 1), repeat=g.m):
        ok = True
        for paths in req_paths:
            if not any(
                len({colors[e] for e in p}) == len(p) for p in paths
            ):
                ok = False
                break
        if ok:
            yield list(colors)


def brute_max_satisfied(g: Graph, k: int, feasible) -> int:
    """Maximum, over all k-colorings, of the number of satisfied pairs."""
    pair_paths = [simple_paths(g, u, v, k) for u, v in feasible]
    best = 0
    for colors in itertools.product(range(1, k + 1), repeat=g.m):
        sat = 0
        for paths in pair_paths:
            if any(len({colors[e] for e in p}) == len(p) for p in paths):
                sat += 1
        if sat > best:
            best = sat
            if best == len(feasible):
                break
    return best


def random_request_subset(rng, pool, max_size=None):
    pool = sorted(pool)
    if not pool:
        return []
    size = rng.randint(0, len(pool) if max_size is None else min(max_size, len(pool)))
    return rng.sample(pool, size)
