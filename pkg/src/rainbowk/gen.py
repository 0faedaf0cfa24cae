"""Seeded random generators for graphs, bipartite graphs, and formulas."""

from __future__ import annotations

import random

from .biclique import BipartiteGraph, make_bipartite
from .core import Graph, build_graph
from .cnf import CnfFormula


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return build_graph(n, edges)


def random_graph_m(n: int, m: int, rng: random.Random) -> Graph:
    """Exactly m edges sampled without replacement."""
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if m > len(all_pairs):
        raise ValueError(f"m={m} exceeds {len(all_pairs)} available pairs")
    return build_graph(n, rng.sample(all_pairs, m))


def random_bipartite(n1: int, n2: int, p: float, rng: random.Random) -> BipartiteGraph:
    left = list(range(n1))
    right = list(range(n1, n1 + n2))
    edges = [(a, b) for a in left for b in right if rng.random() < p]
    return make_bipartite(left, right, edges)


def random_normalized_formula(
    nvars: int, nclauses: int, rng: random.Random, *, planted: bool = False
) -> CnfFormula:
    """Random 3-CNF with exactly 3 distinct variables per clause and at most
    4 occurrences per variable.

    With `planted`, clauses are filtered to hold under a hidden assignment,
    so the output is guaranteed satisfiable.
    """
    if 3 * nclauses > 4 * nvars:
        raise ValueError("occurrence budget cannot host this many clauses")
    assignment = [rng.random() < 0.5 for _ in range(nvars)] if planted else None
    occurrences = [0] * (nvars + 1)
    clauses = []
    attempts = 0
    while len(clauses) < nclauses:
        attempts += 1
        if attempts > 10000 * nclauses + 100:
            raise RuntimeError("generator failed to place clauses under the caps")
        avail = [x for x in range(1, nvars + 1) if occurrences[x] < 4]
        if len(avail) < 3:
            raise RuntimeError("occurrence budget exhausted")
        vs = rng.sample(avail, 3)
        lits = [v if rng.random() < 0.5 else -v for v in vs]
        if assignment is not None and not any(
            (l > 0) == assignment[abs(l) - 1] for l in lits
        ):
            flip = rng.randrange(3)
            lits[flip] = vs[flip] if assignment[vs[flip] - 1] else -vs[flip]
        for l in lits:
            occurrences[abs(l)] += 1
        clauses.append(tuple(lits))
    return CnfFormula(nvars=nvars, clauses=tuple(clauses))


def random_3cnf(nvars: int, nclauses: int, rng: random.Random) -> CnfFormula:
    """Unrestricted random 3-CNF (repeated variables allowed within a clause)."""
    clauses = []
    for _ in range(nclauses):
        lits = tuple(
            (v if rng.random() < 0.5 else -v)
            for v in (rng.randint(1, nvars) for _ in range(3))
        )
        clauses.append(lits)
    return CnfFormula(nvars=nvars, clauses=tuple(clauses))
