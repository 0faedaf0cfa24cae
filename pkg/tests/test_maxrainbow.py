import math
import random
from fractions import Fraction

import pytest

from conftest import brute_max_satisfied, simple_paths
from rainbowk.core import build_graph, feasible_pairs, make_instance
from rainbowk.maxrainbow import (
    choose_paths,
    derandomized_approx,
    kernelize,
    solve_max_rainbow,
)
from rainbowk.verify import verify_requests


def p3():
    return build_graph(3, [(0, 1), (1, 2)])


def star3():
    return build_graph(4, [(3, 0), (3, 1), (3, 2)])


def test_choose_paths_examples():
    assert choose_paths(p3(), [(0, 2)], 2)[(0, 2)] == (0, 1, 2)
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert choose_paths(c4, [(0, 2)], 2)[(0, 2)] == (0, 1, 2)
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert choose_paths(p4, [(0, 3)], 3)[(0, 3)] == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        choose_paths(p4, [(0, 3)], 2)


def _rainbow_plan_paths(g, plan, colors):
    count = 0
    for path in plan.values():
        eids = [g.edge_id(path[i], path[i + 1]) for i in range(len(path) - 1)]
        cs = [colors[e] for e in eids]
        if len(set(cs)) == len(cs):
            count += 1
    return count


def test_approx_star_reaches_optimum():
    g = star3()
    reqs = [(0, 1), (0, 2), (1, 2)]
    colors = derandomized_approx(g, reqs, 2)
    sat = verify_requests(g, colors, reqs, 2)
    assert len(sat) == 2  # brute-force optimum; bound demands >= ceil(1.5) = 2


def test_approx_empty_requests():
    colors = derandomized_approx(p3(), [], 2)
    assert len(colors) == 2


def test_approx_bound_and_monotone_expectation():
    rng = random.Random(99)
    for _ in range(80):
        n = rng.randint(3, 8)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = build_graph(n, rng.sample(pairs, rng.randint(2, len(pairs))))
        k = rng.choice((2, 3))
        feas = sorted(feasible_pairs(g, k))
        if not feas:
            continue
        reqs = rng.sample(feas, rng.randint(1, len(feas)))
        plan = choose_paths(g, reqs, k)
        colors = derandomized_approx(g, reqs, k)
        got = _rainbow_plan_paths(g, plan, colors)
        bound = math.ceil(Fraction(math.factorial(k), k ** k) * len(reqs))
        assert got >= bound
        # conditional expectation never decreases along the fixing order
        path_edges = {
            p: tuple(g.edge_id(v[i], v[i + 1]) for i in range(len(v) - 1))
            for p, v in plan.items()
        }

        def expectation(fixed):
            total = Fraction(0)
            for eids in path_edges.values():
                cs = [fixed[e] for e in eids if fixed[e] is not None]
                free = len(eids) - len(cs)
                if len(set(cs)) != len(cs):
                    continue
                num = 1
                for i in range(free):
                    num *= k - len(cs) - i
                if num > 0:
                    total += Fraction(num, k ** free)
            return total

        fixed = [None] * g.m
        prev = expectation(fixed)
        for e in range(g.m):
            fixed[e] = colors[e]
            cur = expectation(fixed)
            assert cur >= prev
            prev = cur


def test_kernelize_threshold_yes():
    # q <= (k!/k^k) |feasible|: with k=2 and 10 feasible anti-edges, q=5.
    g = build_graph(12, [(i, i + 1) for i in range(11)])
    feas = feasible_pairs(g, 2)
    assert len(feas) == 10
    assert kernelize(g, 2, 5).verdict == "yes-immediate"


def test_kernelize_p3_rule_fires():
    # The middle vertex sits on no feasible anti-edge and dominates the
    # component, so the component is removed and q reaches 0: immediate YES.
    res = kernelize(p3(), 2, 1)
    assert res.verdict == "yes-immediate"


def test_kernelize_reduced_bound_and_equivalence():
    rng = random.Random(123)
    for _ in range(60):
        n = rng.randint(2, 8)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = build_graph(n, rng.sample(pairs, rng.randint(0, len(pairs))))
        k = rng.choice((2, 3))
        q = rng.randint(1, 6)
        res = kernelize(g, k, q)
        want = solve_max_rainbow(g, k, q).yes
        if res.verdict == "yes-immediate":
            assert want
        else:
            assert res.graph.n <= 3 * res.q * k ** k // math.factorial(k)
            got = solve_max_rainbow(res.graph, k, res.q).yes if res.q > 0 else True
            assert got == want


def test_maxsolve_examples():
    res = solve_max_rainbow(p3(), 2, 1)
    assert res.yes and list(res.coloring) == [1, 2]
    assert not solve_max_rainbow(star3(), 2, 3).yes
    assert solve_max_rainbow(star3(), 2, 0).yes


def test_maxsolve_vs_brute():
    rng = random.Random(321)
    for _ in range(40):
        n = rng.randint(2, 6)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = build_graph(n, rng.sample(pairs, rng.randint(0, min(9, len(pairs)))))
        k = rng.choice((2, 3))
        feas = sorted(feasible_pairs(g, k))
        q = rng.randint(0, len(feas) + 1)
        res = solve_max_rainbow(g, k, q)
        best = brute_max_satisfied(g, k, feas)
        assert res.yes == (best >= q)
        if res.yes and q > 0:
            sat = verify_requests(g, list(res.coloring), feas, k)
            assert len(sat) >= q


def test_maxsolve_workers_agree():
    rng = random.Random(8)
    for _ in range(6):
        n = 6
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = build_graph(n, rng.sample(pairs, 7))
        feas = sorted(feasible_pairs(g, 2))
        q = min(len(feas), 3)
        if q == 0:
            continue
        a = solve_max_rainbow(g, 2, q)
        b = solve_max_rainbow(g, 2, q, workers=2)
        assert a.yes == b.yes


def test_k_cap():
    with pytest.raises(ValueError):
        kernelize(p3(), 9, 1)
