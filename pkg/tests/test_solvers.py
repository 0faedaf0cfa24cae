import random

import pytest

from conftest import (
    all_graphs,
    brute_force_satisfying_colorings,
    random_request_subset,
)
from rainbowk.core import (
    BudgetExceededError,
    PartialColoring,
    build_graph,
    feasible_pairs,
    make_instance,
)
from rainbowk.solvers import (
    brute_force_count,
    brute_force_solve,
    count_satisfying_2colorings,
    extract_2coloring,
    find_coloring,
    quotient_classes,
    solve_subset_rainbow,
)
from rainbowk.verify import verify_requests


def p3():
    return build_graph(3, [(0, 1), (1, 2)])


def star3():
    return build_graph(4, [(3, 0), (3, 1), (3, 2)])


def test_brute_solve_p3():
    inst = make_instance(p3(), 2, [(0, 2)])
    assert brute_force_solve(inst) == [1, 2]
    assert brute_force_count(inst) == 2


def test_brute_solve_respects_precoloring():
    g = p3()
    pc = PartialColoring(2, 2, [1, 1])
    inst = make_instance(g, 2, [(0, 2)], pc)
    assert brute_force_solve(inst) is None
    assert brute_force_count(inst) == 0


def test_brute_star_infeasible():
    inst = make_instance(star3(), 2, [(0, 1), (0, 2), (1, 2)])
    assert brute_force_solve(inst) is None
    assert brute_force_count(inst) == 0


def test_brute_count_no_requests_is_k_to_m():
    g = p3()
    assert brute_force_count(make_instance(g, 2, [])) == 4
    assert brute_force_count(make_instance(g, 3, [])) == 9


def test_brute_budget():
    g = build_graph(12, [(i, (i + 1) % 12) for i in range(12)])
    inst = make_instance(g, 2, [])
    with pytest.raises(BudgetExceededError):
        brute_force_solve(inst, bits_budget=4.0)


def test_brute_parallel_agrees():
    rng = random.Random(5)
    for _ in range(5):
        n = 5
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = build_graph(n, rng.sample(pairs, 6))
        reqs = random_request_subset(rng, feasible_pairs(g, 2), 3)
        inst = make_instance(g, 2, reqs)
        assert brute_force_solve(inst) == brute_force_solve(inst, workers=2)
        assert brute_force_count(inst) == brute_force_count(inst, workers=2)


def test_quotient_classes_examples():
    g = p3()
    assert quotient_classes(g, [(0, 2)]).class_count == 1
    assert quotient_classes(g, []).class_count == 2
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert quotient_classes(c4, [(0, 2)]).class_count == 2


def test_quotient_rejects_edge_pair():
    with pytest.raises(ValueError):
        quotient_classes(p3(), [(0, 1)])


def test_count_examples():
    g = p3()
    assert count_satisfying_2colorings(g, [(0, 2)]) == 2
    assert count_satisfying_2colorings(g, []) == 4
    assert count_satisfying_2colorings(star3(), [(0, 1), (0, 2), (1, 2)]) == 0
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert count_satisfying_2colorings(p4, [(0, 3)]) == 0  # infeasible pair


def test_extract_examples():
    g = p3()
    assert extract_2coloring(g, [(0, 2)]) == [1, 2]
    assert extract_2coloring(g, []) == [1, 1]
    assert extract_2coloring(star3(), [(0, 1), (0, 2), (1, 2)]) is None


def test_count_matches_brute_on_random_instances():
    rng = random.Random(2024)
    for _ in range(120):
        n = rng.randint(2, 6)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = build_graph(n, rng.sample(pairs, rng.randint(0, min(len(pairs), 9))))
        feas = feasible_pairs(g, 2)
        requests = random_request_subset(rng, feas, 5)
        got = count_satisfying_2colorings(g, requests)
        want = sum(1 for _ in brute_force_satisfying_colorings(g, requests, 2))
        assert got == want


def test_count_antitone_and_bounds():
    rng = random.Random(31)
    for _ in range(80):
        n = rng.randint(3, 6)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = build_graph(n, rng.sample(pairs, rng.randint(1, min(len(pairs), 8))))
        feas = sorted(feasible_pairs(g, 2))
        if not feas:
            continue
        s = random_request_subset(rng, feas, 4)
        extra = rng.choice(feas)
        base = count_satisfying_2colorings(g, s)
        more = count_satisfying_2colorings(g, set(s) | {extra})
        assert more <= base <= 2 ** g.m
        assert base >= 0


def test_find_coloring_examples():
    g = p3()
    inst = make_instance(g, 2, [(0, 2)])
    c = find_coloring(inst, [(0, 2)], PartialColoring.empty(g.m, 2))
    assert c is not None and c[0] != c[1]
    # empty request set: completes the precoloring with color 1
    pc = PartialColoring(2, 2, [None, 2])
    assert find_coloring(inst, [], pc) == [1, 2]
    star = make_instance(star3(), 2, [(0, 1), (0, 2), (1, 2)])
    assert find_coloring(star, sorted(star.requests), PartialColoring.empty(3, 2)) is None


def test_solve_subset_examples():
    g = p3()
    assert solve_subset_rainbow(make_instance(g, 2, [(0, 2)])) is not None
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert solve_subset_rainbow(make_instance(p4, 2, [(0, 3)])) is None
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    inst = make_instance(c4, 2, [(0, 2), (1, 3)])
    got = solve_subset_rainbow(inst)
    want = brute_force_solve(inst)
    assert (got is None) == (want is None)


def test_solver_oracle_equivalence_small():
    rng = random.Random(7)
    graphs = rng.sample(list(all_graphs(4)), 40)
    for g in graphs:
        for k in (2, 3):
            feas = feasible_pairs(g, k)
            reqs = random_request_subset(rng, feas, 4)
            inst = make_instance(g, k, reqs)
            got = solve_subset_rainbow(inst)
            want = brute_force_solve(inst)
            assert (got is None) == (want is None)
            if got is not None:
                assert verify_requests(g, got, inst.requests, k) == inst.requests


def test_find_coloring_with_precoloring_routes():
    rng = random.Random(44)
    for _ in range(40):
        n = rng.randint(3, 5)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = build_graph(n, rng.sample(pairs, rng.randint(2, len(pairs))))
        k = rng.choice((2, 3))
        pc = PartialColoring.empty(g.m, k)
        for e in range(g.m):
            if rng.random() < 0.3:
                pc.set(e, rng.randint(1, k))
        feas = feasible_pairs(g, k)
        reqs = random_request_subset(rng, feas, 3)
        inst = make_instance(g, k, reqs, pc)
        got = solve_subset_rainbow(inst)
        want = brute_force_solve(inst)
        assert (got is None) == (want is None)
