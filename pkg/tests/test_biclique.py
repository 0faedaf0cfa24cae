import math
import random

import pytest

from rainbowk.biclique import (
    Biclique,
    closed_biclique,
    cover_bipartite_complement_greedy,
    cover_bipartite_complement_random,
    cover_complement_colored,
    cover_complete_graph,
    make_bipartite,
)
from rainbowk.core import BudgetExceededError, build_graph, greedy_proper_coloring
from rainbowk.gen import random_bipartite, random_graph


def _covers_clique(cover, n):
    covered = set()
    for bic in cover:
        assert not set(bic.left) & set(bic.right)
        covered.update(bic.pairs())
    return covered == {(u, v) for u in range(n) for v in range(u + 1, n)}


def test_complete_cover_n4_exact():
    cover = cover_complete_graph(4)
    assert cover == [
        Biclique(left=(0, 2), right=(1, 3)),
        Biclique(left=(0, 1), right=(2, 3)),
    ]


def test_complete_cover_n1_empty():
    assert cover_complete_graph(1) == []


def test_complete_cover_sizes_up_to_64():
    for n in range(1, 65):
        cover = cover_complete_graph(n)
        assert len(cover) == math.ceil(math.log2(n)) if n > 1 else len(cover) == 0
        assert _covers_clique(cover, n)


def test_closed_biclique_examples():
    bg = make_bipartite([0, 1], [2, 3], [])
    assert closed_biclique(bg, [0, 1]) == Biclique(left=(0, 1), right=(2, 3))
    full = make_bipartite([0, 1], [2, 3], [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert closed_biclique(full, [0]).right == ()
    one = make_bipartite([0, 1], [2, 3], [(0, 2)])
    assert closed_biclique(one, [0]) == Biclique(left=(0,), right=(3,))


def _check_bipartite_cover(bg, cover):
    target = bg.complement_edges()
    covered = set()
    for bic in cover:
        for a in bic.left:
            for b in bic.right:
                assert (a, b) in target
                covered.add((a, b))
    assert covered == target


def test_random_cover_edgeless_single_biclique():
    bg = make_bipartite([0, 1], [2, 3], [])
    cover = cover_bipartite_complement_random(bg, seed=3)
    assert cover == [Biclique(left=(0, 1), right=(2, 3))]


def test_random_cover_matching():
    bg = make_bipartite([0, 1], [2, 3], [(0, 2), (1, 3)])
    cover = cover_bipartite_complement_random(bg, seed=5)
    _check_bipartite_cover(bg, cover)


def test_random_cover_large():
    rng = random.Random(17)
    bg = random_bipartite(50, 50, 0.05, rng)
    budget = bg.max_degree() * math.e * (2 * math.log(100) + 1)
    for seed in range(5):
        cover = cover_bipartite_complement_random(bg, seed=seed)
        _check_bipartite_cover(bg, cover)
        assert len(cover) <= math.ceil(budget)


def test_greedy_cover_examples():
    bg = make_bipartite([0, 1], [2, 3], [])
    assert cover_bipartite_complement_greedy(bg) == [Biclique(left=(0, 1), right=(2, 3))]
    m3 = make_bipartite([0, 1, 2], [3, 4, 5], [(0, 3), (1, 4), (2, 5)])
    cover = cover_bipartite_complement_greedy(m3)
    _check_bipartite_cover(m3, cover)
    one = make_bipartite([0, 1], [2, 3], [(0, 2)])
    cover = cover_bipartite_complement_greedy(one)
    _check_bipartite_cover(one, cover)
    first_gain = sum(1 for _ in cover[0].pairs())
    assert first_gain >= 2


def test_greedy_cap():
    bg = make_bipartite(range(25), range(25, 30), [])
    with pytest.raises(BudgetExceededError):
        cover_bipartite_complement_greedy(bg)


def test_greedy_size_bound_random():
    rng = random.Random(23)
    for _ in range(40):
        n1 = rng.randint(1, 10)
        n2 = rng.randint(1, 10)
        bg = random_bipartite(n1, n2, rng.random() * 0.7, rng)
        cover = cover_bipartite_complement_greedy(bg)
        _check_bipartite_cover(bg, cover)
        delta1 = max(bg.max_degree(), 1)
        n = n1 + n2
        assert len(cover) <= 10 * delta1 * math.log2(n + 1)


def test_colored_cover_examples():
    edgeless = build_graph(4, [])
    cover = cover_complement_colored(edgeless, [1, 1, 1, 1])
    assert len(cover) == 2  # the complete-graph cover of the single class
    single_edge = build_graph(2, [(0, 1)])
    assert cover_complement_colored(single_edge, [1, 2]) == []
    g = build_graph(3, [(0, 1), (1, 2)])
    cover = cover_complement_colored(g, [1, 2, 1])
    covered = set()
    for bic in cover:
        covered.update(bic.pairs())
    assert covered == {(0, 2)}


def test_colored_cover_rejects_improper():
    g = build_graph(2, [(0, 1)])
    with pytest.raises(ValueError):
        cover_complement_colored(g, [1, 1])


def test_colored_cover_random_graphs():
    rng = random.Random(40)
    for _ in range(60):
        g = random_graph(rng.randint(2, 10), rng.random() * 0.8, rng)
        vcolor = greedy_proper_coloring(g)
        # validity, coverage, and the sharing property are asserted inside
        cover_complement_colored(g, vcolor, deterministic=True, seed=1)
