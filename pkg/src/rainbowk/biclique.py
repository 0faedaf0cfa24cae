"""Biclique cover constructions.

Three building blocks: the bit-split cover of a complete graph
(ceil(log2 n) bicliques), randomized and greedy covers of a bipartite
complement for bounded-degree bipartite graphs, and their combination
covering all anti-edges of a vertex-colored graph so that no biclique
contains both endpoints of any edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import BudgetExceededError, Graph, canonical_pair

DEFAULT_GREEDY_CAP = 20
DEFAULT_RESTART_CAP = 50


@dataclass(frozen=True)
class Biclique:
    """Complete-bipartite piece: disjoint left/right vertex tuples (sorted)."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def pairs(self):
        for a in self.left:
            for b in self.right:
                yield canonical_pair(a, b)


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph over global vertex labels; edges are (left, right) pairs."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def degree_map(self) -> dict[int, int]:
        deg = {v: 0 for v in self.left + self.right}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def max_degree(self) -> int:
        deg = self.degree_map()
        return max(deg.values(), default=0)

    def complement_edges(self) -> set[tuple[int, int]]:
        return {
            (a, b) for a in self.left for b in self.right if (a, b) not in self.edges
        }


def make_bipartite(left, right, edges) -> BipartiteGraph:
    left = tuple(sorted(left))
    right = tuple(sorted(right))
    if set(left) & set(right):
        raise ValueError("bipartite sides must be disjoint")
    es = set()
    lset, rset = set(left), set(right)
    for a, b in edges:
        if a in rset and b in lset:
            a, b = b, a
        if a not in lset or b not in rset:
            raise ValueError(f"edge ({a}, {b}) does not join the two sides")
        es.add((a, b))
    return BipartiteGraph(left=left, right=right, edges=frozenset(es))


def cover_complete_graph(n: int, labels=None) -> list[Biclique]:
    """Exactly ceil(log2 n) bicliques covering all pairs of an n-clique.

    Biclique i splits the vertices on bit i of their index: any two distinct
    indices differ somewhere, so every pair is covered.
    """
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    if labels is None:
        labels = list(range(n))
    if len(labels) != n:
        raise ValueError("labels length mismatch")
    bits = max(0, (n - 1).bit_length())
    out = []
    for i in range(bits):
        zeros = tuple(labels[v] for v in range(n) if not (v >> i) & 1)
        ones = tuple(labels[v] for v in range(n) if (v >> i) & 1)
        out.append(Biclique(left=tuple(sorted(zeros)), right=tuple(sorted(ones))))
    return out


def closed_biclique(bg: BipartiteGraph, subset) -> Biclique:
    """(A, B) with B = right-side vertices non-adjacent to every vertex of A.

    This is a biclique of the bipartite complement, and the largest one with
    left side exactly A.
    """
    a = tuple(sorted(subset))
    aset = set(a)
    if not aset <= set(bg.left):
        raise ValueError("subset must lie in the left side")
    blocked = set()
    for x, y in bg.edges:
        if x in aset:
            blocked.add(y)
    b = tuple(v for v in bg.right if v not in blocked)
    return Biclique(left=a, right=b)


def cover_bipartite_complement_random(
    bg: BipartiteGraph, seed: int, *, restart_cap: int = DEFAULT_RESTART_CAP
) -> list[Biclique]:
    """Cover all bipartite-complement edges by sampled closed bicliques.

    Each round puts every left vertex in A independently with probability
    1/max_degree (exact 64-bit rational threshold) and keeps the biclique
    when it covers a new pair.  A round is limited to
    ceil(max_degree * e * (2 ln n + 1)) samples; if pairs remain uncovered
    everything is discarded and the round restarts.  Degree 0 means the
    complement is complete bipartite: one biclique suffices.
    """
    import random

    target = bg.complement_edges()
    delta = bg.max_degree()
    if delta == 0:
        return [Biclique(left=bg.left, right=bg.right)] if bg.left and bg.right else []
    n = len(bg.left) + len(bg.right)
    # Sampling at 1/1 would always take the whole left side and stall on any
    # matched pair, so degree 1 runs at the degree-2 rate instead.
    rate = max(delta, 2)
    budget = math.ceil(rate * math.e * (2 * math.log(n) + 1))
    rng = random.Random(seed)
    for _ in range(restart_cap):
        cover: list[Biclique] = []
        uncovered = set(target)
        for _ in range(budget):
            if not uncovered:
                break
            a = tuple(v for v in bg.left if rng.getrandbits(64) * rate < 1 << 64)
            bic = closed_biclique(bg, a)
            new = [p for p in ((x, y) for x in bic.left for y in bic.right) if p in uncovered]
            if new:
                cover.append(bic)
                uncovered.difference_update(new)
        if not uncovered:
            return cover
    raise BudgetExceededError(f"random cover failed to converge in {restart_cap} restarts")


def cover_bipartite_complement_greedy(
    bg: BipartiteGraph, *, v1_cap: int = DEFAULT_GREEDY_CAP
) -> list[Biclique]:
    """Deterministic cover: scan all left subsets, take the best closed biclique.

    Ties break toward the smallest subset in binary order over the sorted
    left side.  Exponential in |left|, hence the cap.
    """
    if len(bg.left) > v1_cap:
        raise BudgetExceededError(f"left side has {len(bg.left)} > {v1_cap} vertices")
    nleft, nright = len(bg.left), len(bg.right)
    # Right sides as bitmasks: nonadj[i] = complement-neighbors of left[i].
    ridx = {v: j for j, v in enumerate(bg.right)}
    nonadj = [(1 << nright) - 1] * nleft
    lidx = {v: i for i, v in enumerate(bg.left)}
    for a, b in bg.edges:
        nonadj[lidx[a]] &= ~(1 << ridx[b])
    uncov = list(nonadj)  # per left vertex, still-uncovered complement pairs
    cover: list[Biclique] = []
    full = (1 << nright) - 1
    while any(uncov):
        best_gain, best_mask, best_b = 0, None, 0
        for mask in range(1, 1 << nleft):
            b = full
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                b &= nonadj[i]
                m &= m - 1
            if not b:
                continue
            gain = 0
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                gain += (uncov[i] & b).bit_count()
                m &= m - 1
            if gain > best_gain:
                best_gain, best_mask, best_b = gain, mask, b
        if best_mask is None:
            raise AssertionError("uncoverable complement edge; bug")
        left = tuple(bg.left[i] for i in range(nleft) if (best_mask >> i) & 1)
        right = tuple(bg.right[j] for j in range(nright) if (best_b >> j) & 1)
        cover.append(Biclique(left=left, right=right))
        m = best_mask
        while m:
            i = (m & -m).bit_length() - 1
            uncov[i] &= ~best_b
            m &= m - 1
    return cover


def cover_complement_colored(
    g: Graph,
    vcolor,
    *,
    deterministic: bool = True,
    seed: int | None = None,
    greedy_cap: int = DEFAULT_GREEDY_CAP,
) -> list[Biclique]:
    """Cover all anti-edges of g with bicliques sharing <= 1 vertex with any edge.

    Per color class of the proper coloring: a complete-graph cover (pairs
    inside a class are all anti-edges).  Per class pair: a cover of the
    bipartite complement between the classes.  Greedy covers are used while
    the left class fits the cap, else the seeded random construction.
    Validity, coverage, and the edge-sharing property are asserted on every
    output.
    """
    if len(vcolor) != g.n:
        raise ValueError("vertex coloring length mismatch")
    for u, v in g.edges:
        if vcolor[u] == vcolor[v]:
            raise ValueError(f"vertex coloring is not proper on edge ({u}, {v})")
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(vcolor[v], []).append(v)
    cover: list[Biclique] = []
    for c in sorted(classes):
        members = sorted(classes[c])
        if len(members) >= 2:
            cover.extend(cover_complete_graph(len(members), labels=members))
    keys = sorted(classes)
    for i, ci in enumerate(keys):
        for cj in keys[i + 1 :]:
            left, right = sorted(classes[ci]), sorted(classes[cj])
            between = [
                (u, v)
                for u in left
                for v in right
                if g.has_edge(u, v)
            ]
            bg = make_bipartite(left, right, between)
            if deterministic and len(left) <= greedy_cap:
                part = cover_bipartite_complement_greedy(bg, v1_cap=greedy_cap)
            else:
                if seed is None:
                    raise ValueError("random covers need a seed")
                part = cover_bipartite_complement_random(bg, seed=seed + 7919 * (ci * len(keys) + cj))
            cover.extend(part)
    _assert_colored_cover(g, cover)
    return cover


def _assert_colored_cover(g: Graph, cover: list[Biclique]) -> None:
    anti = set(g.anti_edges())
    covered = set()
    for bic in cover:
        for p in bic.pairs():
            if p in g.edge_index:
                raise AssertionError(f"biclique pair {p} is an edge of g; bug")
            covered.add(p)
        mem = set(bic.left) | set(bic.right)
        for u, v in g.edges:
            if u in mem and v in mem:
                raise AssertionError(f"edge ({u}, {v}) has both endpoints in a biclique; bug")
    if covered != anti:
        missing = anti - covered
        raise AssertionError(f"cover misses anti-edges {sorted(missing)[:5]}...; bug")
