"""Decision and counting solvers for subset rainbow coloring.

Three engines:

- a brute-force enumerator over all k^(#uncolored) extensions (the oracle
  everything else is tested against),
- an inclusion-exclusion counter for the 2-color case, summing
  (-1)^|X| * 2^(#edge classes) over request subsets X, where two edges fall
  in one class when they are linked through 2-edge paths between pairs of X,
- a recursive branching solver driven by guided walks, which handles any k
  and honors a precoloring.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from .core import (
    BudgetExceededError,
    DisjointSets,
    Graph,
    Instance,
    PartialColoring,
    canonical_pair,
    feasible_pairs,
)
from .verify import find_guided_walk, verify_requests

DEFAULT_IE_SUBSET_CAP = 26
DEFAULT_BRUTE_FORCE_BITS = 40.0


@dataclass(frozen=True)
class QuotientStructure:
    """Edge classes induced by a request subset: union-find plus class count."""

    sets: DisjointSets
    class_count: int


def _request_paths(g: Graph, requests, k: int) -> dict[tuple[int, int], list[tuple[int, ...]]]:
    """All simple u-v paths of length <= k, as edge-index tuples, per request."""
    out: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for u, v in requests:
        pair = canonical_pair(u, v)
        paths: list[tuple[int, ...]] = []
        stack = [(u, (u,), ())]
        while stack:
            x, verts, eids = stack.pop()
            if x == v:
                paths.append(eids)
                continue
            if len(eids) == k:
                continue
            for y, e in g.adjacency[x]:
                if y not in verts:
                    stack.append((y, verts + (y,), eids + (e,)))
        out[pair] = paths
    return out


def _paths_satisfied(colors, paths) -> bool:
    for p in paths:
        seen = 0
        ok = True
        for e in p:
            bit = 1 << colors[e]
            if seen & bit:
                ok = False
                break
            seen |= bit
        if ok:
            return True
    return False


def brute_force_solve(inst: Instance, *, bits_budget: float = DEFAULT_BRUTE_FORCE_BITS, workers: int = 1):
    """First total extension (lexicographic by edge index) satisfying all requests.

    Returns a color list or None.  Raises BudgetExceededError when
    k^(#uncolored edges) exceeds the configured budget.
    """
    return _brute_force(inst, count_all=False, bits_budget=bits_budget, workers=workers)


def brute_force_count(inst: Instance, *, bits_budget: float = DEFAULT_BRUTE_FORCE_BITS, workers: int = 1) -> int:
    """Number of total extensions satisfying all requests."""
    return _brute_force(inst, count_all=True, bits_budget=bits_budget, workers=workers)


def _brute_force(inst: Instance, *, count_all: bool, bits_budget: float, workers: int):
    g, k = inst.graph, inst.k
    free = [e for e in range(g.m) if inst.precoloring.get(e) is None]
    if len(free) * math.log2(k) > bits_budget:
        raise BudgetExceededError(
            f"brute force would enumerate k^{len(free)} colorings "
            f"({len(free) * math.log2(k):.1f} bits > budget {bits_budget})"
        )
    path_lists = _request_paths(g, inst.requests, k)
    if any(not p for p in path_lists.values()):
        return 0 if count_all else None
    base = inst.precoloring.completed(fill=0)
    if workers > 1 and free:
        return _brute_force_parallel(g, k, free, base, path_lists, count_all, workers)
    return _brute_force_chunk(k, free, base, list(path_lists.values()), count_all, None)


def _brute_force_chunk(k, free, base, path_lists, count_all, first_color):
    colors = list(base)
    order = list(free)
    if first_color is not None:
        colors[order[0]] = first_color
        order = order[1:]
    for e in order:
        colors[e] = 1
    count = 0
    while True:
        if all(_paths_satisfied(colors, pl) for pl in path_lists):
            if not count_all:
                return list(colors)
            count += 1
        pos = len(order) - 1
        while pos >= 0 and colors[order[pos]] == k:
            colors[order[pos]] = 1
            pos -= 1
        if pos < 0:
            break
        colors[order[pos]] += 1
    return count if count_all else None


def _brute_force_parallel(g, k, free, base, path_lists, count_all, workers):
    import multiprocessing

    pls = list(path_lists.values())
    args = [(k, free, base, pls, count_all, c) for c in range(1, k + 1)]
    with multiprocessing.get_context("fork").Pool(min(workers, k)) as pool:
        results = pool.starmap(_brute_force_chunk, args)
    if count_all:
        return sum(results)
    for r in results:
        if r is not None:
            return r
    return None


def quotient_classes(g: Graph, pairs) -> QuotientStructure:
    """Union edges e1, e2 for every 2-edge path (u, x, v) with {u, v} in pairs."""
    for u, v in pairs:
        if g.has_edge(u, v):
            raise ValueError(f"pair ({u}, {v}) is an edge, not an anti-edge")
    ds = DisjointSets(g.m)
    for u, v in pairs:
        nb_u = {y: e for y, e in g.adjacency[u]}
        for y, e2 in g.adjacency[v]:
            e1 = nb_u.get(y)
            if e1 is not None:
                ds.union(e1, e2)
    return QuotientStructure(sets=ds, class_count=ds.n_classes)


def count_satisfying_2colorings(g: Graph, requests, *, subset_cap: int = DEFAULT_IE_SUBSET_CAP) -> int:
    """Exact number of 2-colorings of E satisfying every request.

    Signed sum over all request subsets X of 2^(#classes of the
    edge-linkage relation of X).  Requests that are edges never constrain
    and are dropped; an infeasible request (distance > 2) forces count 0.
    """
    return _count_2colorings_extending(g, requests, [None] * g.m, subset_cap=subset_cap)


def _count_2colorings_extending(g: Graph, requests, precolor_values, *, subset_cap: int = DEFAULT_IE_SUBSET_CAP) -> int:
    pairs = []
    feasible = None
    for u, v in requests:
        p = canonical_pair(u, v)
        if g.has_edge(u, v):
            continue
        if feasible is None:
            feasible = feasible_pairs(g, 2)
        if p not in feasible:
            return 0
        pairs.append(p)
    pairs = sorted(set(pairs))
    if len(pairs) > subset_cap:
        raise BudgetExceededError(f"|S|={len(pairs)} exceeds inclusion-exclusion cap {subset_cap}")

    # Per-pair 2-edge paths, precomputed once; the union-find is rebuilt per
    # subset (it does not support deletion), with subsets visited in
    # Gray-code order so consecutive subsets differ in one request.
    pair_paths: list[list[tuple[int, int]]] = []
    for u, v in pairs:
        nb_u = {y: e for y, e in g.adjacency[u]}
        links = []
        for y, e2 in g.adjacency[v]:
            e1 = nb_u.get(y)
            if e1 is not None:
                links.append((e1, e2))
        pair_paths.append(links)

    precolored = [(e, c) for e, c in enumerate(precolor_values) if c is not None]
    total = 0
    for idx in range(1 << len(pairs)):
        gray = idx ^ (idx >> 1)
        ds = DisjointSets(g.m)
        for i in range(len(pairs)):
            if gray & (1 << i):
                for e1, e2 in pair_paths[i]:
                    ds.union(e1, e2)
        sign = -1 if bin(gray).count("1") % 2 else 1
        term = _count_monochrome_extensions(g, ds, precolored)
        total += sign * term
    return total


def _count_monochrome_extensions(g: Graph, ds: DisjointSets, precolored) -> int:
    """2^(#classes without a precolored edge), or 0 on a color conflict."""
    root_color: dict[int, int] = {}
    for e, c in precolored:
        r = ds.find(e)
        prev = root_color.get(r)
        if prev is None:
            root_color[r] = c
        elif prev != c:
            return 0
    free = ds.n_classes - len(root_color)
    return 1 << free


def extract_2coloring(g: Graph, requests, *, subset_cap: int = DEFAULT_IE_SUBSET_CAP):
    """A satisfying 2-coloring, or None when the count is zero.

    Fixes edges one at a time, keeping the first color (1 before 2) that
    leaves a positive number of satisfying extensions.
    """
    if count_satisfying_2colorings(g, requests, subset_cap=subset_cap) == 0:
        return None
    values: list = [None] * g.m
    for e in range(g.m):
        for color in (1, 2):
            values[e] = color
            if _count_2colorings_extending(g, requests, values, subset_cap=subset_cap) > 0:
                break
        else:
            raise AssertionError("positive count but no extendable color; counter is buggy")
    return [int(c) for c in values]


def find_coloring(
    inst: Instance,
    requests,
    c0: PartialColoring,
    guides: dict[tuple[int, int], frozenset[int]] | None = None,
    *,
    node_budget: int | None = None,
):
    """Branching search for a total coloring extending c0 that satisfies all
    requests, each via a walk containing its guide edges.

    Per call: if the request set is empty the precoloring is completed with
    color 1; if some guide holds two same-colored edges the branch is dead;
    otherwise the lexicographically smallest request is satisfied by a
    guided walk whose uncolored edges are committed, and on failure the
    search branches over (walk edge, color, other request) triples, growing
    that request's guide.  Guides never usefully exceed k edges: at k+1 two
    of them share a color and the dead-branch guard fires.
    """
    g, k = inst.graph, inst.k
    s0 = sorted(canonical_pair(u, v) for u, v in requests)
    f = {p: frozenset() for p in s0}
    if guides:
        for p, es in guides.items():
            f[canonical_pair(*p)] = frozenset(es)
    # The recursion strictly shrinks |S0| + sum over requests of
    # (k + 1 - |guide|), which starts at |S0|*(k+2); exceeding that depth
    # means a bug, not a hard instance.
    depth_cap = len(s0) * (k + 2) + 1
    state = {"nodes": 0}

    def recurse(s0, c0, f, depth):
        state["nodes"] += 1
        if node_budget is not None and state["nodes"] > node_budget:
            raise BudgetExceededError(f"branching solver exceeded {node_budget} nodes")
        if depth > depth_cap:
            raise RuntimeError(
                "branching depth exceeded the proven bound; this is a bug"
            )
        if not s0:
            return c0.completed(fill=1)
        for r in s0:
            cols = [c0.get(e) for e in f[r]]
            if len(set(cols)) != len(cols):
                return None
        # Guided-walk existence only shrinks as the coloring and guides
        # grow, so a request with no walk here proves the whole subtree
        # empty.  This prunes without changing the returned coloring: every
        # skipped branch would have returned null anyway.
        walk = None
        for r in s0:
            w = find_guided_walk(g, c0, r, f[r], k)
            if w is None:
                return None
            if r == s0[0]:
                walk = w
        c1 = c0.copy()
        used = {c0.get(e) for e in walk.edges if c0.get(e) is not None}
        walk_uncolored = []
        for e in walk.edges:
            if c1.get(e) is None:
                color = 1
                while color in used:
                    color += 1
                c1.set(e, color)
                used.add(color)
                walk_uncolored.append(e)
        rest = s0[1:]
        f_rest = {p: f[p] for p in rest}
        result = recurse(rest, c1, f_rest, depth + 1)
        if result is not None:
            return result
        for e in walk_uncolored:
            for alpha in range(1, k + 1):
                for r in rest:
                    c_ea = c0.copy()
                    c_ea.set(e, alpha)
                    f_er = dict(f)
                    f_er[r] = f[r] | {e}
                    result = recurse(s0, c_ea, f_er, depth + 1)
                    if result is not None:
                        return result
        return None

    return recurse(s0, c0.copy(), f, 0)


def solve_subset_rainbow(
    inst: Instance,
    *,
    ie_subset_cap: int = DEFAULT_IE_SUBSET_CAP,
    node_budget: int | None = None,
):
    """Decide a subset rainbow coloring instance; returns a coloring or None.

    Requests that are edges were dropped at instance construction;
    an infeasible request (distance > k) makes the answer an immediate None.
    The 2-color case without precoloring routes through the
    inclusion-exclusion extractor, everything else through the branching
    solver.  Every returned coloring is re-checked by the verifier.
    """
    g, k = inst.graph, inst.k
    requests = sorted(inst.requests)
    if requests:
        feas = feasible_pairs(g, k)
        if any(p not in feas for p in requests):
            return None
    if k == 2 and not inst.has_precoloring() and len(requests) <= ie_subset_cap:
        coloring = extract_2coloring(g, requests, subset_cap=ie_subset_cap)
    else:
        coloring = find_coloring(inst, requests, inst.precoloring, node_budget=node_budget)
    if coloring is None:
        return None
    satisfied = verify_requests(g, coloring, requests, k)
    if satisfied != set(requests):
        raise AssertionError("solver returned a coloring the verifier rejects; bug")
    for e in range(g.m):
        c = inst.precoloring.get(e)
        if c is not None and coloring[e] != c:
            raise AssertionError("solver violated the precoloring; bug")
    return coloring
