"""Maximum (subset) rainbow coloring: approximation, kernel, FPT driver.

The approximation fixes one path per request and colors edges one at a
time by the method of conditional expectation; a path of length l survives
with probability falling(k, l)/k^l >= k!/k^k under a uniform random
coloring, so the returned coloring always leaves at least ceil(k!/k^k * |S|)
plan paths rainbow.  All threshold comparisons are exact integer
arithmetic; k is capped at 8 (k^k already dwarfs any practical budget).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import (
    BudgetExceededError,
    Graph,
    Instance,
    build_graph,
    bfs_distances,
    canonical_pair,
    feasible_pairs,
    make_instance,
    INFINITY,
)
from .solvers import extract_2coloring, solve_subset_rainbow
from .verify import verify_requests

MAX_K = 8
DEFAULT_SUBSET_ENUM_CAP = 2_000_000

PathPlan = dict[tuple[int, int], tuple[int, ...]]


def _check_k(k: int) -> None:
    if not 2 <= k <= MAX_K:
        raise ValueError(f"supported color counts are 2..{MAX_K}, got {k}")


def choose_paths(g: Graph, requests, k: int) -> PathPlan:
    """One shortest path per request, lexicographically smallest vertex sequence."""
    plan: PathPlan = {}
    for u, v in sorted(canonical_pair(a, b) for a, b in requests):
        dist_v = bfs_distances(g, v)
        if dist_v[u] is INFINITY or dist_v[u] > k:
            raise ValueError(f"request ({u}, {v}) is infeasible for k={k}")
        path = [u]
        x = u
        while x != v:
            x = min(y for y, _ in g.adjacency[x] if dist_v[y] == dist_v[x] - 1)
            path.append(x)
        plan[(u, v)] = tuple(path)
    return plan


def _path_edge_ids(g: Graph, path: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(g.edge_id(path[i], path[i + 1]) for i in range(len(path) - 1))


def _survival_numerator(k: int, fixed_colors: list[int], free: int, scale_pow: int) -> int:
    """P(path rainbow | fixed colors) * k^(free + scale_pow), as an integer.

    Zero when the fixed colors already repeat; otherwise the remaining free
    edges must take distinct colors outside the used set, a falling
    factorial over k^free.
    """
    if len(set(fixed_colors)) != len(fixed_colors):
        return 0
    used = len(fixed_colors)
    num = 1
    for i in range(free):
        num *= k - used - i
    if num < 0:
        num = 0
    return num * k ** scale_pow


def derandomized_approx(g: Graph, requests, k: int):
    """Total k-coloring leaving >= ceil(k!/k^k * |S|) plan paths rainbow.

    Edges are fixed in ascending index order to the color maximizing the
    exact conditional expectation of surviving plan paths (ties: smallest
    color).  The expectation never decreases, so the probabilistic bound
    k!/k^k per path is preserved at the end, where it becomes a count.
    """
    _check_k(k)
    plan = choose_paths(g, requests, k)
    path_edges = {p: _path_edge_ids(g, path) for p, path in plan.items()}
    edge_paths: dict[int, list[tuple[int, int]]] = {}
    for p, eids in path_edges.items():
        for e in eids:
            edge_paths.setdefault(e, []).append(p)

    colors: list = [None] * g.m
    for e in range(g.m):
        touched = edge_paths.get(e)
        if not touched:
            colors[e] = 1
            continue
        best_color, best_num = 1, -1
        for c in range(1, k + 1):
            colors[e] = c
            num = 0
            for p in touched:
                eids = path_edges[p]
                fixed = [colors[x] for x in eids if colors[x] is not None]
                free = len(eids) - len(fixed)
                num += _survival_numerator(k, fixed, free, k - free)
            if num > best_num:
                best_num, best_color = num, c
        colors[e] = best_color
    total = [c if c is not None else 1 for c in colors]

    rainbow = _rainbow_plan_count(total, path_edges)
    need = -((-math.factorial(k) * len(plan)) // k ** k)  # ceil(k!/k^k * |S|)
    if rainbow < need:
        raise AssertionError("conditional expectation bound violated; bug")
    return total


def _rainbow_plan_count(colors, path_edges) -> int:
    count = 0
    for eids in path_edges.values():
        cs = [colors[e] for e in eids]
        if len(set(cs)) == len(cs):
            count += 1
    return count


@dataclass(frozen=True)
class KernelResult:
    """Either an immediate YES or an equivalent instance with O(q) vertices."""

    verdict: str  # "yes-immediate" | "reduced"
    graph: Graph | None
    q: int
    kept_vertices: tuple[int, ...]  # original labels of the kernel's vertices


def _threshold_yes(k: int, q: int, n_feasible: int) -> bool:
    # q <= (k!/k^k) * |feasible anti-edges|, compared exactly in integers.
    return q * k ** k <= math.factorial(k) * n_feasible


def kernelize(g: Graph, k: int, q: int) -> KernelResult:
    """Shrink a maximum rainbow coloring instance to O(q) vertices.

    Answers YES outright when q is under the approximation guarantee.
    Otherwise repeatedly removes any connected component whose count of
    vertices-on-no-feasible-anti-edge is at least its count of internal
    feasible anti-edges: each such vertex is adjacent to the whole
    component, so all those anti-edges are satisfiable by edge-disjoint
    2-paths, and q drops by their number.
    """
    _check_k(k)
    if q < 1:
        raise ValueError(f"target count must be >= 1, got {q}")
    kept = list(range(g.n))
    edges = list(g.edges)
    while True:
        sub = build_graph(len(kept), edges)
        feas = feasible_pairs(sub, k)
        if _threshold_yes(k, q, len(feas)):
            return KernelResult("yes-immediate", None, 0, ())
        on_feasible = set()
        for u, v in feas:
            on_feasible.add(u)
            on_feasible.add(v)
        components = _components(sub)
        removed = None
        for comp in components:
            cset = set(comp)
            inside = sum(1 for u, v in feas if u in cset and v in cset)
            outside_count = sum(1 for x in comp if x not in on_feasible)
            if outside_count >= inside:
                removed = cset
                q -= min(q, inside)
                break
        if removed is None:
            bound = 3 * q * k ** k // math.factorial(k)
            if len(kept) > bound:
                raise AssertionError("kernel exceeds its proven vertex bound; bug")
            return KernelResult("reduced", sub, q, tuple(kept))
        if q <= 0:
            return KernelResult("yes-immediate", None, 0, ())
        remap: dict[int, int] = {}
        new_kept = []
        for i in range(len(kept)):
            if i not in removed:
                remap[i] = len(new_kept)
                new_kept.append(kept[i])
        edges = [(remap[u], remap[v]) for u, v in edges if u not in removed and v not in removed]
        kept = new_kept


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        head = 0
        while head < len(comp):
            x = comp[head]
            head += 1
            for y, _ in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
        comps.append(comp)
    return comps


@dataclass(frozen=True)
class MaxSolveResult:
    yes: bool
    coloring: tuple[int, ...] | None


def _subset_worker(payload):
    n, edges, k, subsets, node_budget = payload
    g = build_graph(n, edges)
    for idx, subset in subsets:
        if k == 2:
            coloring = extract_2coloring(g, subset)
        else:
            inst = make_instance(g, k, subset)
            coloring = solve_subset_rainbow(inst, node_budget=node_budget)
        if coloring is not None:
            return (idx, coloring)
    return None


def solve_max_rainbow(
    g: Graph,
    k: int,
    q: int,
    *,
    subset_enum_cap: int = DEFAULT_SUBSET_ENUM_CAP,
    node_budget: int | None = None,
    workers: int = 1,
) -> MaxSolveResult:
    """YES iff some k-coloring satisfies at least q feasible anti-edges.

    Below the approximation threshold the answer is YES with the
    derandomized coloring as witness.  Above it the feasible anti-edge set
    is small, so all q-subsets are tried with the subset solvers (the
    2-color route uses the inclusion-exclusion extractor).
    """
    _check_k(k)
    if q < 0:
        raise ValueError(f"target count must be >= 0, got {q}")
    if q == 0:
        return MaxSolveResult(True, tuple([1] * g.m))
    feas = sorted(feasible_pairs(g, k))
    if _threshold_yes(k, q, len(feas)):
        coloring = derandomized_approx(g, feas, k)
        sat = verify_requests(g, coloring, feas, k)
        if len(sat) < q:
            raise AssertionError("approximation witness under target; bug")
        return MaxSolveResult(True, tuple(coloring))
    if q > len(feas):
        return MaxSolveResult(False, None)
    n_subsets = math.comb(len(feas), q)
    if n_subsets > subset_enum_cap:
        raise BudgetExceededError(
            f"C({len(feas)}, {q}) = {n_subsets} subsets exceeds cap {subset_enum_cap}"
        )
    if workers > 1:
        import multiprocessing

        indexed = list(enumerate(itertools.combinations(feas, q)))
        chunks = [indexed[i::workers] for i in range(workers)]
        payloads = [(g.n, list(g.edges), k, ch, node_budget) for ch in chunks if ch]
        with multiprocessing.get_context("fork").Pool(len(payloads)) as pool:
            hits = [h for h in pool.map(_subset_worker, payloads) if h is not None]
        if hits:
            _, coloring = min(hits)
            return MaxSolveResult(True, tuple(coloring))
        return MaxSolveResult(False, None)
    for subset in itertools.combinations(feas, q):
        if k == 2:
            coloring = extract_2coloring(g, subset)
        else:
            inst = make_instance(g, k, subset)
            coloring = solve_subset_rainbow(inst, node_budget=node_budget)
        if coloring is not None:
            return MaxSolveResult(True, tuple(coloring))
    return MaxSolveResult(False, None)
