"""Guided rainbow-walk search and coloring verification.

The search answers: is there a walk of length <= k between two vertices on
which every *colored* edge color appears at most once, the walk contains a
required set of colored "guide" edges, and the uncolored edges it uses are
pairwise distinct (so the walk can always be completed into a rainbow walk
by coloring its unset edges with fresh colors)?

The table is indexed by (vertex, used-color subset, length); color subsets
are k-bit masks.  For total colorings this is exactly a (vertex, mask,
length) dynamic program.  For partial colorings the state additionally
carries the set of uncolored edges already used: without it the table can
report walks that traverse one uncolored edge twice, and such a walk cannot
be completed into a rainbow walk.  The extra component has at most
C(m, k) values, so the search stays polynomial for fixed k.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Graph, PartialColoring, canonical_pair


@dataclass(frozen=True)
class Walk:
    """A walk as a vertex sequence with its derived edge-index sequence."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


def _make_walk(g: Graph, vertices: list[int]) -> Walk:
    edges = tuple(g.edge_id(vertices[i], vertices[i + 1]) for i in range(len(vertices) - 1))
    return Walk(vertices=tuple(vertices), edges=edges)


def find_guided_walk(
    g: Graph,
    c0: PartialColoring,
    pair: tuple[int, int],
    guide,
    k: int,
) -> Walk | None:
    """Find a guide-containing, rainbow-completable walk of length <= k.

    `guide` is a set of edge indices, all of which must lie in the domain of
    c0 and carry pairwise distinct colors (same-colored guides mean no such
    walk exists).  Returns None when no walk exists.  Deterministic: states
    are expanded in sorted order and the first qualifying end state in
    (length, color-mask, uncolored-set) order is reconstructed.
    """
    u, v = pair
    if u == v:
        raise ValueError("walk endpoints must differ")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"pair ({u}, {v}) out of range")
    guide = frozenset(guide)
    if len(guide) > k:
        raise ValueError(f"guide holds {len(guide)} edges, more than k={k}")
    for e in guide:
        if c0.get(e) is None:
            raise ValueError(f"guide edge {e} is not colored")

    guide_colors = [c0.get(e) for e in sorted(guide)]
    if len(set(guide_colors)) != len(guide_colors):
        return None
    guide_mask = 0
    for c in guide_colors:
        guide_mask |= 1 << (c - 1)

    # Prune every edge that shares a color with a guide edge, then restore
    # the guide edges themselves.  In the pruned graph a guide color appears
    # only on its guide edge, so "mask covers the guide colors" is exactly
    # "the walk contains all guide edges".
    blocked_colors = guide_mask
    allowed = [True] * g.m
    if blocked_colors:
        for e in range(g.m):
            c = c0.get(e)
            if c is not None and (1 << (c - 1)) & blocked_colors and e not in guide:
                allowed[e] = False

    # Layered BFS over states (vertex, colormask, used-uncolored-edges).
    start = (u, 0, frozenset())
    parents: dict[tuple, tuple | None] = {start: None}
    frontier = [start]
    accepted: list[tuple[int, tuple]] = []
    for length in range(1, k + 1):
        nxt = []
        for state in sorted(frontier, key=_state_key):
            x, mask, used = state
            for y, e in sorted(g.adjacency[x]):
                if not allowed[e]:
                    continue
                c = c0.get(e)
                if c is None:
                    if e in used:
                        continue
                    new = (y, mask, used | {e})
                else:
                    bit = 1 << (c - 1)
                    if mask & bit:
                        continue
                    new = (y, mask | bit, used)
                if new not in parents:
                    parents[new] = (state, e)
                    nxt.append(new)
                    if y == v and new[1] & guide_mask == guide_mask:
                        accepted.append((length, new))
        if accepted:
            break
        frontier = nxt
    if not accepted:
        return None
    accepted.sort(key=lambda t: (t[0],) + _state_key(t[1]))
    state = accepted[0][1]
    verts = [state[0]]
    while parents[state] is not None:
        prev, _ = parents[state]
        verts.append(prev[0])
        state = prev
    verts.reverse()
    return _make_walk(g, verts)


def _state_key(state):
    x, mask, used = state
    return (x, mask, tuple(sorted(used)))


def verify_requests(g: Graph, coloring, requests, k: int) -> set[tuple[int, int]]:
    """Subset of requests joined by a rainbow path of length <= k under coloring.

    With k colors a rainbow path has at most k edges, and every rainbow walk
    contains a rainbow path, so a guided-walk search with empty guide
    decides each request.  Pairs in different components are simply
    unsatisfied, never errors.
    """
    pc = _as_partial(g, coloring, k)
    satisfied: set[tuple[int, int]] = set()
    for u, v in requests:
        p = canonical_pair(u, v)
        if find_guided_walk(g, pc, p, frozenset(), k) is not None:
            satisfied.add(p)
    return satisfied


def is_rainbow_connected(g: Graph, coloring, k: int) -> bool:
    """True iff every anti-edge is satisfied (adjacent pairs always are)."""
    if g.n >= 300:
        return _is_rainbow_connected_matrix(g, coloring, k)
    pc = _as_partial(g, coloring, k)
    for pair in g.anti_edges():
        if find_guided_walk(g, pc, pair, frozenset(), k) is None:
            return False
    return True


def _as_partial(g: Graph, coloring, k: int) -> PartialColoring:
    if isinstance(coloring, PartialColoring):
        if not coloring.is_total():
            raise ValueError("verification needs a total coloring")
        return coloring
    return PartialColoring.total(list(coloring), k)


def _is_rainbow_connected_matrix(g: Graph, coloring, k: int) -> bool:
    """All-pairs check via boolean matrix products over color sequences.

    reach[mask] holds pairs joined by a walk whose edge colors are exactly
    the colors of `mask`, each used once; such a walk never repeats an edge,
    so it contains a rainbow path.  Exact for total colorings; used as a
    fast path on large graphs, the per-pair search being the reference.
    """
    import numpy as np

    colors = list(coloring)
    if len(colors) != g.m:
        raise ValueError("coloring length mismatch")
    n = g.n
    adj = [np.zeros((n, n), dtype=bool) for _ in range(k)]
    for e, (a, b) in enumerate(g.edges):
        c = colors[e]
        adj[c - 1][a, b] = True
        adj[c - 1][b, a] = True
    reach = np.eye(n, dtype=bool)
    layer: dict[int, "np.ndarray"] = {0: np.eye(n, dtype=bool)}
    for _ in range(k):
        nxt: dict[int, "np.ndarray"] = {}
        for mask, mat in layer.items():
            for c in range(k):
                bit = 1 << c
                if mask & bit:
                    continue
                prod = (mat.astype(np.float32) @ adj[c].astype(np.float32)) > 0
                key = mask | bit
                if key in nxt:
                    nxt[key] |= prod
                else:
                    nxt[key] = prod
        for mat in nxt.values():
            reach |= mat
        layer = nxt
    for u, v in g.anti_edges():
        if not reach[u, v]:
            return False
    return True
