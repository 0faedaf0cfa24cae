"""Graph, coloring, request, and disjoint-set primitives.

Vertices are dense 0-based integers.  Edges are canonical pairs (u, v) with
u < v; the identity of an edge is its index in insertion order after
canonicalization, and every edge coloring in this package is an array
indexed by edge index.  Colors are 1-based integers in 1..k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

INFINITY = math.inf


class GraphError(ValueError):
    """Invalid graph construction (self-loop, endpoint out of range, ...)."""


class FormatError(ValueError):
    """Malformed text input for one of the on-disk formats."""


class BudgetExceededError(RuntimeError):
    """A configured resource budget (enumeration size, restarts, ...) was hit."""


def canonical_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    adjacency[u] is a tuple of (neighbor, edge_index) pairs; it is symmetric
    by construction.  Instances are immutable and safe to share.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(compare=False, repr=False)
    edge_index: dict[tuple[int, int], int] = field(compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[canonical_pair(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_pair(u, v) in self.edge_index

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(v for v, _ in self.adjacency[u])

    def anti_edges(self):
        """Yield all non-adjacent vertex pairs (u, v), u < v."""
        for u in range(self.n):
            adj = {v for v, _ in self.adjacency[u]}
            for v in range(u + 1, self.n):
                if v not in adj:
                    yield (u, v)


def build_graph(n: int, edge_list) -> Graph:
    """Canonicalize and deduplicate edge_list into a Graph.

    Rejects self-loops and out-of-range endpoints.  Edge indices follow
    first occurrence order.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    edge_index: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int]] = []
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge endpoint out of range: ({u}, {v}) with n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        e = canonical_pair(u, v)
        if e not in edge_index:
            edge_index[e] = len(edges)
            edges.append(e)
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        adjacency[u].append((v, i))
        adjacency[v].append((u, i))
    return Graph(
        n=n,
        edges=tuple(edges),
        adjacency=tuple(tuple(a) for a in adjacency),
        edge_index=edge_index,
    )


def bfs_distances(g: Graph, source: int) -> list:
    """Unweighted shortest-path distances from source; INFINITY if unreachable."""
    if not 0 <= source < g.n:
        raise GraphError(f"source {source} out of range")
    dist = [INFINITY] * g.n
    dist[source] = 0
    queue = [source]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        dx = dist[x]
        for y, _ in g.adjacency[x]:
            if dist[y] is INFINITY or dist[y] > dx + 1:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def feasible_pairs(g: Graph, k: int) -> set[tuple[int, int]]:
    """All non-adjacent pairs at distance <= k.

    Only these pairs can ever be satisfied by a rainbow path when k colors
    are available, so request sets are normalized against this set.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    out: set[tuple[int, int]] = set()
    for u in range(g.n):
        dist = bfs_distances(g, u)
        adj = {v for v, _ in g.adjacency[u]}
        for v in range(u + 1, g.n):
            if v not in adj and dist[v] is not INFINITY and dist[v] <= k:
                out.add((u, v))
    return out


def greedy_proper_coloring(g: Graph) -> list[int]:
    """Proper vertex coloring with at most max_degree+1 colors, 1-based.

    Deterministic: vertices in index order, smallest free color first.
    """
    colors = [0] * g.n
    for u in range(g.n):
        used = {colors[v] for v, _ in g.adjacency[u] if colors[v]}
        c = 1
        while c in used:
            c += 1
        colors[u] = c
    return colors


class PartialColoring:
    """Per-edge value in 1..k or None (unset).  Single-owner mutable."""

    __slots__ = ("values", "k")

    def __init__(self, m: int, k: int, values=None):
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        self.k = k
        if values is None:
            self.values = [None] * m
        else:
            if len(values) != m:
                raise ValueError("values length mismatch")
            for c in values:
                if c is not None and not 1 <= c <= k:
                    raise ValueError(f"color {c} out of range 1..{k}")
            self.values = list(values)

    def __eq__(self, other):
        return (
            isinstance(other, PartialColoring)
            and self.k == other.k
            and self.values == other.values
        )

    def __len__(self):
        return len(self.values)

    def get(self, e: int):
        return self.values[e]

    def set(self, e: int, color: int) -> None:
        if not 1 <= color <= self.k:
            raise ValueError(f"color {color} out of range 1..{self.k}")
        self.values[e] = color

    def domain(self) -> list[int]:
        """Edge indices with a set value."""
        return [e for e, c in enumerate(self.values) if c is not None]

    def domain_size(self) -> int:
        return sum(1 for c in self.values if c is not None)

    def is_total(self) -> bool:
        return all(c is not None for c in self.values)

    def copy(self) -> "PartialColoring":
        return PartialColoring(len(self.values), self.k, self.values)

    def completed(self, fill: int = 1) -> list[int]:
        """Total coloring with every unset edge given `fill`."""
        return [fill if c is None else c for c in self.values]

    @classmethod
    def empty(cls, m: int, k: int) -> "PartialColoring":
        return cls(m, k)

    @classmethod
    def total(cls, colors, k: int) -> "PartialColoring":
        pc = cls(len(colors), k)
        for e, c in enumerate(colors):
            pc.set(e, c)
        return pc


@dataclass(frozen=True)
class Instance:
    """A (subset) rainbow coloring instance: graph + k + requests + precoloring.

    Requests that are edges are dropped at construction (they hold under
    every coloring).  The empty precoloring represents the plain subset
    variant; a nonempty one the extension variant.
    """

    graph: Graph
    k: int
    requests: frozenset[tuple[int, int]]
    precoloring: PartialColoring = field(compare=True)

    def has_precoloring(self) -> bool:
        return self.precoloring.domain_size() > 0


def make_instance(graph: Graph, k: int, requests, precoloring: PartialColoring | None = None) -> Instance:
    if k < 2:
        raise ValueError(f"color count must be >= 2, got {k}")
    norm: set[tuple[int, int]] = set()
    for u, v in requests:
        if not (0 <= u < graph.n and 0 <= v < graph.n) or u == v:
            raise ValueError(f"bad request pair ({u}, {v})")
        p = canonical_pair(u, v)
        if p not in graph.edge_index:
            norm.add(p)
    if precoloring is None:
        precoloring = PartialColoring.empty(graph.m, k)
    else:
        if len(precoloring) != graph.m or precoloring.k != k:
            raise ValueError("precoloring shape does not match graph/k")
    return Instance(graph=graph, k=k, requests=frozenset(norm), precoloring=precoloring)


class DisjointSets:
    """Union-find with path compression and union by rank."""

    __slots__ = ("parent", "rank", "n_classes")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.n_classes = n

    def find(self, x: int) -> int:
        root = x
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        self.n_classes -= 1
        return True

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)
