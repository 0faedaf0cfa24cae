"""Line-oriented text formats: instances, colorings, covers, bench manifests.

Vertices and colors are 1-based on the wire, 0-based/1-based internally as
in core.  Instance grammar:

    c <comment>
    p rbw <n> <m> <k>
    e <u> <v>
    r <u> <v>
    f <u> <v> <color>

Omitting every r-line means "all anti-edge pairs are requests" (the plain
rainbow coloring reading; pairs beyond distance k then force a NO).  An
explicitly empty request set is written as a single r-line duplicating an
edge, which the instance normalization drops; an edgeless graph with an
empty request set is therefore not expressible and is rejected.
"""

from __future__ import annotations

from .biclique import Biclique
from .core import (
    FormatError,
    Graph,
    Instance,
    PartialColoring,
    build_graph,
    make_instance,
)


def parse_instance(text: str) -> Instance:
    n = m = k = None
    edges: list[tuple[int, int]] = []
    edge_set: set[tuple[int, int]] = set()
    requests: list[tuple[int, int]] = []
    saw_r = False
    precolor: list[tuple[int, int, int]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise FormatError(f"line {ln}: duplicate p-line")
            if len(parts) != 5 or parts[1] != "rbw":
                raise FormatError(f"line {ln}: expected 'p rbw <n> <m> <k>'")
            n, m, k = (_int(parts[i], ln) for i in (2, 3, 4))
            if n < 0 or m < 0 or k < 2:
                raise FormatError(f"line {ln}: bad header values")
        elif tag in ("e", "r", "f"):
            if n is None:
                raise FormatError(f"line {ln}: '{tag}' before the p-line")
            u, v = _vertex(parts[1], n, ln), _vertex(parts[2], n, ln)
            if tag == "e":
                if len(parts) != 3:
                    raise FormatError(f"line {ln}: expected 'e <u> <v>'")
                pair = (min(u, v), max(u, v))
                if pair in edge_set:
                    raise FormatError(f"line {ln}: duplicate edge {u + 1} {v + 1}")
                if u == v:
                    raise FormatError(f"line {ln}: self-loop")
                edge_set.add(pair)
                edges.append(pair)
            elif tag == "r":
                if len(parts) != 3:
                    raise FormatError(f"line {ln}: expected 'r <u> <v>'")
                saw_r = True
                requests.append((u, v))
            else:
                if len(parts) != 4:
                    raise FormatError(f"line {ln}: expected 'f <u> <v> <color>'")
                color = _int(parts[3], ln)
                precolor.append((u, v, color))
        else:
            raise FormatError(f"line {ln}: unknown record '{tag}'")
    if n is None:
        raise FormatError("missing p-line")
    if len(edges) != m:
        raise FormatError(f"header declares m={m} but found {len(edges)} e-lines")
    graph = build_graph(n, edges)
    pc = PartialColoring.empty(graph.m, k)
    for u, v, color in precolor:
        if not graph.has_edge(u, v):
            raise FormatError(f"f-line pair {u + 1} {v + 1} is not an edge")
        if not 1 <= color <= k:
            raise FormatError(f"precoloring color {color} out of range 1..{k}")
        pc.set(graph.edge_id(u, v), color)
    if not saw_r:
        requests = list(graph.anti_edges())
    return make_instance(graph, k, requests, pc)


def _int(tok: str, ln: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {ln}: expected integer, got '{tok}'") from None


def _vertex(tok: str, n: int, ln: int) -> int:
    v = _int(tok, ln) - 1
    if not 0 <= v < n:
        raise FormatError(f"line {ln}: vertex {tok} out of range 1..{n}")
    return v


def serialize_instance(inst: Instance, comment: str | None = None) -> str:
    g = inst.graph
    lines = []
    if comment:
        lines.append(f"c {comment}")
    lines.append(f"p rbw {g.n} {g.m} {inst.k}")
    for u, v in g.edges:
        lines.append(f"e {u + 1} {v + 1}")
    if inst.requests:
        for u, v in sorted(inst.requests):
            lines.append(f"r {u + 1} {v + 1}")
    else:
        if g.m == 0:
            raise FormatError("an edgeless instance with no requests is not expressible")
        u, v = g.edges[0]
        lines.append(f"r {u + 1} {v + 1}")
    for e in inst.precoloring.domain():
        u, v = g.edges[e]
        lines.append(f"f {u + 1} {v + 1} {inst.precoloring.get(e)}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, g: Graph, k: int):
    """Edge coloring file: '<u> <v> <color>' per line, or the token NULL."""
    stripped = text.strip()
    if stripped == "NULL":
        return None
    values: list = [None] * g.m
    for ln, raw in enumerate(stripped.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"line {ln}: expected '<u> <v> <color>'")
        u, v = _vertex(parts[0], g.n, ln), _vertex(parts[1], g.n, ln)
        color = _int(parts[2], ln)
        if not g.has_edge(u, v):
            raise FormatError(f"line {ln}: pair {parts[0]} {parts[1]} is not an edge")
        if not 1 <= color <= k:
            raise FormatError(f"line {ln}: color {color} out of range 1..{k}")
        e = g.edge_id(u, v)
        if values[e] is not None:
            raise FormatError(f"line {ln}: edge colored twice")
        values[e] = color
    missing = [e for e, c in enumerate(values) if c is None]
    if missing:
        u, v = g.edges[missing[0]]
        raise FormatError(f"edge {u + 1} {v + 1} has no color")
    return [int(c) for c in values]


def serialize_coloring(coloring, g: Graph) -> str:
    if coloring is None:
        return "NULL\n"
    lines = [f"{u + 1} {v + 1} {coloring[e]}" for e, (u, v) in enumerate(g.edges)]
    return "\n".join(lines) + "\n"


def parse_cover(text: str) -> list[Biclique]:
    """One biclique per line: 'L: <v...> R: <v...>' with 1-based vertices."""
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if not line.startswith("L:") or " R:" not in line:
            raise FormatError(f"line {ln}: expected 'L: ... R: ...'")
        lpart, rpart = line[2:].split(" R:", 1)
        left = tuple(sorted(int(t) - 1 for t in lpart.split()))
        right = tuple(sorted(int(t) - 1 for t in rpart.split()))
        out.append(Biclique(left=left, right=right))
    return out


def serialize_cover(cover) -> str:
    lines = []
    for bic in cover:
        l = " ".join(str(v + 1) for v in bic.left)
        r = " ".join(str(v + 1) for v in bic.right)
        lines.append(f"L: {l} R: {r}")
    return "\n".join(lines) + "\n"


def parse_manifest(text: str) -> list[tuple[str, str | None]]:
    """'<instance path> [expect YES|NO]' per line."""
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            out.append((parts[0], None))
        elif len(parts) == 3 and parts[1] == "expect" and parts[2] in ("YES", "NO"):
            out.append((parts[0], parts[2]))
        else:
            raise FormatError(f"line {ln}: expected '<path> [expect YES|NO]'")
    return out
