"""Chain stages after the SAT gadget: color-count lifting, precoloring
elimination, and request elimination.

Each stage returns (output instance or graph, auxiliary colorings, trace);
traces support lifting a witness outward (source solution -> target
solution) and restricting a target solution inward.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..biclique import Biclique, cover_complement_colored
from ..core import Graph, Instance, PartialColoring, build_graph, canonical_pair, make_instance
from .satgadget import precoloring_conflict_graph


def _check_vertex_coloring(n: int, pairs, coloring, what: str) -> int:
    if len(coloring) != n:
        raise ValueError(f"{what}: length mismatch")
    for u, v in pairs:
        if coloring[u] == coloring[v]:
            raise ValueError(f"{what}: not proper on pair ({u}, {v})")
    return max(coloring, default=0)


def _check_cg_coloring(inst: Instance, cg_coloring: dict[int, int]) -> int:
    dom = inst.precoloring.domain()
    if set(cg_coloring) != set(dom):
        raise ValueError("conflict-graph coloring must cover exactly the precolored edges")
    cg = precoloring_conflict_graph(inst)
    for a, b in cg.edges:
        if cg_coloring[dom[a]] == cg_coloring[dom[b]]:
            raise ValueError("conflict-graph coloring is not proper")
    return max(cg_coloring.values(), default=0)


def _mod1(x: int, y: int) -> int:
    """1-based wraparound: values in 1..y."""
    return 1 + (x - 1) % y


# ---------------------------------------------------------------------------
# 2 colors -> k colors


@dataclass
class LiftColorsTrace:
    k: int
    inner_n: int
    inner_m: int
    gadget: dict[int, tuple[int, ...]]  # v -> (v11, v12, v2, ..., v_{k-1})
    gadget_precolor: dict[int, int] = field(default_factory=dict)  # outer edge -> color

    def lift_witness(self, inner_coloring) -> list[int]:
        out = list(inner_coloring)
        for e in sorted(self.gadget_precolor):
            if e != len(out):
                raise AssertionError("gadget edges are not contiguous; bug")
            out.append(self.gadget_precolor[e])
        return out

    def restrict_witness(self, outer_coloring) -> list[int]:
        return list(outer_coloring[: self.inner_m])


def lift_colors(
    inst2: Instance,
    k: int,
    vcolor_s,
    vcolor_es,
    cg_coloring: dict[int, int],
):
    """Turn a 2-color extension instance into a k-color one (k >= 3).

    Every vertex v grows a pendant gadget precolored 1,2,3,3,4,...,k whose
    tip sits at distance k from each neighbor of v through exactly two
    paths, one per branch; the fresh request {tip(u), v} per edge uv then
    pins c(uv) to the branch colors 1/2.  Outputs the instance plus a
    (p+1)-coloring of the new request graph and an extended conflict-graph
    coloring.
    """
    if inst2.k != 2:
        raise ValueError("input must be a 2-color instance")
    if k < 3:
        raise ValueError("target color count must be >= 3")
    g = inst2.graph
    p = _check_vertex_coloring(g.n, inst2.requests, vcolor_s, "request-graph coloring")
    q = _check_vertex_coloring(
        g.n, list(g.edges) + sorted(inst2.requests), vcolor_es, "edge+request coloring"
    )
    ell = _check_cg_coloring(inst2, cg_coloring)

    n, m = g.n, g.m
    gadget: dict[int, tuple[int, ...]] = {}
    nxt = n
    for v in range(n):
        ids = tuple(range(nxt, nxt + k))  # v11, v12, v2, ..., v_{k-1}
        gadget[v] = ids
        nxt += k
    edges = list(g.edges)
    new_pre: list[tuple[int, int]] = []  # (edge index, color)
    cg_out = dict(cg_coloring)
    for v in range(n):
        ids = gadget[v]
        v11, v12 = ids[0], ids[1]
        chain = ids[2:]  # v2 ... v_{k-1}
        def add(a, b, color, cg_color):
            idx = len(edges)
            edges.append((a, b))
            new_pre.append((idx, color))
            cg_out[idx] = cg_color
        h = vcolor_es[v]
        add(v, v11, 1, ell + 2 * h - 1)
        add(v11, chain[0], 3, ell + 2 * q + 1)
        add(v, v12, 2, ell + 2 * h)
        add(v12, chain[0], 3, ell + 2 * q + 2)
        for i in range(2, k - 1):  # edge v_i v_{i+1}, precolor i+2
            add(chain[i - 2], chain[i - 1], i + 2, ell + 2 * q + 3 + (i - 2) % 3)

    requests = set(inst2.requests)
    for u, v in g.edges:  # u < v by canonicalization
        requests.add(canonical_pair(gadget[u][-1], v))

    pc = PartialColoring.empty(len(edges), k)
    for e in range(m):
        c = inst2.precoloring.get(e)
        if c is not None:
            pc.set(e, c)
    for e, c in new_pre:
        pc.set(e, c)
    out_graph = build_graph(nxt, edges)
    if out_graph.m != len(edges):
        raise AssertionError("gadget edge collision; bug")
    inst = make_instance(out_graph, k, requests, pc)

    if len(inst.requests) != len(inst2.requests) + m:
        raise AssertionError("request count formula violated; bug")
    if out_graph.n != n + k * n:
        raise AssertionError("vertex count formula violated; bug")
    if out_graph.max_degree() > max(g.max_degree(), 1) + 2:
        raise AssertionError("degree growth bound violated; bug")

    vcolor_s_out = list(vcolor_s) + [p + 1] * (k * n)
    _check_vertex_coloring(out_graph.n, inst.requests, vcolor_s_out, "lifted request coloring")
    _check_cg_coloring(inst, cg_out)

    trace = LiftColorsTrace(
        k=k,
        inner_n=n,
        inner_m=m,
        gadget=gadget,
        gadget_precolor={e: c for e, c in new_pre},
    )
    return inst, vcolor_s_out, cg_out, trace


# ---------------------------------------------------------------------------
# extension -> plain subset (precoloring elimination)


@dataclass
class DropPrecoloringTrace:
    k: int
    inner_n: int
    inner_m: int
    ell_final: int
    path_vertices: tuple[int, ...]  # ids of p_1 .. p_{3k^2 l'}
    path_edges: tuple[int, ...]     # edge ids of p_i p_{i+1}
    anchors: dict[int, int]         # inner precolored edge -> anchor edge id
    inner_precolor: dict[int, int]  # inner edge -> required color

    def lift_witness(self, inner_coloring) -> list[int]:
        k = self.k
        out = list(inner_coloring)
        total = self.inner_m + len(self.path_edges) + len(self.anchors)
        out.extend([0] * (total - len(out)))
        for i, e in enumerate(self.path_edges, start=1):
            out[e] = _mod1(i, k)
        for inner_e, anchor_e in self.anchors.items():
            out[anchor_e] = _mod1(self.inner_precolor[inner_e] - 1, k)
        return out

    def restrict_witness(self, outer_coloring) -> list[int]:
        k = self.k
        if self.path_edges:
            perm: dict[int, int] = {}
            for i in range(1, k + 1):
                observed = outer_coloring[self.path_edges[i - 1]]
                perm[observed] = _mod1(i, k)
            if len(perm) != k:
                raise ValueError("first path block does not carry a color permutation")
            mapped = [perm[c] for c in outer_coloring]
        else:
            mapped = list(outer_coloring)
        inner = mapped[: self.inner_m]
        for e, c in self.inner_precolor.items():
            if inner[e] != c:
                raise ValueError("restriction does not extend the precoloring")
        return inner


def drop_precoloring(inst: Instance, cg_coloring: dict[int, int], vcolor_s):
    """Replace the precoloring by a calibrated path (k >= 3).

    A long path carries sliding-window requests forcing a periodic color
    pattern; every precolored edge uv is tethered to a path slot determined
    by its conflict-graph class and color, with two requests that force
    c(uv) to equal its precolor up to the global pattern permutation.
    """
    if inst.k < 3:
        raise ValueError("precoloring elimination needs k >= 3")
    k = inst.k
    g = inst.graph
    p = _check_vertex_coloring(g.n, inst.requests, vcolor_s, "request-graph coloring")
    ell = _check_cg_coloring(inst, cg_coloring)
    dom = inst.precoloring.domain()

    # Rebalance classes to size <= ceil(|dom|/ell), appending new colors.
    f = dict(cg_coloring)
    ell_final = ell
    if dom:
        cap = -(-len(dom) // ell)
        by_color: dict[int, list[int]] = {}
        for e in dom:
            by_color.setdefault(f[e], []).append(e)
        for c in sorted(by_color):
            members = sorted(by_color[c])
            for start in range(cap, len(members), cap):
                ell_final += 1
                for e in members[start : start + cap]:
                    f[e] = ell_final
        if ell_final > 2 * ell:
            raise AssertionError("class rebalancing exceeded twice the color count; bug")

    n, m = g.n, g.m
    path_len = 3 * k * k * ell_final
    path_ids = tuple(range(n, n + path_len))  # p_1 .. p_{path_len}

    def pid(i: int) -> int:  # 1-based path index -> vertex id
        return path_ids[i - 1]

    def slot(alpha: int, beta: int, gamma: int) -> int:
        return (alpha - 1) * 3 * k * k + (beta - 1) * 3 * k + gamma

    edges = list(g.edges)
    path_edges = []
    for i in range(1, path_len):
        path_edges.append(len(edges))
        edges.append((pid(i), pid(i + 1)))
    anchors: dict[int, int] = {}
    inner_pre: dict[int, int] = {}
    for e in dom:
        u, v = g.edges[e]  # u < v
        c0 = inst.precoloring.get(e)
        inner_pre[e] = c0
        prj = slot(f[e], c0, c0)
        anchors[e] = len(edges)
        edges.append((pid(prj + k - 1), u))

    requests = set(inst.requests)
    for i in range(1, path_len - k + 1):
        requests.add(canonical_pair(pid(i), pid(i + k)))
    for e in dom:
        u, v = g.edges[e]
        prj = slot(f[e], inner_pre[e], inner_pre[e])
        requests.add(canonical_pair(pid(prj), u))
        requests.add(canonical_pair(pid(prj + 1), v))

    out_graph = build_graph(n + path_len, edges)
    if out_graph.m != len(edges):
        raise AssertionError("anchor edge collision; bug")
    out_inst = make_instance(out_graph, k, requests)
    window = max(0, path_len - k) if path_len else 0
    if len(out_inst.requests) != len(inst.requests) + window + 2 * len(dom):
        raise AssertionError("request count formula violated; bug")
    if out_graph.n - n != 3 * k * k * ell_final:
        raise AssertionError("vertex count formula violated; bug")

    vcolor_out = list(vcolor_s)
    for i in range(1, path_len + 1):
        vcolor_out.append(p + 1 + ((i - 1) // k) % 2)
    _check_vertex_coloring(out_graph.n, out_inst.requests, vcolor_out, "output request coloring")

    trace = DropPrecoloringTrace(
        k=k,
        inner_n=n,
        inner_m=m,
        ell_final=ell_final,
        path_vertices=path_ids,
        path_edges=tuple(path_edges),
        anchors=anchors,
        inner_precolor=inner_pre,
    )
    return out_inst, vcolor_out, trace


# ---------------------------------------------------------------------------
# subset -> plain rainbow, 2 colors


@dataclass
class DropRequests2Trace:
    inner_n: int
    inner_m: int
    cover: tuple[Biclique, ...]
    w_ids: tuple[int, ...]
    t_ids: tuple[int, int, int]
    added_colors: dict[int, int]  # outer edge -> witness color

    def lift_witness(self, inner_coloring) -> list[int]:
        out = list(inner_coloring)
        out.extend([0] * len(self.added_colors))
        for e, c in self.added_colors.items():
            out[e] = c
        return out

    def restrict_witness(self, outer_coloring) -> list[int]:
        return list(outer_coloring[: self.inner_m])


def drop_requests_2(inst: Instance, vcolor_s, *, deterministic: bool = True, seed: int | None = None):
    """Pure rainbow 2-coloring instance equivalent to a subset instance.

    Every non-requested pair is covered by a biclique of the request
    graph's complement and wired through that biclique's hub vertex; a
    3-vertex clique ties the hubs and the original vertices together.  No
    biclique contains both endpoints of a request, so requests can only be
    satisfied inside the original graph.
    """
    if inst.k != 2:
        raise ValueError("this elimination is the 2-color variant")
    if inst.has_precoloring():
        raise ValueError("input must not carry a precoloring")
    g = inst.graph
    _check_vertex_coloring(g.n, inst.requests, vcolor_s, "request-graph coloring")
    gs = build_graph(g.n, sorted(inst.requests))
    cover = cover_complement_colored(gs, vcolor_s, deterministic=deterministic, seed=seed)
    n, q = g.n, len(cover)
    w_ids = tuple(range(n, n + q))
    t1, t2, t3 = n + q, n + q + 1, n + q + 2

    edges = list(g.edges)
    added: dict[int, int] = {}

    def add(a, b, color):
        added[len(edges)] = color
        edges.append((a, b))

    for i in range(q):
        for j in range(i + 1, q):
            add(w_ids[i], w_ids[j], 1)
    add(t1, t2, 1)
    add(t1, t3, 1)
    add(t2, t3, 1)
    for w in w_ids:
        add(t2, w, 2)
    for v in range(n):
        add(t3, v, 2)
    for w in w_ids:
        add(t3, w, 1)
    for i, bic in enumerate(cover):
        for u in bic.left:
            add(w_ids[i], u, 1)
        for v in bic.right:
            add(w_ids[i], v, 2)

    out_graph = build_graph(n + q + 3, edges)
    if out_graph.m != len(edges):
        raise AssertionError("request-elimination edge collision; bug")
    trace = DropRequests2Trace(
        inner_n=n,
        inner_m=g.m,
        cover=tuple(cover),
        w_ids=w_ids,
        t_ids=(t1, t2, t3),
        added_colors=added,
    )
    return out_graph, trace


# ---------------------------------------------------------------------------
# subset -> plain rainbow, k >= 3


@dataclass
class DropRequestsKTrace:
    k: int
    inner_n: int          # after the isolated-vertex guarantee
    inner_m: int
    original_n: int       # before it
    isolated_added: bool
    cover: tuple[Biclique, ...]
    cycle_v: tuple[tuple[int, ...], ...]  # per biclique, v_{i,0..k-2}
    cycle_w: tuple[tuple[int, ...], ...]  # per biclique, w_{i,0..k-2} (ends shared)
    hub_a: tuple[int, ...]
    hub_b: tuple[int, ...]
    added_colors: dict[int, int]

    def lift_witness(self, inner_coloring) -> list[int]:
        out = list(inner_coloring)
        out.extend([0] * len(self.added_colors))
        for e, c in self.added_colors.items():
            out[e] = c
        return out

    def restrict_witness(self, outer_coloring) -> list[int]:
        return list(outer_coloring[: self.inner_m])


def drop_requests_k(inst: Instance, vcolor_s, *, deterministic: bool = True, seed: int | None = None):
    """Pure rainbow k-coloring instance (k >= 3) equivalent to a subset one.

    Each complement biclique gets a two-sided cycle providing the length-k
    paths between its left and right vertices; hub vertices indexed by the
    bits of the biclique number connect different cycles.  An isolated
    vertex is first added if missing so every vertex joins some biclique.
    """
    if inst.k < 3:
        raise ValueError("this elimination is the k >= 3 variant")
    if inst.has_precoloring():
        raise ValueError("input must not carry a precoloring")
    k = inst.k
    g0 = inst.graph
    original_n = g0.n
    isolated_added = all(g0.degree(v) > 0 for v in range(g0.n)) and g0.n > 0
    if g0.n == 0:
        isolated_added = True
    if isolated_added:
        g = build_graph(g0.n + 1, g0.edges)
        vcolor = list(vcolor_s) + [1]
    else:
        g = g0
        vcolor = list(vcolor_s)
    _check_vertex_coloring(g.n, inst.requests, vcolor, "request-graph coloring")

    gs = build_graph(g.n, sorted(inst.requests))
    cover = cover_complement_colored(gs, vcolor, deterministic=deterministic, seed=seed)
    q = len(cover)
    nbits = (q - 1).bit_length() if q >= 1 else 0

    nxt = g.n
    cycle_v: list[tuple[int, ...]] = []
    cycle_w: list[tuple[int, ...]] = []
    for _ in range(q):
        v_ids = tuple(range(nxt, nxt + (k - 1)))  # v_0 .. v_{k-2}
        nxt += k - 1
        w_mid = tuple(range(nxt, nxt + (k - 3)))  # w_1 .. w_{k-3}
        nxt += k - 3
        w_ids = (v_ids[0],) + w_mid + (v_ids[-1],)  # w_0 .. w_{k-2}
        cycle_v.append(v_ids)
        cycle_w.append(w_ids)
    hub_a = tuple(range(nxt, nxt + nbits))
    nxt += nbits
    hub_b = tuple(range(nxt, nxt + nbits))
    nxt += nbits

    edges = list(g.edges)
    added: dict[int, int] = {}
    edge_seen: dict[tuple[int, int], int] = {}

    def add(a, b, color):
        pair = canonical_pair(a, b)
        prev = edge_seen.get(pair)
        if prev is not None:
            if added[prev] != color:
                raise AssertionError("conflicting witness colors on one edge; bug")
            return
        edge_seen[pair] = len(edges)
        added[len(edges)] = color
        edges.append(pair)

    def theta(t: int, i: int) -> int:
        return (i >> (t - 1)) & 1

    portals: list[dict[int, tuple[int, ...]]] = []
    for i in range(1, q + 1):
        v_ids, w_ids = cycle_v[i - 1], cycle_w[i - 1]
        for j in range(k - 2):
            add(v_ids[j], v_ids[j + 1], j + 2)
            add(w_ids[j], w_ids[j + 1], j + 2)
        bic = cover[i - 1]
        for u in bic.left:
            add(u, v_ids[0], 1)
        for v in bic.right:
            add(v, v_ids[-1], k)
        if k % 2 == 1:
            ps = {v_ids[(k - 3) // 2], v_ids[(k - 1) // 2], w_ids[(k - 3) // 2], w_ids[(k - 1) // 2]}
            portals.append({0: tuple(sorted(ps)), 1: tuple(sorted(ps))})
        else:
            one = {v_ids[(k - 2) // 2], w_ids[(k - 2) // 2]}
            zero = {v_ids[(k - 4) // 2], v_ids[k // 2], w_ids[(k - 4) // 2], w_ids[k // 2]}
            portals.append({0: tuple(sorted(zero)), 1: tuple(sorted(one))})

    mid_color = (k + 1) // 2 if k % 2 == 1 else k // 2
    for t in range(1, nbits + 1):
        for i in range(1, q + 1):
            bit = theta(t, i)
            ps = portals[i - 1][bit]
            a_color = mid_color if bit == 0 else 1
            b_color = mid_color if bit == 0 else k
            for x in ps:
                add(hub_a[t - 1], x, a_color)
                add(hub_b[t - 1], x, b_color)
    hubs = list(hub_a) + list(hub_b)
    for i in range(len(hubs)):
        for j in range(i + 1, len(hubs)):
            add(hubs[i], hubs[j], k)

    out_graph = build_graph(nxt, edges)
    if out_graph.m != len(edges):
        raise AssertionError("request-elimination edge collision; bug")
    if out_graph.n - g.n != 2 * (k - 2) * q + 2 * nbits:
        raise AssertionError("added-vertex count formula violated; bug")
    trace = DropRequestsKTrace(
        k=k,
        inner_n=g.n,
        inner_m=g.m,
        original_n=original_n,
        isolated_added=isolated_added,
        cover=tuple(cover),
        cycle_v=tuple(cycle_v),
        cycle_w=tuple(cycle_w),
        hub_a=hub_a,
        hub_b=hub_b,
        added_colors=added,
    )
    return out_graph, trace
