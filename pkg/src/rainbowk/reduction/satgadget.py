"""Compilation of a normalized 3-CNF into a subset rainbow 2-coloring
extension instance with O(n^(2/3)) vertices and O(n) edges.

The graph has a variable part (a middle vertex set plus layered
upper/lower rows; every variable becomes a 2-edge path whose endpoints
form a request, so the path's two colors are complementary and encode the
variable's value) and a clause part (clusters of a/b/c rows; the edge
from a cluster's a-vertex to one of the three b-vertices of a clause
encodes which literal satisfies the clause, pinned by pre-colored b-c
edges).  Cross edges tie literal choices to variable values.  Conflict
graphs over variables, clauses, and clauses-within-clusters are properly
colored to pack everything into few shared vertices without interference.

Build invariants asserted here:

- same-clause variables and same-layer variables map to distinct middle
  vertices;
- each variable's request has exactly one 2-edge path, and these paths are
  pairwise edge-disjoint;
- each clause's a-c request has exactly three 2-edge paths, through its
  three b-vertices;
- every cross edge is created exactly once;
- per-vertex-kind degree caps in both the graph and the request graph;
- the emitted vertex 4-coloring and conflict-graph coloring are proper.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..cnf import CnfFormula
from ..core import Graph, Instance, PartialColoring, build_graph, canonical_pair, make_instance

COLOR_T = 1
COLOR_F = 2


def int_root_ceil(x: int, power_num: int, power_den: int) -> int:
    """Smallest t >= 0 with t**power_den >= x**power_num (integer-exact)."""
    if x < 0:
        raise ValueError("negative radicand")
    goal = x ** power_num
    t = 0
    while t ** power_den < goal:
        t += 1
    return t


def _greedy_color(n_items: int, adjacency: dict[int, set[int]]) -> list[int]:
    """1-based greedy coloring over items 0..n_items-1 in index order."""
    colors = [0] * n_items
    for i in range(n_items):
        used = {colors[j] for j in adjacency.get(i, ()) if colors[j]}
        c = 1
        while c in used:
            c += 1
        colors[i] = c
    return colors


def _split_classes(colors: list[int], cap: int) -> list[int]:
    """Split color classes larger than cap into chunks of at most cap,
    appending new colors; items keep ascending order inside chunks."""
    out = list(colors)
    if not out:
        return out
    next_color = max(out) + 1
    by_color: dict[int, list[int]] = {}
    for i, c in enumerate(out):
        by_color.setdefault(c, []).append(i)
    for c in sorted(by_color):
        members = by_color[c]
        for start in range(cap, len(members), cap):
            for i in members[start : start + cap]:
                out[i] = next_color
            next_color += 1
    return out


@dataclass
class SatTrace:
    """Bookkeeping for witness lifting and assignment extraction."""

    nvars: int
    nclauses: int
    clause_literals: tuple[tuple[int, ...], ...]
    vertex_names: dict[str, int]
    var_group: dict[int, int]        # variable -> middle vertex row index (1-based)
    var_layer: dict[int, int]
    var_up: dict[int, int]
    var_low: dict[int, int]
    group_color: dict[int, int]      # variable -> conflict-graph color
    clause_cluster: dict[int, int]   # clause index -> cluster number (1-based)
    clause_slot: dict[int, int]      # clause index -> in-cluster color
    clause_row: dict[int, int]       # clause index -> a-row index
    cluster_sizes: list[int]         # per cluster, number of in-cluster colors
    request_origins: dict[tuple[int, int], str] = field(default_factory=dict)
    vertex_coloring4: list[int] = field(default_factory=list)
    cg_coloring: dict[int, int] = field(default_factory=dict)  # edge index -> color
    edge_u_mid: dict[int, int] = field(default_factory=dict)   # var -> edge index
    edge_mid_l: dict[int, int] = field(default_factory=dict)
    edge_a_b: dict[tuple[int, int], int] = field(default_factory=dict)  # (clause, k)
    edge_b_mid: dict[tuple[int, int], int] = field(default_factory=dict)

    def name_of(self) -> dict[int, str]:
        return {v: k for k, v in self.vertex_names.items()}


def sat_to_extension_instance(phi: CnfFormula) -> tuple[Instance, SatTrace]:
    if phi.nvars < 1:
        raise ValueError("formula must have at least one variable")
    if not phi.is_normalized():
        raise ValueError(
            "formula must have exactly 3 distinct variables per clause and "
            "at most 4 occurrences per variable"
        )
    n, m = phi.nvars, phi.nclauses
    nu = int_root_ceil(n, 1, 3)        # ceil(n^(1/3))
    mu = int_root_ceil(n, 2, 3)        # ceil(n^(2/3))

    names: dict[str, int] = {}

    def add_vertex(name: str) -> int:
        names[name] = len(names)
        return names[name]

    for i in range(1, mu + 9 + 1):
        add_vertex(f"m.{i}")
    for i in range(1, nu + 1):
        for j in range(1, nu + 3 + 1):
            add_vertex(f"u.{i}.{j}")
        for j in range(1, nu + 3 + 1):
            add_vertex(f"l.{i}.{j}")

    # Variable conflict graph: same-clause variables clash.
    var_adj: dict[int, set[int]] = {x: set() for x in range(n)}
    for cl in phi.clauses:
        vs = [abs(l) - 1 for l in cl]
        for x in vs:
            for y in vs:
                if x != y:
                    var_adj[x].add(y)
    if var_adj and max(len(a) for a in var_adj.values()) > 8:
        raise AssertionError("variable conflict degree exceeds 8; bug")
    alpha = _greedy_color(n, var_adj)
    if alpha and max(alpha) > 9:
        raise AssertionError("variable conflict coloring uses more than 9 colors; bug")

    # Groups: per color class, chunks of at most nu variables.
    groups: list[list[int]] = []
    for c in range(1, (max(alpha) if alpha else 0) + 1):
        members = [x for x in range(n) if alpha[x] == c]
        for start in range(0, len(members), nu):
            groups.append(members[start : start + nu])
    if len(groups) > mu + 9:
        raise AssertionError("more groups than middle vertices; bug")

    var_group: dict[int, int] = {}
    var_layer: dict[int, int] = {}
    for gi, members in enumerate(groups, start=1):
        for pos, x in enumerate(members, start=1):
            var_group[x + 1] = gi
            var_layer[x + 1] = pos

    # Per layer, a row-major injection into the (nu+3) x (nu+3) grid,
    # scanning that layer's variables in group order.
    var_up: dict[int, int] = {}
    var_low: dict[int, int] = {}
    for layer in range(1, nu + 1):
        layer_vars = [x for x in sorted(var_group) if var_layer[x] == layer]
        layer_vars.sort(key=lambda x: var_group[x])
        if len(layer_vars) > (nu + 3) ** 2:
            raise AssertionError("layer overflows its injection grid; bug")
        for idx, x in enumerate(layer_vars):
            var_up[x] = 1 + idx // (nu + 3)
            var_low[x] = 1 + idx % (nu + 3)

    edges: list[tuple[int, int]] = []
    requests: list[tuple[int, int]] = []
    origins: dict[tuple[int, int], str] = {}
    edge_u_mid: dict[int, int] = {}
    edge_mid_l: dict[int, int] = {}

    def vid(name: str) -> int:
        return names[name]

    for x in range(1, n + 1):
        uu = vid(f"u.{var_layer[x]}.{var_up[x]}")
        mm = vid(f"m.{var_group[x]}")
        ll = vid(f"l.{var_layer[x]}.{var_low[x]}")
        edge_u_mid[x] = len(edges)
        edges.append((uu, mm))
        edge_mid_l[x] = len(edges)
        edges.append((mm, ll))
        pair = canonical_pair(uu, ll)
        requests.append(pair)
        origins[pair] = f"var.{x}"

    # Same-clause and same-layer variables land on distinct middle vertices.
    for cl in phi.clauses:
        gs = [var_group[abs(l)] for l in cl]
        if len(set(gs)) != len(gs):
            raise AssertionError("same-clause variables share a middle vertex; bug")
    for layer in range(1, nu + 1):
        gs = [var_group[x] for x in var_group if var_layer[x] == layer]
        if len(set(gs)) != len(gs):
            raise AssertionError("same-layer variables share a middle vertex; bug")

    # Clause conflict graph: clauses clash when their variables share a
    # middle vertex.
    mid_clauses: dict[int, list[int]] = {}
    for ci, cl in enumerate(phi.clauses):
        for l in cl:
            mid_clauses.setdefault(var_group[abs(l)], []).append(ci)
    cl_adj: dict[int, set[int]] = {ci: set() for ci in range(m)}
    for cis in mid_clauses.values():
        for a in cis:
            for b in cis:
                if a != b:
                    cl_adj[a].add(b)
    if cl_adj and max((len(a) for a in cl_adj.values()), default=0) > 12 * nu:
        raise AssertionError("clause conflict degree exceeds 12*ceil(n^(1/3)); bug")
    beta = _greedy_color(m, cl_adj)
    beta = _split_classes(beta, mu)
    s = max(beta) if beta else 0
    if s > 13 * nu + 1:
        raise AssertionError("cluster count exceeds 13*ceil(n^(1/3))+1; bug")

    # Per cluster: in-cluster conflict graph, its coloring, and the row
    # assignment (injective on every in-cluster color class).
    lay_up_bucket: dict[tuple[int, int], list[int]] = {}
    for x in range(1, n + 1):
        lay_up_bucket.setdefault((var_layer[x], var_up[x]), []).append(x)
    mid_bucket: dict[int, list[int]] = {}
    for x in range(1, n + 1):
        mid_bucket.setdefault(var_group[x], []).append(x)
    var_clauses: dict[int, list[int]] = {}
    for ci, cl in enumerate(phi.clauses):
        for l in cl:
            var_clauses.setdefault(abs(l), []).append(ci)

    clause_cluster = {ci: beta[ci] for ci in range(m)}
    clause_slot: dict[int, int] = {}
    clause_row: dict[int, int] = {}
    cluster_sizes: list[int] = []
    for i in range(1, s + 1):
        members = [ci for ci in range(m) if beta[ci] == i]
        local = {ci: li for li, ci in enumerate(members)}
        sub_adj: dict[int, set[int]] = {li: set() for li in range(len(members))}
        for ci in members:
            for l in phi.clauses[ci]:
                x1 = abs(l)
                for x3 in lay_up_bucket[(var_layer[x1], var_up[x1])]:
                    for x2 in mid_bucket[var_group[x3]]:
                        for cj in var_clauses.get(x2, ()):
                            if cj != ci and beta[cj] == i:
                                sub_adj[local[ci]].add(local[cj])
                                sub_adj[local[cj]].add(local[ci])
        if sub_adj and max((len(a) for a in sub_adj.values()), default=0) > 12 * (nu + 2):
            raise AssertionError("in-cluster conflict degree exceeds 12*(ceil(n^(1/3))+2); bug")
        gamma = _greedy_color(len(members), sub_adj)
        gamma = _split_classes(gamma, nu)
        n_i = max(gamma) if gamma else 0
        if n_i > 13 * nu + 25:
            raise AssertionError("in-cluster color count exceeds 13*ceil(n^(1/3))+25; bug")
        cluster_sizes.append(n_i)
        by_slot: dict[int, list[int]] = {}
        for li, ci in enumerate(members):
            clause_slot[ci] = gamma[li]
            by_slot.setdefault(gamma[li], []).append(ci)
        for slot in sorted(by_slot):
            for row, ci in enumerate(by_slot[slot], start=1):
                if row > nu:
                    raise AssertionError("a-row index exceeds ceil(n^(1/3)); bug")
                clause_row[ci] = row

    for i in range(1, s + 1):
        n_i = cluster_sizes[i - 1]
        for j in range(1, nu + 1):
            add_vertex(f"a.{i}.{j}")
        for j in range(1, n_i + 1):
            for k in (1, 2, 3):
                add_vertex(f"b.{i}.{j}.{k}")
        for j in range(1, n_i + 1):
            add_vertex(f"c.{i}.{j}")

    precolored: list[int] = []
    for i in range(1, s + 1):
        for j in range(1, cluster_sizes[i - 1] + 1):
            for k in (1, 2, 3):
                precolored.append(len(edges))
                edges.append((vid(f"c.{i}.{j}"), vid(f"b.{i}.{j}.{k}")))

    edge_a_b: dict[tuple[int, int], int] = {}
    edge_b_mid: dict[tuple[int, int], int] = {}
    seen_cross: set[tuple[int, int]] = set()
    for ci, cl in enumerate(phi.clauses):
        i, j, row = clause_cluster[ci], clause_slot[ci], clause_row[ci]
        av = vid(f"a.{i}.{row}")
        cv = vid(f"c.{i}.{j}")
        for k in (1, 2, 3):
            bv = vid(f"b.{i}.{j}.{k}")
            edge_a_b[(ci, k)] = len(edges)
            edges.append((av, bv))
        pair = canonical_pair(av, cv)
        requests.append(pair)
        origins[pair] = f"clause.{ci}"
        for k in (1, 2, 3):
            lit = cl[k - 1]
            x = abs(lit)
            bv = vid(f"b.{i}.{j}.{k}")
            mm = vid(f"m.{var_group[x]}")
            cross = canonical_pair(bv, mm)
            if cross in seen_cross:
                raise AssertionError("cross edge created twice; bug")
            seen_cross.add(cross)
            edge_b_mid[(ci, k)] = len(edges)
            edges.append((bv, mm))
            p1 = canonical_pair(mm, av)
            requests.append(p1)
            origins[p1] = f"lit.{ci}.{k}.mid"
            if lit > 0:
                tv = vid(f"u.{var_layer[x]}.{var_up[x]}")
            else:
                tv = vid(f"l.{var_layer[x]}.{var_low[x]}")
            p2 = canonical_pair(bv, tv)
            requests.append(p2)
            origins[p2] = f"lit.{ci}.{k}.pol"
        # The a-c request has exactly the three b-paths. (checked below)

    g = build_graph(len(names), edges)
    if g.m != len(edges):
        raise AssertionError("duplicate edge in the construction; bug")
    if len(set(requests)) != n + 7 * m:
        raise AssertionError("request collision; bug")

    pc = PartialColoring.empty(g.m, 2)
    for e in precolored:
        pc.set(e, COLOR_F)
    inst = make_instance(g, 2, requests, pc)
    if len(inst.requests) != n + 7 * m:
        raise AssertionError("a request coincides with an edge; bug")

    trace = SatTrace(
        nvars=n,
        nclauses=m,
        clause_literals=phi.clauses,
        vertex_names=names,
        var_group=var_group,
        var_layer=var_layer,
        var_up=var_up,
        var_low=var_low,
        group_color={x + 1: alpha[x] for x in range(n)},
        clause_cluster=clause_cluster,
        clause_slot=clause_slot,
        clause_row=clause_row,
        cluster_sizes=cluster_sizes,
        request_origins=origins,
        edge_u_mid=edge_u_mid,
        edge_mid_l=edge_mid_l,
        edge_a_b=edge_a_b,
        edge_b_mid=edge_b_mid,
    )
    _audit_paths(g, inst, trace)
    _audit_degrees(g, inst, trace, nu)
    trace.vertex_coloring4 = _vertex_coloring4(g, inst, trace)
    trace.cg_coloring = _cg_coloring(g, inst, trace)
    return inst, trace


def _common_neighbors(g: Graph, u: int, v: int) -> list[int]:
    nu = {y for y, _ in g.adjacency[u]}
    return [y for y, _ in g.adjacency[v] if y in nu]


def _audit_paths(g: Graph, inst: Instance, trace: SatTrace) -> None:
    var_edges = set()
    for x in range(1, trace.nvars + 1):
        uu = g.edges[trace.edge_u_mid[x]]
        ll = g.edges[trace.edge_mid_l[x]]
        var_edges.add(uu)
        var_edges.add(ll)
        pair = tuple(sorted(set(uu) ^ set(ll)))
        if len(_common_neighbors(g, pair[0], pair[1])) != 1:
            raise AssertionError("variable request with more than one 2-path; bug")
    if len(var_edges) != 2 * trace.nvars:
        raise AssertionError("variable paths are not edge-disjoint; bug")
    for ci in range(trace.nclauses):
        i, j, row = trace.clause_cluster[ci], trace.clause_slot[ci], trace.clause_row[ci]
        av = trace.vertex_names[f"a.{i}.{row}"]
        cv = trace.vertex_names[f"c.{i}.{j}"]
        common = _common_neighbors(g, av, cv)
        expect = {trace.vertex_names[f"b.{i}.{j}.{k}"] for k in (1, 2, 3)}
        if set(common) != expect:
            raise AssertionError("clause request paths differ from its three b-vertices; bug")


def _audit_degrees(g: Graph, inst: Instance, trace: SatTrace, nu: int) -> None:
    deg_s: dict[int, int] = {}
    for u, v in inst.requests:
        deg_s[u] = deg_s.get(u, 0) + 1
        deg_s[v] = deg_s.get(v, 0) + 1
    caps = []
    for name, vtx in trace.vertex_names.items():
        kind = name.split(".")[0]
        if kind in ("u", "l"):
            caps.append((name, g.degree(vtx) <= nu + 3, deg_s.get(vtx, 0) <= 5 * (nu + 3)))
        elif kind == "m":
            caps.append((name, g.degree(vtx) <= 6 * nu, deg_s.get(vtx, 0) <= 4 * nu))
        elif kind == "a":
            i = int(name.split(".")[1])
            n_i = trace.cluster_sizes[i - 1]
            caps.append((name, g.degree(vtx) <= 3 * n_i, deg_s.get(vtx, 0) <= 4 * n_i))
        elif kind == "b":
            caps.append((name, g.degree(vtx) <= 2 * nu + 1, deg_s.get(vtx, 0) <= nu))
        elif kind == "c":
            caps.append((name, g.degree(vtx) <= 3, deg_s.get(vtx, 0) <= nu))
    for name, ok_g, ok_s in caps:
        if not ok_g:
            raise AssertionError(f"graph degree cap violated at {name}; bug")
        if not ok_s:
            raise AssertionError(f"request-graph degree cap violated at {name}; bug")


def _vertex_coloring4(g: Graph, inst: Instance, trace: SatTrace) -> list[int]:
    colors = [0] * g.n
    for name, vtx in trace.vertex_names.items():
        kind = name.split(".")[0]
        colors[vtx] = {"u": 1, "a": 1, "m": 2, "b": 3, "l": 4, "c": 4}[kind]
    for u, v in list(g.edges) + sorted(inst.requests):
        if colors[u] == colors[v]:
            raise AssertionError("4-coloring not proper on an edge or request; bug")
    return colors


def _cg_coloring(g: Graph, inst: Instance, trace: SatTrace) -> dict[int, int]:
    coloring: dict[int, int] = {}
    for i in range(1, len(trace.cluster_sizes) + 1):
        next_color = 1
        for j in range(1, trace.cluster_sizes[i - 1] + 1):
            for k in (1, 2, 3):
                e = g.edge_id(
                    trace.vertex_names[f"c.{i}.{j}"], trace.vertex_names[f"b.{i}.{j}.{k}"]
                )
                coloring[e] = next_color
                next_color += 1
    cg = precoloring_conflict_graph(inst)
    dom = inst.precoloring.domain()
    for a, b in cg.edges:
        if coloring[dom[a]] == coloring[dom[b]]:
            raise AssertionError("precoloring conflict-graph coloring not proper; bug")
    return coloring


def precoloring_conflict_graph(inst: Instance) -> Graph:
    """Graph on the precolored edges: two are adjacent when incident in the
    host graph or joined endpoint-to-endpoint by an edge or a request."""
    g = inst.graph
    dom = inst.precoloring.domain()
    if not dom:
        return build_graph(0, [])
    idx = {e: i for i, e in enumerate(dom)}
    pairs: set[tuple[int, int]] = set()
    touch = set(inst.requests) | set(g.edges)
    for i, e1 in enumerate(dom):
        u1, v1 = g.edges[e1]
        for e2 in dom[i + 1 :]:
            u2, v2 = g.edges[e2]
            if {u1, v1} & {u2, v2}:
                pairs.add((idx[e1], idx[e2]))
                continue
            for a in (u1, v1):
                for b in (u2, v2):
                    if canonical_pair(a, b) in touch:
                        pairs.add((idx[e1], idx[e2]))
                        break
                else:
                    continue
                break
    return build_graph(len(dom), sorted(pairs))


def lift_assignment(trace: SatTrace, assignment) -> list[int]:
    """Total 2-coloring from a satisfying assignment, following the
    per-variable value edges, per-literal clause edges, and the pre-colors."""
    if len(assignment) != trace.nvars:
        raise ValueError("assignment length mismatch")
    m_edges = (
        2 * trace.nvars + 6 * trace.nclauses + 3 * sum(trace.cluster_sizes)
    )
    colors = [COLOR_F] * m_edges  # precolored edges keep F; the rest overwritten
    for x in range(1, trace.nvars + 1):
        val = COLOR_T if assignment[x - 1] else COLOR_F
        inv = COLOR_F if assignment[x - 1] else COLOR_T
        colors[trace.edge_u_mid[x]] = val
        colors[trace.edge_mid_l[x]] = inv
    for ci, cl in enumerate(trace.clause_literals):
        for k in (1, 2, 3):
            lit = cl[k - 1]
            lit_true = assignment[abs(lit) - 1] == (lit > 0)
            colors[trace.edge_a_b[(ci, k)]] = COLOR_T if lit_true else COLOR_F
            colors[trace.edge_b_mid[(ci, k)]] = COLOR_F if lit_true else COLOR_T
    return colors


def extract_assignment(trace: SatTrace, coloring) -> list[bool]:
    """Assignment read off the per-variable value edges of a coloring."""
    return [
        coloring[trace.edge_u_mid[x]] == COLOR_T for x in range(1, trace.nvars + 1)
    ]
