"""Line-oriented serialization of stage traces.

Grammar: a trace file is a sequence of stage blocks,

    stage <name>
    map <kind> <tokens...>

where <name> is one of normalize, satgadget, liftcolors, dropprecoloring,
droprequests2, droprequestsk.  Every value is whitespace-separated;
vertex/edge ids are the internal 0-based ones (traces are machine
artifacts, unlike the 1-based instance files).  A composed trace lifts a
witness through all its stages in order: an assignment for the formula
stages, then an edge coloring for the graph stages.
"""

from __future__ import annotations

from ..core import FormatError
from .normalize import NormalizeTrace
from .satgadget import SatTrace, lift_assignment
from .stages import (
    DropPrecoloringTrace,
    DropRequests2Trace,
    DropRequestsKTrace,
    LiftColorsTrace,
)
from ..biclique import Biclique

STAGE_NAMES = (
    "normalize",
    "satgadget",
    "liftcolors",
    "dropprecoloring",
    "droprequests2",
    "droprequestsk",
)


def serialize_stage(name: str, trace) -> str:
    lines = [f"stage {name}"]
    add = lines.append
    if name == "normalize":
        add(f"map nvars {trace.source_nvars} {trace.target_nvars}")
        add(f"map identity {int(trace.identity)}")
        for x in sorted(trace.copies):
            add("map copies " + " ".join(map(str, [x] + trace.copies[x])))
        if trace.forced_false:
            add("map false " + " ".join(map(str, trace.forced_false)))
        if trace.gadget_vars:
            add("map gadget " + " ".join(map(str, trace.gadget_vars)))
    elif name == "satgadget":
        add(f"map shape {trace.nvars} {trace.nclauses}")
        for ci, cl in enumerate(trace.clause_literals):
            add(f"map clause {ci} " + " ".join(map(str, cl)))
        for vname in trace.vertex_names:
            add(f"map vertex {vname} {trace.vertex_names[vname]}")
        for x in range(1, trace.nvars + 1):
            add(
                f"map var {x} {trace.var_group[x]} {trace.var_layer[x]} "
                f"{trace.var_up[x]} {trace.var_low[x]} {trace.group_color[x]}"
            )
        for ci in range(trace.nclauses):
            add(
                f"map clauseinfo {ci} {trace.clause_cluster[ci]} "
                f"{trace.clause_slot[ci]} {trace.clause_row[ci]}"
            )
        if trace.cluster_sizes:
            add("map clustersizes " + " ".join(map(str, trace.cluster_sizes)))
        for x in range(1, trace.nvars + 1):
            add(f"map edgeumid {x} {trace.edge_u_mid[x]}")
            add(f"map edgemidl {x} {trace.edge_mid_l[x]}")
        for (ci, k), e in sorted(trace.edge_a_b.items()):
            add(f"map edgeab {ci} {k} {e}")
        for (ci, k), e in sorted(trace.edge_b_mid.items()):
            add(f"map edgebmid {ci} {k} {e}")
        for (u, v), tag in sorted(trace.request_origins.items()):
            add(f"map origin {u} {v} {tag}")
        if trace.vertex_coloring4:
            add("map v4 " + " ".join(map(str, trace.vertex_coloring4)))
        for e in sorted(trace.cg_coloring):
            add(f"map cg {e} {trace.cg_coloring[e]}")
    elif name == "liftcolors":
        add(f"map shape {trace.k} {trace.inner_n} {trace.inner_m}")
        for v in sorted(trace.gadget):
            add(f"map gadget {v} " + " ".join(map(str, trace.gadget[v])))
        for e in sorted(trace.gadget_precolor):
            add(f"map precolor {e} {trace.gadget_precolor[e]}")
    elif name == "dropprecoloring":
        add(
            f"map shape {trace.k} {trace.inner_n} {trace.inner_m} {trace.ell_final}"
        )
        if trace.path_vertices:
            add("map pathv " + " ".join(map(str, trace.path_vertices)))
            add("map pathe " + " ".join(map(str, trace.path_edges)))
        for e in sorted(trace.anchors):
            add(f"map anchor {e} {trace.anchors[e]} {trace.inner_precolor[e]}")
    elif name == "droprequests2":
        add(f"map shape {trace.inner_n} {trace.inner_m}")
        for i, bic in enumerate(trace.cover):
            add(f"map bicliqueleft {i} " + " ".join(map(str, bic.left)))
            add(f"map bicliqueright {i} " + " ".join(map(str, bic.right)))
        if trace.w_ids:
            add("map w " + " ".join(map(str, trace.w_ids)))
        add("map t " + " ".join(map(str, trace.t_ids)))
        for e in sorted(trace.added_colors):
            add(f"map color {e} {trace.added_colors[e]}")
    elif name == "droprequestsk":
        add(
            f"map shape {trace.k} {trace.inner_n} {trace.inner_m} "
            f"{trace.original_n} {int(trace.isolated_added)}"
        )
        for i, bic in enumerate(trace.cover):
            add(f"map bicliqueleft {i} " + " ".join(map(str, bic.left)))
            add(f"map bicliqueright {i} " + " ".join(map(str, bic.right)))
        for i, ids in enumerate(trace.cycle_v):
            add(f"map cyclev {i} " + " ".join(map(str, ids)))
        for i, ids in enumerate(trace.cycle_w):
            add(f"map cyclew {i} " + " ".join(map(str, ids)))
        if trace.hub_a:
            add("map huba " + " ".join(map(str, trace.hub_a)))
            add("map hubb " + " ".join(map(str, trace.hub_b)))
        for e in sorted(trace.added_colors):
            add(f"map color {e} {trace.added_colors[e]}")
    else:
        raise ValueError(f"unknown stage {name}")
    return "\n".join(lines) + "\n"


def serialize_trace(stages: list[tuple[str, object]]) -> str:
    return "".join(serialize_stage(name, tr) for name, tr in stages)


def parse_trace(text: str) -> list[tuple[str, object]]:
    blocks: list[tuple[str, list[list[str]]]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "stage":
            if len(parts) != 2 or parts[1] not in STAGE_NAMES:
                raise FormatError(f"line {ln}: bad stage header")
            blocks.append((parts[1], []))
        elif parts[0] == "map":
            if not blocks:
                raise FormatError(f"line {ln}: map record before any stage")
            blocks[-1][1].append(parts[1:])
        else:
            raise FormatError(f"line {ln}: expected 'stage' or 'map'")
    return [(name, _parse_block(name, recs)) for name, recs in blocks]


def _group(recs: list[list[str]]) -> dict[str, list[list[str]]]:
    out: dict[str, list[list[str]]] = {}
    for r in recs:
        out.setdefault(r[0], []).append(r[1:])
    return out


def _parse_block(name: str, recs: list[list[str]]):
    g = _group(recs)
    try:
        if name == "normalize":
            src, dst = map(int, g["nvars"][0])
            tr = NormalizeTrace(source_nvars=src, target_nvars=dst)
            tr.identity = bool(int(g["identity"][0][0]))
            for r in g.get("copies", []):
                vals = list(map(int, r))
                tr.copies[vals[0]] = vals[1:]
            for r in g.get("false", []):
                tr.forced_false = list(map(int, r))
            for r in g.get("gadget", []):
                tr.gadget_vars = list(map(int, r))
            return tr
        if name == "satgadget":
            nvars, nclauses = map(int, g["shape"][0])
            clauses = [()] * nclauses
            for r in g.get("clause", []):
                clauses[int(r[0])] = tuple(map(int, r[1:]))
            tr = SatTrace(
                nvars=nvars,
                nclauses=nclauses,
                clause_literals=tuple(clauses),
                vertex_names={r[0]: int(r[1]) for r in g.get("vertex", [])},
                var_group={},
                var_layer={},
                var_up={},
                var_low={},
                group_color={},
                clause_cluster={},
                clause_slot={},
                clause_row={},
                cluster_sizes=[],
            )
            for r in g.get("var", []):
                x = int(r[0])
                tr.var_group[x] = int(r[1])
                tr.var_layer[x] = int(r[2])
                tr.var_up[x] = int(r[3])
                tr.var_low[x] = int(r[4])
                tr.group_color[x] = int(r[5])
            for r in g.get("clauseinfo", []):
                ci = int(r[0])
                tr.clause_cluster[ci] = int(r[1])
                tr.clause_slot[ci] = int(r[2])
                tr.clause_row[ci] = int(r[3])
            for r in g.get("clustersizes", []):
                tr.cluster_sizes = list(map(int, r))
            for r in g.get("edgeumid", []):
                tr.edge_u_mid[int(r[0])] = int(r[1])
            for r in g.get("edgemidl", []):
                tr.edge_mid_l[int(r[0])] = int(r[1])
            for r in g.get("edgeab", []):
                tr.edge_a_b[(int(r[0]), int(r[1]))] = int(r[2])
            for r in g.get("edgebmid", []):
                tr.edge_b_mid[(int(r[0]), int(r[1]))] = int(r[2])
            for r in g.get("origin", []):
                tr.request_origins[(int(r[0]), int(r[1]))] = r[2]
            for r in g.get("v4", []):
                tr.vertex_coloring4 = list(map(int, r))
            for r in g.get("cg", []):
                tr.cg_coloring[int(r[0])] = int(r[1])
            return tr
        if name == "liftcolors":
            k, inner_n, inner_m = map(int, g["shape"][0])
            tr = LiftColorsTrace(k=k, inner_n=inner_n, inner_m=inner_m, gadget={})
            for r in g.get("gadget", []):
                tr.gadget[int(r[0])] = tuple(map(int, r[1:]))
            for r in g.get("precolor", []):
                tr.gadget_precolor[int(r[0])] = int(r[1])
            return tr
        if name == "dropprecoloring":
            k, inner_n, inner_m, ell = map(int, g["shape"][0])
            pathv = tuple(map(int, g["pathv"][0])) if "pathv" in g else ()
            pathe = tuple(map(int, g["pathe"][0])) if "pathe" in g else ()
            tr = DropPrecoloringTrace(
                k=k,
                inner_n=inner_n,
                inner_m=inner_m,
                ell_final=ell,
                path_vertices=pathv,
                path_edges=pathe,
                anchors={},
                inner_precolor={},
            )
            for r in g.get("anchor", []):
                tr.anchors[int(r[0])] = int(r[1])
                tr.inner_precolor[int(r[0])] = int(r[2])
            return tr
        if name in ("droprequests2", "droprequestsk"):
            lefts = {int(r[0]): tuple(map(int, r[1:])) for r in g.get("bicliqueleft", [])}
            rights = {int(r[0]): tuple(map(int, r[1:])) for r in g.get("bicliqueright", [])}
            cover = tuple(
                Biclique(left=lefts[i], right=rights[i]) for i in range(len(lefts))
            )
            colors = {int(r[0]): int(r[1]) for r in g.get("color", [])}
            if name == "droprequests2":
                inner_n, inner_m = map(int, g["shape"][0])
                w = tuple(map(int, g["w"][0])) if "w" in g else ()
                t = tuple(map(int, g["t"][0]))
                return DropRequests2Trace(
                    inner_n=inner_n,
                    inner_m=inner_m,
                    cover=cover,
                    w_ids=w,
                    t_ids=(t[0], t[1], t[2]),
                    added_colors=colors,
                )
            k, inner_n, inner_m, original_n, iso = map(int, g["shape"][0])
            cv = {int(r[0]): tuple(map(int, r[1:])) for r in g.get("cyclev", [])}
            cw = {int(r[0]): tuple(map(int, r[1:])) for r in g.get("cyclew", [])}
            return DropRequestsKTrace(
                k=k,
                inner_n=inner_n,
                inner_m=inner_m,
                original_n=original_n,
                isolated_added=bool(iso),
                cover=cover,
                cycle_v=tuple(cv[i] for i in range(len(cv))),
                cycle_w=tuple(cw[i] for i in range(len(cw))),
                hub_a=tuple(map(int, g["huba"][0])) if "huba" in g else (),
                hub_b=tuple(map(int, g["hubb"][0])) if "hubb" in g else (),
                added_colors=colors,
            )
    except (KeyError, IndexError, ValueError) as exc:
        raise FormatError(f"stage {name}: malformed records ({exc})") from None
    raise FormatError(f"unknown stage {name}")


def lift_composed(stages: list[tuple[str, object]], witness):
    """Push a witness outward through every stage.

    The witness starts as a boolean assignment when the first stage is a
    formula stage, and as an edge coloring otherwise.
    """
    current = witness
    for name, tr in stages:
        if name == "normalize":
            current = tr.lift_assignment(current)
        elif name == "satgadget":
            current = lift_assignment(tr, current)
        else:
            current = tr.lift_witness(current)
    return current
