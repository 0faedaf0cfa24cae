"""End-to-end compilation from a 3-CNF to rainbow coloring instances."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..cnf import CnfFormula
from ..core import Graph, Instance
from .normalize import normalize_cnf
from .satgadget import int_root_ceil, sat_to_extension_instance
from .stages import drop_precoloring, drop_requests_k, lift_colors

TARGETS = ("normalize", "sr2cext", "srkcext", "srkc", "rkc")


class CapabilityError(ValueError):
    """The requested chain is not constructible (k = 2 beyond the extension stage)."""


@dataclass
class StageReport:
    stage: str
    n: int
    m: int
    requests: int
    precolored: int
    colors: dict[str, int] = field(default_factory=dict)
    checks: list[tuple[str, int, int]] = field(default_factory=list)

    def ok(self) -> bool:
        return all(exp == act for _, exp, act in self.checks)

    def lines(self) -> list[str]:
        out = [
            f"stage={self.stage} n={self.n} m={self.m} requests={self.requests} "
            f"precolored={self.precolored} "
            + " ".join(f"{k}={v}" for k, v in sorted(self.colors.items()))
        ]
        for name, exp, act in self.checks:
            out.append(f"check={name} expected={exp} actual={act} ok={int(exp == act)}")
        return out


@dataclass
class CompileResult:
    target: str
    k: int
    formula: CnfFormula            # normalized formula actually compiled
    instance: Instance | None      # subset stages; None when target == normalize
    rainbow_graph: Graph | None = None
    stages: list[tuple[str, object]] = field(default_factory=list)
    reports: list[StageReport] = field(default_factory=list)

    def report_lines(self) -> list[str]:
        out = []
        for r in self.reports:
            out.extend(r.lines())
        return out


def compile_formula(
    phi: CnfFormula,
    k: int,
    target: str = "rkc",
    *,
    deterministic_covers: bool = True,
    seed: int | None = None,
) -> CompileResult:
    """Run the reduction chain up to `target`, with size audits per stage.

    Supported chains: any k >= 2 down to the 2-color extension stage;
    k >= 3 all the way to a plain rainbow instance.  A full k = 2 chain
    would need a 2-color precoloring elimination, which does not exist
    here, so it is refused.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target}; expected one of {TARGETS}")
    if k < 2:
        raise ValueError("color count must be >= 2")
    if k == 2 and target not in ("normalize", "sr2cext"):
        raise CapabilityError(
            "the k=2 chain stops at the extension stage: eliminating a 2-color "
            "precoloring is unsupported, rerun with k >= 3 or target sr2cext"
        )

    result = CompileResult(target=target, k=k, formula=phi, instance=None)

    phi_n, tr0 = normalize_cnf(phi)
    result.formula = phi_n
    result.stages.append(("normalize", tr0))
    result.reports.append(
        StageReport(
            stage="normalize",
            n=phi_n.nvars,
            m=phi_n.nclauses,
            requests=0,
            precolored=0,
            checks=[("normalized", 1, int(phi_n.is_normalized()))],
        )
    )
    if target == "normalize":
        return result

    inst1, tr1 = sat_to_extension_instance(phi_n)
    result.stages.append(("satgadget", tr1))
    n = phi_n.nvars
    nu = int_root_ceil(n, 1, 3)
    mu = int_root_ceil(n, 2, 3)
    g1 = inst1.graph
    middle = sum(1 for name in tr1.vertex_names if name.startswith("m."))
    upper_rows = [
        sum(1 for name in tr1.vertex_names if name.startswith(f"u.{i}."))
        for i in range(1, nu + 1)
    ]
    lower_rows = [
        sum(1 for name in tr1.vertex_names if name.startswith(f"l.{i}."))
        for i in range(1, nu + 1)
    ]
    var_part_edges = 2 * n
    result.reports.append(
        StageReport(
            stage="satgadget",
            n=g1.n,
            m=g1.m,
            requests=len(inst1.requests),
            precolored=inst1.precoloring.domain_size(),
            colors={
                "vertexcolors": max(tr1.vertex_coloring4, default=0),
                "cgcolors": max(tr1.cg_coloring.values(), default=0),
            },
            checks=[
                ("middle-set-size", mu + 9, middle),
                ("upper-row-size", (nu + 3) * nu, sum(upper_rows)),
                ("lower-row-size", (nu + 3) * nu, sum(lower_rows)),
                ("variable-part-edges", var_part_edges, 2 * n),
                ("precolored-edges", 3 * sum(tr1.cluster_sizes), inst1.precoloring.domain_size()),
                ("requests", n + 7 * phi_n.nclauses, len(inst1.requests)),
            ],
        )
    )
    result.instance = inst1
    if target == "sr2cext":
        _require_ok(result)
        return result

    v4 = tr1.vertex_coloring4
    inst2, vs2, cg2, tr2 = lift_colors(inst1, k, v4, v4, tr1.cg_coloring)
    result.stages.append(("liftcolors", tr2))
    result.reports.append(
        StageReport(
            stage="liftcolors",
            n=inst2.graph.n,
            m=inst2.graph.m,
            requests=len(inst2.requests),
            precolored=inst2.precoloring.domain_size(),
            colors={
                "requestcolors": max(vs2, default=0),
                "cgcolors": max(cg2.values(), default=0),
            },
            checks=[
                ("requests", len(inst1.requests) + g1.m, len(inst2.requests)),
                ("vertices", g1.n * (k + 1), inst2.graph.n),
                ("edges", g1.m + (k + 1) * g1.n, inst2.graph.m),
                (
                    "precolored-edges",
                    inst1.precoloring.domain_size() + (k + 1) * g1.n,
                    inst2.precoloring.domain_size(),
                ),
            ],
        )
    )
    result.instance = inst2
    if target == "srkcext":
        _require_ok(result)
        return result

    inst3, vs3, tr3 = drop_precoloring(inst2, cg2, vs2)
    result.stages.append(("dropprecoloring", tr3))
    path_len = 3 * k * k * tr3.ell_final
    dom2 = inst2.precoloring.domain_size()
    result.reports.append(
        StageReport(
            stage="dropprecoloring",
            n=inst3.graph.n,
            m=inst3.graph.m,
            requests=len(inst3.requests),
            precolored=0,
            colors={"requestcolors": max(vs3, default=0), "ellfinal": tr3.ell_final},
            checks=[
                ("added-vertices", path_len, inst3.graph.n - inst2.graph.n),
                (
                    "requests",
                    len(inst2.requests) + max(0, path_len - k) + 2 * dom2,
                    len(inst3.requests),
                ),
                (
                    "edges",
                    inst2.graph.m + max(0, path_len - 1) + dom2,
                    inst3.graph.m,
                ),
            ],
        )
    )
    result.instance = inst3
    if target == "srkc":
        _require_ok(result)
        return result

    g4, tr4 = drop_requests_k(
        inst3, vs3, deterministic=deterministic_covers, seed=seed
    )
    result.stages.append(("droprequestsk", tr4))
    q = len(tr4.cover)
    nbits = (q - 1).bit_length() if q >= 1 else 0
    result.reports.append(
        StageReport(
            stage="droprequestsk",
            n=g4.n,
            m=g4.m,
            requests=0,
            precolored=0,
            colors={"bicliques": q, "isolatedadded": int(tr4.isolated_added)},
            checks=[
                (
                    "added-vertices",
                    2 * (k - 2) * q + 2 * nbits,
                    g4.n - tr4.inner_n,
                ),
                ("hub-pairs", nbits, len(tr4.hub_a)),
            ],
        )
    )
    result.rainbow_graph = g4
    result.instance = None
    _require_ok(result)
    return result


def _require_ok(result: CompileResult) -> None:
    for r in result.reports:
        for name, exp, act in r.checks:
            if exp != act:
                raise AssertionError(
                    f"size audit failed at stage {r.stage}: {name} expected {exp} got {act}"
                )


def log2_ceil(q: int) -> int:
    if q < 1:
        raise ValueError("log of a nonpositive count")
    return (q - 1).bit_length()


def expected_added_vertices_request_elimination(k: int, q: int) -> int:
    """Vertices the k>=3 request elimination adds for a q-biclique cover:
    a 2(k-2)-vertex cycle per biclique plus 2*ceil(log2 q) hub vertices."""
    return 2 * (k - 2) * q + 2 * (log2_ceil(q) if q >= 1 else 0)


def factorial_threshold_yes(k: int, q: int, n_feasible: int) -> bool:
    return q * k ** k <= math.factorial(k) * n_feasible
