"""Command-line front end.

Exit codes: 0 = YES/success, 1 = NO (decision subcommands), 2 = usage or
format error, 3 = resource-budget error.  All randomness flows from
--seed; there is no environment-variable configuration.  --format records
switches output to line-oriented key=value records.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import biclique, gen, maxrainbow, solvers, verify
from .cnf import parse_dimacs, to_dimacs
from .core import BudgetExceededError, FormatError, GraphError, build_graph, make_instance
from .formats import (
    parse_coloring,
    parse_cover,
    parse_instance,
    parse_manifest,
    serialize_coloring,
    serialize_cover,
    serialize_instance,
)
from .reduction import (
    CapabilityError,
    compile_formula,
    drop_requests_2,
    lift_composed,
    parse_trace,
    serialize_trace,
)
from .reduction.pipeline import TARGETS

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class _Out:
    def __init__(self, records: bool):
        self.records = records

    def kv(self, **kwargs):
        if self.records:
            print(" ".join(f"{k}={v}" for k, v in kwargs.items()))

    def text(self, msg: str):
        if not self.records:
            print(msg)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _write(path: str | None, content: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(content)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(content)


def _emit_coloring(args, out, g, coloring) -> None:
    content = serialize_coloring(coloring, g)
    _write(getattr(args, "out", None), content)


def cmd_solve(args, out: _Out) -> int:
    inst = parse_instance(_read(args.input))
    if args.engine == "brute":
        coloring = solvers.brute_force_solve(
            inst, bits_budget=args.brute_bits, workers=args.workers
        )
    else:
        coloring = solvers.solve_subset_rainbow(
            inst, ie_subset_cap=args.ie_cap, node_budget=args.node_budget
        )
    verdict = "YES" if coloring is not None else "NO"
    out.kv(verdict=verdict)
    out.text(verdict)
    _emit_coloring(args, out, inst.graph, coloring)
    return EXIT_YES if coloring is not None else EXIT_NO


def cmd_count(args, out: _Out) -> int:
    inst = parse_instance(_read(args.input))
    if inst.k != 2:
        raise FormatError("the counter is defined for k = 2 instances")
    if inst.has_precoloring():
        count = solvers._count_2colorings_extending(
            inst.graph, inst.requests, inst.precoloring.values, subset_cap=args.ie_cap
        )
    else:
        count = solvers.count_satisfying_2colorings(
            inst.graph, inst.requests, subset_cap=args.ie_cap
        )
    out.kv(count=count)
    out.text(str(count))
    return EXIT_YES


def cmd_verify(args, out: _Out) -> int:
    inst = parse_instance(_read(args.input))
    coloring = parse_coloring(_read(args.coloring), inst.graph, inst.k)
    if coloring is None:
        raise FormatError("cannot verify the NULL coloring")
    for e in range(inst.graph.m):
        c = inst.precoloring.get(e)
        if c is not None and coloring[e] != c:
            u, v = inst.graph.edges[e]
            out.kv(extends_precoloring=0, edge=f"{u + 1}-{v + 1}")
            out.text(f"coloring violates the precoloring on edge {u + 1} {v + 1}")
            return EXIT_YES
    sat = verify.verify_requests(inst.graph, coloring, inst.requests, inst.k)
    out.kv(satisfied=len(sat), requests=len(inst.requests), all=int(sat == inst.requests))
    out.text(f"satisfied {len(sat)} of {len(inst.requests)} requests")
    for u, v in sorted(inst.requests):
        status = "satisfied" if (u, v) in sat else "UNSATISFIED"
        out.text(f"  {u + 1} {v + 1}: {status}")
        out.kv(request=f"{u + 1}-{v + 1}", ok=int((u, v) in sat))
    return EXIT_YES


def cmd_approx(args, out: _Out) -> int:
    inst = parse_instance(_read(args.input))
    coloring = maxrainbow.derandomized_approx(inst.graph, inst.requests, inst.k)
    sat = verify.verify_requests(inst.graph, coloring, inst.requests, inst.k)
    out.kv(satisfied=len(sat), requests=len(inst.requests))
    out.text(f"satisfied {len(sat)} of {len(inst.requests)} requests")
    _emit_coloring(args, out, inst.graph, coloring)
    return EXIT_YES


def cmd_kernelize(args, out: _Out) -> int:
    inst = parse_instance(_read(args.input))
    result = maxrainbow.kernelize(inst.graph, inst.k, args.q)
    out.kv(verdict=result.verdict, q=result.q)
    out.text(f"verdict: {result.verdict} (q -> {result.q})")
    if result.verdict == "reduced" and result.graph is not None and result.graph.m > 0:
        kernel_inst = make_instance(result.graph, inst.k, list(result.graph.anti_edges()))
        _write(getattr(args, "out", None), serialize_instance(kernel_inst))
    return EXIT_YES


def cmd_maxsolve(args, out: _Out) -> int:
    inst = parse_instance(_read(args.input))
    result = maxrainbow.solve_max_rainbow(
        inst.graph, inst.k, args.q, subset_enum_cap=args.subset_cap, workers=args.workers
    )
    verdict = "YES" if result.yes else "NO"
    out.kv(verdict=verdict)
    out.text(verdict)
    _emit_coloring(args, out, inst.graph, list(result.coloring) if result.coloring else None)
    return EXIT_YES if result.yes else EXIT_NO


def cmd_cover(args, out: _Out) -> int:
    if args.mode == "complete":
        cov = biclique.cover_complete_graph(args.n)
    else:
        inst = parse_instance(_read(args.input))
        g = inst.graph
        if args.mode == "colored":
            from .core import greedy_proper_coloring

            vcolor = greedy_proper_coloring(g)
            cov = biclique.cover_complement_colored(
                g, vcolor, deterministic=args.deterministic_covers, seed=args.seed,
                greedy_cap=args.greedy_cap,
            )
        else:
            left = [v for v in range(g.n) if v % 2 == 0] if args.left is None else [
                int(t) - 1 for t in args.left.split(",")
            ]
            right = [v for v in range(g.n) if v not in set(left)]
            bg = biclique.make_bipartite(
                left, right, [e for e in g.edges if (e[0] in set(left)) != (e[1] in set(left))]
            )
            if args.mode == "jukna-greedy":
                cov = biclique.cover_bipartite_complement_greedy(bg, v1_cap=args.greedy_cap)
            else:
                if args.seed is None:
                    raise FormatError("the randomized cover needs --seed")
                cov = biclique.cover_bipartite_complement_random(bg, seed=args.seed)
    out.kv(bicliques=len(cov))
    _write(getattr(args, "out", None), serialize_cover(cov))
    return EXIT_YES


def cmd_reduce(args, out: _Out) -> int:
    phi = parse_dimacs(_read(args.cnf))
    result = compile_formula(
        phi,
        args.k,
        args.to,
        deterministic_covers=args.deterministic_covers,
        seed=args.seed,
    )
    for line in result.report_lines():
        out.text(line)
        if out.records:
            print(line)
    if args.to == "normalize":
        _write(args.out_instance, to_dimacs(result.formula))
    elif result.rainbow_graph is not None:
        g = result.rainbow_graph
        lines = [f"p rbw {g.n} {g.m} {args.k}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
        _write(args.out_instance, "\n".join(lines) + "\n")
    else:
        _write(args.out_instance, serialize_instance(result.instance))
    if args.out_trace:
        _write(args.out_trace, serialize_trace(result.stages))
    return EXIT_YES


def cmd_reduce_requests2(args, out: _Out) -> int:
    inst = parse_instance(_read(args.input))
    from .core import greedy_proper_coloring

    gs = build_graph(inst.graph.n, sorted(inst.requests))
    vcolor = greedy_proper_coloring(gs)
    g2, trace = drop_requests_2(
        inst, vcolor, deterministic=args.deterministic_covers, seed=args.seed
    )
    lines = [f"p rbw {g2.n} {g2.m} 2"] + [f"e {u + 1} {v + 1}" for u, v in g2.edges]
    _write(args.out_instance, "\n".join(lines) + "\n")
    if args.out_trace:
        _write(args.out_trace, serialize_trace([("droprequests2", trace)]))
    out.kv(vertices=g2.n, edges=g2.m, bicliques=len(trace.cover))
    return EXIT_YES


def cmd_lift(args, out: _Out) -> int:
    stages = parse_trace(_read(args.trace))
    first = stages[0][0]
    if first in ("normalize", "satgadget"):
        tokens = _read(args.witness).split()
        lits = [int(t) for t in tokens if t not in ("v",) and t != "0"]
        nvars = max(abs(l) for l in lits) if lits else 0
        assignment = [False] * nvars
        for l in lits:
            assignment[abs(l) - 1] = l > 0
        witness = assignment
    else:
        raise FormatError("lifting an edge-coloring witness needs the instance; start traces at a formula stage")
    lifted = lift_composed(stages, witness)
    lines = [str(c) for c in lifted]
    _write(getattr(args, "out", None), "\n".join(lines) + "\n")
    out.kv(colors=len(lifted))
    return EXIT_YES


def cmd_gen(args, out: _Out) -> int:
    import random

    if args.seed is None:
        raise FormatError("gen needs --seed")
    rng = random.Random(args.seed)
    if args.kind == "graph":
        g = gen.random_graph(args.n, args.p, rng)
        feas = sorted(g.anti_edges())
        picked = [p for p in feas if rng.random() < args.request_prob]
        if not picked and g.m == 0:
            raise FormatError("degenerate instance (no edges and no requests); re-seed")
        inst = make_instance(g, args.k, picked)
        _write(getattr(args, "out", None), serialize_instance(inst))
    else:
        phi = gen.random_normalized_formula(args.n, args.m, rng, planted=args.planted)
        _write(getattr(args, "out", None), to_dimacs(phi))
    return EXIT_YES


def cmd_bench(args, out: _Out) -> int:
    rows = parse_manifest(_read(args.manifest))
    print(f"{'instance':40s} {'verdict':8s} {'satisfied':>9s} {'ms':>8s}")
    failures = 0
    for path, expect in rows:
        inst = parse_instance(_read(path))
        t0 = time.monotonic()
        coloring = solvers.solve_subset_rainbow(inst, ie_subset_cap=args.ie_cap)
        ms = (time.monotonic() - t0) * 1000
        verdict = "YES" if coloring is not None else "NO"
        satisfied = (
            len(verify.verify_requests(inst.graph, coloring, inst.requests, inst.k))
            if coloring
            else 0
        )
        flag = ""
        if expect is not None and expect != verdict:
            failures += 1
            flag = " MISMATCH"
        print(f"{path:40s} {verdict:8s} {satisfied:>9d} {ms:>8.1f}{flag}")
    return EXIT_YES if failures == 0 else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rbw", description=__doc__)
    ap.add_argument("--format", choices=("text", "records"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_out=True):
        p.add_argument("--format", choices=("text", "records"), default="text")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--ie-cap", type=int, default=solvers.DEFAULT_IE_SUBSET_CAP)
        p.add_argument("--brute-bits", type=float, default=solvers.DEFAULT_BRUTE_FORCE_BITS)
        p.add_argument("--greedy-cap", type=int, default=biclique.DEFAULT_GREEDY_CAP)
        p.add_argument("--subset-cap", type=int, default=maxrainbow.DEFAULT_SUBSET_ENUM_CAP)
        p.add_argument("--node-budget", type=int, default=None)
        p.add_argument("--deterministic-covers", action="store_true", default=True)
        p.add_argument("--random-covers", dest="deterministic_covers", action="store_false")
        if with_out:
            p.add_argument("--out", default=None)

    p = sub.add_parser("solve", help="decide a subset/plain rainbow instance")
    p.add_argument("--input", required=True)
    p.add_argument("--engine", choices=("auto", "brute"), default="auto")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("count", help="count satisfying 2-colorings")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="report satisfied requests of a coloring")
    p.add_argument("--input", required=True)
    p.add_argument("--coloring", required=True)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("approx", help="derandomized approximation")
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("kernelize", help="shrink a maximum rainbow instance")
    p.add_argument("--input", required=True)
    p.add_argument("--q", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("maxsolve", help="decide maximum rainbow coloring")
    p.add_argument("--input", required=True)
    p.add_argument("--q", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_maxsolve)

    p = sub.add_parser("cover", help="biclique covers")
    p.add_argument("--mode", choices=("complete", "jukna-random", "jukna-greedy", "colored"), required=True)
    p.add_argument("--n", type=int, default=None, help="clique size for --mode complete")
    p.add_argument("--input", default=None, help="instance file for the other modes")
    p.add_argument("--left", default=None, help="comma-separated 1-based left side")
    common(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("reduce", help="compile a DIMACS formula")
    p.add_argument("--cnf", required=True)
    p.add_argument("--to", choices=TARGETS, default="rkc")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--out-instance", default=None)
    p.add_argument("--out-trace", default=None)
    p.add_argument("--input", default=None)
    common(p, with_out=False)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("reduce-requests2", help="2-color request elimination on an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--out-instance", default=None)
    p.add_argument("--out-trace", default=None)
    common(p, with_out=False)
    p.set_defaults(func=cmd_reduce_requests2)

    p = sub.add_parser("lift", help="lift a witness through a trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--witness", required=True)
    common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("gen", help="seeded random instances and formulas")
    p.add_argument("kind", choices=("graph", "formula"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--request-prob", type=float, default=0.5)
    p.add_argument("--planted", action="store_true")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a manifest of instances")
    p.add_argument("--manifest", required=True)
    common(p, with_out=False)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    out = _Out(records=args.format == "records")
    try:
        return args.func(args, out)
    except BudgetExceededError as exc:
        if out.records:
            print(f"error=budget detail={exc}")
        else:
            print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FormatError, GraphError, ValueError, OSError, CapabilityError) as exc:
        if out.records:
            print(f"error=usage detail={exc}")
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
