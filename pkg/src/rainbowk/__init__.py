"""Rainbow k-coloring toolkit: solvers, covers, and hardness-instance compilation."""

from .biclique import (
    Biclique,
    BipartiteGraph,
    closed_biclique,
    cover_bipartite_complement_greedy,
    cover_bipartite_complement_random,
    cover_complement_colored,
    cover_complete_graph,
    make_bipartite,
)
from .cnf import CnfFormula, evaluate, parse_dimacs, to_dimacs
from .core import (
    INFINITY,
    BudgetExceededError,
    DisjointSets,
    FormatError,
    Graph,
    GraphError,
    Instance,
    PartialColoring,
    bfs_distances,
    build_graph,
    feasible_pairs,
    greedy_proper_coloring,
    make_instance,
)
from .maxrainbow import (
    KernelResult,
    MaxSolveResult,
    choose_paths,
    derandomized_approx,
    kernelize,
    solve_max_rainbow,
)
from .solvers import (
    QuotientStructure,
    brute_force_count,
    brute_force_solve,
    count_satisfying_2colorings,
    extract_2coloring,
    find_coloring,
    quotient_classes,
    solve_subset_rainbow,
)
from .verify import Walk, find_guided_walk, is_rainbow_connected, verify_requests

__all__ = [
    "Biclique",
    "BipartiteGraph",
    "BudgetExceededError",
    "CnfFormula",
    "DisjointSets",
    "FormatError",
    "Graph",
    "GraphError",
    "INFINITY",
    "Instance",
    "KernelResult",
    "MaxSolveResult",
    "PartialColoring",
    "QuotientStructure",
    "Walk",
    "bfs_distances",
    "brute_force_count",
    "brute_force_solve",
    "build_graph",
    "choose_paths",
    "closed_biclique",
    "count_satisfying_2colorings",
    "cover_bipartite_complement_greedy",
    "cover_bipartite_complement_random",
    "cover_complement_colored",
    "cover_complete_graph",
    "derandomized_approx",
    "evaluate",
    "extract_2coloring",
    "feasible_pairs",
    "find_coloring",
    "find_guided_walk",
    "greedy_proper_coloring",
    "is_rainbow_connected",
    "kernelize",
    "make_bipartite",
    "make_instance",
    "parse_dimacs",
    "quotient_classes",
    "solve_max_rainbow",
    "solve_subset_rainbow",
    "to_dimacs",
    "verify_requests",
]
