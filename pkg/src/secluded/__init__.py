"""Secluded s-t paths: short paths with few neighbors.

Solvers for graphs of bounded clique-width (:mod:`.cw`), bounded
neighborhood diversity (:mod:`.nd`) and bounded twin cover number
(:mod:`.tc`), the layered shortest-path algorithm and the weighted
enumeration (:mod:`.shortest`), brute-force oracles (:mod:`.oracle`) and
instance generators (:mod:`.generators`).
"""

from .cw import accepted_pairs, cw_profile, join_reachable, solve_cw, solve_cw_short
from .errors import BudgetExceeded, InputError, InvariantViolation
from .expression import (ExpressionTree, builder_expression, eval_expression, linear_expression,
                         format_expression, make_irredundant, naive_expression,
                         parse_expression)
from .graph import Graph, format_graph, parse_graph, read_graph, twin_cover, twin_partition
from .nd import NdSolver, nd_secluded_kpath, nd_short_secluded
from .oracle import (PathWitness, bf_secluded_kpath, bf_short_secluded,
                     bf_shortest_secluded, make_witness, path_profile)
from .shortest import dijkstra, layering, shortest_secluded, weighted_shortest_secluded
from .tc import TcSolver, tc_secluded_kpath, tc_short_secluded

__all__ = [
    "BudgetExceeded", "ExpressionTree", "Graph", "InputError", "InvariantViolation",
    "NdSolver", "PathWitness", "TcSolver", "accepted_pairs", "bf_secluded_kpath",
    "bf_short_secluded", "bf_shortest_secluded", "builder_expression", "cw_profile",
    "dijkstra", "eval_expression", "format_expression", "format_graph", "join_reachable",
    "layering", "linear_expression", "make_irredundant", "make_witness", "naive_expression",
    "nd_secluded_kpath", "nd_short_secluded", "parse_expression", "parse_graph", "path_profile", "read_graph",
    "shortest_secluded", "solve_cw", "solve_cw_short", "tc_secluded_kpath", "tc_short_secluded",
    "twin_cover", "twin_partition", "weighted_shortest_secluded",
]
