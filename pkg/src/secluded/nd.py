"""Secluded paths on graphs of small neighborhood diversity.

The solver guesses which twin modules the path touches.  For a guess the
neighbor count is fixed in closed form, and whether a path with exactly
``k`` vertices visiting every guessed module exists is decided by an
integer program over per-module visit counts and inter-module flows.
Feasible solutions are turned back into explicit paths through an Euler
trail of the flow multigraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, InputError, InvariantViolation
from .graph import (INDEPENDENT, Graph, QuotientGraph, TwinPartition, quotient,
                    twin_partition)
from .ilp import EQ, GE, LE, IlpInstance, feasible
from .oracle import PathWitness, make_witness

DEFAULT_MAX_MODULES = 16


@dataclass(frozen=True)
class NdInstance:
    graph: Graph
    partition: TwinPartition
    quotient: QuotientGraph
    ms: int
    mt: int

    @property
    def r(self) -> int:
        return self.partition.size

    def module(self, i) -> frozenset:
        return self.partition.modules[i]


@dataclass(frozen=True)
class IlpP:
    ilp: IlpInstance
    subset: tuple
    neighbor_modules: tuple
    k: int


def prepare(g: Graph) -> NdInstance:
    """Coarsest twin partition with ``s`` and ``t`` split into singleton modules."""
    p = twin_partition(g).split_off([g.s, g.t])
    q = quotient(g, p)
    return NdInstance(g, p, q, p.module_of[g.s], p.module_of[g.t])


def _xname(i, j):
    return ("x", i, j)


def _yname(i):
    return ("y", i)


def build_ilp(inst: NdInstance, subset, k: int) -> IlpP:
    """Flow formulation for a path through exactly the modules in ``subset``."""
    subset = tuple(sorted(set(subset)))
    if inst.ms not in subset or inst.mt not in subset:
        raise InputError("subset must contain both terminal modules")
    inside = set(subset)
    adj = {i: sorted(inst.quotient.adj[i] & inside) for i in subset}
    size = {i: len(inst.module(i)) for i in subset}
    ilp = IlpInstance()
    for i in subset:
        for j in adj[i]:
            ilp.add_var(_xname(i, j), 0, min(size[i], size[j], k))
    for i in subset:
        ilp.add_var(_yname(i), 1, size[i])

    def out_flow(i, sign=1):
        return {_xname(i, j): sign for j in adj[i]}

    def in_flow(i, sign=1):
        return {_xname(j, i): sign for j in adj[i]}

    ilp.add_constraint({_yname(i): 1 for i in subset}, EQ, k)
    s, t = inst.ms, inst.mt
    for i in subset:
        if i in (s, t):
            continue
        bal = out_flow(i)
        for name, c in in_flow(i, -1).items():
            bal[name] = bal.get(name, 0) + c
        ilp.add_constraint(bal, EQ, 0)
    ilp.add_constraint(out_flow(s), EQ, 1)
    ilp.add_constraint(in_flow(s), EQ, 0)
    ilp.add_constraint(in_flow(t), EQ, 1)
    ilp.add_constraint(out_flow(t), EQ, 0)
    # terminal flows are pinned above; visit counts only tie in elsewhere
    for i in subset:
        if i in (s, t):
            continue
        if inst.partition.kinds[i] == INDEPENDENT:
            ilp.add_constraint({**out_flow(i), _yname(i): -1}, EQ, 0)
        else:
            ilp.add_constraint(out_flow(i), GE, 1)
            ilp.add_constraint({**out_flow(i), _yname(i): -1}, LE, 0)
    # cut constraints, one per complementary pair (side A holds subset[0])
    first, rest = subset[0], subset[1:]
    for mask in range((1 << len(rest)) - 1):
        side = {first} | {rest[b] for b in range(len(rest)) if mask >> b & 1}
        cross = {}
        for i in side:
            for j in adj[i]:
                if j not in side:
                    cross[_xname(i, j)] = 1
                    cross[_xname(j, i)] = 1
        ilp.add_constraint(cross, GE, 1)
    nbr = tuple(sorted({j for i in subset for j in inst.quotient.adj[i]} - inside))
    return IlpP(ilp, subset, nbr, k)


def guessed_neighbor_count(inst: NdInstance, subset, k: int) -> int:
    """|N(V(P))| for any k-vertex path using exactly the modules in ``subset``."""
    inside = set(subset)
    outside = {j for i in inside for j in inst.quotient.adj[i]} - inside
    return (sum(len(inst.module(j)) for j in outside)
            + sum(len(inst.module(i)) for i in inside) - k)


def _euler_trail(arcs, start, end):
    """Hierholzer on a directed multigraph given as ``{i: sorted targets}``."""
    remaining = {i: list(reversed(ts)) for i, ts in arcs.items()}
    stack = [start]
    trail = []
    while stack:
        v = stack[-1]
        if remaining.get(v):
            stack.append(remaining[v].pop())
        else:
            trail.append(stack.pop())
    trail.reverse()
    if any(remaining.values()) or trail[0] != start or trail[-1] != end:
        raise InvariantViolation("flow does not form a single trail from M_s to M_t")
    return trail


def reconstruct_path(inst: NdInstance, subset, assignment: dict) -> PathWitness:
    """Explicit s-t path realising a feasible assignment of :func:`build_ilp`."""
    subset = tuple(sorted(subset))
    arcs = {i: [] for i in subset}
    for name, val in assignment.items():
        if name[0] == "x" and val:
            arcs[name[1]].extend([name[2]] * val)
    for ts in arcs.values():
        ts.sort()
    trail = _euler_trail(arcs, inst.ms, inst.mt)
    chunks = {}
    for i in subset:
        if i in (inst.ms, inst.mt):
            continue
        visits = len(arcs[i])
        y = assignment[_yname(i)]
        chosen = sorted(inst.module(i))[:y]
        if visits < 1 or visits > y:
            raise InvariantViolation(f"module {i}: {visits} visits for {y} vertices")
        if inst.partition.kinds[i] == INDEPENDENT and len(inst.module(i)) > 1:
            if visits != y:
                raise InvariantViolation(f"independent module {i} needs one visit per vertex")
            parts = [[v] for v in chosen]
        else:
            parts = [[v] for v in chosen[:visits - 1]] + [chosen[visits - 1:]]
        chunks[i] = parts
    path = []
    for pos, mod in enumerate(trail):
        if pos == 0:
            path.append(inst.graph.s)
        elif pos == len(trail) - 1:
            path.append(inst.graph.t)
        else:
            path.extend(chunks[mod].pop(0))
    if any(chunks.values()):
        raise InvariantViolation("trail left module chunks unused")
    return make_witness(inst.graph, path)


class NdSolver:
    """Per-graph solver that caches integer-program answers across queries."""

    def __init__(self, g: Graph, max_modules: Optional[int] = DEFAULT_MAX_MODULES):
        self.inst = prepare(g)
        if max_modules is not None and self.inst.r > max_modules:
            raise BudgetExceeded(
                f"parameter too large: {self.inst.r} modules exceed the cap of {max_modules}")
        self.stats = {"guesses": 0, "ilp_solves": 0, "ilp_nodes": 0, "reconstructions": 0}
        self._cache = {}
        middle = [i for i in range(self.inst.r) if i not in (self.inst.ms, self.inst.mt)]
        self._subsets = []
        for mask in range(1 << len(middle)):
            sub = [self.inst.ms, self.inst.mt] + [middle[b] for b in range(len(middle))
                                                  if mask >> b & 1]
            self._subsets.append(tuple(sorted(sub)))
        self._subsets.sort(key=lambda sub: (len(sub), sub))

    def kpath(self, subset, k: int) -> Optional[PathWitness]:
        """A k-vertex s-t path in G[union of subset] visiting every module of ``subset``."""
        key = (tuple(sorted(subset)), k)
        if key not in self._cache:
            self.stats["ilp_solves"] += 1
            prob = build_ilp(self.inst, key[0], k)
            sol = feasible(prob.ilp, self.stats)
            path = None
            if sol is not None:
                path = reconstruct_path(self.inst, key[0], sol)
                self.stats["reconstructions"] += 1
                self._check_witness(path, key[0], k)
            self._cache[key] = path
        return self._cache[key]

    def reconstructed(self) -> list:
        """``((subset, k), path)`` for every feasible program solved so far."""
        return [(key, p) for key, p in self._cache.items() if p is not None]

    def _check_witness(self, path, subset, k):
        mods = {self.inst.partition.module_of[v] for v in path.vertices}
        if path.length != k or mods != set(subset):
            raise InvariantViolation(f"reconstructed path {path.vertices} misses the guess")
        if path.neighbor_count != guessed_neighbor_count(self.inst, subset, k):
            raise InvariantViolation("neighbor formula disagrees with the reconstructed path")

    def secluded_kpath(self, k: int, l: int, exact_l: bool = False) -> Optional[PathWitness]:
        g = self.inst.graph
        if not 2 <= k <= g.n:
            raise InputError(f"k must lie in 2..{g.n}")
        for subset in self._subsets:
            self.stats["guesses"] += 1
            if len(subset) > k:
                continue
            if sum(len(self.inst.module(i)) for i in subset) < k:
                continue
            if not self.inst.quotient.is_connected(subset):
                continue
            nbr = guessed_neighbor_count(self.inst, subset, k)
            if nbr > l or (exact_l and nbr != l):
                continue
            path = self.kpath(subset, k)
            if path is not None:
                return path
        return None

    def short_secluded(self, k: int, l: int) -> Optional[PathWitness]:
        for kk in range(2, k + 1):
            path = self.secluded_kpath(kk, l)
            if path is not None:
                return path
        return None


def nd_kpath(inst: NdInstance, subset, k: int, stats: Optional[dict] = None) -> bool:
    """Feasibility of the flow program for ``subset`` and ``k``."""
    if len(set(subset)) > k:
        return False
    return feasible(build_ilp(inst, subset, k).ilp, stats) is not None


def nd_secluded_kpath(g: Graph, k: int, l: int, exact_l: bool = False,
                      solver: Optional[NdSolver] = None) -> bool:
    """s-t path with exactly ``k`` vertices and at most (``exact_l``: exactly) ``l`` neighbors."""
    solver = solver or NdSolver(g)
    return solver.secluded_kpath(k, l, exact_l) is not None


def nd_short_secluded(g: Graph, k: int, l: int, solver: Optional[NdSolver] = None) -> bool:
    solver = solver or NdSolver(g)
    return solver.short_secluded(k, l) is not None
