"""Reference solvers by explicit enumeration of simple s-t paths.

Everything here is exponential and deliberately naive; the other solvers
are checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import BudgetExceeded, InputError, InvariantViolation
from .graph import Graph, bfs_layers, neighborhood

DEFAULT_BUDGET = 10 ** 7


@dataclass(frozen=True)
class PathWitness:
    """An s-t path.  ``length`` counts vertices, not edges."""

    vertices: tuple
    length: int
    neighbor_count: int
    weight: Optional[int] = None

    def to_dict(self):
        out = {"path": list(self.vertices), "length": self.length,
               "neighbors": self.neighbor_count}
        if self.weight is not None:
            out["weight"] = self.weight
        return out


def make_witness(g: Graph, vertices: Sequence[int]) -> PathWitness:
    """Validate ``vertices`` as a simple s-t path of ``g`` and wrap it."""
    vs = tuple(vertices)
    if not vs or vs[0] != g.s or vs[-1] != g.t:
        raise InvariantViolation(f"{vs} does not run from s={g.s} to t={g.t}")
    if len(set(vs)) != len(vs):
        raise InvariantViolation(f"{vs} repeats a vertex")
    for a, b in zip(vs, vs[1:]):
        if not g.has_edge(a, b):
            raise InvariantViolation(f"{vs} uses non-edge ({a}, {b})")
    weight = sum(g.weight(a, b) for a, b in zip(vs, vs[1:])) if g.weighted else None
    return PathWitness(vs, len(vs), len(neighborhood(g, vs)), weight)


def enumerate_st_paths(g: Graph, max_len: int,
                       budget: int = DEFAULT_BUDGET) -> Iterator[PathWitness]:
    """Every simple s-t path with at most ``max_len`` vertices, in lexicographic order.

    ``budget`` bounds the number of DFS extensions; exceeding it raises
    :class:`BudgetExceeded` instead of running for hours.
    """
    if max_len < 2:
        raise InputError("max_len must be at least 2")
    s, t = g.s, g.t
    path = [s]
    on_path = [False] * g.n
    on_path[s] = True
    expansions = 0
    # iterator stack over sorted adjacency gives lexicographic output
    stack = [iter(g.adj[s])]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            on_path[path.pop()] = False
            continue
        if on_path[nxt]:
            continue
        expansions += 1
        if expansions > budget:
            raise BudgetExceeded(f"path enumeration exceeded {budget} expansions")
        if nxt == t:
            yield make_witness(g, path + [t])
            continue
        if len(path) + 2 > max_len:
            continue
        path.append(nxt)
        on_path[nxt] = True
        stack.append(iter(g.adj[nxt]))


def path_profile(g: Graph, max_len: Optional[int] = None,
                 budget: int = DEFAULT_BUDGET) -> frozenset:
    """All ``(length, neighbor_count)`` pairs realised by simple s-t paths."""
    return frozenset((p.length, p.neighbor_count)
                     for p in enumerate_st_paths(g, max_len or g.n, budget))


def bf_short_secluded(g: Graph, k: int, l: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Is there an s-t path with at most ``k`` vertices and at most ``l`` neighbors?"""
    if k < 2 or l < 0:
        raise InputError("need k >= 2 and l >= 0")
    return any(p.neighbor_count <= l for p in enumerate_st_paths(g, k, budget))


def bf_secluded_kpath(g: Graph, k: int, l: int, exact_l: bool = False,
                      budget: int = DEFAULT_BUDGET) -> bool:
    """Is there an s-t path with exactly ``k`` vertices and at most (or exactly) ``l`` neighbors?"""
    if k < 2 or l < 0:
        raise InputError("need k >= 2 and l >= 0")
    for p in enumerate_st_paths(g, k, budget):
        if p.length != k:
            continue
        if p.neighbor_count == l or (not exact_l and p.neighbor_count < l):
            return True
    return False


def bf_shortest_secluded(g: Graph, budget: int = DEFAULT_BUDGET) -> Optional[PathWitness]:
    """Among shortest s-t paths (by hops, or by weight if weighted) one with fewest neighbors."""
    if g.weighted:
        paths = list(enumerate_st_paths(g, g.n, budget))
        if not paths:
            return None
        best = min(p.weight for p in paths)
        paths = [p for p in paths if p.weight == best]
    else:
        d = bfs_layers(g, g.s)[g.t]
        if d == float("inf"):
            return None
        paths = list(enumerate_st_paths(g, d + 1, budget))
    return min(paths, key=lambda p: (p.neighbor_count, p.vertices))
