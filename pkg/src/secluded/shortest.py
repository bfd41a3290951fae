"""Shortest Secluded Path: among shortest s-t paths, fewest neighbors.

Unweighted graphs use a layered dynamic program indexed by the last edge of
the path.  Weighted graphs enumerate the (few-edge) shortest paths.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, InputError, InvariantViolation
from .graph import Graph, bfs_layers
from .oracle import PathWitness, make_witness


@dataclass(frozen=True)
class Layering:
    k: int              # dist(s, t) in edges
    layers: tuple       # layers[i]: dist(s, v) = i and dist(v, t) = k - i
    layer_of: dict      # vertex -> index, only for vertices of L

    @property
    def L(self) -> frozenset:
        return frozenset(self.layer_of)

    def R(self, n: int) -> frozenset:
        return frozenset(range(n)) - self.L


def layering(g: Graph, check: bool = False) -> Optional[Layering]:
    """Layers of vertices lying on shortest s-t paths, or ``None`` if t is unreachable."""
    if g.weighted:
        raise InputError("layering needs an unweighted graph")
    ds = bfs_layers(g, g.s)
    dt = bfs_layers(g, g.t)
    k = ds[g.t]
    if k == math.inf:
        return None
    layers = [[] for _ in range(k + 1)]
    for v in range(g.n):
        if ds[v] + dt[v] == k:
            layers[ds[v]].append(v)
    lay = Layering(k, tuple(tuple(x) for x in layers),
                   {v: i for i, x in enumerate(layers) for v in x})
    if check:
        check_layer_lemmas(g, lay)
    return lay


def check_layer_lemmas(g: Graph, lay: Layering) -> None:
    """Both locality facts.  A vertex of layer i has its L-neighbors in layers
    i-1, i, i+1, and a vertex outside L sees L within two consecutive layers."""
    if lay.layers[0] != (g.s,) or lay.layers[-1] != (g.t,):
        raise InvariantViolation("end layers must be exactly {s} and {t}")
    for v, i in lay.layer_of.items():
        for u in g.neighbors(v):
            j = lay.layer_of.get(u)
            if j is not None and abs(i - j) > 1:
                raise InvariantViolation(f"edge {v}-{u} joins layers {i} and {j}")
    for r in lay.R(g.n):
        seen = {lay.layer_of[u] for u in g.neighbors(r) if u in lay.layer_of}
        if seen and max(seen) - min(seen) > 1:
            raise InvariantViolation(f"vertex {r} outside L touches layers {sorted(seen)}")


def shortest_secluded(g: Graph, check: bool = False) -> Optional[PathWitness]:
    """A shortest s-t path with the fewest neighbors, or ``None`` if none exists.

    ``dp[(a, b)]`` is the least neighbor count of a shortest s-b path whose
    last edge is ``a-b``.  Extending by ``c`` adds the neighbors of ``c`` not
    already adjacent to ``a`` or ``b``, and ``c`` itself stops being a
    neighbor (it was one, through ``b``).  Earlier path vertices cannot touch
    ``c`` or its neighbors' layers, so the two-vertex window suffices.
    """
    lay = layering(g, check)
    if lay is None:
        return None
    N = [set(g.neighbors(v)) for v in range(g.n)]
    if lay.k == 1:
        return make_witness(g, [g.s, g.t])
    dp, pred = {}, {}
    s = g.s
    for u in lay.layers[1]:
        dp[s, u] = len(N[s] | N[u]) - 2
        pred[s, u] = None
    for i in range(1, lay.k):
        for b in lay.layers[i]:
            ins = sorted(a for a in lay.layers[i - 1] if (a, b) in dp)
            if not ins:
                continue
            for c in lay.layers[i + 1]:
                if c not in N[b]:
                    continue
                best = None
                for a in ins:
                    val = dp[a, b] - 1 + len(N[c] - N[a] - N[b] - {a, b})
                    if best is None or val < best[0]:
                        best = (val, a)
                dp[b, c] = best[0]
                pred[b, c] = best[1]
    ends = sorted((dp[a, g.t], a) for a in lay.layers[lay.k - 1] if (a, g.t) in dp)
    value, a = ends[0]
    path = [g.t, a]
    b, c = a, g.t
    while pred[b, c] is not None:
        b, c = pred[b, c], b
        path.append(b)
    path.reverse()
    out = make_witness(g, path)
    if out.neighbor_count != value:
        raise InvariantViolation(f"dp value {value} but the path has {out.neighbor_count} neighbors")
    return out


def edge_dp_table(g: Graph) -> dict:
    """Full ``(a, b) -> value`` table of the layered program (for testing)."""
    lay = layering(g)
    if lay is None:
        return {}
    N = [set(g.neighbors(v)) for v in range(g.n)]
    dp = {(g.s, u): len(N[g.s] | N[u]) - 2 for u in lay.layers[1]}
    for i in range(1, lay.k):
        for b in lay.layers[i]:
            for c in lay.layers[i + 1]:
                if c not in N[b]:
                    continue
                vals = [dp[a, b] - 1 + len(N[c] - N[a] - N[b] - {a, b})
                        for a in lay.layers[i - 1] if (a, b) in dp]
                if vals:
                    dp[b, c] = min(vals)
    return dp


# -- weighted ------------------------------------------------------------

def dijkstra(g: Graph, root: int) -> list:
    """Weighted distances from ``root`` (``math.inf`` when unreachable)."""
    g.check_vertex(root)
    dist = [math.inf] * g.n
    dist[root] = 0
    heap = [(0, root)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for u in g.neighbors(v):
            nd = d + g.weight(v, u)
            if nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


def weighted_shortest_secluded(g: Graph, budget: int = 10 ** 7,
                               stats: Optional[dict] = None) -> Optional[PathWitness]:
    """Enumerate s-t paths of weight exactly dist(s, t) and keep the most secluded.

    Weights are at least 1, so such a path has at most dist(s, t) edges.  A
    branch is cut as soon as its weight plus the distance left to ``t``
    exceeds dist(s, t).
    """
    to_t = dijkstra(g, g.t)
    d = to_t[g.s]
    if d == math.inf:
        return None
    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    best = None
    visits = 0
    path = [g.s]
    on = {g.s}
    # iterative DFS: stack of (vertex, weight so far, next neighbor index)
    stack = [(g.s, 0, 0)]
    while stack:
        v, w, i = stack.pop()
        if v == g.t:
            if len(path) - 1 > d:
                raise InvariantViolation("a shortest path has more edges than its weight")
            cand = make_witness(g, path)
            key = (cand.neighbor_count, cand.vertices)
            if best is None or key < best[0]:
                best = (key, cand)
            on.discard(path.pop())
            continue
        while i < len(nbrs[v]):
            u = nbrs[v][i]
            i += 1
            wu = w + g.weight(v, u)
            if u in on or wu + to_t[u] > d:
                continue
            visits += 1
            if visits > budget:
                raise BudgetExceeded(f"path enumeration exceeded {budget} steps")
            stack.append((v, w, i))
            stack.append((u, wu, 0))
            path.append(u)
            on.add(u)
            break
        else:
            on.discard(path.pop())
    if stats is not None:
        stats["paths_visited"] = stats.get("paths_visited", 0) + visits
    return best[1]
