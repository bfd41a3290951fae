"""Instance generators: named families, seeded random graphs, multicolored
clique instances and their reduction to weighted Shortest Secluded Path.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .errors import InputError
from .graph import Graph, format_graph, parse_directives


# -- named families ------------------------------------------------------

def complete_graph(n: int, s: int = 0, t=None) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2), s, t)


def path_graph(n: int) -> Graph:
    """P_n with the terminals at the two ends."""
    return Graph(n, [(i, i + 1) for i in range(n - 1)], 0, n - 1)


def cycle_graph(n: int, s: int = 0, t=None) -> Graph:
    if n < 3:
        raise InputError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], s, n // 2 if t is None else t)


def star_graph(leaves: int, s: int = 0, t=None) -> Graph:
    """K_{1,leaves} with center 0; default terminals are the center and the last leaf."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], s,
                 leaves if t is None else t)


def grid_graph(rows: int, cols: int, s: int = 0, t=None) -> Graph:
    """rows x cols grid, vertex ``r*cols + c``; default terminals in opposite corners."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges, s, rows * cols - 1 if t is None else t)


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b} on sides ``0..a-1`` and ``a..a+b-1`` with s = 0, t = a."""
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)], 0, a)


def fig1_graph() -> Graph:
    """The small example graph from the introduction of the problem.

    Ids: s=0, p1..p3 = 1..3, t=4, n1=5, n2=6, n4=7, n5=8, n6=9, o1=10, o2=11.
    The path s-p1-p2-p3-t has five vertices and five neighbors.
    """
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
             (4, 7), (5, 10), (7, 10), (6, 11), (8, 11), (8, 9)]
    return Graph(12, edges, 0, 4)


# -- random families -----------------------------------------------------

def random_graph(n: int, p: float, seed: int, s: int = 0, t=None) -> Graph:
    """G(n, p) with terminals 0 and n-1 unless given."""
    if not 0 <= p <= 1:
        raise InputError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges, s, t)


def random_connected(n: int, m: int, seed: int, s: int = 0, t=None) -> Graph:
    """Connected graph with exactly ``m`` edges: a random tree plus random chords."""
    if not n - 1 <= m <= n * (n - 1) // 2:
        raise InputError(f"a connected graph on {n} vertices has {n - 1}..{n * (n - 1) // 2} edges")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    rest = [e for e in itertools.combinations(range(n), 2) if e not in edges]
    rng.shuffle(rest)
    edges.update(rest[:m - len(edges)])
    return Graph(n, sorted(edges), s, t)


def random_modules(sizes, p: float, seed: int) -> Graph:
    """Blow-up of a random graph: module ``i`` has ``sizes[i]`` vertices and is
    randomly a clique or independent set; modules are fully joined with prob ``p``."""
    rng = random.Random(seed)
    ids, start = [], 0
    for sz in sizes:
        ids.append(range(start, start + sz))
        start += sz
    edges = []
    for i, mod in enumerate(ids):
        if rng.random() < 0.5:
            edges.extend(itertools.combinations(mod, 2))
        for j in range(i + 1, len(ids)):
            if rng.random() < p:
                edges.extend((u, v) for u in mod for v in ids[j])
    return Graph(start, edges, 0, start - 1)


def random_cluster(cover: int, clique_sizes, p: float, seed: int) -> Graph:
    """Small cover ``0..cover-1`` (random inside) plus disjoint cliques, each
    fully joined to a random part of the cover; twin cover number <= ``cover``."""
    rng = random.Random(seed)
    edges = [e for e in itertools.combinations(range(cover), 2) if rng.random() < p]
    v = cover
    for sz in clique_sizes:
        members = range(v, v + sz)
        edges.extend(itertools.combinations(members, 2))
        seen = [x for x in range(cover) if rng.random() < p] or [rng.randrange(cover)]
        edges.extend((x, u) for x in seen for u in members)
        v += sz
    return Graph(v, edges, 0, v - 1)


# -- multicolored clique -------------------------------------------------

@dataclass(frozen=True)
class McInstance:
    graph: Graph
    parts: tuple        # k disjoint independent vertex sets covering V
    r: int

    def __post_init__(self):
        check_mc(self.graph, self.parts, self.r)

    @property
    def k(self) -> int:
        return len(self.parts)


def check_mc(g: Graph, parts, r: int) -> None:
    flat = [v for part in parts for v in part]
    if sorted(flat) != list(range(g.n)):
        raise InputError("parts must be disjoint and cover every vertex")
    for i, part in enumerate(parts):
        if not part:
            raise InputError(f"part {i} is empty")
        for u, v in itertools.combinations(part, 2):
            if g.has_edge(u, v):
                raise InputError(f"part {i} is not independent: edge {u}-{v}")
    for v in range(g.n):
        if len(g.neighbors(v)) != r:
            raise InputError(f"vertex {v} has degree {len(g.neighbors(v))}, expected {r}")


def has_multicolored_clique(mc: McInstance) -> bool:
    """Brute force: one vertex per part, all pairwise adjacent."""
    g = mc.graph
    for pick in itertools.product(*mc.parts):
        if all(g.has_edge(u, v) for u, v in itertools.combinations(pick, 2)):
            return True
    return False


def random_mc(k: int, part_size: int, r: int, seed: int,
              attempts: int = 50, node_budget: int = 20_000) -> McInstance:
    """Random ``r``-regular graph whose ``k`` parts of ``part_size`` vertices are independent.

    Part ``i`` is ``i*part_size .. (i+1)*part_size - 1``.  Each attempt is a
    randomised backtracking search over cross-part edges.
    """
    if k < 2 or part_size < 1:
        raise InputError("need k >= 2 parts of at least one vertex")
    n = k * part_size
    if not 0 <= r <= n - part_size or (n * r) % 2:
        raise InputError(f"no {r}-regular graph with {k} parts of size {part_size}")
    part = [v // part_size for v in range(n)]
    rng = random.Random(seed)
    for _ in range(attempts):
        edges = _regular_search(n, r, part, rng, node_budget)
        if edges is not None:
            g = Graph(n, sorted(edges), 0, n - 1)
            parts = tuple(tuple(range(i * part_size, (i + 1) * part_size)) for i in range(k))
            return McInstance(g, parts, r)
    raise InputError(f"no {r}-regular multicolored graph found after {attempts} attempts")


def _regular_search(n, r, part, rng, budget):
    cand = {v: [u for u in range(n) if part[u] != part[v]] for v in range(n)}
    for v in cand:
        rng.shuffle(cand[v])
    deg = [0] * n
    edges = set()
    nodes = 0

    def go():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return False
        v = next((x for x in range(n) if deg[x] < r), None)
        if v is None:
            return True
        for u in cand[v]:
            e = (min(u, v), max(u, v))
            if deg[u] >= r or e in edges:
                continue
            edges.add(e)
            deg[u] += 1
            deg[v] += 1
            if go():
                return True
            edges.discard(e)
            deg[u] -= 1
            deg[v] -= 1
        return False

    return edges if go() else None


@dataclass(frozen=True)
class ReducedInstance:
    graph: Graph
    threshold: int
    d: int
    source: McInstance


def reduce_mc(mc: McInstance) -> ReducedInstance:
    """Weighted graph where a secluded shortest path exists iff ``mc`` has a clique.

    Numbering: original vertices, then s, t, one vertex per original edge (in
    sorted edge order, joined to both endpoints with weight k+1), then
    ``w_1..w_{k-1}`` with ``w_h`` joined to parts h and h+1 with weight 1.
    """
    g, k, n = mc.graph, mc.k, mc.graph.n
    s, t = n, n + 1
    E = list(g.edges())
    edges = [(s, v, 1) for v in mc.parts[0]] + [(t, v, 1) for v in mc.parts[-1]]
    for idx, (u, v) in enumerate(E):
        ve = n + 2 + idx
        edges += [(u, ve, k + 1), (v, ve, k + 1)]
    for h in range(k - 1):
        w = n + 2 + len(E) + h
        edges += [(w, v, 1) for v in mc.parts[h] + mc.parts[h + 1]]
    total = n + 2 + len(E) + k - 1
    threshold = mc.r * k - math.comb(k, 2) + n - k
    return ReducedInstance(Graph(total, edges, s, t), threshold, 2 * k, mc)


def format_mc(mc: McInstance, comment=None) -> str:
    text = format_graph(mc.graph, comment)
    return text + "".join(f"part {i} {' '.join(map(str, p))}\n" for i, p in enumerate(mc.parts))


def parse_mc(text: str) -> McInstance:
    n, edges, s, t, parts = parse_directives(text)
    if not parts or sorted(parts) != list(range(len(parts))):
        raise InputError("multicolored instances need 'part 0' .. 'part k-1' lines")
    g = Graph(n, edges, 0 if s is None else s, n - 1 if t is None else t)
    r = len(g.neighbors(0))
    return McInstance(g, tuple(tuple(parts[i]) for i in range(len(parts))), r)
