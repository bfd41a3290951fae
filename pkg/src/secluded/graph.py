"""Undirected graphs with terminals, plus the structural decompositions the
solvers rely on: twin partitions, quotient graphs and twin covers.

Vertices are the integers ``0..n-1``.  A :class:`Graph` is immutable once
built; every solver takes one as its first argument and reads the terminals
``s`` and ``t`` from it.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError, InvariantViolation

CLIQUE = "clique"
INDEPENDENT = "independent"


class Graph:
    """Simple undirected graph on ``range(n)`` with terminals ``s`` and ``t``.

    ``edges`` holds pairs ``(u, v)`` or, for a weighted graph, triples
    ``(u, v, w)`` with integer ``w >= 1``.  Mixing the two is rejected.
    """

    __slots__ = ("n", "s", "t", "adj", "_nbr", "_weights")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), s: int = 0,
                 t: Optional[int] = None, weighted: Optional[bool] = None):
        if n < 2:
            raise InputError("a graph needs at least two vertices for s and t")
        if t is None:
            t = n - 1
        for v in (s, t):
            if not 0 <= v < n:
                raise InputError(f"terminal {v} out of range 0..{n - 1}")
        if s == t:
            raise InputError("terminals s and t must be distinct")
        nbr = [set() for _ in range(n)]
        weights = {}
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = None
            elif len(e) == 3:
                u, v, w = e
            else:
                raise InputError(f"bad edge record {e!r}")
            if weighted is None:
                weighted = w is not None
            if weighted != (w is not None):
                raise InputError("cannot mix weighted and unweighted edges")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            if v in nbr[u]:
                raise InputError(f"parallel edge ({u}, {v})")
            if w is not None:
                if int(w) != w or w < 1:
                    raise InputError(f"weight {w} of ({u}, {v}) is not a positive integer")
                weights[(min(u, v), max(u, v))] = int(w)
            nbr[u].add(v)
            nbr[v].add(u)
        self.n = n
        self.s = s
        self.t = t
        self._nbr = tuple(frozenset(a) for a in nbr)
        self.adj = tuple(tuple(sorted(a)) for a in nbr)
        self._weights = weights if weighted else None

    # -- basic queries -------------------------------------------------
    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @property
    def weighted(self) -> bool:
        return self._weights is not None

    def neighbors(self, v: int) -> frozenset:
        return self._nbr[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr[u]

    def weight(self, u: int, v: int) -> int:
        if not self.has_edge(u, v):
            raise InputError(f"no edge ({u}, {v})")
        if self._weights is None:
            return 1
        return self._weights[(min(u, v), max(u, v))]

    def edges(self):
        """Edges as sorted ``(u, v)`` pairs with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_records(self):
        if self._weights is None:
            return self.edges()
        return [(u, v, self._weights[(u, v)]) for u, v in self.edges()]

    def with_terminals(self, s: int, t: int) -> "Graph":
        return Graph(self.n, self.edge_records(), s, t, weighted=self.weighted)

    def unweighted(self) -> "Graph":
        return Graph(self.n, self.edges(), self.s, self.t, weighted=False)

    def with_unit_weights(self) -> "Graph":
        return Graph(self.n, [(u, v, 1) for u, v in self.edges()], self.s, self.t,
                     weighted=True)

    def induced_edges(self, vertices: Iterable[int]):
        vs = set(vertices)
        return [(u, v) for u, v in self.edges() if u in vs and v in vs]

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InputError(f"vertex {v!r} out of range 0..{self.n - 1}")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.s, self.t, self.adj, self._weights) == (
            other.n, other.s, other.t, other.adj, other._weights)

    def __hash__(self):
        return hash((self.n, self.s, self.t, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, s={self.s}, t={self.t})"


def neighborhood(g: Graph, u: Iterable[int]) -> frozenset:
    """Open neighborhood N(U): vertices outside ``u`` adjacent to some member."""
    us = set(u)
    for v in us:
        g.check_vertex(v)
    out = set()
    for v in us:
        out |= g.neighbors(v)
    return frozenset(out - us)


def bfs_layers(g: Graph, root: int) -> list:
    """Hop distance from ``root`` to every vertex; ``math.inf`` if unreachable."""
    g.check_vertex(root)
    dist = [math.inf] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if dist[v] == math.inf:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def are_twins(g: Graph, u: int, v: int) -> bool:
    return g.neighbors(u) - {v} == g.neighbors(v) - {u}


# -- twin partitions -----------------------------------------------------

@dataclass(frozen=True)
class TwinPartition:
    modules: tuple          # tuple of frozensets, ordered by smallest member
    kinds: tuple            # CLIQUE or INDEPENDENT per module
    module_of: tuple        # vertex -> module index

    @property
    def size(self) -> int:
        return len(self.modules)

    def split_off(self, vertices: Iterable[int]) -> "TwinPartition":
        """Move each given vertex into its own singleton module."""
        pulled = set(vertices)
        parts = []
        for mod in self.modules:
            rest = mod - pulled
            if rest:
                parts.append(rest)
            parts.extend(frozenset([v]) for v in sorted(mod & pulled))
        kind_of = {}
        for mod, kind in zip(self.modules, self.kinds):
            for v in mod:
                kind_of[v] = kind
        return _make_partition(parts, len(self.module_of),
                               [kind_of[min(p)] if len(p) > 1 else CLIQUE for p in parts])


def _make_partition(parts, n, kinds) -> TwinPartition:
    order = sorted(range(len(parts)), key=lambda i: min(parts[i]))
    modules = tuple(frozenset(parts[i]) for i in order)
    kinds = tuple(kinds[i] for i in order)
    module_of = [0] * n
    for i, mod in enumerate(modules):
        for v in mod:
            module_of[v] = i
    return TwinPartition(modules, kinds, tuple(module_of))


def twin_partition(g: Graph) -> TwinPartition:
    """The coarsest twin partition, so ``size`` equals the neighborhood diversity.

    Being twins is an equivalence relation, so greedily attaching each vertex
    to the first module whose representative it is twin with yields the twin
    classes exactly.  Singletons are reported as clique modules.
    """
    reps = []       # representative per module
    members = []
    for v in range(g.n):
        for i, rep in enumerate(reps):
            if are_twins(g, rep, v):
                members[i].append(v)
                break
        else:
            reps.append(v)
            members.append([v])
    kinds = []
    for mod in members:
        if len(mod) > 1 and g.has_edge(mod[0], mod[1]):
            kinds.append(CLIQUE)
        elif len(mod) > 1:
            kinds.append(INDEPENDENT)
        else:
            kinds.append(CLIQUE)
    return _make_partition(members, g.n, kinds)


def check_twin_partition(g: Graph, p: TwinPartition) -> None:
    seen = sorted(v for mod in p.modules for v in mod)
    if seen != list(range(g.n)):
        raise InvariantViolation("modules do not partition the vertex set")
    for mod, kind in zip(p.modules, p.kinds):
        vs = sorted(mod)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                if not are_twins(g, u, v):
                    raise InvariantViolation(f"{u} and {v} share a module but are not twins")
                if (kind == CLIQUE) != g.has_edge(u, v):
                    raise InvariantViolation(f"module {vs} is not a {kind}")


@dataclass(frozen=True)
class QuotientGraph:
    r: int
    adj: tuple              # module index -> frozenset of adjacent module indices

    def edges(self):
        return [(i, j) for i in range(self.r) for j in sorted(self.adj[i]) if i < j]

    def is_connected(self, nodes: Iterable[int]) -> bool:
        nodes = set(nodes)
        if not nodes:
            return True
        start = min(nodes)
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in self.adj[i]:
                if j in nodes and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen == nodes


def quotient(g: Graph, p: TwinPartition) -> QuotientGraph:
    """Graph on modules; raises if ``p`` is not a twin partition of ``g``."""
    check_twin_partition(g, p)
    adj = [set() for _ in p.modules]
    for i, mi in enumerate(p.modules):
        for j, mj in enumerate(p.modules):
            if i >= j:
                continue
            hits = sum(1 for u in mi for v in mj if g.has_edge(u, v))
            if hits == 0:
                continue
            if hits != len(mi) * len(mj):
                raise InvariantViolation(f"modules {i} and {j} are only partially adjacent")
            adj[i].add(j)
            adj[j].add(i)
    return QuotientGraph(len(p.modules), tuple(frozenset(a) for a in adj))


# -- twin covers ---------------------------------------------------------

@dataclass(frozen=True)
class TwinCoverDecomposition:
    cover: frozenset
    cliques: tuple          # components of G - cover, by size desc then smallest id
    class_of_clique: tuple  # clique index -> neighborhood-class index


def clique_components(g: Graph, removed: Iterable[int]) -> list:
    """Components of ``g - removed``, each checked to be a clique."""
    removed = set(removed)
    seen = set(removed)
    comps = []
    for v in range(g.n):
        if v in seen:
            continue
        comp = {v}
        seen.add(v)
        stack = [v]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        for u in comp:
            if len(g.neighbors(u) & comp) != len(comp) - 1:
                raise InvariantViolation(f"component {sorted(comp)} is not a clique")
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (-len(c), min(c)))
    return comps


def group_by_cover_neighbors(g: Graph, X: frozenset, cliques: Sequence[frozenset]):
    """Class index per clique, classes numbered by first occurrence in ``cliques``."""
    ids = {}
    labels = []
    for c in cliques:
        sigs = {g.neighbors(v) & X for v in c}
        if len(sigs) != 1:
            raise InvariantViolation(f"clique {sorted(c)} spans two neighborhood classes")
        sig = sigs.pop()
        labels.append(ids.setdefault(sig, len(ids)))
    return labels


def min_vertex_cover(n: int, edges: Sequence[tuple]) -> frozenset:
    """Exact minimum vertex cover by branch and bound (exponential in the answer)."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = [frozenset(v for e in edges for v in e)]

    def remove(a, vs):
        a = {u: set(ws) for u, ws in a.items() if u not in vs}
        for ws in a.values():
            ws -= vs
        return a

    def search(a, chosen):
        if len(chosen) >= len(best[0]):
            return
        a = {u: ws for u, ws in a.items() if ws}
        if not a:
            best[0] = frozenset(chosen)
            return
        # degree-one rule: taking the neighbor is never worse
        for u in sorted(a):
            if len(a[u]) == 1:
                (w,) = a[u]
                search(remove(a, {w}), chosen | {w})
                return
        m = sum(len(ws) for ws in a.values()) // 2
        maxdeg = max(len(ws) for ws in a.values())
        if len(chosen) + -(-m // maxdeg) >= len(best[0]):
            return
        v = min(a, key=lambda u: (-len(a[u]), u))
        search(remove(a, {v}), chosen | {v})
        nv = set(a[v])
        search(remove(a, nv | {v}), chosen | nv)

    search(adj, frozenset())
    return best[0]


def twin_cover(g: Graph) -> TwinCoverDecomposition:
    """A minimum twin cover: a minimum vertex cover of the non-true-twin edges."""
    residual = [(u, v) for u, v in g.edges() if not are_twins(g, u, v)]
    X = min_vertex_cover(g.n, residual)
    cliques = clique_components(g, X)
    return TwinCoverDecomposition(X, tuple(cliques),
                                  tuple(group_by_cover_neighbors(g, X, cliques)))


def is_twin_cover(g: Graph, X: Iterable[int]) -> bool:
    X = set(X)
    return all(u in X or v in X or are_twins(g, u, v) for u, v in g.edges())


# -- text format ---------------------------------------------------------

def _ints(tokens, lineno):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_directives(text: str):
    """Split graph text into header, edges, terminals and ``part`` lines."""
    header = None
    edges = []
    kinds = set()
    s = t = None
    parts = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        key, args = tok[0], tok[1:]
        if key == "p":
            if header is not None or len(args) != 2:
                raise InputError(f"line {lineno}: bad or repeated header")
            header = _ints(args, lineno)
        elif key == "e":
            if len(args) != 2:
                raise InputError(f"line {lineno}: 'e' takes two vertices")
            edges.append(tuple(_ints(args, lineno)))
            kinds.add("e")
        elif key == "ew":
            if len(args) != 3:
                raise InputError(f"line {lineno}: 'ew' takes two vertices and a weight")
            edges.append(tuple(_ints(args, lineno)))
            kinds.add("ew")
        elif key in ("s", "t"):
            if len(args) != 1:
                raise InputError(f"line {lineno}: '{key}' takes one vertex")
            (v,) = _ints(args, lineno)
            if key == "s":
                s = v
            else:
                t = v
        elif key == "part":
            if not args:
                raise InputError(f"line {lineno}: empty part")
            nums = _ints(args, lineno)
            if nums[0] in parts:
                raise InputError(f"line {lineno}: part {nums[0]} repeated")
            parts[nums[0]] = nums[1:]
        else:
            raise InputError(f"line {lineno}: unknown directive {key!r}")
    if header is None:
        raise InputError("missing 'p <n> <m>' header")
    if len(kinds) > 1:
        raise InputError("cannot mix 'e' and 'ew' edges")
    n, m = header
    if m != len(edges):
        raise InputError(f"header announces {m} edges, found {len(edges)}")
    return n, edges, s, t, parts


def parse_graph(text: str) -> Graph:
    n, edges, s, t, _ = parse_directives(text)
    if s is None or t is None:
        raise InputError("graph needs both 's' and 't' directives")
    return Graph(n, edges, s, t)


def format_graph(g: Graph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p {g.n} {g.m}")
    lines.append(f"s {g.s}")
    lines.append(f"t {g.t}")
    for rec in g.edge_records():
        if len(rec) == 3:
            lines.append("ew %d %d %d" % rec)
        else:
            lines.append("e %d %d" % rec)
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())
