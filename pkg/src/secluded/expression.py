"""Labeled-graph expression trees (introduce / union / join / relabel).

Text format::

    labels 4
    (join 3 4 (union (intro 0 3) (intro 1 4)))

The two highest labels ``r-1`` and ``r`` are reserved for the terminals:
the vertex introduced with label ``r-1`` is ``s``, the one with label ``r``
is ``t``, and relabel nodes may not touch either label.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union as _U

from .errors import InputError
from .graph import Graph


@dataclass(frozen=True)
class Introduce:
    vertex: int
    label: int


@dataclass(frozen=True)
class Union:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Join:
    i: int
    j: int
    child: "Node"


@dataclass(frozen=True)
class Relabel:
    """Relabel every vertex carrying ``i`` to ``j``."""
    i: int
    j: int
    child: "Node"


Node = _U[Introduce, Union, Join, Relabel]


def children(node):
    if isinstance(node, Union):
        return (node.left, node.right)
    if isinstance(node, (Join, Relabel)):
        return (node.child,)
    return ()


def postorder(root):
    """Nodes bottom-up without recursion (trees can be deep)."""
    out = []
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            out.append(node)
            continue
        stack.append((node, True))
        for c in reversed(children(node)):
            stack.append((c, False))
    return out


@dataclass(frozen=True)
class ExpressionTree:
    root: Node
    r: int

    def __post_init__(self):
        validate(self)

    @property
    def s_label(self) -> int:
        return self.r - 1

    @property
    def t_label(self) -> int:
        return self.r

    def introduced(self):
        return [nd for nd in postorder(self.root) if isinstance(nd, Introduce)]

    @property
    def n(self) -> int:
        return len(self.introduced())

    def terminals(self):
        s = t = None
        for nd in self.introduced():
            if nd.label == self.r - 1:
                s = nd.vertex
            elif nd.label == self.r:
                t = nd.vertex
        return s, t

    def node_count(self) -> int:
        return len(postorder(self.root))


def validate(tree: ExpressionTree) -> None:
    r = tree.r
    if r < 2:
        raise InputError("an expression needs at least the two terminal labels")
    seen = set()
    term = {r - 1: 0, r: 0}
    for nd in postorder(tree.root):
        if isinstance(nd, Introduce):
            if nd.vertex in seen:
                raise InputError(f"vertex {nd.vertex} introduced twice")
            seen.add(nd.vertex)
            if not 1 <= nd.label <= r:
                raise InputError(f"label {nd.label} outside 1..{r}")
            if nd.label in term:
                term[nd.label] += 1
        elif isinstance(nd, (Join, Relabel)):
            kind = type(nd).__name__.lower()
            for lab in (nd.i, nd.j):
                if not 1 <= lab <= r:
                    raise InputError(f"{kind} label {lab} outside 1..{r}")
            if nd.i == nd.j:
                raise InputError(f"{kind} needs two distinct labels, got {nd.i} twice")
            if isinstance(nd, Relabel) and {nd.i, nd.j} & {r - 1, r}:
                raise InputError(f"relabel {nd.i}->{nd.j} touches a reserved terminal label")
        elif not isinstance(nd, Union):
            raise InputError(f"unknown node {nd!r}")
    if sorted(seen) != list(range(len(seen))):
        raise InputError("introduced vertices must be exactly 0..n-1")
    if term[r - 1] != 1 or term[r] != 1:
        raise InputError(f"labels {r - 1} and {r} must each be introduced exactly once (s and t)")


# -- text I/O ------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_expression(text: str) -> ExpressionTree:
    body = []
    r = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if r is None and line.startswith("labels"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise InputError(f"bad header {line!r}")
            r = int(parts[1])
            continue
        body.append(line)
    tokens = _TOKEN.findall(" ".join(body))
    if not tokens:
        raise InputError("empty expression")
    pos = 0

    def number():
        nonlocal pos
        if pos >= len(tokens):
            raise InputError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        try:
            return int(tok)
        except ValueError:
            raise InputError(f"expected an integer, got {tok!r}") from None

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            got = tokens[pos] if pos < len(tokens) else "end of input"
            raise InputError(f"expected {tok!r}, got {got!r}")
        pos += 1

    def node():
        nonlocal pos
        expect("(")
        if pos >= len(tokens):
            raise InputError("unexpected end of expression")
        op = tokens[pos]
        pos += 1
        if op == "intro":
            out = Introduce(number(), number())
        elif op == "union":
            out = Union(node(), node())
        elif op == "join":
            out = Join(number(), number(), node())
        elif op == "relabel":
            out = Relabel(number(), number(), node())
        else:
            raise InputError(f"unknown operation {op!r}")
        expect(")")
        return out

    try:
        root = node()
    except RecursionError:
        raise InputError("expression nested too deeply") from None
    if pos != len(tokens):
        raise InputError(f"trailing tokens after expression: {tokens[pos]!r}")
    if r is None:
        labels = {nd.label for nd in postorder(root) if isinstance(nd, Introduce)}
        r = max(labels)
    return ExpressionTree(root, r)


def format_expression(tree: ExpressionTree) -> str:
    text = {}
    for nd in postorder(tree.root):
        if isinstance(nd, Introduce):
            text[id(nd)] = f"(intro {nd.vertex} {nd.label})"
        elif isinstance(nd, Union):
            text[id(nd)] = f"(union {text[id(nd.left)]} {text[id(nd.right)]})"
        elif isinstance(nd, Join):
            text[id(nd)] = f"(join {nd.i} {nd.j} {text[id(nd.child)]})"
        else:
            text[id(nd)] = f"(relabel {nd.i} {nd.j} {text[id(nd.child)]})"
    return f"labels {tree.r}\n{text[id(tree.root)]}\n"


# -- evaluation ----------------------------------------------------------

def _walk(tree: ExpressionTree, on_join=None):
    """Evaluate bottom-up; ``on_join(node, labels, edges, new)`` may rewrite joins."""
    results = {}
    for nd in postorder(tree.root):
        if isinstance(nd, Introduce):
            results[id(nd)] = ({nd.vertex: nd.label}, set(), nd)
        elif isinstance(nd, Union):
            la, ea, na = results.pop(id(nd.left))
            lb, eb, nb = results.pop(id(nd.right))
            la.update(lb)
            ea |= eb
            results[id(nd)] = (la, ea, Union(na, nb) if on_join else nd)
        elif isinstance(nd, Relabel):
            lab, edges, nc = results.pop(id(nd.child))
            for v, x in lab.items():
                if x == nd.i:
                    lab[v] = nd.j
            results[id(nd)] = (lab, edges, Relabel(nd.i, nd.j, nc) if on_join else nd)
        else:
            lab, edges, nc = results.pop(id(nd.child))
            side_i = [v for v, x in lab.items() if x == nd.i]
            side_j = [v for v, x in lab.items() if x == nd.j]
            new = {(min(u, v), max(u, v)) for u in side_i for v in side_j}
            out = nd
            if on_join:
                out = on_join(nd, nc, edges, new)
            edges |= new
            results[id(nd)] = (lab, edges, out)
    return results[id(tree.root)]


def eval_expression(tree: ExpressionTree):
    """The graph built by ``tree`` (terminals from the reserved labels) and its final labeling."""
    labels, edges, _ = _walk(tree)
    s, t = tree.terminals()
    g = Graph(len(labels), sorted(edges), s, t)
    return g, [labels[v] for v in range(g.n)]


def make_irredundant(tree: ExpressionTree) -> ExpressionTree:
    """Equivalent tree in which every edge is created by exactly one join.

    Joins that add no new edge are dropped.  A join that adds some new edges
    and repeats others cannot be repaired locally and is rejected.
    """

    def on_join(nd, child, edges, new):
        if not new or new <= edges:
            return child
        if new & edges:
            raise InputError(f"join {nd.i}-{nd.j} partially repeats existing edges")
        return Join(nd.i, nd.j, child)

    _, _, root = _walk(tree, on_join)
    return ExpressionTree(root, tree.r)


def is_irredundant(tree: ExpressionTree) -> bool:
    ok = [True]

    def on_join(nd, child, edges, new):
        if not new or new & edges:
            ok[0] = False
        return nd

    _walk(tree, on_join)
    return ok[0]


# -- builders ------------------------------------------------------------

def naive_expression(g: Graph) -> ExpressionTree:
    """One label per vertex; ``s`` and ``t`` get the two top labels.

    Vertices are added in id order and each edge is joined right after its
    later endpoint appears, so the tree is irredundant by construction.  A
    non-terminal vertex whose edges are all in place is relabeled to the label
    of the first such vertex; it never joins again, and sharing one label
    keeps the dynamic program small.
    """
    r = g.n
    label = {}
    nxt = 1
    for v in range(g.n):
        if v == g.s:
            label[v] = r - 1
        elif v == g.t:
            label[v] = r
        else:
            label[v] = nxt
            nxt += 1
    last = {v: max(g.adj[v], default=v) for v in range(g.n)}
    dead = None
    node = Introduce(0, label[0])
    for v in range(g.n):
        if v:
            node = Union(node, Introduce(v, label[v]))
            for u in g.adj[v]:
                if u < v:
                    node = Join(label[u], label[v], node)
        for u in range(v + 1):
            if u in (g.s, g.t) or max(last[u], u) != v:
                continue
            if dead is None:
                dead = label[u]
            elif label[u] != dead:
                node = Relabel(label[u], dead, node)
    return ExpressionTree(node, r)


def _linear_labels(g: Graph, order):
    """Label per vertex when introduced along ``order``: 1 is shared by finished
    vertices, live ones hold private labels from 2 up.  Returns (labels, top)."""
    pos = {v: i for i, v in enumerate(order)}
    last = {v: max([pos[u] for u in g.adj[v]] + [pos[v]]) for v in order}
    free, label, top = [], {}, 1
    for i, v in enumerate(order):
        if v not in (g.s, g.t):
            if free:
                label[v] = free.pop()
            else:
                top += 1
                label[v] = top
        for u in order[:i + 1]:
            if u not in (g.s, g.t) and last[u] == i and label.get(u, 1) != 1:
                free.append(label[u])
                free.sort(reverse=True)
    return label, top


def linear_expression(g: Graph, order=None) -> ExpressionTree:
    """Irredundant tree that adds vertices one at a time, reusing labels.

    A vertex keeps a private label while it still has neighbors to come and
    is then moved to the shared label 1, so the label count is three plus the
    largest number of unfinished vertices.  Without an explicit ``order`` the
    better of id order and breadth-first order from ``s`` is used.
    """
    if order is None:
        seen, queue = [g.s], [g.s]
        for v in queue:
            for u in g.adj[v]:
                if u not in seen:
                    seen.append(u)
                    queue.append(u)
        seen += [v for v in range(g.n) if v not in seen]
        options = [list(range(g.n)), seen]
        order = min(options, key=lambda o: _linear_labels(g, o)[1])
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise InputError("order must list every vertex once")
    _, top = _linear_labels(g, order)
    r = top + 2
    pos = {v: i for i, v in enumerate(order)}
    last = {v: max([pos[u] for u in g.adj[v]] + [pos[v]]) for v in order}
    cur = {g.s: r - 1, g.t: r}
    free, nxt = [], 1
    node = None
    for i, v in enumerate(order):
        if v not in cur:
            if free:
                cur[v] = free.pop()
            else:
                nxt += 1
                cur[v] = nxt
        leaf = Introduce(v, cur[v])
        node = leaf if node is None else Union(node, leaf)
        for u in order[:i]:
            if g.has_edge(u, v):
                node = Join(cur[u], cur[v], node)
        for u in order[:i + 1]:
            if u not in (g.s, g.t) and last[u] == i and cur[u] != 1:
                node = Relabel(cur[u], 1, node)
                free.append(cur[u])
                free.sort(reverse=True)
                cur[u] = 1
    return ExpressionTree(node, r)


def _union_all(nodes):
    node = nodes[0]
    for other in nodes[1:]:
        node = Union(node, other)
    return node


def clique_expression(n: int) -> ExpressionTree:
    """K_n with s = 0 and t = n-1, using labels 1, 2 and terminals 3, 4."""
    if n < 2:
        raise InputError("clique needs n >= 2")
    S, T = 3, 4
    node = Join(S, T, Union(Introduce(0, S), Introduce(n - 1, T)))
    inner = list(range(1, n - 1))
    if inner:
        body = Introduce(inner[0], 1)
        for v in inner[1:]:
            body = Relabel(2, 1, Join(1, 2, Union(body, Introduce(v, 2))))
        node = Join(T, 1, Join(S, 1, Union(node, body)))
    return ExpressionTree(node, 4)


def path_expression(n: int) -> ExpressionTree:
    """P_n with s = 0 and t = n-1 at the ends; labels 1 (done), 2 (tip), 3 (new)."""
    if n < 2:
        raise InputError("path needs n >= 2")
    S, T = 4, 5
    if n == 2:
        return ExpressionTree(Join(S, T, Union(Introduce(0, S), Introduce(1, T))), 5)
    node = Join(S, 2, Union(Introduce(0, S), Introduce(1, 2)))
    for v in range(2, n - 1):
        node = Join(2, 3, Union(node, Introduce(v, 3)))
        node = Relabel(3, 2, Relabel(2, 1, node))
    node = Join(2, T, Union(node, Introduce(n - 1, T)))
    return ExpressionTree(node, 5)


def _biclique_node(a_side, b_side, s, t, S, T):
    label = {}
    for v in a_side:
        label[v] = 1
    for v in b_side:
        label[v] = 2
    label[s] = S
    label[t] = T
    node = _union_all([Introduce(v, label[v]) for v in sorted(label)])
    present = set(label.values())
    a_labels = sorted({label[v] for v in a_side})
    b_labels = sorted({label[v] for v in b_side})
    for i in a_labels:
        for j in b_labels:
            if i in present and j in present:
                node = Join(i, j, node)
    return node


def complete_bipartite_expression(a: int, b: int) -> ExpressionTree:
    """K_{a,b} on sides 0..a-1 and a..a+b-1, with s = 0 and t = a."""
    if a < 1 or b < 1:
        raise InputError("complete bipartite needs both sides nonempty")
    return ExpressionTree(_biclique_node(range(a), range(a, a + b), 0, a, 3, 4), 4)


def cograph_expression(formula: str) -> ExpressionTree:
    """Cograph from a formula over leaves ``v``: ``(+ F ...)`` union, ``(* F ...)`` join.

    Leaves are numbered left to right; s is the first leaf, t the last.
    """
    tokens = _TOKEN.findall(formula)
    pos = 0
    leaves = []

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise InputError("unexpected end of cograph formula")
        tok = tokens[pos]
        pos += 1
        if tok == "v":
            leaves.append(len(leaves))
            return ("v", leaves[-1])
        if tok != "(":
            raise InputError(f"unexpected token {tok!r} in cograph formula")
        op = tokens[pos]
        pos += 1
        if op not in ("+", "*"):
            raise InputError(f"unknown cograph operator {op!r}")
        kids = []
        while pos < len(tokens) and tokens[pos] != ")":
            kids.append(parse())
        if pos >= len(tokens):
            raise InputError("unbalanced cograph formula")
        pos += 1
        if not kids:
            raise InputError("empty cograph operator")
        return (op, kids)

    tree = parse()
    if pos != len(tokens):
        raise InputError("trailing tokens in cograph formula")
    n = len(leaves)
    if n < 2:
        raise InputError("cograph needs at least two leaves")
    s, t = 0, n - 1
    S, T = 3, 4

    def build(f):
        """Returns (node, labels present); non-terminals carry label 1."""
        if f[0] == "v":
            v = f[1]
            lab = S if v == s else T if v == t else 1
            return Introduce(v, lab), {lab}
        op, kids = f
        node, present = build(kids[0])
        for kid in kids[1:]:
            other, other_labels = build(kid)
            if op == "+":
                node, present = Union(node, other), present | other_labels
                continue
            if 1 in other_labels:
                other = Relabel(1, 2, other)
                other_labels = (other_labels - {1}) | {2}
            node = Union(node, other)
            for i in sorted(present):
                for j in sorted(other_labels):
                    node = Join(i, j, node)
            if 2 in other_labels:
                node = Relabel(2, 1, node)
                other_labels = (other_labels - {2}) | {1}
            present = present | other_labels
        return node, present

    node, _ = build(tree)
    return ExpressionTree(node, 4)


def builder_expression(family: str, *args) -> ExpressionTree:
    """Small-label trees: ``clique n``, ``path n``, ``complete-bipartite a b``, ``cograph F``."""
    if family == "clique":
        return clique_expression(*args)
    if family == "path":
        return path_expression(*args)
    if family in ("complete-bipartite", "biclique"):
        return complete_bipartite_expression(*args)
    if family == "cograph":
        return cograph_expression(*args)
    raise InputError(f"unsupported family {family!r}")
