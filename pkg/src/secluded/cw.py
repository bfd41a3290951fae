"""Dynamic program over expression trees for s-t paths with exactly ``k``
vertices and exactly ``l`` neighbors.

A state summarises a set of vertex-disjoint paths inside the labeled graph
of a tree node by four count vectors, indexed by label:

* ``x`` -- path vertices,
* ``y`` -- neighbors of the paths,
* ``z`` -- all remaining vertices,
* ``p`` -- number of paths per unordered pair of endpoint labels.

Tables are sparse sets of states.  Counts never shrink along the tree,
so states already exceeding the target ``k`` (or ``l``) are dropped.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import InputError, InvariantViolation
from .expression import (ExpressionTree, Introduce, Relabel, Union,
                         make_irredundant, postorder)


@dataclass(frozen=True)
class CwState:
    """Readable view of one packed DP state; labels are 1-based in ``p`` keys."""

    x: tuple
    y: tuple
    z: tuple
    p: dict

    @classmethod
    def unpack(cls, state, r):
        pairs = _pairs(r)
        p = {(i + 1, j + 1): state[3 * r + q] for q, (i, j) in enumerate(pairs)
             if state[3 * r + q]}
        return cls(state[:r], state[r:2 * r], state[2 * r:3 * r], p)


_PAIR_CACHE = {}


def _pairs(r):
    """Unordered label pairs ``(i, j)``, ``i <= j``, 0-based, in a fixed order."""
    if r not in _PAIR_CACHE:
        _PAIR_CACHE[r] = [(i, j) for i in range(r) for j in range(i, r)]
    return _PAIR_CACHE[r]


def _pair_index(r):
    idx = {}
    for q, (i, j) in enumerate(_pairs(r)):
        idx[i, j] = q
        idx[j, i] = q
    return idx


# -- join feasibility ----------------------------------------------------

def join_reachable(p: dict, alpha: int, beta: int, r: Optional[int] = None) -> set:
    """All path count vectors reachable from ``p`` by connecting operations.

    ``p`` maps unordered label pairs to counts (keys in either order).  The
    result is a set of frozensets of ``((i, j), count)`` items with ``i <= j``
    and zero entries omitted; it always contains ``p`` itself.
    """
    if alpha == beta:
        raise InputError("join labels must differ")
    labels = {alpha, beta}
    for (i, j) in p:
        labels.update((i, j))
    if r is None:
        r = max(labels)
    idx = _pair_index(r)
    vec = [0] * len(_pairs(r))
    for (i, j), c in p.items():
        if c < 0:
            raise InputError("path counts must be nonnegative")
        vec[idx[i - 1, j - 1]] += c
    out = set()
    pairs = _pairs(r)
    for v in _reachable(tuple(vec), alpha - 1, beta - 1, r):
        out.add(frozenset(((pairs[q][0] + 1, pairs[q][1] + 1), c)
                          for q, c in enumerate(v) if c))
    return out


_REACH_CACHE = {}


def _reachable(vec, a0, b0, r):
    """Breadth-first closure over packed path count vectors (0-based labels)."""
    key = (vec, a0, b0, r)
    hit = _REACH_CACHE.get(key)
    if hit is not None:
        return hit
    idx = _pair_index(r)
    ab = idx[a0, b0]
    moves = []
    for a in range(r):
        for b in range(r):
            moves.append((idx[a0, a], idx[b0, b], idx[a, b], (a, b) == (b0, a0)))
    seen = {vec}
    queue = deque([vec])
    while queue:
        cur = queue.popleft()
        for qa, qb, qab, closing in moves:
            if closing:
                if cur[ab] < 2:
                    continue
            elif cur[qa] < 1 or cur[qb] < 1:
                continue
            nxt = list(cur)
            nxt[qa] -= 1
            nxt[qb] -= 1
            nxt[qab] += 1
            nxt = tuple(nxt)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    result = frozenset(seen)
    if len(_REACH_CACHE) > 200_000:
        _REACH_CACHE.clear()
    _REACH_CACHE[key] = result
    return result


# -- the dynamic program -------------------------------------------------

def check_state(state, r, size) -> None:
    """Soundness checks on a packed state living at a node with ``size`` vertices."""
    P = len(_pairs(r))
    if len(state) != 3 * r + P:
        raise InvariantViolation("state has the wrong shape")
    if any(c < 0 or c > size for c in state):
        raise InvariantViolation(f"count out of range in {state}")
    if sum(state[:3 * r]) != size:
        raise InvariantViolation(f"x+y+z does not add up to {size} in {state}")
    idx = _pair_index(r)
    for i in range(r):
        slots = sum(state[3 * r + idx[i, j]] for j in range(r)) + state[3 * r + idx[i, i]]
        if state[3 * r + idx[i, i]] > state[i] or slots > 2 * state[i]:
            raise InvariantViolation(f"endpoint slots of label {i + 1} exceed x in {state}")


def run_dp(tree: ExpressionTree, max_k: Optional[int] = None, max_l: Optional[int] = None,
           validate: bool = False, stats: Optional[dict] = None) -> set:
    """Packed root states of the DP.  States with more than ``max_k`` path
    vertices or ``max_l`` neighbors are pruned."""
    tree = make_irredundant(tree)
    r = tree.r
    s, t = tree.terminals()
    P = len(_pairs(r))
    idx = _pair_index(r)
    X, Y, Z, Q = 0, r, 2 * r, 3 * r
    big = 10 ** 9
    max_k = big if max_k is None else max_k
    max_l = big if max_l is None else max_l
    width = 3 * r + P

    def keep(st):
        return sum(st[X:Y]) <= max_k and sum(st[Y:Z]) <= max_l

    tables = {}
    sizes = {}
    total = 0
    for nd in postorder(tree.root):
        if isinstance(nd, Introduce):
            a = nd.label - 1
            on = [0] * width
            on[X + a] = 1
            on[Q + idx[a, a]] = 1
            table = {tuple(on)}
            if nd.vertex not in (s, t):
                off = [0] * width
                off[Z + a] = 1
                table.add(tuple(off))
            size = 1
        elif isinstance(nd, Union):
            left = tables.pop(id(nd.left))
            right = tables.pop(id(nd.right))
            size = sizes.pop(id(nd.left)) + sizes.pop(id(nd.right))
            table = set()
            for u in left:
                for v in right:
                    st = tuple(map(int.__add__, u, v))
                    if keep(st):
                        table.add(st)
        elif isinstance(nd, Relabel):
            child = tables.pop(id(nd.child))
            size = sizes.pop(id(nd.child))
            a, b = nd.i - 1, nd.j - 1
            table = set()
            for st in child:
                out = list(st)
                for base in (X, Y, Z):
                    out[base + b] += out[base + a]
                    out[base + a] = 0
                # pairs touching a fold into the matching pairs touching b
                for j in range(r):
                    if j == a:
                        continue
                    q = idx[a, j]
                    if out[Q + q]:
                        target = idx[b, b] if j == b else idx[b, j]
                        out[Q + target] += out[Q + q]
                        out[Q + q] = 0
                out[Q + idx[b, b]] += out[Q + idx[a, a]]
                out[Q + idx[a, a]] = 0
                table.add(tuple(out))
        else:
            child = tables.pop(id(nd.child))
            size = sizes.pop(id(nd.child))
            a, b = nd.i - 1, nd.j - 1
            table = set()
            for st in child:
                xa, xb = st[X + a], st[X + b]
                if not xa and not xb:
                    table.add(st)
                    continue
                out = list(st)
                if xa:
                    out[Y + b] += out[Z + b]
                    out[Z + b] = 0
                if xb:
                    out[Y + a] += out[Z + a]
                    out[Z + a] = 0
                if not (xa and xb):
                    st2 = tuple(out)
                    if keep(st2):
                        table.add(st2)
                    continue
                if sum(out[Y:Z]) > max_l:
                    continue
                head = tuple(out[:Q])
                for pv in _reachable(tuple(out[Q:]), a, b, r):
                    table.add(head + pv)
        if validate:
            for st in table:
                check_state(st, r, size)
        total += len(table)
        tables[id(nd)] = table
        sizes[id(nd)] = size
    if stats is not None:
        stats["dp_states"] = stats.get("dp_states", 0) + total
    return tables[id(tree.root)]


def _accepting(root_states, r, n):
    """``(k, l)`` pairs witnessed by accepting root states."""
    X, Y, Z, Q = 0, r, 2 * r, 3 * r
    idx = _pair_index(r)
    st_q = idx[r - 2, r - 1]
    out = set()
    for st in root_states:
        if st[X + r - 2] != 1 or st[X + r - 1] != 1:
            continue
        if st[Y + r - 2] or st[Y + r - 1] or st[Z + r - 2] or st[Z + r - 1]:
            continue
        pv = st[Q:]
        if pv[st_q] != 1 or sum(pv) != 1:
            continue
        k, l = sum(st[X:Y]), sum(st[Y:Z])
        if sum(st[Z:Q]) != n - k - l:
            continue
        out.add((k, l))
    return out


def accepted_pairs(tree: ExpressionTree, max_k: Optional[int] = None,
                   max_l: Optional[int] = None, validate: bool = False,
                   stats: Optional[dict] = None) -> frozenset:
    """``(k, l)`` pairs realised by s-t paths, restricted to ``k <= max_k``, ``l <= max_l``."""
    roots = run_dp(tree, max_k=max_k, max_l=max_l, validate=validate, stats=stats)
    return frozenset(_accepting(roots, tree.r, tree.n))


def cw_profile(tree: ExpressionTree, validate: bool = False,
               stats: Optional[dict] = None) -> frozenset:
    """Every ``(k, l)`` such that some s-t path has ``k`` vertices and ``l`` neighbors."""
    return accepted_pairs(tree, validate=validate, stats=stats)


def _check_kl(tree, k, l):
    n = tree.n
    if not 2 <= k <= n:
        raise InputError(f"k must lie in 2..{n}")
    if not 0 <= l <= n:
        raise InputError(f"l must lie in 0..{n}")


def solve_cw(tree: ExpressionTree, k: int, l: int, validate: bool = False,
             stats: Optional[dict] = None) -> bool:
    """Does the graph of ``tree`` have an s-t path with exactly ``k`` vertices and ``l`` neighbors?"""
    _check_kl(tree, k, l)
    return (k, l) in accepted_pairs(tree, k, l, validate, stats)


def solve_cw_short(tree: ExpressionTree, k: int, l: int, validate: bool = False,
                   stats: Optional[dict] = None) -> bool:
    """At most ``k`` vertices and at most ``l`` neighbors, in one DP pass."""
    _check_kl(tree, k, l)
    return bool(accepted_pairs(tree, k, l, validate, stats))
