"""Secluded paths on graphs of small twin cover number.

With ``X`` a minimum twin cover plus both terminals, ``G - X`` is a
disjoint union of cliques, and cliques whose vertices see the same part of
``X`` form a neighborhood class.  A path splits into sub-paths inside ``X``
joined through gaps, each gap a run of vertices inside one clique.

The neighbor count of a path is fixed by its vertices in ``X``, the classes
its gaps use and its length, so the search only needs to know, for each
way of threading the path through ``X``, how many gaps each class serves.
Several gaps may share one clique as long as the class has a vertex for
each of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, InputError, InvariantViolation
from .graph import Graph, clique_components, group_by_cover_neighbors, neighborhood, twin_cover
from .oracle import PathWitness, make_witness

DEFAULT_MAX_COVER = 8


@dataclass(frozen=True)
class NeighborhoodClass:
    signature: frozenset    # common neighbors in X
    vertices: frozenset
    cliques: tuple          # non-increasing size, ties by smallest vertex


def neighborhood_classes(g: Graph, X) -> list:
    """Partition ``V - X`` by neighborhood inside ``X``, with each class's cliques."""
    X = frozenset(X)
    cliques = clique_components(g, X)
    labels = group_by_cover_neighbors(g, X, cliques)
    grouped = {}
    for c, lab in zip(cliques, labels):
        grouped.setdefault(lab, []).append(c)
    classes = []
    for members in grouped.values():
        sig = g.neighbors(min(members[0])) & X
        classes.append(NeighborhoodClass(sig, frozenset().union(*members), tuple(members)))
    classes.sort(key=lambda c: min(c.vertices))
    return classes


@dataclass(frozen=True)
class TcPlan:
    """Sub-paths inside ``X`` in path order, plus one (class, clique, budget) per gap."""

    X: frozenset
    subpaths: tuple
    gap_classes: tuple
    clique_choice: tuple    # ((clique, budget), ...) per gap

    @property
    def on_path_X(self) -> frozenset:
        return frozenset(v for sp in self.subpaths for v in sp)

    @property
    def length(self) -> int:
        return len(self.on_path_X) + sum(b for _, b in self.clique_choice)

    def check(self, g: Graph, classes) -> None:
        seen = [v for sp in self.subpaths for v in sp]
        if len(seen) != len(set(seen)) or not set(seen) <= self.X:
            raise InvariantViolation("sub-paths overlap or leave X")
        for sp in self.subpaths:
            for a, b in zip(sp, sp[1:]):
                if not g.has_edge(a, b):
                    raise InvariantViolation(f"sub-path {sp} uses non-edge ({a}, {b})")
        if self.subpaths[0][0] != g.s or self.subpaths[-1][-1] != g.t:
            raise InvariantViolation("sub-paths must start at s and end at t")
        if len(self.gap_classes) != len(self.subpaths) - 1:
            raise InvariantViolation("need one gap between consecutive sub-paths")
        used = {}
        for j, (cls, (clique, budget)) in enumerate(zip(self.gap_classes, self.clique_choice)):
            sig = classes[cls].signature
            if self.subpaths[j][-1] not in sig or self.subpaths[j + 1][0] not in sig:
                raise InvariantViolation(f"class {cls} cannot bridge gap {j}")
            if clique not in classes[cls].cliques or budget < 1:
                raise InvariantViolation(f"bad clique choice for gap {j}")
            used[clique] = used.get(clique, 0) + budget
        for clique, total in used.items():
            if total > len(clique):
                raise InvariantViolation(f"clique {sorted(clique)} over-subscribed")


def neighbor_count(g: Graph, plan: TcPlan, k: int) -> int:
    """|N(V(P))| for any path realising ``plan`` with ``k`` vertices, without building it."""
    on_x = plan.on_path_X
    if len(on_x) + sum(b for _, b in plan.clique_choice) != k:
        raise InputError("budgets do not add up to k")
    used = frozenset().union(*(c for c, _ in plan.clique_choice)) if plan.clique_choice \
        else frozenset()
    return len(neighborhood(g, on_x | used)) + len(used) + len(on_x) - k


def materialize(g: Graph, plan: TcPlan) -> PathWitness:
    """Path for ``plan``: each gap takes the lowest unused ids of its clique."""
    taken = {}
    path = list(plan.subpaths[0])
    for (clique, budget), sp in zip(plan.clique_choice, plan.subpaths[1:]):
        start = taken.get(clique, 0)
        verts = sorted(clique)[start:start + budget]
        taken[clique] = start + budget
        path.extend(verts)
        path.extend(sp)
    return make_witness(g, path)


def _capacity(cls: NeighborhoodClass, gaps: int) -> int:
    """Most vertices ``gaps`` runs can take from ``cls`` (a run stays in one clique)."""
    return sum(len(c) for c in cls.cliques[:gaps])


def _assign_cliques(cls: NeighborhoodClass, gaps: int):
    """Clique per gap: the largest cliques first, extra gaps where room remains."""
    cliques = cls.cliques
    out = list(cliques[:gaps])
    load = {c: 1 for c in out}
    while len(out) < gaps:
        for c in cliques:
            if load[c] < len(c):
                load[c] += 1
                out.append(c)
                break
    return out


class TcSolver:
    """Per-graph solver; enumerates path skeletons once and answers any (k, l)."""

    def __init__(self, g: Graph, max_cover: Optional[int] = DEFAULT_MAX_COVER):
        self.g = g
        self.cover = twin_cover(g).cover
        if max_cover is not None and len(self.cover) > max_cover:
            raise BudgetExceeded(
                f"parameter too large: twin cover of size {len(self.cover)} exceeds the cap of {max_cover}")
        self.X = self.cover | {g.s, g.t}
        self.classes = neighborhood_classes(g, self.X)
        self.stats = {"skeleton_states": 0, "skeletons": 0, "plans": 0}
        self._skeletons = None
        self._by_k = {}

    def skeletons(self) -> dict:
        """``(X' as sorted tuple, gaps per class) -> (sub-paths, gap classes)``."""
        if self._skeletons is not None:
            return self._skeletons
        g, X, classes = self.g, self.X, self.classes
        xadj = {v: sorted(g.neighbors(v) & X) for v in X}
        bridges = {v: [c for c, cl in enumerate(classes) if v in cl.signature] for v in X}
        found = {}
        seen = set()
        zero = (0,) * len(classes)
        # stack of (current vertex, visited, gap counts, finished sub-paths, current sub-path, gap classes)
        stack = [(g.s, frozenset([g.s]), zero, (), (g.s,), ())]
        while stack:
            cur, visited, counts, done, open_sp, gaps = stack.pop()
            key = (cur, visited, counts)
            if key in seen:
                continue
            seen.add(key)
            self.stats["skeleton_states"] += 1
            if cur == g.t:
                found.setdefault((tuple(sorted(visited)), counts), (done + (open_sp,), gaps))
                continue
            for w in reversed(xadj[cur]):
                if w not in visited:
                    stack.append((w, visited | {w}, counts, done, open_sp + (w,), gaps))
            for c in reversed(bridges[cur]):
                if counts[c] >= len(classes[c].vertices):
                    continue
                nxt = counts[:c] + (counts[c] + 1,) + counts[c + 1:]
                for b in sorted(classes[c].signature - visited, reverse=True):
                    stack.append((b, visited | {b}, nxt, done + (open_sp,), (b,), gaps + (c,)))
        self.stats["skeletons"] = len(found)
        self._skeletons = found
        return found

    def plan_for(self, subpaths, gap_classes, k) -> Optional[TcPlan]:
        """Concrete plan with ``k`` vertices, or ``None`` if the skeleton cannot reach ``k``."""
        size = sum(len(sp) for sp in subpaths)
        if not gap_classes:
            return TcPlan(self.X, tuple(subpaths), (), ()) if size == k else None
        counts = {}
        for c in gap_classes:
            counts[c] = counts.get(c, 0) + 1
        lo = size + len(gap_classes)
        hi = size + sum(_capacity(self.classes[c], m) for c, m in counts.items())
        if not lo <= k <= hi:
            return None
        per_class = {c: iter(_assign_cliques(self.classes[c], m)) for c, m in counts.items()}
        cliques = [next(per_class[c]) for c in gap_classes]
        budgets = [1] * len(cliques)
        load = {}
        for c in cliques:
            load[c] = load.get(c, 0) + 1
        extra = k - lo
        for j, c in enumerate(cliques):
            add = min(extra, len(c) - load[c])
            budgets[j] += add
            load[c] += add
            extra -= add
        if extra:
            raise InvariantViolation("capacity bound and clique assignment disagree")
        return TcPlan(self.X, tuple(subpaths), tuple(gap_classes),
                      tuple(zip(cliques, budgets)))

    def achievable(self, k: int) -> dict:
        """``l -> plan`` for every neighbor count reachable by a ``k``-vertex path."""
        if k in self._by_k:
            return self._by_k[k]
        out = {}
        for subpaths, gaps in self.skeletons().values():
            plan = self.plan_for(subpaths, gaps, k)
            if plan is None:
                continue
            self.stats["plans"] += 1
            l = neighbor_count(self.g, plan, k)
            out.setdefault(l, plan)
        self._by_k[k] = out
        return out

    def secluded_kpath(self, k: int, l: int, exact_l: bool = False) -> Optional[PathWitness]:
        if not 2 <= k <= self.g.n:
            raise InputError(f"k must lie in 2..{self.g.n}")
        options = self.achievable(k)
        hits = [ll for ll in options if ll == l or (not exact_l and ll < l)]
        if not hits:
            return None
        plan = options[min(hits)]
        plan.check(self.g, self.classes)
        path = materialize(self.g, plan)
        if path.length != k or path.neighbor_count != min(hits):
            raise InvariantViolation("materialized path disagrees with the plan")
        return path

    def short_secluded(self, k: int, l: int) -> Optional[PathWitness]:
        for kk in range(2, k + 1):
            path = self.secluded_kpath(kk, l)
            if path is not None:
                return path
        return None


def tc_secluded_kpath(g: Graph, k: int, l: int, exact_l: bool = False,
                      solver: Optional[TcSolver] = None) -> bool:
    """s-t path with exactly ``k`` vertices and at most (``exact_l``: exactly) ``l`` neighbors."""
    solver = solver or TcSolver(g)
    return solver.secluded_kpath(k, l, exact_l) is not None


def tc_short_secluded(g: Graph, k: int, l: int, solver: Optional[TcSolver] = None) -> bool:
    solver = solver or TcSolver(g)
    return solver.short_secluded(k, l) is not None
