import itertools
import random

import pytest

from secluded.errors import BudgetExceeded, InputError
from secluded.generators import complete_graph, fig1_graph, path_graph, random_cluster, star_graph
from secluded.graph import neighborhood
from secluded.oracle import path_profile
from secluded.tc import (TcPlan, TcSolver, materialize, neighbor_count, neighborhood_classes,
                         tc_secluded_kpath, tc_short_secluded)

from conftest import random_graphs


def test_classes_examples():
    g = star_graph(4)
    classes = neighborhood_classes(g, {0})
    assert len(classes) == 1 and [len(c) for c in classes[0].cliques] == [1, 1, 1, 1]
    g = complete_graph(6)
    classes = neighborhood_classes(g, {g.s, g.t})
    assert len(classes) == 1 and [len(c) for c in classes[0].cliques] == [4]


@pytest.mark.parametrize("g", random_graphs(30, 3, 9, seed=41))
def test_classes_share_cover_neighbors(g):
    solver = TcSolver(g, None)
    for cls in solver.classes:
        assert {g.neighbors(v) & solver.X for v in cls.vertices} == {cls.signature}
        sizes = [len(c) for c in cls.cliques]
        assert sizes == sorted(sizes, reverse=True)


def test_clique_is_hamiltonian():
    g = complete_graph(6)
    assert tc_secluded_kpath(g, 6, 0)
    assert not tc_secluded_kpath(g, 5, 0)


@pytest.mark.parametrize("g", random_graphs(100, 2, 8, seed=42))
def test_matches_oracle(g):
    prof = path_profile(g)
    solver = TcSolver(g, None)
    for k in range(2, g.n + 1):
        for l in range(g.n + 1):
            assert (solver.secluded_kpath(k, l, exact_l=True) is not None) == ((k, l) in prof)
            assert (solver.secluded_kpath(k, l) is not None) == any(
                a == k and b <= l for a, b in prof)


@pytest.mark.parametrize("seed", range(20))
def test_cluster_graphs(seed):
    rng = random.Random(seed)
    g = random_cluster(rng.randint(1, 3), [rng.randint(1, 3) for _ in range(rng.randint(1, 4))],
                       0.5, seed)
    prof = path_profile(g)
    solver = TcSolver(g)
    for k in range(2, g.n + 1):
        for l in range(g.n + 1):
            assert (solver.secluded_kpath(k, l, exact_l=True) is not None) == ((k, l) in prof)


@pytest.mark.parametrize("seed", range(15))
def test_clique_replacement_keeps_count(seed):
    """Swapping a chosen clique for another same-class clique at least as large
    leaves the neighbor count unchanged."""
    g = random_cluster(2, [3, 3, 2, 2, 1], 0.6, seed)
    solver = TcSolver(g, None)
    for k in range(2, g.n + 1):
        for plan in solver.achievable(k).values():
            for j, (clique, budget) in enumerate(plan.clique_choice):
                cls = solver.classes[plan.gap_classes[j]]
                used = {c for c, _ in plan.clique_choice}
                for other in cls.cliques:
                    if other in used or len(other) < len(clique):
                        continue
                    choice = list(plan.clique_choice)
                    choice[j] = (other, budget)
                    alt = TcPlan(plan.X, plan.subpaths, plan.gap_classes, tuple(choice))
                    assert neighbor_count(g, alt, k) == neighbor_count(g, plan, k)


@pytest.mark.parametrize("seed", range(15))
def test_budget_distribution_irrelevant(seed):
    g = random_cluster(2, [3, 3, 2], 0.7, seed)
    solver = TcSolver(g, None)
    for k in range(2, g.n + 1):
        for plan in solver.achievable(k).values():
            want = materialize(g, plan).neighbor_count
            assert neighbor_count(g, plan, k) == want
            caps = [len(c) for c, _ in plan.clique_choice]
            if len(set(c for c, _ in plan.clique_choice)) != len(caps):
                continue
            total = sum(b for _, b in plan.clique_choice)
            for budgets in itertools.product(*[range(1, c + 1) for c in caps]):
                if sum(budgets) != total:
                    continue
                choice = tuple((c, b) for (c, _), b in zip(plan.clique_choice, budgets))
                alt = TcPlan(plan.X, plan.subpaths, plan.gap_classes, choice)
                assert materialize(g, alt).neighbor_count == want


def test_plan_checks():
    g = fig1_graph()
    solver = TcSolver(g)
    plan = solver.achievable(5)[4]
    plan.check(g, solver.classes)
    w = materialize(g, plan)
    assert (w.length, w.neighbor_count) == (5, len(neighborhood(g, w.vertices)))
    with pytest.raises(InputError):
        neighbor_count(g, plan, 6)


def test_fig1():
    g = fig1_graph()
    assert tc_short_secluded(g, 5, 5)
    assert not tc_short_secluded(g, 4, 5)


def test_cover_cap():
    g = path_graph(20)
    with pytest.raises(BudgetExceeded):
        TcSolver(g)
    assert TcSolver(g, None).secluded_kpath(20, 0) is not None
