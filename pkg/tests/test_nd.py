import pytest

from secluded.errors import BudgetExceeded, InputError
from secluded.generators import complete_graph, fig1_graph, path_graph, random_modules
from secluded.graph import Graph
from secluded.ilp import feasible, satisfies
from secluded.nd import (NdSolver, build_ilp, guessed_neighbor_count, nd_kpath, nd_secluded_kpath,
                         nd_short_secluded, prepare, reconstruct_path)
from secluded.oracle import path_profile

from conftest import random_graphs


def test_prepare_splits_terminals():
    inst = prepare(complete_graph(5))
    assert inst.r == 3
    assert inst.module(inst.ms) == {0} and inst.module(inst.mt) == {4}


def test_hamiltonian_clique():
    inst = prepare(complete_graph(5))
    assert nd_kpath(inst, range(inst.r), 5)
    assert not nd_kpath(inst, range(inst.r), 6)


def test_subset_must_hold_terminals():
    inst = prepare(complete_graph(5))
    middle = [i for i in range(inst.r) if i not in (inst.ms, inst.mt)]
    with pytest.raises(InputError):
        build_ilp(inst, middle + [inst.ms], 3)


def test_cut_constraints_enumerated():
    inst = prepare(random_modules([2, 1, 3, 2], 0.8, seed=3))
    sub = tuple(range(inst.r))
    prob = build_ilp(inst, sub, 4)
    cuts = [c for c in prob.ilp.constraints if c.op == ">=" and c.rhs == 1
            and all(v == 1 for _, v in c.terms)]
    assert len(cuts) >= 2 ** (len(sub) - 1) - 1


@pytest.mark.parametrize("g", random_graphs(40, 3, 8, seed=31))
def test_reconstruction_matches_guess(g):
    inst = prepare(g)
    for mask in range(1 << inst.r):
        sub = [i for i in range(inst.r) if mask >> i & 1]
        if inst.ms not in sub or inst.mt not in sub:
            continue
        for k in range(len(sub), g.n + 1):
            prob = build_ilp(inst, sub, k)
            sol = feasible(prob.ilp)
            if sol is None:
                continue
            assert satisfies(prob.ilp, sol)
            path = reconstruct_path(inst, sub, sol)
            assert path.length == k
            assert {inst.partition.module_of[v] for v in path.vertices} == set(sub)
            assert path.neighbor_count == guessed_neighbor_count(inst, sub, k)


@pytest.mark.parametrize("g", random_graphs(80, 2, 8, seed=32))
def test_matches_oracle(g):
    prof = path_profile(g)
    solver = NdSolver(g)
    for k in range(2, g.n + 1):
        for l in range(g.n + 1):
            assert (solver.secluded_kpath(k, l, exact_l=True) is not None) == ((k, l) in prof)
            assert (solver.secluded_kpath(k, l) is not None) == any(
                a == k and b <= l for a, b in prof)


@pytest.mark.parametrize("seed", range(10))
def test_module_heavy_graphs(seed):
    g = random_modules([3, 2, 1, 3], 0.6, seed)
    prof = path_profile(g)
    for k in range(2, g.n + 1):
        for l in range(g.n + 1):
            assert nd_secluded_kpath(g, k, l, exact_l=True) == ((k, l) in prof)


def test_fig1():
    g = fig1_graph()
    assert nd_short_secluded(g, 5, 5)
    assert not nd_short_secluded(g, 4, 5)


def test_module_cap():
    g = path_graph(12)
    with pytest.raises(BudgetExceeded):
        NdSolver(g, max_modules=8)
    assert NdSolver(g, max_modules=None).secluded_kpath(12, 0) is not None


def test_witness_is_a_real_path():
    g = Graph(6, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)], 0, 5)
    w = NdSolver(g).secluded_kpath(5, 1)
    assert w is not None and w.length == 5
    assert all(g.has_edge(a, b) for a, b in zip(w.vertices, w.vertices[1:]))
