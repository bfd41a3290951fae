import pytest

from secluded.cw import (CwState, accepted_pairs, check_state, cw_profile, join_reachable,
                         run_dp, solve_cw, solve_cw_short)
from secluded.errors import InputError, InvariantViolation
from secluded.expression import (ExpressionTree, Introduce, Join, Relabel, Union, clique_expression,
                                 naive_expression, path_expression)
from secluded.generators import fig1_graph, path_graph
from secluded.oracle import path_profile

from conftest import random_graphs
from join_sim import as_vector, multisets, realisations, simulate_join


def test_single_path_cannot_close():
    assert join_reachable({(1, 2): 1}, 1, 2) == {frozenset({((1, 2), 1)})}


def test_two_singletons_merge():
    got = join_reachable({(1, 1): 1, (2, 2): 1}, 1, 2)
    assert got == {frozenset({((1, 1), 1), ((2, 2), 1)}), frozenset({((1, 2), 1)})}


def test_two_cross_paths_merge():
    # gluing the 1-end of one path to the 2-end of the other leaves a 2...1 path
    got = join_reachable({(1, 2): 2}, 1, 2)
    assert got == {frozenset({((1, 2), 2)}), frozenset({((1, 2), 1)})}


def test_join_reachable_rejects_equal_labels():
    with pytest.raises(InputError):
        join_reachable({(1, 1): 1}, 2, 2)


@pytest.mark.parametrize("alpha,beta", [(1, 2), (1, 3), (2, 3)])
def test_join_reachable_matches_simulation(alpha, beta):
    for paths in multisets((1, 2, 3), 4):
        want = join_reachable(as_vector(paths), alpha, beta, r=3)
        for singles in realisations(paths):
            assert simulate_join(paths, singles, alpha, beta) == want, paths


def test_small_decisions():
    t = path_expression(3)
    assert solve_cw(t, 3, 0)
    assert not solve_cw(t, 2, 0)
    assert solve_cw(clique_expression(4), 4, 0)
    assert not solve_cw(clique_expression(4), 3, 0)
    assert solve_cw(clique_expression(4), 3, 1)


def test_fig1_short():
    t = naive_expression(fig1_graph())
    assert solve_cw_short(t, 5, 5)
    assert not solve_cw_short(t, 4, 5)
    # s, n1, o1, n4, t has only four neighbors
    assert solve_cw(t, 5, 4)


def test_l_equal_n_is_connectivity():
    g = path_graph(5)
    assert solve_cw_short(naive_expression(g), 5, 5)
    assert not solve_cw_short(naive_expression(g), 4, 5)


def test_bounds_checked():
    with pytest.raises(InputError):
        solve_cw(path_expression(3), 1, 0)
    with pytest.raises(InputError):
        solve_cw(path_expression(3), 3, 9)


@pytest.mark.parametrize("g", random_graphs(60, 2, 7, seed=21))
def test_matches_oracle_exhaustively(g):
    tree = naive_expression(g)
    assert cw_profile(tree, validate=True) == path_profile(g)


@pytest.mark.parametrize("g", random_graphs(15, 3, 7, seed=22))
def test_short_equals_disjunction(g):
    tree = naive_expression(g)
    prof = cw_profile(tree)
    for k in range(2, g.n + 1):
        for l in range(g.n + 1):
            want = any(a <= k and b <= l for a, b in prof)
            assert solve_cw_short(tree, k, l) == want
            assert solve_cw(tree, k, l) == ((k, l) in prof)


def test_pruned_pairs_are_a_restriction():
    g = fig1_graph()
    tree = naive_expression(g)
    full = cw_profile(tree)
    assert accepted_pairs(tree, 6, 4) == {p for p in full if p[0] <= 6 and p[1] <= 4}


def test_redundant_tree_is_normalised_first():
    base = Union(Introduce(0, 1), Introduce(1, 2))
    tree = ExpressionTree(Join(1, 2, Join(1, 2, base)), 2)
    assert cw_profile(tree) == {(2, 0)}


def test_relabel_clears_source_label():
    a = Union(Union(Introduce(0, 3), Introduce(1, 1)), Introduce(2, 4))
    tree = ExpressionTree(Join(2, 4, Relabel(1, 2, Join(3, 1, a))), 4)
    for st in run_dp(tree):
        view = CwState.unpack(st, 4)
        assert view.x[0] == view.y[0] == view.z[0] == 0
        assert not any(1 in pair for pair in view.p)


def test_state_checker():
    check_state((1, 0, 0, 0, 0, 0, 1, 0, 0), 2, 1)
    with pytest.raises(InvariantViolation):
        check_state((1, 0, 0, 0, 0, 0, 2, 0, 0), 2, 1)
