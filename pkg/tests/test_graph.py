import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from scipy.sparse.csgraph import floyd_warshall

from secluded.errors import InputError, InvariantViolation
from secluded.generators import complete_bipartite_graph, complete_graph, cycle_graph, \
    fig1_graph, path_graph, star_graph
from secluded.graph import (CLIQUE, INDEPENDENT, Graph, TwinPartition, are_twins, bfs_layers,
                            check_twin_partition, format_graph, is_twin_cover, neighborhood,
                            parse_graph, quotient, twin_cover, twin_partition)

from conftest import graphs, random_graphs


def test_rejects_bad_graphs():
    with pytest.raises(InputError):
        Graph(3, [(0, 1)], 1, 1)
    with pytest.raises(InputError):
        Graph(3, [(0, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 1, 2), (1, 2)])
    with pytest.raises(InputError):
        Graph(3, [(0, 1, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 5)])


def test_adjacency_sorted_and_symmetric():
    g = Graph(4, [(2, 0), (0, 1), (3, 0)])
    assert g.adj[0] == (1, 2, 3)
    assert all(v in g.adj[u] for v in range(4) for u in g.adj[v])


def test_neighborhood_examples():
    g = fig1_graph()
    assert len(neighborhood(g, [0, 1, 2, 3, 4])) == 5
    assert neighborhood(g, range(g.n)) == frozenset()
    c4 = cycle_graph(4)
    assert neighborhood(c4, {0}) == {1, 3}
    with pytest.raises(InputError):
        neighborhood(c4, {9})


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_neighborhood_disjoint_from_set(g):
    for size in range(g.n + 1):
        u = set(range(size))
        assert not neighborhood(g, u) & u


def test_bfs_layers_examples():
    assert bfs_layers(path_graph(3), 0) == [0, 1, 2]
    g = Graph(3, [(0, 1)], 0, 2)
    assert bfs_layers(g, 0)[2] == math.inf


@pytest.mark.parametrize("g", random_graphs(30, 2, 10, seed=4))
def test_bfs_matches_floyd_warshall(g):
    mat = np.zeros((g.n, g.n))
    for u, v in g.edges():
        mat[u, v] = mat[v, u] = 1
    dist = floyd_warshall(mat, directed=False, unweighted=True)
    for root in range(g.n):
        assert bfs_layers(g, root) == [math.inf if math.isinf(d) else int(d) for d in dist[root]]


def test_twin_partition_examples():
    p = twin_partition(complete_graph(5))
    assert p.size == 1 and p.kinds == (CLIQUE,)
    assert twin_partition(cycle_graph(5)).size == 5
    p = twin_partition(complete_bipartite_graph(2, 3))
    assert sorted(len(m) for m in p.modules) == [2, 3]
    assert set(p.kinds) == {INDEPENDENT}


@pytest.mark.parametrize("g", random_graphs(40, 2, 10, seed=5))
def test_twin_partition_is_coarsest(g):
    p = twin_partition(g)
    check_twin_partition(g, p)
    for a, b in itertools.combinations(range(p.size), 2):
        u, v = min(p.modules[a]), min(p.modules[b])
        assert not are_twins(g, u, v)


def test_partition_checks_reject_non_twins():
    g = path_graph(4)
    bad = TwinPartition((frozenset({0, 1}), frozenset({2}), frozenset({3})),
                        (CLIQUE, CLIQUE, CLIQUE), (0, 0, 1, 2))
    with pytest.raises(InvariantViolation):
        check_twin_partition(g, bad)
    with pytest.raises(InvariantViolation):
        quotient(g, bad)


def test_quotient_examples():
    g = complete_bipartite_graph(2, 3)
    q = quotient(g, twin_partition(g))
    assert q.r == 2 and q.edges() == [(0, 1)]
    q = quotient(complete_graph(4), twin_partition(complete_graph(4)))
    assert q.r == 1 and q.edges() == []


@pytest.mark.parametrize("g", random_graphs(15, 2, 8, seed=6))
def test_quotient_of_singletons_is_a_copy(g):
    p = TwinPartition(tuple(frozenset([v]) for v in range(g.n)), (CLIQUE,) * g.n,
                      tuple(range(g.n)))
    assert sorted(quotient(g, p).edges()) == sorted(g.edges())


def test_split_off_makes_singletons():
    g = complete_graph(5)
    p = twin_partition(g).split_off([0, 4])
    assert p.size == 3
    assert p.modules[p.module_of[0]] == {0} and p.modules[p.module_of[4]] == {4}
    check_twin_partition(g, p)


def test_twin_cover_examples():
    assert twin_cover(complete_graph(5)).cover == frozenset()
    d = twin_cover(star_graph(4))
    assert d.cover == {0} and len(d.cliques) == 4
    assert len(twin_cover(path_graph(4)).cover) == 2


@pytest.mark.parametrize("g", random_graphs(40, 2, 9, seed=7))
def test_twin_cover_is_minimum(g):
    d = twin_cover(g)
    assert is_twin_cover(g, d.cover)
    for size in range(len(d.cover)):
        for cand in itertools.combinations(range(g.n), size):
            assert not is_twin_cover(g, cand)
    for c in d.cliques:
        assert all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))
    sizes = [len(c) for c in d.cliques]
    assert sizes == sorted(sizes, reverse=True)


def test_text_round_trip():
    g = Graph(4, [(0, 1, 3), (1, 2, 1), (2, 3, 7)], 0, 3)
    assert parse_graph(format_graph(g, "weighted")) == g
    h = fig1_graph()
    assert parse_graph(format_graph(h)) == h


@pytest.mark.parametrize("text", [
    "e 0 1\ns 0\nt 1\n",                       # no header
    "p 2 1\ne 0 1\ns 0\n",                     # no t
    "p 3 2\ne 0 1\new 1 2 3\ns 0\nt 2\n",      # mixed
    "p 2 2\ne 0 1\ns 0\nt 1\n",                # wrong m
    "p 2 1\ne 0 x\ns 0\nt 1\n",                # not an int
    "p 2 1\nq 0 1\ns 0\nt 1\n",                # unknown directive
    "p 2 1\ne 0 1\ns 1\nt 1\n",                # s == t
])
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse_graph(text)
