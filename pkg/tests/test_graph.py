import random

import pytest

from fgl.errors import GraphError
from fgl.graph import (
    Graph,
    VertexSet,
    bipartition,
    build_graph,
    edges_between,
    is_connected,
    is_eulerian,
    neighborhood,
    odd_closed_walk,
)


def test_vertex_set_basics():
    s = VertexSet.of(8, [0, 3, 5])
    assert 0 in s and 3 in s and 5 in s
    assert 1 not in s and 8 not in s and -1 not in s
    assert len(s) == 3
    assert list(s) == [0, 3, 5]
    assert s.members() == (0, 3, 5)
    assert bool(s)
    assert not bool(VertexSet(8))


def test_vertex_set_algebra():
    a = VertexSet.of(6, [0, 1, 2])
    b = VertexSet.of(6, [2, 3])
    assert (a | b).members() == (0, 1, 2, 3)
    assert (a & b).members() == (2,)
    assert (a - b).members() == (0, 1)
    assert a.isdisjoint(VertexSet.of(6, [4, 5]))
    assert not a.isdisjoint(b)
    assert a == VertexSet(6, 0b111)
    assert hash(a) == hash(VertexSet(6, 0b111))
    assert a != VertexSet(7, 0b111)


def test_vertex_set_rejects_out_of_universe():
    with pytest.raises(GraphError):
        VertexSet.of(4, [4])
    with pytest.raises(GraphError):
        VertexSet(4, 1 << 4)
    with pytest.raises(GraphError):
        VertexSet.of(4, [0]) | VertexSet.of(5, [0])


def test_vertex_set_immutable():
    s = VertexSet(4, 0b1)
    with pytest.raises(AttributeError):
        s.mask = 3


def test_graph_construction_and_adjacency():
    g = Graph(["a", "b", "c"], [(0, 1), (1, 2), (0, 1)])
    assert g.vertex_count == 3
    assert g.edge_count == 3
    assert g.edges == ((0, 1), (1, 2), (0, 1))
    # parallel edges appear once per copy
    assert g.adjacency[0] == ((0, 1), (2, 1))
    assert g.adjacency[1] == ((0, 0), (1, 2), (2, 0))
    assert g.degree(0) == 2
    assert g.degree(1) == 3
    assert g.max_degree() == 3
    assert g.label_index == {"a": 0, "b": 1, "c": 2}
    assert not g.directed


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph(["a", "b"], [(0, 0)])
    with pytest.raises(GraphError):
        Graph(["a", "b"], [(0, 2)])
    with pytest.raises(GraphError):
        Graph(["a", "b"], [(-1, 0)])


def test_graph_immutable():
    g = Graph(["a", "b"], [(0, 1)])
    with pytest.raises(AttributeError):
        g.edges = ()


def test_build_graph_by_labels():
    g = build_graph(["x", "y", "z"], [("x", "y"), ("y", "z")])
    assert g.edges == ((0, 1), (1, 2))
    with pytest.raises(GraphError):
        build_graph(["x", "x"], [])
    with pytest.raises(GraphError):
        build_graph(["x", "y"], [("x", "w")])


def test_is_eulerian():
    triangle = Graph(["a", "b", "c"], [(0, 1), (1, 2), (2, 0)])
    assert is_eulerian(triangle)
    path = Graph(["a", "b", "c"], [(0, 1), (1, 2)])
    assert not is_eulerian(path)
    # parallel edges count with multiplicity
    doubled = Graph(["a", "b"], [(0, 1), (0, 1)])
    assert is_eulerian(doubled)


def test_is_connected():
    assert is_connected(Graph(["a"], []))
    assert is_connected(Graph(["a", "b"], [(0, 1)]))
    assert not is_connected(Graph(["a", "b"], []))
    assert not is_connected(Graph(["a", "b", "c"], [(0, 1)]))


def test_bipartition_even_cycle():
    c4 = Graph(list("abcd"), [(0, 1), (1, 2), (2, 3), (3, 0)])
    sides = bipartition(c4)
    assert sides is not None
    first, second = sides
    assert 0 in first
    assert first.members() == (0, 2)
    assert second.members() == (1, 3)


def test_bipartition_odd_cycle_fails():
    c5 = Graph(list("abcde"), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert bipartition(c5) is None
    with pytest.raises(GraphError):
        bipartition(Graph(["a", "b"], []))


def test_odd_closed_walk_witness():
    c4 = Graph(list("abcd"), [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert odd_closed_walk(c4) is None


def test_odd_closed_walk_on_random_nonbipartite():
    rng = random.Random(777)
    adjacency_checked = 0
    for _ in range(50):
        n = rng.randint(3, 8)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        for _ in range(rng.randint(1, 5)):
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                edges.append((a, b))
        g = Graph([f"v{i}" for i in range(n)], edges)
        walk = odd_closed_walk(g)
        if bipartition(g) is None:
            assert walk is not None
            assert walk[0] == walk[-1]
            assert (len(walk) - 1) % 2 == 1
            pair_set = {frozenset(e) for e in g.edges}
            for x, y in zip(walk, walk[1:]):
                assert frozenset((x, y)) in pair_set
                adjacency_checked += 1
        else:
            assert walk is None
    assert adjacency_checked > 0


def test_edges_between_counts_parallel_edges():
    g = Graph(["a", "b", "c"], [(0, 1), (0, 1), (1, 2), (0, 2)])
    left = VertexSet.of(3, [0])
    right = VertexSet.of(3, [1, 2])
    assert edges_between(g, left, right) == [0, 1, 3]
    with pytest.raises(GraphError):
        edges_between(g, left, VertexSet.of(3, [0, 1]))
    with pytest.raises(GraphError):
        edges_between(g, VertexSet.of(4, [0]), right)


def test_neighborhood():
    g = Graph(list("abcd"), [(0, 1), (1, 2), (2, 3)])
    assert neighborhood(g, VertexSet.of(4, [0])).members() == (1,)
    assert neighborhood(g, VertexSet.of(4, [1, 3])).members() == (0, 2)
    assert neighborhood(g, VertexSet.of(4, [0, 1, 2, 3])).members() == ()
