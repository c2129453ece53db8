import pytest

from fgl.errors import GraphError
from fgl.families import (
    cycle,
    gk_graph,
    make_family,
    torus_gcd,
    torus_shift,
    torus_vertex_id,
    toroidal_grid,
    tri_reflection,
    tri_vertex_id,
    triangular_grid,
)
from fgl.graph import is_connected, is_eulerian


# (n, vertices, edges): closed forms (n+1)(n+2)/2 and 3*n(n+1)/2,
# spot-derived by hand for the small rows.
TRI_SIZES = [
    (0, 1, 0),
    (1, 3, 3),
    (2, 6, 9),
    (3, 10, 18),
    (4, 15, 30),
    (5, 21, 45),
    (7, 36, 84),
]


@pytest.mark.parametrize("n,nv,ne", TRI_SIZES)
def test_triangular_grid_sizes(n, nv, ne):
    g, coords = triangular_grid(n)
    assert g.vertex_count == nv
    assert g.edge_count == ne
    assert len(coords) == nv


def test_triangular_grid_structure():
    g, coords = triangular_grid(4)
    assert is_connected(g)
    assert is_eulerian(g)
    assert g.max_degree() == 6
    assert g.vertices[0] == "v^0_0"
    assert coords[(0, 0)] == 0
    assert coords[(4, 2)] == tri_vertex_id(4, 2) == 12
    # apex touches exactly the two row-1 vertices
    assert sorted(u for _, u in g.adjacency[0]) == [1, 2]
    # corner degrees are 2, side degrees 4, interior 6
    assert g.degree(coords[(4, 0)]) == 2
    assert g.degree(coords[(4, 4)]) == 2
    assert g.degree(coords[(2, 0)]) == 4
    assert g.degree(coords[(2, 1)]) == 6


def test_tri_reflection_is_automorphism():
    for n in (2, 3, 5):
        g, _ = triangular_grid(n)
        perm = tri_reflection(n)
        assert sorted(perm) == list(range(g.vertex_count))
        edge_set = sorted(tuple(sorted(e)) for e in g.edges)
        mapped = sorted(tuple(sorted((perm[a], perm[b]))) for a, b in g.edges)
        assert mapped == edge_set


def test_triangular_grid_rejects_negative():
    with pytest.raises(GraphError):
        triangular_grid(-1)


TORUS_SIZES = [
    (2, 2, 4, 8),
    (2, 3, 6, 12),
    (3, 3, 9, 18),
    (2, 4, 8, 16),
    (6, 9, 54, 108),
]


@pytest.mark.parametrize("m,n,nv,ne", TORUS_SIZES)
def test_toroidal_grid_sizes(m, n, nv, ne):
    g, coords = toroidal_grid(m, n)
    assert g.vertex_count == nv
    assert g.edge_count == ne
    assert len(coords) == nv


def test_toroidal_grid_is_4_regular_multigraph():
    g, coords = toroidal_grid(2, 5)
    assert all(g.degree(v) == 4 for v in range(g.vertex_count))
    assert is_eulerian(g) and is_connected(g)
    # the length-2 factor doubles every rung
    rungs = [e for e in g.edges if tuple(sorted(e)) == (coords[(0, 0)], coords[(1, 0)])]
    assert len(rungs) == 2
    assert g.vertices[coords[(1, 3)]] == "(u1,v3)"
    assert torus_vertex_id(2, 5, 3, 7) == coords[(1, 2)]


def test_torus_shift_is_automorphism():
    for m, n in ((2, 3), (3, 4), (4, 4)):
        g, _ = toroidal_grid(m, n)
        for a, b in ((1, 0), (0, 1), (2, 3)):
            perm = torus_shift(m, n, a, b)
            edge_multiset = sorted(tuple(sorted(e)) for e in g.edges)
            mapped = sorted(tuple(sorted((perm[x], perm[y]))) for x, y in g.edges)
            assert mapped == edge_multiset


def test_toroidal_grid_rejects_short_cycles():
    with pytest.raises(GraphError):
        toroidal_grid(1, 5)
    with pytest.raises(GraphError):
        toroidal_grid(2, 1)


def test_torus_gcd():
    assert torus_gcd(2, 4) == 2
    assert torus_gcd(3, 5) == 1


GK_SIZES = [(2, 13, 28), (3, 19, 42), (4, 25, 56)]


@pytest.mark.parametrize("k,nv,ne", GK_SIZES)
def test_gk_graph_sizes(k, nv, ne):
    g, coords = gk_graph(k)
    assert g.vertex_count == nv == 6 * k + 1
    assert g.edge_count == ne == 14 * k
    assert len(coords) == nv


def test_gk_graph_structure():
    k = 3
    g, coords = gk_graph(k)
    assert is_connected(g) and is_eulerian(g)
    assert coords["s"] == 0
    assert g.degree(0) == 4 * k
    for i in range(2 * k):
        assert g.degree(coords[("u", i)]) == 4
    for j in range(4 * k):
        assert g.degree(coords[("v", j)]) == 4
    # spokes: u_i reaches exactly v_{2i} and v_{2i+1} on the outer cycle
    u1 = coords[("u", 1)]
    outer = sorted(
        u for _, u in g.adjacency[u1] if u >= coords[("v", 0)]
    )
    assert outer == [coords[("v", 2)], coords[("v", 3)]]


def test_gk_graph_rejects_small_k():
    with pytest.raises(GraphError):
        gk_graph(1)


def test_cycle():
    g = cycle(5)
    assert g.vertex_count == 5 and g.edge_count == 5
    assert all(g.degree(v) == 2 for v in range(5))
    assert g.vertices[2] == "c2"
    with pytest.raises(GraphError):
        cycle(2)


def test_make_family_dispatch():
    g, s = make_family("tri", (3,))
    assert (g.vertex_count, g.edge_count, s) == (10, 18, 0)
    g, s = make_family("torus", (2, 3))
    assert (g.vertex_count, g.edge_count, s) == (6, 12, 0)
    g, s = make_family("gk", (2,))
    assert (g.vertex_count, g.edge_count, s) == (13, 28, 0)
    g, s = make_family("cycle", (4,))
    assert (g.vertex_count, g.edge_count, s) == (4, 4, 0)


def test_make_family_rejects_bad_input():
    with pytest.raises(GraphError):
        make_family("pentagon", (5,))
    with pytest.raises(GraphError):
        make_family("tri", (1, 2))
    with pytest.raises(GraphError):
        make_family("torus", (2,))
