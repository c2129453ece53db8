"""Generators for the studied graph families, with coordinate-addressable vertices.

Families:
  triangular_grid(n)   triangle of side n built from stacked row paths
  toroidal_grid(m, n)  Cartesian product of cycles C_m and C_n (multigraph:
                       a length-2 factor contributes two parallel edges)
  gk_graph(k)          hub vertex s joined to a 4k-cycle, which is chorded to
                       a 2k-cycle; Eulerian, second player wins, no even kernel
  cycle(n)             plain cycle C_n

Each generator returns (Graph, coordinate map) where the map sends the
family's natural coordinates to vertex ids.  Labels use the coordinate
notation directly, so the JSON sidecar label map falls out of the graph.
"""

from __future__ import annotations

from math import gcd

from .errors import GraphError
from .graph import Graph


def tri_vertex_id(j, k):
    """Vertex id of v^j_k in triangular_grid output (row-major layout)."""
    return j * (j + 1) // 2 + k


def triangular_grid(n):
    """Triangular grid of side n: rows P^j = v^j_0 .. v^j_j, j = 0..n.

    Row j is glued to row j-1 by v^j_0-v^{j-1}_0, v^j_j-v^{j-1}_{j-1} and,
    for 0 < i < j, v^j_i-v^{j-1}_{i-1} and v^j_i-v^{j-1}_i.  The result is
    connected and Eulerian with max degree 6.
    """
    if n < 0:
        raise GraphError("triangular_grid needs n >= 0")
    labels = []
    coords = {}
    for j in range(n + 1):
        for k in range(j + 1):
            coords[(j, k)] = len(labels)
            labels.append(f"v^{j}_{k}")
    edges = []
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            edges.append((coords[(j, i - 1)], coords[(j, i)]))
        for i in range(j + 1):
            if i > 0:
                edges.append((coords[(j, i)], coords[(j - 1, i - 1)]))
            if i < j:
                edges.append((coords[(j, i)], coords[(j - 1, i)]))
    return Graph(labels, edges), coords


def tri_reflection(n):
    """The left-right mirror of T_n as a vertex permutation: v^j_k -> v^j_{j-k}."""
    perm = [0] * ((n + 1) * (n + 2) // 2)
    for j in range(n + 1):
        for k in range(j + 1):
            perm[tri_vertex_id(j, k)] = tri_vertex_id(j, j - k)
    return tuple(perm)


def torus_vertex_id(m, n, i, j):
    """Vertex id of (u_i, v_j) in toroidal_grid output."""
    return (i % m) * n + (j % n)


def toroidal_grid(m, n):
    """Toroidal grid Q(m,n): the Cartesian product of cycles C_m and C_n.

    4-regular with 2mn edges.  When a factor has length 2 its cycle is a
    doubled edge, so Q(2,n) carries two parallel rungs per column; this is
    forced by 4-regularity and the strategies rely on both copies.
    """
    if m < 2 or n < 2:
        raise GraphError("toroidal_grid needs m >= 2 and n >= 2")
    labels = [f"(u{i},v{j})" for i in range(m) for j in range(n)]
    coords = {(i, j): i * n + j for i in range(m) for j in range(n)}
    edges = []
    for i in range(m):
        for j in range(n):
            edges.append((coords[(i, j)], coords[(i, (j + 1) % n)]))
    for j in range(n):
        for i in range(m):
            edges.append((coords[(i, j)], coords[((i + 1) % m, j)]))
    return Graph(labels, edges), coords


def torus_shift(m, n, a, b):
    """Coordinate shift (i,j) -> (i+a, j+b) as a vertex permutation.

    Every shift is an automorphism of Q(m,n); tests check the edge sets match.
    """
    perm = [0] * (m * n)
    for i in range(m):
        for j in range(n):
            perm[i * n + j] = ((i + a) % m) * n + ((j + b) % n)
    return tuple(perm)


def gk_graph(k):
    """The hub-and-two-cycles family G_k, k >= 2.

    Vertices: hub s; u_0..u_{2k-1} on a 2k-cycle; v_0..v_{4k-1} on a 4k-cycle.
    Edges: both cycles, spokes u_i-v_{2i} and u_i-v_{2i+1}, and s-v_j for all
    j.  6k+1 vertices, 14k edges, deg(s) = 4k, all other degrees 4.
    """
    if k < 2:
        raise GraphError("gk_graph needs k >= 2")
    labels = ["s"]
    coords = {"s": 0}
    for i in range(2 * k):
        coords[("u", i)] = len(labels)
        labels.append(f"u{i}")
    for j in range(4 * k):
        coords[("v", j)] = len(labels)
        labels.append(f"v{j}")
    edges = []
    for i in range(2 * k):
        edges.append((coords[("u", i)], coords[("u", (i + 1) % (2 * k))]))
    for j in range(4 * k):
        edges.append((coords[("v", j)], coords[("v", (j + 1) % (4 * k))]))
    for i in range(2 * k):
        edges.append((coords[("u", i)], coords[("v", 2 * i)]))
        edges.append((coords[("u", i)], coords[("v", 2 * i + 1)]))
    for j in range(4 * k):
        edges.append((coords["s"], coords[("v", j)]))
    return Graph(labels, edges), coords


def cycle(n):
    """Plain cycle C_n, n >= 3."""
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    labels = [f"c{i}" for i in range(n)]
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph(labels, edges)


def make_family(name, params):
    """Uniform constructor used by the CLI and scan: name + int params.

    Returns (graph, default start vertex id).  Unknown names or bad
    parameter counts raise GraphError.
    """
    if name == "tri":
        (n,) = _arity(name, params, 1)
        g, _ = triangular_grid(n)
        return g, tri_vertex_id(0, 0)
    if name == "torus":
        m, n = _arity(name, params, 2)
        g, _ = toroidal_grid(m, n)
        return g, 0
    if name == "gk":
        (k,) = _arity(name, params, 1)
        g, _ = gk_graph(k)
        return g, 0
    if name == "cycle":
        (n,) = _arity(name, params, 1)
        return cycle(n), 0
    raise GraphError(f"unknown family {name!r} (expected tri, torus, gk or cycle)")


def _arity(name, params, want):
    params = tuple(params)
    if len(params) != want:
        raise GraphError(f"family {name!r} takes {want} parameter(s), got {len(params)}")
    return params


def torus_gcd(m, n):
    return gcd(m, n)
