"""Loopless undirected multigraphs with stable edge identities.

Vertices are integer ids 0..n-1 carrying opaque string labels.  Edges are
endpoint pairs identified by their position in the input order (EdgeId), so
parallel edges stay distinct.  Everything is immutable after construction
and safe to share across worker processes.
"""

from __future__ import annotations

from .errors import GraphError


class VertexSet:
    """Immutable set of vertex ids backed by an int bitmask.

    `size` is the vertex count of the universe; all members are < size.
    """

    __slots__ = ("size", "mask")

    def __init__(self, size, mask=0):
        if mask < 0 or mask >> size:
            raise GraphError(f"vertex set mask out of range for universe {size}")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    def __reduce__(self):
        # __setattr__ blocks pickle's setattr restore; rebuild via __init__
        return (self.__class__, (self.size, self.mask))

    @classmethod
    def of(cls, size, members):
        mask = 0
        for v in members:
            if not 0 <= v < size:
                raise GraphError(f"vertex {v} outside universe of size {size}")
            mask |= 1 << v
        return cls(size, mask)

    def __contains__(self, v):
        return 0 <= v < self.size and self.mask >> v & 1

    def __iter__(self):
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self):
        return self.mask.bit_count()

    def __bool__(self):
        return self.mask != 0

    def __eq__(self, other):
        return (
            isinstance(other, VertexSet)
            and self.size == other.size
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((self.size, self.mask))

    def _binop(self, other, op):
        if not isinstance(other, VertexSet) or other.size != self.size:
            raise GraphError("vertex sets over different universes")
        return VertexSet(self.size, op(self.mask, other.mask))

    def __or__(self, other):
        return self._binop(other, int.__or__)

    def __and__(self, other):
        return self._binop(other, int.__and__)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a & ~b)

    def isdisjoint(self, other):
        return not (self.mask & other.mask)

    def members(self):
        return tuple(self)

    def __repr__(self):
        return f"VertexSet({self.size}, {{{', '.join(map(str, self))}}})"


class Graph:
    """Immutable loopless undirected multigraph.

    vertices: tuple of labels, index = VertexId
    edges: tuple of (VertexId, VertexId), index = EdgeId
    adjacency: per vertex, tuple of (EdgeId, other endpoint); parallel edges
      appear once per copy, so len(adjacency[v]) is the degree with
      multiplicity.
    """

    __slots__ = ("vertices", "edges", "adjacency", "label_index")
    directed = False

    def __init__(self, vertices, edges):
        vertices = tuple(vertices)
        n = len(vertices)
        checked = []
        adj = [[] for _ in range(n)]
        for eid, pair in enumerate(edges):
            a, b = pair
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge {eid} endpoint out of range: {pair}")
            if a == b:
                raise GraphError(f"edge {eid} is a self-loop at vertex {a}")
            checked.append((a, b))
            adj[a].append((eid, b))
            adj[b].append((eid, a))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(checked))
        object.__setattr__(self, "adjacency", tuple(tuple(x) for x in adj))
        object.__setattr__(
            self, "label_index", {lab: i for i, lab in enumerate(vertices)}
        )

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        # __setattr__ blocks pickle's setattr restore; rebuild via __init__
        return (self.__class__, (self.vertices, self.edges))

    @property
    def vertex_count(self):
        return len(self.vertices)

    @property
    def edge_count(self):
        return len(self.edges)

    def degree(self, v):
        return len(self.adjacency[v])

    def max_degree(self):
        return max((len(a) for a in self.adjacency), default=0)

    def __repr__(self):
        return f"Graph({self.vertex_count} vertices, {self.edge_count} edges)"


def build_graph(labels, endpoint_pairs):
    """Build a Graph from labels and label-named endpoint pairs.

    EdgeIds follow the input order.  Unknown or duplicate labels and
    self-loops raise GraphError.
    """
    labels = list(labels)
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise GraphError(f"duplicate vertex label {lab!r}")
        index[lab] = i
    pairs = []
    for pair in endpoint_pairs:
        a, b = pair
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise GraphError(f"unknown vertex label {missing!r}")
        pairs.append((index[a], index[b]))
    return Graph(labels, pairs)


def is_eulerian(g):
    """True iff every vertex has even degree (multiplicity counted)."""
    return all(len(a) % 2 == 0 for a in g.adjacency)


def is_connected(g):
    """Standard connectivity; the single-vertex graph is connected."""
    n = g.vertex_count
    if n == 0:
        return True
    seen = 1
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for _, u in g.adjacency[v]:
            if not seen >> u & 1:
                seen |= 1 << u
                count += 1
                stack.append(u)
    return count == n


def bipartition(g):
    """A proper 2-coloring as (VertexSet, VertexSet), or None if impossible.

    Requires a connected graph; the side containing vertex 0 comes first.
    """
    if not is_connected(g):
        raise GraphError("bipartition requires a connected graph")
    color = _two_color(g)
    if color is None:
        return None
    n = g.vertex_count
    m0 = 0
    for v in range(n):
        if color[v] == 0:
            m0 |= 1 << v
    return VertexSet(n, m0), VertexSet(n, ((1 << n) - 1) ^ m0)


def odd_closed_walk(g):
    """A closed walk of odd length witnessing non-bipartiteness, or None.

    Returned as a vertex list w with w[0] == w[-1]; consecutive vertices are
    adjacent and len(w) - 1 is odd.  Connected graphs only.
    """
    if not is_connected(g):
        raise GraphError("odd_closed_walk requires a connected graph")
    n = g.vertex_count
    if n == 0:
        return None
    color = [-1] * n
    parent = [-1] * n
    depth = [0] * n
    color[0] = 0
    queue = [0]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for _, u in g.adjacency[v]:
            if color[u] == -1:
                color[u] = color[v] ^ 1
                parent[u] = v
                depth[u] = depth[v] + 1
                queue.append(u)
            elif color[u] == color[v]:
                # conflict edge v-u closes an odd walk through the BFS tree
                pu, pv = u, v
                left, right = [u], [v]
                while depth[pu] > depth[pv]:
                    pu = parent[pu]
                    left.append(pu)
                while depth[pv] > depth[pu]:
                    pv = parent[pv]
                    right.append(pv)
                while pu != pv:
                    pu = parent[pu]
                    pv = parent[pv]
                    left.append(pu)
                    right.append(pv)
                return list(reversed(left)) + right[:-1] + [left[-1]]
    return None


def _two_color(g):
    n = g.vertex_count
    color = [-1] * n
    if n == 0:
        return color
    color[0] = 0
    queue = [0]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for _, u in g.adjacency[v]:
            if color[u] == -1:
                color[u] = color[v] ^ 1
                queue.append(u)
            elif color[u] == color[v]:
                return None
    return color


def edges_between(g, a, b):
    """Sorted EdgeIds with one endpoint in a and the other in b.

    The sets must be disjoint; parallel edges are all included.
    """
    if a.size != g.vertex_count or b.size != g.vertex_count:
        raise GraphError("vertex set universe does not match the graph")
    if not a.isdisjoint(b):
        raise GraphError("edges_between requires disjoint vertex sets")
    am, bm = a.mask, b.mask
    out = []
    for eid, (x, y) in enumerate(g.edges):
        if (am >> x & 1 and bm >> y & 1) or (am >> y & 1 and bm >> x & 1):
            out.append(eid)
    return out


def neighborhood(g, b):
    """Vertices outside b adjacent to a member of b, as a VertexSet."""
    if b.size != g.vertex_count:
        raise GraphError("vertex set universe does not match the graph")
    bm = b.mask
    out = 0
    for x, y in g.edges:
        xin = bm >> x & 1
        yin = bm >> y & 1
        if xin and not yin:
            out |= 1 << y
        elif yin and not xin:
            out |= 1 << x
    return VertexSet(g.vertex_count, out)
