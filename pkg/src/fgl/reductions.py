"""Hardness-gadget pipeline: directed edge geography on digraphs, the
pseudo-arc transform to undirected edge geography, and the Eulerization
transform to the feedback game, with a triple-solve winner-preservation
check.

The pseudo-arc replaces each arc a->b with five fresh vertices wired

    a - p - q - r - b      plus  p - t,  t - w,  w - q,  w - r

so traversal is only profitable in the arc's direction.  Eulerization then
attaches a 4-cycle s-a-b-c at the start and, for the odd-degree vertices
x_1..x_2p (ascending id), pendant paths x_i - y_i - z_i whose z ends are
paired off (z_1 and z_2 onto the 4-cycle's a; z_{2i-1} and z_{2i} onto
y_{2i-3}), making every degree even without moving the winner.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import Variant
from .errors import GraphError
from .graph import Graph
from .solver import solve


class Digraph:
    """Immutable loopless directed multigraph; ArcId = input position.

    `out_adjacency[v]` lists (ArcId, head) pairs; `adjacency` is the
    undirected view used for weak-connectivity checks.
    """

    __slots__ = ("vertices", "arcs", "out_adjacency", "adjacency", "label_index")
    directed = True

    def __init__(self, vertices, arcs):
        vertices = tuple(vertices)
        n = len(vertices)
        checked = []
        out = [[] for _ in range(n)]
        both = [[] for _ in range(n)]
        for aid, pair in enumerate(arcs):
            a, b = pair
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"arc {aid} endpoint out of range: {pair}")
            if a == b:
                raise GraphError(f"arc {aid} is a self-loop at vertex {a}")
            checked.append((a, b))
            out[a].append((aid, b))
            both[a].append((aid, b))
            both[b].append((aid, a))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arcs", tuple(checked))
        object.__setattr__(self, "out_adjacency", tuple(tuple(x) for x in out))
        object.__setattr__(self, "adjacency", tuple(tuple(x) for x in both))
        object.__setattr__(
            self, "label_index", {lab: i for i, lab in enumerate(vertices)}
        )

    def __setattr__(self, name, value):
        raise AttributeError("Digraph is immutable")

    def __reduce__(self):
        # __setattr__ blocks pickle's setattr restore; rebuild via __init__
        return (self.__class__, (self.vertices, self.arcs))

    @property
    def vertex_count(self):
        return len(self.vertices)

    @property
    def arc_count(self):
        return len(self.arcs)

    @property
    def edge_count(self):
        return len(self.arcs)

    def in_degree(self, v):
        return sum(1 for _, b in self.arcs if b == v)

    def out_degree(self, v):
        return len(self.out_adjacency[v])

    def __repr__(self):
        return f"Digraph({self.vertex_count} vertices, {self.arc_count} arcs)"


def build_digraph(labels, arc_pairs):
    """Digraph from labels and (tail, head) label pairs, like build_graph."""
    labels = list(labels)
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise GraphError(f"duplicate vertex label {lab!r}")
        index[lab] = i
    pairs = []
    for pair in arc_pairs:
        a, b = pair
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise GraphError(f"unknown vertex label {missing!r}")
        pairs.append((index[a], index[b]))
    return Digraph(labels, pairs)


@dataclass(frozen=True, slots=True)
class GadgetMap:
    """Traceability from transformed graphs back to their sources.

    arc_vertices/arc_edges: per ArcId, the fresh (p, q, r, t, w) vertex ids
    and the 8 gadget EdgeIds.  cycle_vertices/cycle_edges: the Eulerization
    4-cycle (a, b, c) and its edges.  pendant_vertices/pendant_edges: per
    odd vertex x, the (y, z) path ids and its 2 edges.  pairing_edges: the
    z-attachment EdgeIds.
    """

    arc_vertices: dict = field(default_factory=dict)
    arc_edges: dict = field(default_factory=dict)
    cycle_vertices: tuple = ()
    cycle_edges: tuple = ()
    pendant_vertices: dict = field(default_factory=dict)
    pendant_edges: dict = field(default_factory=dict)
    pairing_edges: tuple = ()


def pseudo_arc_transform(d):
    """Replace every arc with the 5-vertex, 8-edge one-way gadget.

    Original vertex ids (and labels) are preserved; internal vertices get
    labels like "p.3" for arc 3.
    """
    labels = list(d.vertices)
    edges = []
    arc_vertices = {}
    arc_edges = {}
    for aid, (a, b) in enumerate(d.arcs):
        base = len(labels)
        p, q, r, t, w = base, base + 1, base + 2, base + 3, base + 4
        labels.extend(f"{tag}.{aid}" for tag in ("p", "q", "r", "t", "w"))
        e0 = len(edges)
        edges.extend(
            [(a, p), (p, q), (q, r), (r, b), (p, t), (t, w), (w, q), (w, r)]
        )
        arc_vertices[aid] = (p, q, r, t, w)
        arc_edges[aid] = tuple(range(e0, e0 + 8))
    return Graph(labels, edges), GadgetMap(
        arc_vertices=arc_vertices, arc_edges=arc_edges
    )


def eulerize(g, s):
    """Make every degree even while preserving the feedback-game winner.

    Adds the 4-cycle s-a-b-c unconditionally, then pendant paths
    x_i-y_i-z_i for the odd-degree vertices x_1..x_2p in ascending id
    order, pairing z_1, z_2 onto a and z_{2i-1}, z_{2i} onto y_{2i-3}.
    """
    odd = [v for v in range(g.vertex_count) if g.degree(v) % 2]
    labels = list(g.vertices)
    edges = list(g.edges)

    def fresh(label):
        labels.append(f"~{label}")
        return len(labels) - 1

    a, b, c = fresh("a"), fresh("b"), fresh("c")
    e0 = len(edges)
    edges.extend([(s, a), (a, b), (b, c), (c, s)])
    cycle_edges = tuple(range(e0, e0 + 4))
    pendant_vertices = {}
    pendant_edges = {}
    ys = []
    zs = []
    for idx, x in enumerate(odd, start=1):
        y = fresh(f"y{idx}")
        z = fresh(f"z{idx}")
        ys.append(y)
        zs.append(z)
        e0 = len(edges)
        edges.extend([(x, y), (y, z)])
        pendant_vertices[x] = (y, z)
        pendant_edges[x] = (e0, e0 + 1)
    pairing = []
    for idx, z in enumerate(zs, start=1):
        pair_no = (idx + 1) // 2  # z_1,z_2 -> pair 1; z_3,z_4 -> pair 2; ...
        anchor = a if pair_no == 1 else ys[2 * pair_no - 4]  # y_{2i-3}, 1-based
        pairing.append(len(edges))
        edges.append((z, anchor))
    return Graph(labels, edges), GadgetMap(
        cycle_vertices=(a, b, c),
        cycle_edges=cycle_edges,
        pendant_vertices=pendant_vertices,
        pendant_edges=pendant_edges,
        pairing_edges=tuple(pairing),
    )


def deg_solve(d, s, limits=None):
    """Perfect-play winner of directed edge geography on a digraph."""
    return solve(d, s, Variant.EDGE_GEO_DIRECTED, limits)


@dataclass(frozen=True, slots=True)
class ReductionReport:
    digraph_winner: object
    geography_winner: object
    feedback_winner: object
    ok: bool
    warnings: tuple


def proof_shape_warnings(d, s):
    """Deviations from the reduction's expected source shape.

    Expected: every vertex has total degree at most 3, and s is the unique
    vertex with in-degree 0 and out-degree 2.
    """
    warnings = []
    for v in range(d.vertex_count):
        total = d.in_degree(v) + d.out_degree(v)
        if total > 3:
            warnings.append(f"vertex {v} has total degree {total} > 3")
    if d.in_degree(s) != 0 or d.out_degree(s) != 2:
        warnings.append(
            f"start {s} has in-degree {d.in_degree(s)} and out-degree "
            f"{d.out_degree(s)}, expected 0 and 2"
        )
    for v in range(d.vertex_count):
        if v != s and d.in_degree(v) == 0 and d.out_degree(v) == 2:
            warnings.append(f"vertex {v} also has in-degree 0 and out-degree 2")
    return warnings


def reduction_equivalence_check(d, s, limits=None):
    """Solve the digraph, its pseudo-arc graph, and the Eulerized graph.

    All three winners must agree for the transforms to be considered
    faithful on this instance.  Shape deviations are reported as warnings
    but never stop the comparison.
    """
    warnings = tuple(proof_shape_warnings(d, s))
    dw = deg_solve(d, s, limits).winner
    h, _ = pseudo_arc_transform(d)
    gw = solve(h, s, Variant.EDGE_GEO_UNDIRECTED, limits).winner
    ge, _ = eulerize(h, s)
    fw = solve(ge, s, Variant.FEEDBACK, limits).winner
    return ReductionReport(dw, gw, fw, dw is gw is fw, warnings)
