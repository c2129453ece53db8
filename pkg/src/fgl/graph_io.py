"""JSON interchange for graphs, kernels, and playout transcripts.

Graph files follow the fgl-graph-v1 shape

    {"format": "fgl-graph-v1", "directed": false,
     "vertices": [labels...], "edges": [[i, j], ...]}

with 0-based vertex indices; a repeated [i, j] pair is a parallel edge,
and "directed": true switches the pairs to arcs (tail, head).  Kernels are
{"start": i, "S": [vertex indices]}; transcripts are a move list plus the
recorded outcome, optionally carrying their start vertex and variant.

Loaders validate shape and ranges and raise InputError with the offending
field; they never partially construct.
"""

from __future__ import annotations

import json

from .engine import Player, Variant, WinReason
from .errors import GraphError, InputError
from .graph import Graph, VertexSet
from .kernel import KernelSet
from .reductions import Digraph

GRAPH_FORMAT = "fgl-graph-v1"


def _require(cond, message):
    if not cond:
        raise InputError(message)


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _dump_json(obj, path):
    text = json.dumps(obj, indent=2) + "\n"
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


# ----------------------------------------------------------------- graphs

def graph_to_obj(g):
    """JSON-ready dict for a Graph or Digraph."""
    pairs = g.arcs if g.directed else g.edges
    return {
        "format": GRAPH_FORMAT,
        "directed": g.directed,
        "vertices": list(g.vertices),
        "edges": [list(pair) for pair in pairs],
    }


def obj_to_graph(obj):
    """Parse a fgl-graph-v1 dict into a Graph or Digraph."""
    _require(isinstance(obj, dict), "graph document must be a JSON object")
    _require(
        obj.get("format") == GRAPH_FORMAT,
        f'graph document needs "format": "{GRAPH_FORMAT}", '
        f"got {obj.get('format')!r}",
    )
    directed = obj.get("directed", False)
    _require(isinstance(directed, bool), '"directed" must be true or false')
    vertices = obj.get("vertices")
    _require(isinstance(vertices, list), '"vertices" must be a list of labels')
    n = len(vertices)
    edges = obj.get("edges")
    _require(isinstance(edges, list), '"edges" must be a list of [i, j] pairs')
    pairs = []
    for pos, pair in enumerate(edges):
        _require(
            isinstance(pair, list)
            and len(pair) == 2
            and all(isinstance(x, int) and not isinstance(x, bool) for x in pair),
            f"edge {pos} must be a pair of vertex indices, got {pair!r}",
        )
        _require(
            0 <= pair[0] < n and 0 <= pair[1] < n,
            f"edge {pos} endpoint out of range 0..{n - 1}: {pair}",
        )
        pairs.append((pair[0], pair[1]))
    try:
        if directed:
            return Digraph(vertices, pairs)
        return Graph(vertices, pairs)
    except GraphError as exc:
        raise InputError(str(exc)) from exc


def load_graph(path):
    """Read a fgl-graph-v1 file."""
    return obj_to_graph(_load_json(path))


def dump_graph(g, path):
    """Write a Graph or Digraph as a fgl-graph-v1 file."""
    _dump_json(graph_to_obj(g), path)


# ---------------------------------------------------------------- kernels

def kernel_to_obj(kernel):
    """JSON-ready dict {"start": i, "S": [indices]} for a KernelSet."""
    return {"start": kernel.start, "S": list(kernel.S.members())}


def obj_to_kernel(obj, vertex_count):
    """Parse a kernel dict against a graph of `vertex_count` vertices."""
    _require(isinstance(obj, dict), "kernel document must be a JSON object")
    start = obj.get("start")
    _require(
        isinstance(start, int) and not isinstance(start, bool),
        '"start" must be a vertex index',
    )
    _require(0 <= start < vertex_count, f'"start" out of range: {start}')
    members = obj.get("S")
    _require(isinstance(members, list), '"S" must be a list of vertex indices')
    mask = 0
    for v in members:
        _require(
            isinstance(v, int) and not isinstance(v, bool),
            f"kernel member {v!r} is not a vertex index",
        )
        _require(0 <= v < vertex_count, f"kernel member out of range: {v}")
        _require(not mask >> v & 1, f"kernel member repeated: {v}")
        mask |= 1 << v
    return KernelSet(start, VertexSet(vertex_count, mask))


def load_kernel(path, vertex_count):
    """Read a kernel file for a graph of `vertex_count` vertices."""
    return obj_to_kernel(_load_json(path), vertex_count)


def dump_kernel(kernel, path):
    """Write a KernelSet as a kernel JSON file."""
    _dump_json(kernel_to_obj(kernel), path)


# ------------------------------------------------------------ transcripts

def transcript_to_obj(moves, winner=None, reason=None, start=None, variant=None):
    """JSON-ready dict for a playout: the move list plus its outcome.

    winner/reason stay null for an unfinished playout; start and variant
    are optional conveniences so a transcript can name its own game.
    """
    obj = {
        "moves": list(moves),
        "outcome": {
            "winner": winner.value if winner is not None else None,
            "reason": reason.value if reason is not None else None,
        },
    }
    if start is not None:
        obj["start"] = start
    if variant is not None:
        obj["variant"] = variant.value
    return obj


def obj_to_transcript(obj):
    """Parse a transcript dict.

    Returns (moves, winner, reason, start, variant); winner/reason/start/
    variant are None when absent or null.
    """
    _require(isinstance(obj, dict), "transcript document must be a JSON object")
    moves = obj.get("moves")
    _require(isinstance(moves, list), '"moves" must be a list of EdgeIds')
    for pos, e in enumerate(moves):
        _require(
            isinstance(e, int) and not isinstance(e, bool) and e >= 0,
            f"move {pos} is not an EdgeId: {e!r}",
        )
    outcome = obj.get("outcome", {})
    _require(isinstance(outcome, dict), '"outcome" must be an object')
    winner = outcome.get("winner")
    if winner is not None:
        try:
            winner = Player(winner)
        except ValueError:
            raise InputError(f"unknown winner {winner!r}") from None
    reason = outcome.get("reason")
    if reason is not None:
        try:
            reason = WinReason(reason)
        except ValueError:
            raise InputError(f"unknown win reason {reason!r}") from None
    start = obj.get("start")
    if start is not None:
        _require(
            isinstance(start, int) and not isinstance(start, bool) and start >= 0,
            f'"start" must be a vertex index, got {start!r}',
        )
    variant = obj.get("variant")
    if variant is not None:
        try:
            variant = Variant(variant)
        except ValueError:
            raise InputError(f"unknown variant {variant!r}") from None
    return list(moves), winner, reason, start, variant


def load_transcript(path):
    """Read a transcript file; see obj_to_transcript for the return shape."""
    return obj_to_transcript(_load_json(path))


def dump_transcript(moves, path, winner=None, reason=None, start=None, variant=None):
    """Write a playout transcript file."""
    _dump_json(
        transcript_to_obj(
            moves, winner=winner, reason=reason, start=start, variant=variant
        ),
        path,
    )
