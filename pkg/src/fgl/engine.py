"""Move generation and win detection for the feedback game and edge geography.

Rules.  A token starts on s; players alternate (first mover ALICE) sliding
it along an unused edge, which is then used up.  Under the FEEDBACK variant a
player wins immediately by moving the token back to s (BACK_TO_START) or
onto a vertex with no unused incident edges (ISOLATION).  The edge
geography variants keep only the ISOLATION rule; the directed variant moves
along unused out-arcs.

A player to move with no legal moves loses.  That situation is only
reachable at a degenerate start (isolated s), since otherwise the previous
mover already won by ISOLATION; with an isolated start Alice loses.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import GraphError, IllegalMoveError


class Player(Enum):
    ALICE = "ALICE"
    BOB = "BOB"

    def opponent(self):
        return Player.BOB if self is Player.ALICE else Player.ALICE


class Variant(Enum):
    FEEDBACK = "feedback"
    EDGE_GEO_UNDIRECTED = "ueg"
    EDGE_GEO_DIRECTED = "deg"


class WinReason(Enum):
    BACK_TO_START = "BACK_TO_START"
    ISOLATION = "ISOLATION"


@dataclass(frozen=True, slots=True)
class MoveOutcome:
    """ONGOING when reason is None, else the mover just won for that reason."""

    reason: WinReason | None = None

    @property
    def over(self):
        return self.reason is not None


ONGOING = MoveOutcome()


@dataclass(frozen=True, slots=True)
class GameState:
    """Snapshot of a play: immutable, cheap to clone per branch.

    removed is an int bitmask over EdgeIds (bit e set = edge e used up);
    mover is ALICE exactly when removed has even popcount.
    """

    graph: object
    start: int
    token: int
    removed: int
    mover: Player
    variant: Variant


def moves_adjacency(board, variant):
    """The per-vertex move table for a board under a variant."""
    if variant is Variant.EDGE_GEO_DIRECTED:
        if not board.directed:
            raise GraphError("directed edge geography needs a digraph")
        return board.out_adjacency
    if board.directed:
        raise GraphError(f"variant {variant.value} needs an undirected graph")
    return board.adjacency


def initial_state(board, s, variant=Variant.FEEDBACK):
    """Fresh state: token on s, no removed edges, Alice to move.

    The board must be connected (weakly, for digraphs) and s a valid vertex.
    """
    if not 0 <= s < board.vertex_count:
        raise GraphError(f"start vertex {s} out of range")
    moves_adjacency(board, variant)  # validates board/variant pairing
    if not _reaches_all(board, s):
        raise GraphError("board must be connected")
    return GameState(board, s, s, 0, Player.ALICE, variant)


def _reaches_all(board, s):
    # undirected view: Digraph exposes .adjacency with both directions
    n = board.vertex_count
    seen = 1 << s
    stack = [s]
    count = 1
    while stack:
        v = stack.pop()
        for _, u in board.adjacency[v]:
            if not seen >> u & 1:
                seen |= 1 << u
                count += 1
                stack.append(u)
    return count == n


def legal_moves(st):
    """Unused edges the mover may slide along, ascending by EdgeId."""
    adj = moves_adjacency(st.graph, st.variant)
    removed = st.removed
    out = [e for e, _ in adj[st.token] if not removed >> e & 1]
    out.sort()
    return out


def apply_move(st, e):
    """Apply edge e, returning (next state, outcome).

    FEEDBACK: landing on s is BACK_TO_START; otherwise landing on a vertex
    with no unused incident edges is ISOLATION.  Geography variants use only
    the ISOLATION rule.  Illegal e raises IllegalMoveError.
    """
    adj = moves_adjacency(st.graph, st.variant)
    if st.removed >> e & 1:
        raise IllegalMoveError(f"edge {e} already removed")
    dest = None
    for eid, other in adj[st.token]:
        if eid == e:
            dest = other
            break
    if dest is None:
        raise IllegalMoveError(f"edge {e} is not playable from vertex {st.token}")
    removed = st.removed | (1 << e)
    nxt = GameState(st.graph, st.start, dest, removed, st.mover.opponent(), st.variant)
    if st.variant is Variant.FEEDBACK and dest == st.start:
        return nxt, MoveOutcome(WinReason.BACK_TO_START)
    for eid, _ in adj[dest]:
        if not removed >> eid & 1:
            return nxt, ONGOING
    return nxt, MoveOutcome(WinReason.ISOLATION)


def run_moves(board, s, variant, edge_list):
    """Replay a move list from the initial state.

    Returns (final state, list of per-move outcomes).  Raises
    IllegalMoveError (mentioning the ply) on a bad move, including moves
    played after the game already ended.
    """
    st = initial_state(board, s, variant)
    outcomes = []
    for ply, e in enumerate(edge_list):
        if outcomes and outcomes[-1].over:
            raise IllegalMoveError(f"move at ply {ply} played after the game ended")
        try:
            st, out = apply_move(st, e)
        except IllegalMoveError as exc:
            raise IllegalMoveError(f"ply {ply}: {exc}") from exc
        outcomes.append(out)
    return st, outcomes


def winner_of_final(outcomes, plies=None):
    """Who won a finished playout: the mover of the last (winning) ply."""
    if not outcomes or not outcomes[-1].over:
        raise IllegalMoveError("playout did not end the game")
    last_ply = len(outcomes) - 1 if plies is None else plies - 1
    return Player.ALICE if last_ply % 2 == 0 else Player.BOB
