"""Exact perfect-play solving and the exhaustive-adversary policy verifier.

The solver is a memoized negamax over (token, removed-mask) states.  The
memo lives in a capacity-bounded direct-mapped transposition table with a
keep-the-deeper-subtree replacement rule; correctness never depends on
retention because evicted positions are simply re-searched.

verify_policy fixes one player's moves to a scripted policy and explores
every opponent reply, so its cost is the number of reachable opponent
lines, far below full search.  Policies declare themselves cacheable when
their choice is a pure function of (token, removed mask); verified-OK
subtrees are then shared across transposed lines.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .engine import (
    Player,
    Variant,
    apply_move,
    initial_state,
    legal_moves,
    moves_adjacency,
)
from .errors import BudgetExceeded, FglError, InputError, OversizeError, PolicyError
from .families import make_family

MASK_CAPACITY = 128

_MIX = 0x9E3779B97F4A7C15


def fgl_threads():
    """Worker cap from the FGL_THREADS environment variable (default 1)."""
    raw = os.environ.get("FGL_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True, slots=True)
class SearchLimits:
    max_states: int = 50_000_000
    max_seconds: float = 120.0
    table_capacity: int = 1 << 20

    def __post_init__(self):
        if self.max_states <= 0 or self.max_seconds <= 0 or self.table_capacity <= 0:
            raise InputError("search limits must be positive")


@dataclass(frozen=True, slots=True)
class Verdict:
    winner: Player
    states_visited: int
    table_hits: int
    principal_variation: tuple | None
    wall_time: float


class TranspositionTable:
    """Direct-mapped bounded memo: one slot per hash bucket.

    On collision the entry whose subtree was larger stays (ties go to the
    newcomer).  Eviction only costs re-search, never correctness.
    """

    __slots__ = ("capacity", "_keys", "_wins", "_weights", "hits")

    def __init__(self, capacity):
        self.capacity = capacity
        self._keys = [None] * capacity
        self._wins = bytearray(capacity)
        self._weights = [0] * capacity
        self.hits = 0

    def _slot(self, key):
        return (key * _MIX) % self.capacity

    def get(self, key):
        i = self._slot(key)
        if self._keys[i] == key:
            self.hits += 1
            return bool(self._wins[i])
        return None

    def put(self, key, win, weight):
        i = self._slot(key)
        old = self._keys[i]
        if old is not None and old != key and self._weights[i] > weight:
            return
        self._keys[i] = key
        self._wins[i] = 1 if win else 0
        self._weights[i] = weight


class _Search:
    """One perfect-play search over a fixed (board, start, variant)."""

    def __init__(self, board, s, variant, limits):
        if board.edge_count > MASK_CAPACITY:
            raise OversizeError(
                f"{board.edge_count} edges exceed the {MASK_CAPACITY}-edge mask capacity"
            )
        self.board = board
        self.s = s
        self.feedback = variant is Variant.FEEDBACK
        self.adj = moves_adjacency(board, variant)
        self.order = self._move_order(board, s)
        self.table = TranspositionTable(limits.table_capacity)
        self.max_states = limits.max_states
        self.max_seconds = limits.max_seconds
        self.t0 = time.monotonic()
        self.states = 0
        self.vcount = board.vertex_count

    def _move_order(self, board, s):
        if not self.feedback:
            return self.adj
        # heuristic only: try edges leading toward s first
        dist = [None] * board.vertex_count
        dist[s] = 0
        queue = [s]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for _, u in board.adjacency[v]:
                if dist[u] is None:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        far = board.vertex_count
        return tuple(
            tuple(sorted(entries, key=lambda eu: (dist[eu[1]] if dist[eu[1]] is not None else far, eu[0])))
            for entries in self.adj
        )

    def _budget(self):
        self.states += 1
        if self.states > self.max_states:
            raise BudgetExceeded(
                "states", self.states, self.table.hits, time.monotonic() - self.t0
            )
        if not self.states & 0x3FF:
            elapsed = time.monotonic() - self.t0
            if elapsed > self.max_seconds:
                raise BudgetExceeded("seconds", self.states, self.table.hits, elapsed)

    def win(self, token, mask):
        """True iff the player to move wins from (token, mask)."""
        key = mask * self.vcount + token
        cached = self.table.get(key)
        if cached is not None:
            return cached
        self._budget()
        before = self.states
        adj = self.adj
        result = False
        for e, v in self.order[token]:
            if mask >> e & 1:
                continue
            if self.feedback and v == self.s:
                result = True
                break
            nmask = mask | (1 << e)
            for e2, _ in adj[v]:
                if not nmask >> e2 & 1:
                    break
            else:
                result = True  # isolation
                break
            if not self.win(v, nmask):
                result = True
                break
        self.table.put(key, result, self.states - before + 1)
        return result

    def immediate_win(self, token, mask, e, v):
        if self.feedback and v == self.s:
            return True
        nmask = mask | (1 << e)
        return all(nmask >> e2 & 1 for e2, _ in self.adj[v])

    def principal_variation(self):
        """Optimal line with smallest-EdgeId tie-breaks (losers also play
        their smallest legal edge; a losing move never ends the game, since
        any game-ending move wins for its mover)."""
        pv = []
        token, mask = self.s, 0
        while True:
            options = sorted(
                (e, v) for e, v in self.adj[token] if not mask >> e & 1
            )
            if not options:
                break  # degenerate start only
            if self.win(token, mask):
                for e, v in options:
                    if self.immediate_win(token, mask, e, v):
                        pv.append(e)
                        return pv
                    if not self.win(v, mask | (1 << e)):
                        pv.append(e)
                        token, mask = v, mask | (1 << e)
                        break
                else:
                    raise FglError("inconsistent search results during PV walk")
            else:
                e, v = options[0]
                pv.append(e)
                token, mask = v, mask | (1 << e)
        return pv


def solve(board, s, variant=Variant.FEEDBACK, limits=None, pv=False, threads=None):
    """Winner under perfect play from the fresh state (token on s).

    Raises BudgetExceeded (carrying partial statistics) when limits run out
    and OversizeError beyond MASK_CAPACITY edges.  With threads > 1 (or
    FGL_THREADS set) root moves are searched in separate processes with
    private tables; the verdict is identical, statistics are aggregated over
    all children without early cutoff, and per-child budgets are enforced
    locally, so the aggregate may overshoot max_states.  pv forces the
    sequential path.
    """
    limits = limits or SearchLimits()
    initial_state(board, s, variant)  # validates board/start/variant
    workers = threads if threads is not None else fgl_threads()
    t0 = time.monotonic()
    if pv or workers <= 1:
        srch = _Search(board, s, variant, limits)
        alice_wins = srch.win(s, 0)
        line = tuple(srch.principal_variation()) if pv else None
        return Verdict(
            Player.ALICE if alice_wins else Player.BOB,
            srch.states,
            srch.table.hits,
            line,
            time.monotonic() - t0,
        )
    return _solve_parallel(board, s, variant, limits, workers, t0)


def _solve_parallel(board, s, variant, limits, workers, t0):
    probe = _Search(board, s, variant, limits)
    children = []
    alice_wins = False
    for e, v in probe.order[s]:
        if probe.immediate_win(s, 0, e, v):
            alice_wins = True
        else:
            children.append((e, v))
    states, hits = 1, 0
    if children and not alice_wins:
        jobs = [(board, s, variant, limits, v, 1 << e) for e, v in children]
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            for child_win, child_states, child_hits in pool.map(_root_child, jobs):
                states += child_states
                hits += child_hits
                if not child_win:
                    alice_wins = True
        if states > limits.max_states:
            raise BudgetExceeded("states", states, hits, time.monotonic() - t0)
    return Verdict(
        Player.ALICE if alice_wins else Player.BOB,
        states,
        hits,
        None,
        time.monotonic() - t0,
    )


def _root_child(args):
    board, s, variant, limits, token, mask = args
    srch = _Search(board, s, variant, limits)
    win = srch.win(token, mask)
    return win, srch.states, srch.table.hits


def best_move(state, limits=None):
    """A win-preserving move for the mover (smallest EdgeId), else None."""
    limits = limits or SearchLimits()
    srch = _Search(state.graph, state.start, state.variant, limits)
    for e in legal_moves(state):
        v = next(u for eid, u in srch.adj[state.token] if eid == e)
        if srch.immediate_win(state.token, state.removed, e, v):
            return e
        if not srch.win(v, state.removed | (1 << e)):
            return e
    return None


@dataclass(slots=True)
class VerificationReport:
    verified: bool
    lines_explored: int
    counterexample: list | None
    max_depth: int
    failure: str | None = None  # LOST | ILLEGAL | POLICY_ERROR
    detail: str = ""


def verify_policy(board, s, variant, policy, player, limits=None, use_cache=True):
    """Check that `policy` wins for `player` against every opponent line.

    The policy moves at every node where `player` is the mover; all opponent
    moves are branched exhaustively.  verified=False comes with a replayable
    counterexample move list (its legal prefix, for ILLEGAL/POLICY_ERROR
    failures, with the offending choice in `detail`).
    """
    limits = limits or SearchLimits()
    if policy.owner is not player:
        raise InputError(
            f"policy owned by {policy.owner.value} cannot be verified for {player.value}"
        )
    if board.edge_count > MASK_CAPACITY:
        raise OversizeError(
            f"{board.edge_count} edges exceed the {MASK_CAPACITY}-edge mask capacity"
        )
    root = initial_state(board, s, variant)
    cache = set() if (use_cache and getattr(policy, "cacheable", False)) else None
    invariant = getattr(policy, "post_move_invariant", None)
    t0 = time.monotonic()
    stats = {"nodes": 0, "leaves": 0, "max_depth": 0}
    path = []

    def report(ok, failure=None, detail=""):
        return VerificationReport(
            ok,
            stats["leaves"],
            None if ok else list(path),
            stats["max_depth"],
            failure,
            detail,
        )

    def budget():
        stats["nodes"] += 1
        if stats["nodes"] > limits.max_states:
            raise BudgetExceeded(
                "states", stats["nodes"], 0, time.monotonic() - t0
            )
        if not stats["nodes"] & 0x3FF:
            elapsed = time.monotonic() - t0
            if elapsed > limits.max_seconds:
                raise BudgetExceeded("seconds", stats["nodes"], 0, elapsed)

    def visit(state, depth):
        budget()
        if depth > stats["max_depth"]:
            stats["max_depth"] = depth
        key = (state.token, state.removed)
        if cache is not None and key in cache:
            return None
        if state.mover is player:
            try:
                e = policy.choose(state)
            except PolicyError as exc:
                return report(False, "POLICY_ERROR", str(exc))
            if e not in legal_moves(state):
                return report(False, "ILLEGAL", f"policy chose unplayable edge {e}")
            nxt, out = apply_move(state, e)
            path.append(e)
            try:
                if out.over:
                    stats["leaves"] += 1
                elif invariant is not None and not invariant(nxt):
                    return report(
                        False, "POLICY_ERROR", f"post-move invariant failed after edge {e}"
                    )
                else:
                    bad = visit(nxt, depth + 1)
                    if bad is not None:
                        return bad
            finally:
                path.pop()
        else:
            moves = legal_moves(state)
            if not moves:
                stats["leaves"] += 1  # opponent stuck: player already safe
            for e in moves:
                nxt, out = apply_move(state, e)
                path.append(e)
                try:
                    if out.over:
                        return report(
                            False, "LOST", f"opponent won by {out.reason.value}"
                        )
                    bad = visit(nxt, depth + 1)
                    if bad is not None:
                        return bad
                finally:
                    path.pop()
        if cache is not None:
            cache.add(key)
        return None

    bad = visit(root, 0)
    return bad if bad is not None else report(True)


# ----------------------------------------------------------------- scanning

@dataclass(frozen=True, slots=True)
class ScanRow:
    family: str
    params: str
    start: int
    mode: str
    result: str
    states: int
    seconds: float


def parse_scan_range(family, text):
    """Parse a scan range: "a..b" for tri/gk/cycle, "a..bxc..d" for torus."""

    def span(part):
        lo, sep, hi = part.partition("..")
        try:
            lo = int(lo)
            hi = int(hi) if sep else lo
        except ValueError as exc:
            raise InputError(f"bad range {text!r}") from exc
        if hi < lo:
            raise InputError(f"empty range {text!r}")
        return range(lo, hi + 1)

    if family == "torus":
        left, sep, right = text.partition("x")
        if not sep:
            raise InputError("torus range must look like 2..5x2..5")
        return [(m, n) for m in span(left) for n in span(right)]
    return [(n,) for n in span(text)]


def scan(family, range_text, what, limits=None, threads=None, timings=False):
    """One row per family instance: perfect-play winner or kernel existence.

    Budget exhaustion marks the row TIMEOUT and never aborts the run; rows
    come back in input order regardless of worker count.
    """
    if what not in ("winner", "kernel"):
        raise InputError(f"scan mode must be winner or kernel, not {what!r}")
    limits = limits or SearchLimits()
    jobs = [
        (family, params, what, limits, timings)
        for params in parse_scan_range(family, range_text)
    ]
    workers = threads if threads is not None else fgl_threads()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            return list(pool.map(_scan_row, jobs))
    return [_scan_row(job) for job in jobs]


def _scan_row(job):
    from .kernel import find_even_kernel  # local import avoids a cycle

    family, params, what, limits, timings = job
    g, s = make_family(family, params)
    names = {"tri": ("n",), "torus": ("m", "n"), "gk": ("k",), "cycle": ("n",)}
    label = ",".join(f"{k}={v}" for k, v in zip(names[family], params))
    t0 = time.monotonic()
    states = 0
    if what == "winner":
        try:
            verdict = solve(g, s, Variant.FEEDBACK, limits, threads=1)
            result, states = verdict.winner.value, verdict.states_visited
        except BudgetExceeded as exc:
            result, states = "TIMEOUT", exc.states_visited
        except OversizeError:
            result = "OVERSIZE"
    else:
        stats = {}
        try:
            found = find_even_kernel(
                g, s, max_nodes=limits.max_states, max_seconds=limits.max_seconds,
                stats=stats,
            )
            result = "KERNEL" if found is not None else "NONE"
        except BudgetExceeded:
            result = "TIMEOUT"
        states = stats.get("nodes", 0)
    seconds = round(time.monotonic() - t0, 3) if timings else 0.0
    return ScanRow(family, label, s, what, result, states, seconds)


def scan_csv(rows):
    """Render scan rows as the canonical CSV table."""
    lines = ["family,params,start,mode,result,states,seconds"]
    for r in rows:
        lines.append(
            f"{r.family},\"{r.params}\",{r.start},{r.mode},{r.result},{r.states},{r.seconds:.3f}"
        )
    return "\n".join(lines) + "\n"
