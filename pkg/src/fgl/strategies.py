"""Scripted winning policies, consumable by the exhaustive-adversary verifier.

Every policy is a pure function of the visible position (token vertex plus
the set of used edges), so repeated positions always get the same answer and
the verifier may safely cache subtrees.  Where a script leaves a branch
implicit (an opponent blunder the narration skips over), the policy falls
back to an exact bounded solve of the residual position; a policy raises
PolicyError only on states it believes unreachable, and the verifier turns
that into a replayable counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .engine import Player, Variant, apply_move, legal_moves
from .errors import InputError, KernelError, PolicyError
from .families import gk_graph, tri_vertex_id, triangular_grid
from .graph import Graph
from .kernel import build_kernel_cert, find_even_kernel
from .solver import SearchLimits, _Search


class Policy:
    """Deterministic total move rule for one player.

    Subclasses implement choose(state) -> EdgeId; `owner` is the player the
    rule plays for, `name` a short label for reports, and `cacheable`
    declares that choose depends only on (token, removed), never on call
    order.
    """

    owner = Player.ALICE
    name = "policy"
    cacheable = True

    def choose(self, state):
        raise NotImplementedError


def _pair_key(x, y):
    return (x, y) if x <= y else (y, x)


def _edge_index(g):
    """Map vertex pair -> ascending EdgeIds (several for parallel edges)."""
    index = {}
    for eid, (x, y) in enumerate(g.edges):
        index.setdefault(_pair_key(x, y), []).append(eid)
    return index


def _win_edge_to_start(state):
    """Smallest unused edge from the token straight to s, if any."""
    best = None
    for eid, other in state.graph.adjacency[state.token]:
        if other == state.start and not state.removed >> eid & 1:
            if best is None or eid < best:
                best = eid
    return best


# ------------------------------------------------------------ kernel reply

class KernelReplyPolicy(Policy):
    """Second player's reply rule derived from an even-kernel certificate.

    The certificate splits the relevant vertices into an independent black
    part B (containing s) and its neighborhood W, with H the set of all
    edges between them.  Every edge at a B vertex is an H-edge, so the
    opponent always delivers the token to some w in W and leaves w with an
    odd number of unused H-edges; the reply takes the smallest unused
    H-edge from w back into B, restoring the all-even invariant.
    """

    owner = Player.BOB
    name = "kernel-reply"

    def __init__(self, cert):
        self.cert = cert
        self._b_mask = cert.B.mask
        self._w_mask = cert.W.mask
        self._h_set = frozenset(cert.H_edges)

    def choose(self, state):
        t = state.token
        if not self._w_mask >> t & 1:
            raise PolicyError(f"token on vertex {t}, outside the reply part W")
        removed = state.removed
        for eid, other in sorted(state.graph.adjacency[t]):
            if (
                eid in self._h_set
                and self._b_mask >> other & 1
                and not removed >> eid & 1
            ):
                return eid
        raise PolicyError(f"no unused kernel edge from vertex {t} into B")

    def post_move_invariant(self, state):
        """After the reply: token in B, every W vertex even in unused H."""
        if not self._b_mask >> state.token & 1:
            return False
        removed = state.removed
        adjacency = state.graph.adjacency
        w = self._w_mask
        v = 0
        while w:
            if w & 1:
                count = sum(
                    1
                    for eid, _ in adjacency[v]
                    if eid in self._h_set and not removed >> eid & 1
                )
                if count % 2:
                    return False
            w >>= 1
            v += 1
        return True


def kernel_policy(cert):
    """Reply policy for the second player, built from a kernel certificate."""
    return KernelReplyPolicy(cert)


# ------------------------------------------------- two-row toroidal march

class TwoRowMarchPolicy(Policy):
    """First player's march on the 2 x n toroidal grid, n odd.

    Opening: slide from (0,0) to (0,1).  Thereafter, from row 0 take the
    unique unused ring edge (the march direction), and from row 1 return to
    row 0 along the parallel rung the opponent did not use.  The ring of
    row 0 has odd length, so the march's final ring edge lands on s.
    """

    owner = Player.ALICE
    name = "two-row-march"

    def __init__(self, n):
        if n < 3 or n % 2 == 0:
            raise InputError(f"two-row march needs odd n >= 3, got {n}")
        self.n = n

    def _check(self, state):
        g = state.graph
        if g.vertex_count != 2 * self.n or g.edge_count != 4 * self.n:
            raise InputError(
                f"state is not a 2 x {self.n} toroidal grid "
                f"({g.vertex_count} vertices, {g.edge_count} edges)"
            )
        if state.start != 0 or state.variant is not Variant.FEEDBACK:
            raise InputError("two-row march plays the feedback game from (0,0)")

    def choose(self, state):
        self._check(state)
        n = self.n
        t, removed = state.token, state.removed
        if t == state.start:
            if removed:
                raise PolicyError("token back on s with the game still running")
            return 0  # ring edge (0,0)-(0,1)
        row, col = divmod(t, n)
        if row == 1:
            # rungs at this column: 2n + 2*col and its parallel twin
            for eid in (2 * n + 2 * col, 2 * n + 2 * col + 1):
                if not removed >> eid & 1:
                    return eid
            raise PolicyError(f"both rungs at column {col} already used")
        ring = [col, (col - 1) % n]  # eids of the two row-0 ring edges at t
        open_ring = [e for e in ring if not removed >> e & 1]
        if len(open_ring) != 1:
            raise PolicyError(
                f"expected exactly one unused ring edge at (0,{col}), "
                f"found {len(open_ring)}"
            )
        return open_ring[0]


def q2n_policy(n):
    """March policy for the 2 x n toroidal grid; n must be odd."""
    return TwoRowMarchPolicy(n)


# ----------------------------------------------- three-row toroidal march

class ThreeRowMarchPolicy(Policy):
    """First player's diagonal march on the 3 x n toroidal grid, 3 ∤ n.

    The opening fixes the row direction (down one row); the opponent's
    first ring move fixes the column direction.  Each later decision is
    classified by which single incident edge the opponent just used:

    * arrival along the ring in the march direction -> step down a row
      (or, entering the final column, close the ring onto column 0);
    * any other arrival -> step one column against the march direction,
      which starts a forced retreat diagonally back to s.

    Landing on s is always taken when available.
    """

    owner = Player.ALICE
    name = "three-row-march"

    def __init__(self, n):
        if n < 4 or gcd(3, n) != 1:
            raise InputError(
                f"three-row march needs n >= 4 with gcd(3, n) = 1, got {n}"
            )
        self.n = n

    def _check(self, state):
        g = state.graph
        if g.vertex_count != 3 * self.n or g.edge_count != 6 * self.n:
            raise InputError(
                f"state is not a 3 x {self.n} toroidal grid "
                f"({g.vertex_count} vertices, {g.edge_count} edges)"
            )
        if state.start != 0 or state.variant is not Variant.FEEDBACK:
            raise InputError("three-row march plays the feedback game from (0,0)")

    def _ring(self, row, col):
        """Eid of the ring edge from (row, col) to (row, col+1)."""
        return row * self.n + col

    def _rung(self, row, col):
        """Eid of the column edge from (row, col) to (row+1, col)."""
        return 3 * self.n + 3 * col + row

    def choose(self, state):
        self._check(state)
        n = self.n
        t, removed = state.token, state.removed

        def used(e):
            return removed >> e & 1

        if t == state.start:
            if removed:
                raise PolicyError("token back on s with the game still running")
            return self._rung(0, 0)
        win = _win_edge_to_start(state)
        if win is not None:
            return win
        if used(self._ring(1, 0)):
            sigma = 1
        elif used(self._ring(1, n - 1)):
            sigma = -1
        else:
            raise PolicyError("column direction not established yet")
        row, col = divmod(t, n)
        if sigma == 1:
            fwd, bwd = self._ring(row, col), self._ring(row, (col - 1) % n)
        else:
            fwd, bwd = self._ring(row, (col - 1) % n), self._ring(row, col)
        down = self._rung(row, col)
        up = self._rung((row - 1) % 3, col)
        if used(bwd) and not (used(fwd) or used(down) or used(up)):
            # arrival along the march; step down a row, except when the
            # march is about to wrap, where the ring is closed instead
            if (col + sigma) % n == 0:
                if used(fwd):
                    raise PolicyError("closing ring edge already used")
                return fwd
            if used(down):
                raise PolicyError("descent rung already used")
            return down
        if used(bwd):
            raise PolicyError(f"no scripted reply at (row {row}, column {col})")
        return bwd


def q3n_policy(n):
    """March policy for the 3 x n toroidal grid; gcd(3, n) = 1, n >= 4."""
    return ThreeRowMarchPolicy(n)


# ----------------------------------------------------------- hub trap

class HubTrapPolicy(Policy):
    """Second player's trap on the hub-and-spokes graph.

    The graph has a hub s joined to every rim vertex v_j, an inner cycle
    through u_0..u_{2k-1}, and one spoke from each rim vertex to an inner
    vertex.  Whenever the opponent steps onto a rim vertex whose hub edge
    is unused, playing that edge returns the token to s and wins at once.
    Otherwise the opponent is pushed along the inner cycle until the only
    exit left is a rim vertex with a fresh hub edge.
    """

    owner = Player.BOB
    name = "hub-trap"

    def __init__(self, k):
        if k < 2:
            raise InputError(f"hub trap needs k >= 2, got {k}")
        self.k = k

    def _check(self, state):
        g = state.graph
        k = self.k
        if g.vertex_count != 1 + 6 * k or g.edge_count != 14 * k:
            raise InputError(
                f"state is not the k={k} hub-and-spokes graph "
                f"({g.vertex_count} vertices, {g.edge_count} edges)"
            )
        if state.start != 0 or state.variant is not Variant.FEEDBACK:
            raise InputError("hub trap plays the feedback game from s")

    def choose(self, state):
        self._check(state)
        k = self.k
        t, removed = state.token, state.removed
        if t == 0:
            raise PolicyError("token on s with the game still running")
        if t > 2 * k:  # rim vertex v_j
            hub = spoke = None
            for eid, other in state.graph.adjacency[t]:
                if other == 0:
                    hub = eid
                elif 1 <= other <= 2 * k:
                    spoke = eid
            if hub is not None and not removed >> hub & 1:
                return hub
            if spoke is not None and not removed >> spoke & 1:
                return spoke
            raise PolicyError(f"rim vertex {t} has no hub or spoke reply")
        # inner vertex u_c: push along the single unused cycle edge
        cycle_open = [
            eid
            for eid, other in sorted(state.graph.adjacency[t])
            if 1 <= other <= 2 * k and not removed >> eid & 1
        ]
        if len(cycle_open) != 1:
            raise PolicyError(
                f"expected one unused cycle edge at inner vertex {t}, "
                f"found {len(cycle_open)}"
            )
        return cycle_open[0]


def gk_policy(k):
    """Trap policy for the second player on the hub-and-spokes graph."""
    return HubTrapPolicy(k)


# ----------------------------------------------------- dead-vertex marker

@dataclass(frozen=True, slots=True)
class DeadVertexMarker:
    """Bounded test that moving the token onto a vertex loses the game.

    is_dead(state, v) is True when every legal slide from state.token onto
    v hands the opponent a win forced within `depth` plies.  A True answer
    is a proof; False only means the bounded search could not confirm it.
    """

    depth: int = 4

    def is_dead(self, state, vertex):
        entries = [
            eid
            for eid, other in state.graph.adjacency[state.token]
            if other == vertex and not state.removed >> eid & 1
        ]
        if not entries:
            return False
        for eid in entries:
            nxt, outcome = apply_move(state, eid)
            if outcome.over:
                return False  # entering wins on the spot for the mover
            if not _forced_win(nxt, self.depth):
                return False
        return True


def _forced_win(state, depth):
    """True when the mover provably wins within `depth` plies."""
    if depth <= 0:
        return False
    for eid in legal_moves(state):
        nxt, outcome = apply_move(state, eid)
        if outcome.over:
            return True
        if _forced_loss(nxt, depth - 1):
            return True
    return False


def _forced_loss(state, depth):
    """True when the mover provably loses within `depth` plies."""
    moves = legal_moves(state)
    if not moves:
        return True
    if depth <= 0:
        return False
    for eid in moves:
        nxt, outcome = apply_move(state, eid)
        if outcome.over:
            return False
        if not _forced_win(nxt, depth - 1):
            return False
    return True


# ------------------------------------------------- small-grid script (T_5)

@dataclass(frozen=True, slots=True)
class _GuideCert:
    """Even-kernel guide of a residual position, in original edge ids.

    b_mask / w_mask are vertex bitmasks of the black part and its
    neighborhood; h_at[v] lists the guide edges at v; b_extra lists the
    edges incident to B that are not guide edges (they must all be used
    before the guide's parity argument applies).
    """

    b_mask: int
    w_mask: int
    h_at: tuple
    b_extra: tuple


def _residual_guide(g, index, used_pairs, required, odd_vertex=None):
    """Compute a parity guide of the graph minus the given edges.

    The guide is an independent set B containing vertex 0 such that in the
    residual graph every neighbor of B sees an even number of edges into B,
    except `odd_vertex` (when given), which must see an odd number.  The
    odd variant serves branches where the guide takes over with the token
    already parked on a white vertex and the scripted player to move.

    The search runs on the residual plus one phantom edge from vertex 0 to
    `odd_vertex`, which flips exactly that vertex's parity constraint; the
    certificate is then rebuilt and checked on the true residual.
    """
    used = set()
    for pair in used_pairs:
        used.add(index[_pair_key(*pair)][0])
    keep = [e for e in range(g.edge_count) if e not in used]
    residual_edges = [g.edges[e] for e in keep]
    search_edges = list(residual_edges)
    if odd_vertex is not None:
        search_edges.append((0, odd_vertex))
    kernel = find_even_kernel(Graph(g.vertices, search_edges), 0, required=required)
    if kernel is None:
        raise KernelError("residual position has no parity guide")
    b_mask = kernel.S.mask
    h_orig = set()
    w_mask = 0
    for eid in keep:
        x, y = g.edges[eid]
        if b_mask >> x & 1:
            h_orig.add(eid)
            w_mask |= 1 << y
        elif b_mask >> y & 1:
            h_orig.add(eid)
            w_mask |= 1 << x
    for vtx in range(g.vertex_count):
        if not w_mask >> vtx & 1:
            continue
        count = sum(1 for eid, _ in g.adjacency[vtx] if eid in h_orig)
        if count % 2 != (1 if vtx == odd_vertex else 0):
            raise KernelError(f"parity guide check failed at vertex {vtx}")
    if odd_vertex is not None and not w_mask >> odd_vertex & 1:
        raise KernelError("parity guide does not reach the entry vertex")
    h_at = tuple(
        tuple(eid for eid, _ in g.adjacency[v] if eid in h_orig)
        for v in range(g.vertex_count)
    )
    b_extra = tuple(
        sorted(
            {
                eid
                for eid, (x, y) in enumerate(g.edges)
                if (b_mask >> x & 1 or b_mask >> y & 1) and eid not in h_orig
            }
        )
    )
    return _GuideCert(b_mask, w_mask, h_at, b_extra)


class SmallGridScriptPolicy(Policy):
    """First player's scripted win on the side-5 triangular grid.

    The opening goes one step down the left edge.  Two of the opponent's
    replies are finished by parity guides of the residual position (always
    answer back into the black part); the third is a forced line carried
    by an exact move table keyed on (token, used edges), covering a
    4-cycle shuttle and two closing patterns.  Off-table positions arise
    only from opponent blunders onto losing vertices, and those are
    punished by an exact bounded solve of the residual game.
    """

    owner = Player.ALICE
    name = "small-grid-script"

    def __init__(self):
        g, _ = triangular_grid(5)
        self.graph_edges = g.edges
        index = _edge_index(g)
        v = tri_vertex_id

        def eid(ja, ka, jb, kb):
            return index[_pair_key(v(ja, ka), v(jb, kb))][0]

        def bits(*eids):
            mask = 0
            for e in eids:
                mask |= 1 << e
            return mask

        self.e_open = eid(0, 0, 1, 0)
        script = {}

        # branch entries after the opening
        e_i1, e_i2 = eid(1, 0, 2, 0), eid(2, 0, 3, 0)
        e_ii1, e_ii2 = eid(1, 0, 2, 1), eid(2, 1, 2, 2)
        e_iib, e_b1 = eid(2, 2, 3, 2), eid(3, 2, 4, 3)
        script[v(2, 0), bits(self.e_open, e_i1)] = e_i2
        script[v(2, 1), bits(self.e_open, e_ii1)] = e_ii2
        base = bits(self.e_open, e_ii1, e_ii2)
        script[v(3, 2), base | bits(e_iib)] = e_b1
        anchor = base | bits(e_iib, e_b1)  # opponent to move on v(4,3)

        # shuttle around the 4-cycle under the anchor, both directions,
        # returning the token to v(4,3) with the cycle spent
        c_ab, c_bc = eid(4, 3, 4, 4), eid(4, 4, 5, 5)
        c_cd, c_da = eid(5, 5, 5, 4), eid(5, 4, 4, 3)
        script[v(4, 4), anchor | bits(c_ab)] = c_bc
        script[v(5, 4), anchor | bits(c_ab, c_bc, c_cd)] = c_da
        script[v(5, 4), anchor | bits(c_da)] = c_cd
        script[v(4, 4), anchor | bits(c_da, c_cd, c_bc)] = c_ab

        # forced lines from the anchor, before or after the shuttle
        e_dead = eid(4, 3, 3, 3)
        e_punish = eid(3, 3, 2, 2)
        one_in, one_out = eid(4, 3, 5, 3), eid(5, 3, 5, 2)
        funnel = eid(5, 2, 4, 1)
        one_fork, one_back = eid(4, 1, 3, 0), eid(3, 0, 3, 1)
        one_close = eid(3, 1, 4, 1)
        two_in, two_out = eid(4, 3, 4, 2), eid(4, 2, 5, 2)
        two_fork = eid(4, 1, 4, 2)
        p_right, p_left = eid(4, 2, 3, 1), eid(4, 2, 3, 2)
        p_low_l, p_low_r = eid(3, 1, 2, 1), eid(2, 1, 3, 2)
        for m in (anchor, anchor | bits(c_ab, c_bc, c_cd, c_da)):
            script[v(3, 3), m | bits(e_dead)] = e_punish
            one = m | bits(one_in)
            script[v(5, 3), one] = one_out
            one |= bits(one_out, funnel)
            script[v(4, 1), one] = one_fork
            one |= bits(one_fork, one_back)
            script[v(3, 1), one] = one_close
            two = m | bits(two_in)
            script[v(4, 2), two] = two_out
            two |= bits(two_out, funnel)
            script[v(4, 1), two] = two_fork
            two |= bits(two_fork)
            script[v(3, 1), two | bits(p_right)] = p_low_l
            script[v(3, 2), two | bits(p_right, p_low_l, p_low_r)] = p_left
            script[v(3, 2), two | bits(p_left)] = p_low_r
            script[v(3, 1), two | bits(p_left, p_low_r, p_low_l)] = p_right
        self._script = script

        self.guide_i = _residual_guide(
            g,
            index,
            [(v(0, 0), v(1, 0)), (v(1, 0), v(2, 0)), (v(2, 0), v(3, 0))],
            required=(v(3, 0),),
        )
        self.guide_ii = _residual_guide(
            g,
            index,
            [
                (v(0, 0), v(1, 0)),
                (v(1, 0), v(2, 1)),
                (v(2, 1), v(2, 2)),
                (v(2, 2), v(3, 3)),
            ],
            required=(),
            odd_vertex=v(3, 3),
        )
        self._search = None

    def _check(self, state):
        g = state.graph
        if (
            g.vertex_count != 21
            or g.edge_count != 45
            or g.edges != self.graph_edges
        ):
            raise InputError("state is not the side-5 triangular grid")
        if state.start != 0 or state.variant is not Variant.FEEDBACK:
            raise InputError(
                "the script plays the feedback game from the apex corner"
            )

    def _guide_move(self, state, guide):
        """Reply back into B when the guide's parity invariant holds.

        The invariant is checked from scratch on the current position, so a
        firing guide is sound no matter how the position was reached: the
        token sits in W with an odd number of unused guide edges, every
        other W vertex is even, and B has no unused edges besides guide
        edges.  Returns None when any condition fails.
        """
        t, removed = state.token, state.removed
        if not guide.w_mask >> t & 1:
            return None
        for eid in guide.b_extra:
            if not removed >> eid & 1:
                return None
        h_at = guide.h_at
        w = guide.w_mask
        vtx = 0
        while w:
            if w & 1:
                count = 0
                for eid in h_at[vtx]:
                    if not removed >> eid & 1:
                        count += 1
                if (count % 2 == 0) == (vtx == t):
                    return None
            w >>= 1
            vtx += 1
        reply = None
        for eid in h_at[t]:
            if not removed >> eid & 1:
                if reply is None or eid < reply:
                    reply = eid
        return reply

    def _local_solve(self, state):
        """Exact fallback: any move that wins the residual game."""
        if self._search is None:
            self._search = _Search(
                state.graph,
                state.start,
                state.variant,
                SearchLimits(max_states=5_000_000, max_seconds=60.0),
            )
        srch = self._search
        for eid in legal_moves(state):
            nxt, outcome = apply_move(state, eid)
            if outcome.over:
                return eid
            if not srch.win(nxt.token, nxt.removed):
                return eid
        raise PolicyError(
            f"no winning continuation from vertex {state.token} "
            f"(mask {state.removed:#x})"
        )

    def choose(self, state):
        self._check(state)
        t, removed = state.token, state.removed
        if t == 0:
            if removed:
                raise PolicyError("token back on s with the game still running")
            return self.e_open
        win = _win_edge_to_start(state)
        if win is not None:
            return win
        move = self._script.get((t, removed))
        if move is not None:
            return move
        for guide in (self.guide_i, self.guide_ii):
            move = self._guide_move(state, guide)
            if move is not None:
                return move
        return self._local_solve(state)


def t5_policy():
    """Scripted policy for the side-5 triangular grid from the apex."""
    return SmallGridScriptPolicy()
