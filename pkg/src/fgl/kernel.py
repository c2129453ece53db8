"""Even-kernel validation, search, enumeration, and closed-form constructions.

An even kernel for (G, s) is a nonempty independent set S containing s such
that every vertex outside S is incident to an even number of edges into S
(counting parallel edges, which coincides with neighbor-counting on simple
graphs).  Its kernel graph is the bipartite subgraph on B = S and
W = N_G(B) with all B-W edges; holding one certifies that the second
player wins the feedback game from s.

Finding an even kernel is NP-complete in general, so the searcher is a
backtracker over vertices in BFS order from s with two prunes: an
independence breach, and a vertex finalized outside S with odd parity.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import gcd

from .errors import BudgetExceeded, KernelError, OversizeError
from .families import toroidal_grid, tri_vertex_id, triangular_grid
from .graph import VertexSet, edges_between, neighborhood

ENUMERATION_VERTEX_CAP = 25

RULE_CONTAINS_START = 1
RULE_INDEPENDENT = 2
RULE_EVEN_OUTSIDE = 3


@dataclass(frozen=True, slots=True)
class KernelSet:
    start: int
    S: VertexSet


@dataclass(frozen=True, slots=True)
class KernelCert:
    """Kernel graph: parts B (= S) and W (= N_G(B)), plus all B-W edges."""

    B: VertexSet
    W: VertexSet
    H_edges: tuple


@dataclass(frozen=True, slots=True)
class Violation:
    rule: int
    vertex: int
    message: str


@dataclass(frozen=True, slots=True)
class ValidationResult:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def validate_even_kernel(g, s, S):
    """Check the three kernel rules; violations name vertex and rule number.

    Rule 1: s in S (hence S nonempty).  Rule 2: S independent.  Rule 3:
    every vertex outside S sees an even number of edges into S.
    """
    violations = []
    if s not in S:
        violations.append(
            Violation(RULE_CONTAINS_START, s, f"start vertex {s} not in S")
        )
    sm = S.mask
    for eid, (x, y) in enumerate(g.edges):
        if sm >> x & 1 and sm >> y & 1:
            violations.append(
                Violation(
                    RULE_INDEPENDENT, x, f"edge {eid} joins S vertices {x} and {y}"
                )
            )
    for v in range(g.vertex_count):
        if sm >> v & 1:
            continue
        count = sum(1 for _, u in g.adjacency[v] if sm >> u & 1)
        if count % 2:
            violations.append(
                Violation(
                    RULE_EVEN_OUTSIDE, v, f"vertex {v} sees {count} edges into S"
                )
            )
    return ValidationResult(not violations, tuple(violations))


def build_kernel_cert(g, kernel):
    """Certificate with the canonical part choice W = N_G(B) exactly."""
    res = validate_even_kernel(g, kernel.start, kernel.S)
    if not res.ok:
        first = res.violations[0]
        raise KernelError(f"invalid kernel (rule {first.rule}): {first.message}")
    B = kernel.S
    W = neighborhood(g, B)
    H = tuple(edges_between(g, B, W))
    return KernelCert(B, W, H)


def _backtrack(g, s, required=(), find_all=False, max_nodes=None, max_seconds=None, stats=None):
    """Shared kernel search core; returns a list of S masks.

    Vertices are decided in BFS order from s, trying out-of-S before in-S,
    so the output order is deterministic.  `required` vertices are forced
    into S.  Node budget and wall budget raise BudgetExceeded.
    """
    n = g.vertex_count
    order = []
    seen = 1 << s
    queue = [s]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        order.append(v)
        for _, u in g.adjacency[v]:
            if not seen >> u & 1:
                seen |= 1 << u
                queue.append(u)
    for v in range(n):
        if not seen >> v & 1:
            order.append(v)

    required_mask = 1 << s
    for v in required:
        required_mask |= 1 << v
    nbr = [tuple(u for _, u in g.adjacency[v]) for v in range(n)]
    undecided = [len(nbr[v]) for v in range(n)]
    in_count = [0] * n
    results = []
    t0 = time.monotonic()
    counter = [0]

    def tick():
        counter[0] += 1
        if max_nodes is not None and counter[0] > max_nodes:
            raise BudgetExceeded("states", counter[0], 0, time.monotonic() - t0)
        if max_seconds is not None and not counter[0] & 0x3FF:
            elapsed = time.monotonic() - t0
            if elapsed > max_seconds:
                raise BudgetExceeded("seconds", counter[0], 0, elapsed)

    def descend(i, decided, in_mask):
        if i == n:
            results.append(in_mask)
            return not find_all
        v = order[i]
        forced_in = required_mask >> v & 1
        for put_in in ((True,) if forced_in else (False, True)):
            tick()
            if put_in and any(in_mask >> u & 1 for u in nbr[v]):
                continue  # independence breach
            bit = 1 << v
            for u in nbr[v]:
                undecided[u] -= 1
                if put_in:
                    in_count[u] += 1
            ndecided = decided | bit
            nin = in_mask | bit if put_in else in_mask
            ok = True
            if not put_in and undecided[v] == 0 and in_count[v] % 2:
                ok = False
            if ok:
                for u in set(nbr[v]):
                    if (
                        ndecided >> u & 1
                        and not nin >> u & 1
                        and undecided[u] == 0
                        and in_count[u] % 2
                    ):
                        ok = False
                        break
            done = ok and descend(i + 1, ndecided, nin)
            for u in nbr[v]:
                undecided[u] += 1
                if put_in:
                    in_count[u] -= 1
            if done:
                return True
        return False

    descend(0, 0, 0)
    if stats is not None:
        stats["nodes"] = counter[0]
    return results


def enumerate_even_kernels(g, s):
    """All even kernels of (g, s), exhaustively; |V| <= 25 only.

    An empty result is a non-existence proof.  Larger graphs are rejected;
    use find_even_kernel for those.
    """
    if g.vertex_count > ENUMERATION_VERTEX_CAP:
        raise OversizeError(
            f"enumeration capped at {ENUMERATION_VERTEX_CAP} vertices "
            f"({g.vertex_count} given); use find_even_kernel"
        )
    masks = _backtrack(g, s, find_all=True)
    n = g.vertex_count
    return [KernelSet(s, VertexSet(n, m)) for m in masks]


def find_even_kernel(g, s, max_nodes=None, max_seconds=None, stats=None, required=()):
    """First even kernel found, or None once the search space is exhausted.

    None is a genuine non-existence proof; running out of budget raises
    BudgetExceeded instead.  `required` forces extra vertices into S (used
    by scripted-strategy construction).  `stats`, when a dict, receives the
    explored node count.
    """
    masks = _backtrack(
        g,
        s,
        required=required,
        find_all=False,
        max_nodes=max_nodes,
        max_seconds=max_seconds,
        stats=stats,
    )
    if not masks:
        return None
    return KernelSet(s, VertexSet(g.vertex_count, masks[0]))


# ----------------------------------------------------- closed-form kernels

def _power_of_two(x):
    return x > 0 and not x & (x - 1)


def tri_excluded(n):
    """True when T_n provably has no even kernel (n + 3 a power of two)."""
    return _power_of_two(n + 3)


def _tri_kernel_coords(n):
    if n == 0:
        return {(0, 0)}
    if n % 2 == 0:
        return {
            (j, k) for j in range(0, n + 1, 2) for k in range(0, j + 1, 2)
        }
    a = (n - 3) // 2
    sub = _tri_kernel_coords(a)
    out = set()
    for r, c in sub:
        out.add((r, c))  # top copy
        out.add((a + 3 + r, c))  # bottom left
        out.add((a + 3 + r, c + a + 3))  # bottom right
        out.add((2 * a + 2 - r, a + 1 - r + c))  # inverted middle copy
    return out


def _tri_coords_to_kernel(n, coords):
    g, cmap = triangular_grid(n)
    S = VertexSet.of(g.vertex_count, [cmap[jk] for jk in sorted(coords)])
    s = tri_vertex_id(0, 0)
    res = validate_even_kernel(g, s, S)
    if not res.ok:
        first = res.violations[0]
        raise KernelError(
            f"triangular construction failed validation (rule {first.rule}): {first.message}"
        )
    return KernelSet(s, S)


def tri_parity_kernel(n):
    """Even-side kernel of T_n: S = every vertex with both coordinates even."""
    if n < 2 or n % 2:
        raise KernelError("parity kernel needs even n >= 2")
    return _tri_coords_to_kernel(n, _tri_kernel_coords(n))


def tri_recursive_kernel(n):
    """Odd-side kernel of T_n built from four placed copies of the T_a
    kernel, a = (n-3)/2 (base case: the single vertex of T_0).

    Excluded sides n = 2^m - 3 raise KernelError: those grids have no even
    kernel at all.  The validator gates the construction, so a bad placement
    fails loudly rather than propagating.
    """
    if n < 3 or n % 2 == 0:
        raise KernelError("recursive kernel needs odd n >= 3")
    if tri_excluded(n):
        raise KernelError(
            f"T_{n} has no even kernel: side {n} is 2^m - 3 (here m = {(n + 3).bit_length() - 1})"
        )
    return _tri_coords_to_kernel(n, _tri_kernel_coords(n))


def tri_kernel(n):
    """Kernel of T_n by whichever construction applies to n's parity."""
    if n == 0:
        return _tri_coords_to_kernel(0, {(0, 0)})
    if n % 2 == 0:
        return tri_parity_kernel(n)
    return tri_recursive_kernel(n)


def torus_tiled_kernel(m, n):
    """Tiled kernel of Q(m,n) for c = gcd(m,n) > 1: S = {(i,j): i = j mod c}.

    gcd 1 raises KernelError: those tori have no even kernel at all.
    """
    c = gcd(m, n)
    if c <= 1:
        raise KernelError(
            f"Q({m},{n}) has no even kernel: gcd({m},{n}) = 1"
        )
    g, cmap = toroidal_grid(m, n)
    S = VertexSet.of(
        g.vertex_count,
        [cmap[(i, j)] for i in range(m) for j in range(n) if (i - j) % c == 0],
    )
    res = validate_even_kernel(g, 0, S)
    if not res.ok:
        first = res.violations[0]
        raise KernelError(
            f"torus construction failed validation (rule {first.rule}): {first.message}"
        )
    return KernelSet(0, S)
