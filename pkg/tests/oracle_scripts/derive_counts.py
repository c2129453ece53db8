"""Independent derivations for the frozen expected values used in the tests.

This script deliberately imports nothing from the fgl package.  Every
quantity is recomputed from first principles (static neighbor rules and
naive exhaustive play), so the numbers it prints can be frozen into test
files as literals and later catch regressions in the real implementation.

Run:  python tests/oracle_scripts/derive_counts.py
"""

from collections import Counter
from itertools import count
from math import gcd


# ---------------------------------------------------------------- triangular

def tri_vertices(n):
    return [(j, k) for j in range(n + 1) for k in range(j + 1)]


def tri_neighbors(n, j, k):
    """Static neighbor rule: row mates, upper row j-1, lower row j+1."""
    cand = [(j, k - 1), (j, k + 1), (j - 1, k - 1), (j - 1, k), (j + 1, k), (j + 1, k + 1)]
    return [(a, b) for a, b in cand if 0 <= b <= a <= n]


def tri_stats(n):
    vs = tri_vertices(n)
    degs = Counter(len(tri_neighbors(n, j, k)) for j, k in vs)
    edge_count = sum(len(tri_neighbors(n, j, k)) for j, k in vs) // 2
    return len(vs), edge_count, dict(sorted(degs.items()))


# ------------------------------------------------------------------- torus

def torus_edges(m, n):
    """Multigraph edge list of C_m x C_n; a C_2 factor doubles its edges."""
    edges = []
    for i in range(m):
        for j in range(n):
            edges.append(((i, j), (i, (j + 1) % n)))
    for j in range(n):
        for i in range(m):
            edges.append(((i, j), ((i + 1) % m, j)))
    return edges


def torus_stats(m, n):
    edges = torus_edges(m, n)
    deg = Counter()
    pair = Counter()
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        pair[frozenset((a, b))] += 1
    doubled = sum(1 for c in pair.values() if c == 2)
    return m * n, len(edges), sorted(set(deg.values())), doubled


# --------------------------------------------------------------------- G_k

def gk_stats(k):
    edges = []
    for i in range(2 * k):
        edges.append((("u", i), ("u", (i + 1) % (2 * k))))
    for j in range(4 * k):
        edges.append((("v", j), ("v", (j + 1) % (4 * k))))
    for i in range(2 * k):
        edges.append((("u", i), ("v", 2 * i)))
        edges.append((("u", i), ("v", 2 * i + 1)))
    for j in range(4 * k):
        edges.append((("s", 0), ("v", j)))
    deg = Counter()
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return 6 * k + 1, len(edges), deg[("s", 0)], sorted(set(deg.values()))


# --------------------------------------------------- kernel H-edge counting

def h_edges(edges, S):
    """Edges with exactly one endpoint in S (multiplicity preserved)."""
    return [e for e in edges if (e[0] in S) != (e[1] in S)]


def per_vertex_h_counts(edges, S):
    c = Counter()
    for a, b in h_edges(edges, S):
        w = b if a in S else a
        c[w] += 1
    return dict(c)


# ------------------------------------------------- naive game tree playout

def brute_winner_digraph(arcs, s):
    """Directed edge geography: mover unable to move loses. No memo."""

    def mover_wins(token, used):
        opts = [i for i, (a, b) in enumerate(arcs) if a == token and i not in used]
        for i in opts:
            if not mover_wins(arcs[i][1], used | {i}):
                return True
        return False

    return "ALICE" if mover_wins(s, frozenset()) else "BOB"


def brute_winner_feedback(edges, s):
    """Feedback game, naive exhaustive search."""

    def mover_wins(token, used):
        for i, (a, b) in enumerate(edges):
            if i in used or token not in (a, b):
                continue
            dest = b if a == token else a
            if dest == s:
                return True
            rest = used | {i}
            if not any(j not in rest and dest in e for j, e in enumerate(edges)):
                return True  # isolation
            if not mover_wins(dest, rest):
                return True
        return False

    return "ALICE" if mover_wins(s, frozenset()) else "BOB"


def main():
    print("# triangular grids: n -> (vertices, edges, degree histogram)")
    for n in (0, 1, 2, 3, 4, 5, 7):
        print(f"tri {n}: {tri_stats(n)}")

    print("\n# torus: (m,n) -> (vertices, edges, degree set, doubled pairs)")
    for m, n in ((2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (6, 9)):
        print(f"torus {m}x{n}: {torus_stats(m, n)}  gcd={gcd(m, n)}")

    print("\n# G_k: k -> (vertices, edges, deg(s), degree set)")
    for k in (2, 3):
        print(f"gk {k}: {gk_stats(k)}")

    print("\n# kernel H-edge counts")
    t2_edges = []
    for j, k in tri_vertices(2):
        for nb in tri_neighbors(2, j, k):
            if (j, k) < nb:
                t2_edges.append(((j, k), nb))
    t2_S = {(0, 0), (2, 0), (2, 2)}
    print(f"T2 corner kernel H-edges: {len(h_edges(t2_edges, t2_S))}")

    q33 = torus_edges(3, 3)
    diag = {(i, i) for i in range(3)}
    print(f"Q(3,3) diagonal H-edges: {len(h_edges(q33, diag))}")
    print(f"Q(3,3) diagonal per-W counts: {sorted(per_vertex_h_counts(q33, diag).values())}")

    c4 = [((0,), (1,)), ((1,), (2,)), ((2,), (3,)), ((3,), (0,))]
    print(f"C4 {{s,antipode}} H-edges: {len(h_edges(c4, {(0,), (2,)}))}")

    q24 = torus_edges(2, 4)
    s24 = {(i, j) for i in range(2) for j in range(4) if (i - j) % 2 == 0}
    print(f"Q(2,4) parity-class per-W counts: {sorted(per_vertex_h_counts(q24, s24).values())}")

    print("\n# naive exhaustive winners")
    print(f"directed 3-cycle from s: {brute_winner_digraph([(0, 1), (1, 2), (2, 0)], 0)}")
    print(f"single arc s->a: {brute_winner_digraph([(0, 1)], 0)}")
    print(f"arcless, token on s: {brute_winner_digraph([], 0)}")
    t1_edges = [((1, 0), (1, 1)), ((1, 0), (0, 0)), ((1, 1), (0, 0))]
    print(f"T1 feedback from v00: {brute_winner_feedback(t1_edges, (0, 0))}")
    print(f"C4 feedback: {brute_winner_feedback(c4, (0,))}")
    q23 = torus_edges(2, 3)
    print(f"Q(2,3) feedback from (0,0): {brute_winner_feedback(q23, (0, 0))}")

    print("\n# eulerize size bookkeeping: arcs a, odd originals q -> pseudo-arc")
    print("# edges 8a; eulerized edges 8a + 4 + 6p where 2p = 4a + q")
    for a, q in ((1, 2), (2, 2), (3, 0), (4, 0), (6, 0)):
        p2 = 4 * a + q
        print(f"a={a} oddorig={q}: pseudo={8*a} eulerized={8*a + 4 + 3*p2}")


if __name__ == "__main__":
    main()
