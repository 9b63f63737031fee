"""Pure-Python bitmask kernels.

The two inner loops everything hot reduces to: enumerating maximal cliques
of a compatibility graph (tree enumeration) and scanning a poset for a pair
with no join or no meet (lattice certification).  Sets are plain integers
used as bitmasks.  A compiled twin lives in ``_ckernels``; ``backend``
selects one at import time, and both must return identical results in
identical order.
"""

from __future__ import annotations


def maximal_cliques(compat: list[int]) -> list[int]:
    """All maximal cliques of an undirected graph, as vertex bitmasks.

    ``compat[v]`` is the bitmask of vertices adjacent to v (irreflexive,
    symmetric).  Bron-Kerbosch with greedy pivoting; deterministic order.
    """
    n = len(compat)
    cliques: list[int] = []
    if n == 0:
        return cliques

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            cliques.append(r)
            return
        # Pivot on the vertex with the most candidates among its neighbours.
        best_u, best_cnt = -1, -1
        m = p | x
        while m:
            b = m & -m
            m ^= b
            u = b.bit_length() - 1
            c = (p & compat[u]).bit_count()
            if c > best_cnt:
                best_u, best_cnt = u, c
        cand = p & ~compat[best_u]
        while cand:
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            expand(r | b, p & compat[v], x & compat[v])
            p ^= b
            x |= b

    expand(0, (1 << n) - 1, 0)
    return cliques


def lattice_violation(
    upsets: list[int], downsets: list[int]
) -> tuple[str, int, int] | None:
    """First pair of elements without a join or meet, or None.

    Elements must be indexed by a linear extension (a below b implies
    a < b as integers).  ``upsets[a]`` / ``downsets[a]`` are bitmasks over
    all elements and include a itself.  Since an intersection of upsets is
    upward closed, the join of a and b exists iff their common upper bounds
    are exactly the upset of the lowest-indexed one; dually for meets.
    Returns ("join", a, b) or ("meet", a, b) for the first failure in
    lexicographic (a, b) order, checking the join before the meet.
    """
    n = len(upsets)
    for a in range(n):
        ua, da = upsets[a], downsets[a]
        for b in range(a + 1, n):
            u = ua & upsets[b]
            if u == 0 or upsets[(u & -u).bit_length() - 1] != u:
                return ("join", a, b)
            d = da & downsets[b]
            if d == 0 or downsets[d.bit_length() - 1] != d:
                return ("meet", a, b)
    return None
