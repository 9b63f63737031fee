"""Non-crossing forests and trees on a signed bipartite vertex set.

Given a signature and a choice of black indices I ⊆ {0..n} and white indices
J ⊆ {1..n+1}, the admissible edges are the pairs (i, j) with i ∈ I, j ∈ J,
i < j.  The objects of interest are the subgraphs whose edges pairwise do not
cross in the signed polygon; the maximal ones are spanning trees, any two of
which are connected by a sequence of single-edge exchanges (flips).

This module enumerates the trees, computes flips, extremal trees, the unique
non-crossing perfect matching (by a sweep over a vertical pile), the bijection
with triangulations of the square polygon, and the dual oriented tree with its
canopy sign vector.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from . import backend
from .core import (
    Edge,
    Signature,
    check_edge,
    edges_cross,
    embed,
    orientation,
    slope,
    square,
    square_diagonals_cross,
)
from .errors import (
    InputError,
    InvalidInstance,
    NoPerfectMatching,
    NotFlippable,
    StructureError,
    TooLarge,
)

# Refuse plain enumeration when the path bound on the tree count exceeds the
# full n=12 instance (binom(24, 12) paths) unless the caller forces it.
ENUMERATION_GUARD = math.comb(24, 12)

Tree = tuple[Edge, ...]
Forest = tuple[Edge, ...]


@dataclass(frozen=True)
class IndexPair:
    """The chosen black and white index sets, strictly increasing."""

    blacks: tuple[int, ...]
    whites: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blacks", tuple(self.blacks))
        object.__setattr__(self, "whites", tuple(self.whites))
        b, w = self.blacks, self.whites
        if not b or not w:
            raise InvalidInstance("both index sets must be nonempty")
        if any(x >= y for x, y in zip(b, b[1:])) or any(
            x >= y for x, y in zip(w, w[1:])
        ):
            raise InvalidInstance("index sets must be strictly increasing")
        if b[0] < 0 or w[0] < 1:
            raise InvalidInstance("black indices start at 0, white indices at 1")
        if not b[0] < w[0]:
            raise InvalidInstance(
                f"min black {b[0]} must be smaller than min white {w[0]}"
            )
        if not b[-1] < w[-1]:
            raise InvalidInstance(
                f"max black {b[-1]} must be smaller than max white {w[-1]}"
            )

    def __str__(self) -> str:
        return f"I={set(self.blacks)}, J={set(self.whites)}"


def full_pair(sig: Signature) -> IndexPair:
    """All black indices 0..n and all white indices 1..n+1."""
    return IndexPair(tuple(range(sig.n + 1)), tuple(range(1, sig.n + 2)))


def check_instance(sig: Signature, ij: IndexPair) -> None:
    if ij.blacks[-1] > sig.n or ij.whites[-1] > sig.n + 1:
        raise InvalidInstance(
            f"index sets exceed the range of a length-{sig.n} signature: {ij}"
        )


def random_index_pair(rng: random.Random, n: int) -> IndexPair:
    """Uniform-ish valid index pair, by rejection sampling."""
    while True:
        blacks = [i for i in range(n + 1) if rng.random() < 0.5]
        whites = [j for j in range(1, n + 2) if rng.random() < 0.5]
        if not blacks or not whites:
            continue
        if blacks[0] < whites[0] and blacks[-1] < whites[-1]:
            return IndexPair(tuple(blacks), tuple(whites))


def random_nested_pair(rng: random.Random, ij: IndexPair) -> IndexPair:
    """Random valid sub-pair of an index pair, by rejection sampling."""
    while True:
        blacks = [i for i in ij.blacks if rng.random() < 0.7]
        whites = [j for j in ij.whites if rng.random() < 0.7]
        if not blacks or not whites:
            continue
        if blacks[0] < whites[0] and blacks[-1] < whites[-1]:
            return IndexPair(tuple(blacks), tuple(whites))


def mirror_edge(e: Edge, n: int) -> Edge:
    """Relabeling of an edge under left-right reflection of indices."""
    i, j = e
    return (n + 1 - j, n + 1 - i)


def mirror_pair(ij: IndexPair, n: int) -> IndexPair:
    """Left-right reflection: whites become blacks and vice versa."""
    return IndexPair(
        tuple(sorted(n + 1 - j for j in ij.whites)),
        tuple(sorted(n + 1 - i for i in ij.blacks)),
    )


# ---------------------------------------------------------------------------
# Edge sets and tree enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def build_edge_set(sig: Signature, ij: IndexPair) -> tuple[Edge, ...]:
    """All admissible edges (i, j) with i ∈ blacks, j ∈ whites, i < j, sorted."""
    check_instance(sig, ij)
    return tuple(
        (i, j) for i in ij.blacks for j in ij.whites if i < j
    )


def _enumeration_bound(ij: IndexPair) -> int:
    return math.comb(len(ij.blacks) + len(ij.whites) - 2, len(ij.blacks) - 1)


def _check_guard(ij: IndexPair, force: bool) -> None:
    bound = _enumeration_bound(ij)
    if bound > ENUMERATION_GUARD and not force:
        raise TooLarge(
            f"up to {bound} trees for {ij} exceeds the guard "
            f"({ENUMERATION_GUARD}); pass force=True / --force to proceed"
        )


@lru_cache(maxsize=None)
def _tree_data(
    sig: Signature, ij: IndexPair
) -> tuple[tuple[Edge, ...], dict[Edge, int], tuple[int, ...], tuple[Tree, ...]]:
    """Edges, edge→bit index, tree bitmasks and trees, in canonical order."""
    edges = build_edge_set(sig, ij)
    m = len(edges)
    compat = [0] * m
    for a in range(m):
        for b in range(a + 1, m):
            if not edges_cross(edges[a], edges[b], sig):
                compat[a] |= 1 << b
                compat[b] |= 1 << a
    expected = len(ij.blacks) + len(ij.whites) - 1
    trees = []
    for mask in backend.maximal_cliques(compat):
        tree = tuple(edges[k] for k in range(m) if mask >> k & 1)
        if len(tree) != expected:
            raise StructureError(
                f"maximal non-crossing set of size {len(tree)} != {expected} "
                f"for {ij}: {tree}"
            )
        trees.append(tree)
    trees.sort()
    index = {e: k for k, e in enumerate(edges)}
    masks = tuple(sum(1 << index[e] for e in t) for t in trees)
    return edges, index, masks, tuple(trees)


def enumerate_trees(sig: Signature, ij: IndexPair, force: bool = False) -> tuple[Tree, ...]:
    """All maximal non-crossing edge sets, sorted lexicographically.

    Refuses instances whose tree count can exceed the module guard unless
    forced; the bound used is the number of monotone lattice paths, which
    dominates the true count.
    """
    _check_guard(ij, force)
    return _tree_data(sig, ij)[3]


def tree_count(sig: Signature, ij: IndexPair, force: bool = False) -> int:
    return len(enumerate_trees(sig, ij, force))


def is_noncrossing(edges, sig: Signature) -> bool:
    edges = sorted(set(edges))
    return all(
        not edges_cross(edges[a], edges[b], sig)
        for a in range(len(edges))
        for b in range(a + 1, len(edges))
    )


def is_forest(edges, sig: Signature, ij: IndexPair) -> bool:
    """True iff the edges are admissible and pairwise non-crossing."""
    admissible = set(build_edge_set(sig, ij))
    edges = sorted(set(edges))
    return all(e in admissible for e in edges) and is_noncrossing(edges, sig)


def is_tree(edges, sig: Signature, ij: IndexPair) -> bool:
    """True iff the edges form a maximal non-crossing subgraph: they are a
    forest and every admissible edge outside them crosses one of them."""
    if not is_forest(edges, sig, ij):
        return False
    present = set(edges)
    for e in build_edge_set(sig, ij):
        if e in present:
            continue
        if not any(edges_cross(e, f, sig) for f in present):
            return False
    return True


def as_forest(edges, sig: Signature, ij: IndexPair) -> Forest:
    """Canonical sorted tuple, after validating forest-ness."""
    if not is_forest(edges, sig, ij):
        raise InputError(f"not a non-crossing admissible edge set: {sorted(edges)}")
    return tuple(sorted(set(edges)))


@lru_cache(maxsize=None)
def irrelevant_edges(sig: Signature, ij: IndexPair) -> tuple[Edge, ...]:
    """Admissible edges crossed by no other admissible edge.

    Nothing ever prevents adding such an edge, so they lie in every tree.
    """
    edges = build_edge_set(sig, ij)
    return tuple(
        e
        for e in edges
        if not any(edges_cross(e, f, sig) for f in edges if f != e)
    )


# ---------------------------------------------------------------------------
# Flips
# ---------------------------------------------------------------------------


def flippable_edges(t: Tree, sig: Signature, ij: IndexPair) -> tuple[Edge, ...]:
    """Edges (i, j) of t admitting a second black-white pair across them:
    some (i, j′) and (i′, j) in t with i′ ≠ i, j′ ≠ j and i′ < j′."""
    tset = set(t)
    out = []
    for i, j in t:
        other_whites = [j2 for i2, j2 in tset if i2 == i and j2 != j]
        other_blacks = [i2 for i2, j2 in tset if j2 == j and i2 != i]
        if any(i2 < j2 for i2 in other_blacks for j2 in other_whites):
            out.append((i, j))
    return tuple(out)


def flip(t: Tree, e: Edge, sig: Signature, ij: IndexPair) -> tuple[Tree, Edge]:
    """Exchange edge e of t for the unique other edge completing t ∖ {e}.

    Returns (new tree, entering edge).  The completion is located by scanning
    all trees for supersets of t ∖ {e}; exactly two must exist — that count is
    asserted, and a single completion means e is not flippable.
    """
    edges, index, masks, trees = _tree_data(sig, ij)
    t = tuple(sorted(set(t)))
    if t not in trees:
        raise InputError(f"not a tree of this instance: {t}")
    if e not in t:
        raise NotFlippable(f"edge {e} is not in the tree")
    t_mask = sum(1 << index[f] for f in t)
    rest = t_mask & ~(1 << index[e])
    completions = [k for k, m in enumerate(masks) if m & rest == rest]
    condition = e in flippable_edges(t, sig, ij)
    if len(completions) == 1:
        if condition:
            raise StructureError(f"edge {e} looked exchangeable but has no partner")
        raise NotFlippable(f"edge {e} is not flippable in this tree")
    if len(completions) != 2 or not condition:
        raise StructureError(
            f"removing {e} left {len(completions)} completions (expected 2)"
        )
    (other,) = [k for k in completions if masks[k] != t_mask]
    t2 = trees[other]
    (entering,) = [f for f in t2 if f not in t]
    return t2, entering


def extremal_tree(sig: Signature, ij: IndexPair, direction: str) -> Tree:
    """The tree of edges crossed by no admissible edge of smaller ('min') or
    larger ('max') slope.  The result is asserted to be a tree."""
    if direction not in ("min", "max"):
        raise InputError(f"direction must be 'min' or 'max': {direction!r}")
    edges = build_edge_set(sig, ij)
    keep = []
    for e in edges:
        se = slope(e, sig)
        dominated = False
        for f in edges:
            if f != e and edges_cross(e, f, sig):
                sf = slope(f, sig)
                if (sf < se) if direction == "min" else (sf > se):
                    dominated = True
                    break
        if not dominated:
            keep.append(e)
    keep = tuple(sorted(keep))
    if not is_tree(keep, sig, ij):
        raise StructureError(f"extremal edge set is not a tree: {keep}")
    return keep


# ---------------------------------------------------------------------------
# Non-crossing perfect matching
# ---------------------------------------------------------------------------


def matching_feasibility(sig: Signature, ij: IndexPair) -> int | None:
    """None when a perfect matching exists, else the first failing prefix k
    where the blacks in {0..k} are outnumbered by the whites in {1..k+1}."""
    check_instance(sig, ij)
    if len(ij.blacks) != len(ij.whites):
        return -1
    blacks, whites = set(ij.blacks), set(ij.whites)
    seen_b = seen_w = 0
    for k in range(sig.n + 1):
        seen_b += k in blacks
        seen_w += (k + 1) in whites
        if seen_b < seen_w:
            return k
    return None


def noncrossing_perfect_matching(sig: Signature, ij: IndexPair) -> tuple[Edge, ...]:
    """The unique non-crossing perfect matching, via a left-to-right sweep.

    Open black vertices sit in a vertical pile: black k enters on top when
    its sign is + (it lies on the upper hull) and at the bottom when −; white
    k closes the top (+) or bottom (−) black.  The endpoints 0 and n+1 carry
    no sign, but 0 enters an empty pile and n+1 closes the last entry, so the
    convention there is immaterial.
    """
    k = matching_feasibility(sig, ij)
    if k == -1:
        raise NoPerfectMatching(
            f"sides have different sizes: {len(ij.blacks)} blacks, "
            f"{len(ij.whites)} whites"
        )
    if k is not None:
        raise NoPerfectMatching(
            f"more whites than blacks among the first indices up to {k}", prefix=k
        )
    # Sweep order: white j (at x = j - 1/4) precedes black i (at x = i + 1/4).
    events = sorted(
        [(4 * i + 1, "black", i) for i in ij.blacks]
        + [(4 * j - 1, "white", j) for j in ij.whites]
    )
    pile: list[int] = []
    out = []
    for _, kind, v in events:
        on_top = 1 <= v <= sig.n and sig.sign(v) > 0
        if kind == "black":
            pile.append(v) if on_top else pile.insert(0, v)
        else:
            if not pile:
                raise StructureError(f"pile empty at white {v}")
            i = pile.pop() if on_top or v == sig.n + 1 else pile.pop(0)
            out.append((i, v))
    if pile:
        raise StructureError(f"unmatched blacks left in pile: {pile}")
    matching = tuple(sorted(out))
    if not is_noncrossing(matching, sig):
        raise StructureError(f"pile sweep produced a crossing matching: {matching}")
    return matching


# ---------------------------------------------------------------------------
# Bijection with square-polygon triangulations
# ---------------------------------------------------------------------------


def phi(d: Edge) -> Edge:
    """Recolor a square diagonal (i, j), i < j, as the black-white edge (i, j)."""
    i, j = d
    if not i < j:
        raise InputError(f"diagonal must be written with i < j: {d}")
    return (i, j)


def phi_inverse(e: Edge) -> Edge:
    """Recolor a black-white edge as a square diagonal with the same labels."""
    i, j = e
    if not i < j:
        raise InputError(f"edge must satisfy i < j: {e}")
    return (i, j)


def check_square_triangulation(T, sig: Signature) -> tuple[Edge, ...]:
    """Validate a triangulation of the square polygon: 2n+1 pairwise
    non-crossing segments (boundary and diagonals) on vertices 0..n+1."""
    T = sorted(set(tuple(d) for d in T))
    n = sig.n
    for i, j in T:
        if not (0 <= i < j <= n + 1):
            raise InputError(f"not a vertex pair of the (n+2)-gon: ({i}, {j})")
    if len(T) != 2 * n + 1:
        raise InputError(
            f"a triangulation has {2 * n + 1} segments incl. boundary, got {len(T)}"
        )
    for a in range(len(T)):
        for b in range(a + 1, len(T)):
            if square_diagonals_cross(T[a], T[b], sig):
                raise InputError(f"segments cross: {T[a]} × {T[b]}")
    return tuple(T)


def phi_triangulation(T, sig: Signature) -> Tree:
    """Map a square-polygon triangulation to the tree with the same labels."""
    T = check_square_triangulation(T, sig)
    tree = tuple(phi(d) for d in T)
    if not is_tree(tree, sig, full_pair(sig)):
        raise StructureError(f"triangulation image is not a tree: {tree}")
    return tree


def enumerate_square_triangulations(sig: Signature) -> tuple[tuple[Edge, ...], ...]:
    """All triangulations of the square polygon, via the label bijection."""
    return tuple(
        tuple(phi_inverse(e) for e in t)
        for t in enumerate_trees(sig, full_pair(sig))
    )


# ---------------------------------------------------------------------------
# Dual oriented tree and canopy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualTree:
    """Oriented dual of a square-polygon triangulation.

    One node per triangle, labeled by the triangle's middle vertex; labels
    are exactly 1..n.  Arcs cross each interior diagonal from the triangle
    below it to the triangle above it.
    """

    triangles: tuple[tuple[int, int, int], ...]
    arcs: tuple[tuple[int, int], ...]  # (label below, label above)

    def reachable(self, a: int, b: int) -> bool:
        """True iff a directed path leads from label a to label b."""
        grown, frontier = {a}, [a]
        while frontier:
            x = frontier.pop()
            if x == b:
                return True
            for u, v in self.arcs:
                if u == x and v not in grown:
                    grown.add(v)
                    frontier.append(v)
        return b in grown


def dual_cambrian_tree(T, sig: Signature) -> DualTree:
    T = check_square_triangulation(T, sig)
    segs = set(T)
    verts = sorted({v for d in T for v in d})
    triangles = [
        (a, b, c)
        for ai, a in enumerate(verts)
        for bi, b in enumerate(verts[ai + 1 :], ai + 1)
        if (a, b) in segs
        for c in verts[bi + 1 :]
        if (b, c) in segs and (a, c) in segs
    ]
    labels = sorted(tri[1] for tri in triangles)
    if labels != list(range(1, sig.n + 1)):
        raise StructureError(f"triangle middles are not 1..n: {labels}")
    pts = embed(sig)
    by_label = {tri[1]: tri for tri in triangles}
    arcs = []
    for d in T:
        sides = [tri for tri in triangles if set(d) < set(tri)]
        if len(sides) != 2:
            continue  # boundary segment: only one incident triangle
        a, b = d
        oriented = {}
        for tri in sides:
            (apex,) = set(tri) - set(d)
            side = orientation(pts[square(a)], pts[square(b)], pts[square(apex)])
            if side == 0:
                raise StructureError(f"degenerate triangle {tri}")
            oriented[side] = tri[1]
        if set(oriented) != {-1, 1}:
            raise StructureError(f"triangles on the same side of {d}")
        arcs.append((oriented[-1], oriented[1]))
    return DualTree(tuple(sorted(triangles)), tuple(sorted(arcs)))


def canopy(t: Tree, sig: Signature) -> str:
    """Signs comparing consecutive node labels of the dual oriented tree:
    position i is '-' when a directed path runs from node i to node i+1,
    '+' when one runs the other way."""
    if sig.n < 2:
        raise InputError("canopy needs n >= 2")
    if not is_tree(t, sig, full_pair(sig)):
        raise InputError("canopy is defined for trees on the full index sets")
    dual = dual_cambrian_tree([phi_inverse(e) for e in t], sig)
    out = []
    for i in range(1, sig.n):
        if dual.reachable(i, i + 1):
            out.append("-")
        elif dual.reachable(i + 1, i):
            out.append("+")
        else:
            raise StructureError(f"dual tree nodes {i} and {i + 1} incomparable")
    return "".join(out)
