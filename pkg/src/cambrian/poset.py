"""Increasing-flip digraphs and finite poset machinery.

Orienting every flip from the tree whose exchanged edge has the smaller slope
to the one with the larger slope yields an acyclic digraph with a unique
source and sink (the extremal trees).  Its reachability order is a lattice;
restricted index sets reproduce intervals of the full lattice.  This module
builds those digraphs, converts them to posets with exact join/meet
certification, searches for isomorphic intervals, and probes the nested-pair
interval property on random instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from heapq import heapify, heappop, heappush

import networkx as nx

from . import backend
from .core import Edge, Signature, compare_slopes
from .errors import InputError, StructureError
from .forest import (
    IndexPair,
    Tree,
    _tree_data,
    as_forest,
    enumerate_trees,
    extremal_tree,
    full_pair,
)


@dataclass(frozen=True)
class FlipDigraph:
    """All trees of an instance with one arc per slope-increasing flip."""

    sig: Signature
    ij: IndexPair
    trees: tuple[Tree, ...]
    arcs: tuple[tuple[int, int], ...]  # (source tree index, target tree index)
    exchanged: tuple[tuple[Edge, Edge], ...]  # per arc: (leaving, entering)

    def source(self) -> int:
        (s,) = set(range(len(self.trees))) - {b for _, b in self.arcs}
        return s

    def sink(self) -> int:
        (s,) = set(range(len(self.trees))) - {a for a, _ in self.arcs}
        return s


@lru_cache(maxsize=None)
def _flip_graph_cached(sig: Signature, ij: IndexPair) -> FlipDigraph:
    _, _, masks, trees = _tree_data(sig, ij)
    arcs, exchanged = [], []
    for a in range(len(trees)):
        sa = set(trees[a])
        for b in range(a + 1, len(trees)):
            if (masks[a] ^ masks[b]).bit_count() != 2:
                continue
            (ea,) = sa.difference(trees[b])
            (eb,) = set(trees[b]).difference(sa)
            cmp = compare_slopes(ea, eb, sig)
            if cmp == 0:
                raise StructureError(f"equal slopes across a flip: {ea}, {eb}")
            if cmp < 0:
                arcs.append((a, b))
                exchanged.append((ea, eb))
            else:
                arcs.append((b, a))
                exchanged.append((eb, ea))
    # Acyclicity and the extremal source/sink are structural guarantees;
    # verify rather than trust.
    indeg = [0] * len(trees)
    succ = [[] for _ in trees]
    for a, b in arcs:
        indeg[b] += 1
        succ[a].append(b)
    queue = [v for v in range(len(trees)) if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if seen != len(trees):
        raise StructureError("flip digraph contains a directed cycle")
    g = FlipDigraph(sig, ij, trees, tuple(arcs), tuple(exchanged))
    sources = set(range(len(trees))) - {b for _, b in arcs}
    sinks = set(range(len(trees))) - {a for a, _ in arcs}
    if len(sources) != 1 or len(sinks) != 1:
        raise StructureError(
            f"expected unique source/sink, got {len(sources)}/{len(sinks)}"
        )
    if trees[next(iter(sources))] != extremal_tree(sig, ij, "min"):
        raise StructureError("source tree differs from the minimal-slope tree")
    if trees[next(iter(sinks))] != extremal_tree(sig, ij, "max"):
        raise StructureError("sink tree differs from the maximal-slope tree")
    return g


def increasing_flip_graph(
    sig: Signature, ij: IndexPair, force: bool = False
) -> FlipDigraph:
    enumerate_trees(sig, ij, force)  # applies the size guard
    return _flip_graph_cached(sig, ij)


class FinitePoset:
    """Immutable finite poset with exact bitmask order machinery.

    Construction reindexes the elements into a canonical linear extension
    (Kahn's algorithm with a heap), closes the given relation transitively
    into up-set/down-set bitmasks, and extracts the Hasse diagram.
    """

    __slots__ = ("elements", "_index", "_up", "_down", "_covers", "_heights", "_sig")

    def __init__(self, elements, relation):
        """elements: hashable values; relation: (a, b) index pairs into
        `elements` whose transitive closure is the order (a below b)."""
        elements = tuple(elements)
        v_count = len(elements)
        succ = [set() for _ in range(v_count)]
        pred = [set() for _ in range(v_count)]
        for a, b in relation:
            if not (0 <= a < v_count and 0 <= b < v_count):
                raise InputError(f"relation index out of range: ({a}, {b})")
            if a == b:
                continue
            succ[a].add(b)
            pred[b].add(a)
        indeg = [len(p) for p in pred]
        heap = [v for v in range(v_count) if indeg[v] == 0]
        heapify(heap)
        order = []
        while heap:
            v = heappop(heap)
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heappush(heap, w)
        if len(order) != v_count:
            raise StructureError("order relation contains a cycle")
        newpos = {v: k for k, v in enumerate(order)}
        self.elements = tuple(elements[v] for v in order)
        self._index = {e: k for k, e in enumerate(self.elements)}
        if len(self._index) != v_count:
            raise InputError("poset elements must be distinct")
        up = [0] * v_count
        down = [0] * v_count
        for k in range(v_count - 1, -1, -1):
            m = 1 << k
            for w in succ[order[k]]:
                m |= up[newpos[w]]
            up[k] = m
        for k in range(v_count):
            m = 1 << k
            for w in pred[order[k]]:
                m |= down[newpos[w]]
            down[k] = m
        self._up = up
        self._down = down
        covers = []
        for i in range(v_count):
            rest = up[i] & ~(1 << i)
            m = rest
            while m:
                bit = m & -m
                m ^= bit
                j = bit.bit_length() - 1
                if rest & down[j] & ~bit == 0:
                    covers.append((i, j))
        self._covers = tuple(covers)
        heights = [0] * v_count
        for i, j in covers:
            heights[j] = max(heights[j], heights[i] + 1)
        self._heights = tuple(heights)
        top = max(heights, default=0)
        self._sig = (
            v_count,
            len(covers),
            tuple(heights.count(r) for r in range(top + 1)),
            tuple(
                sorted(
                    (
                        sum(1 for c in covers if c[1] == v),
                        sum(1 for c in covers if c[0] == v),
                        heights[v],
                    )
                    for v in range(v_count)
                )
            ),
        )

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, element) -> int:
        return self._index[element]

    def leq_idx(self, a: int, b: int) -> bool:
        return bool(self._up[a] >> b & 1)

    def leq(self, x, y) -> bool:
        return self.leq_idx(self._index[x], self._index[y])

    @property
    def cover_pairs(self) -> tuple:
        """Hasse diagram as (lower element, upper element) pairs."""
        return tuple((self.elements[i], self.elements[j]) for i, j in self._covers)

    @property
    def rank_profile(self) -> tuple[int, ...]:
        """Element counts per height level (longest chain from a minimum)."""
        return self._sig[2]

    @property
    def heights(self) -> tuple[int, ...]:
        """Per-element height: the longest chain length up from a minimum."""
        return self._heights

    def interval_idx(self, i: int, j: int) -> "FinitePoset":
        """Induced poset on {x : i ≤ x ≤ j}.  Anything between two interval
        members is itself in the interval, so restricting covers suffices."""
        mask = self._up[i] & self._down[j]
        keep = [k for k in range(len(self)) if mask >> k & 1]
        remap = {k: a for a, k in enumerate(keep)}
        rel = [
            (remap[a], remap[b])
            for a, b in self._covers
            if mask >> a & 1 and mask >> b & 1
        ]
        return FinitePoset(tuple(self.elements[k] for k in keep), rel)

    def interval(self, bottom, top) -> "FinitePoset":
        return self.interval_idx(self._index[bottom], self._index[top])

    def hasse_digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self)))
        g.add_edges_from(self._covers)
        return g

    def isomorphic(self, other: "FinitePoset") -> bool:
        """Exact poset isomorphism via the Hasse diagrams, after cheap
        invariant screening (sizes, rank profile, degree/height multiset)."""
        if self._sig != other._sig:
            return False
        matcher = nx.isomorphism.DiGraphMatcher(
            self.hasse_digraph(), other.hasse_digraph()
        )
        return matcher.is_isomorphic()


def poset_from_digraph(g: FlipDigraph) -> FinitePoset:
    p = FinitePoset(g.trees, g.arcs)
    hasse = frozenset(p.cover_pairs)
    given = frozenset((g.trees[a], g.trees[b]) for a, b in g.arcs)
    if hasse != given:
        raise StructureError("digraph arcs are not the transitive reduction")
    return p


@lru_cache(maxsize=None)
def _flip_poset_cached(sig: Signature, ij: IndexPair) -> FinitePoset:
    return poset_from_digraph(_flip_graph_cached(sig, ij))


def flip_poset(sig: Signature, ij: IndexPair, force: bool = False) -> FinitePoset:
    enumerate_trees(sig, ij, force)
    return _flip_poset_cached(sig, ij)


def cambrian_lattice(sig: Signature, force: bool = False) -> FinitePoset:
    """The flip poset on the full index sets 0..n and 1..n+1."""
    return flip_poset(sig, full_pair(sig), force)


def is_lattice(p: FinitePoset):
    """(True, None) when every pair has a join and a meet, else
    (False, (kind, element, element)) naming the first failing pair."""
    violation = backend.lattice_violation(p._up, p._down)
    if violation is None:
        return True, None
    kind, a, b = violation
    return False, (kind, p.elements[a], p.elements[b])


def opposite(p: FinitePoset) -> FinitePoset:
    return FinitePoset(p.elements, [(j, i) for i, j in p._covers])


def facial_interval(sig: Signature, ij: IndexPair, f) -> tuple[Tree, Tree]:
    """Minimum and maximum trees containing the forest f.

    The trees containing f are asserted to form exactly the order interval
    between the two, which is what makes the pair meaningful.
    """
    f = as_forest(f, sig, ij)
    _, index, masks, trees = _tree_data(sig, ij)
    fmask = sum(1 << index[e] for e in f)
    containing = [k for k, m in enumerate(masks) if m & fmask == fmask]
    if not containing:
        raise StructureError(f"forest {f} extends to no tree")
    p = flip_poset(sig, ij)
    idxs = [p.index(trees[k]) for k in containing]
    mins = [a for a in idxs if not any(p.leq_idx(b, a) for b in idxs if b != a)]
    maxs = [a for a in idxs if not any(p.leq_idx(a, b) for b in idxs if b != a)]
    if len(mins) != 1 or len(maxs) != 1:
        raise StructureError(f"trees over {f} have no unique extremes")
    bottom, top = mins[0], maxs[0]
    interval_mask = p._up[bottom] & p._down[top]
    if interval_mask != sum(1 << a for a in idxs):
        raise StructureError(f"trees over {f} do not form an order interval")
    return p.elements[bottom], p.elements[top]


def find_isomorphic_interval(small: FinitePoset, big: FinitePoset):
    """First interval of `big` isomorphic to `small`, as an element pair
    (bottom, top), or None.  Candidates are screened by size and rank
    profile before the exact isomorphism test."""
    want = len(small)
    for i in range(len(big)):
        for j in range(len(big)):
            if not big.leq_idx(i, j):
                continue
            if (big._up[i] & big._down[j]).bit_count() != want:
                continue
            cand = big.interval_idx(i, j)
            if cand.isomorphic(small):
                return big.elements[i], big.elements[j]
    return None


@dataclass(frozen=True)
class ProbeReport:
    """Outcome of one nested-pair interval probe."""

    sig: Signature
    inner: IndexPair
    outer: IndexPair
    ok: bool
    witness: tuple[Tree, Tree] | None


def conjecture_probe(
    sig: Signature, inner: IndexPair, outer: IndexPair, force: bool = False
) -> ProbeReport:
    """Check that the flip poset of the inner index pair appears as an
    interval of the outer pair's flip poset."""
    if not (
        set(inner.blacks) <= set(outer.blacks)
        and set(inner.whites) <= set(outer.whites)
    ):
        raise InputError(f"index pairs are not nested: {inner} vs {outer}")
    small = flip_poset(sig, inner, force)
    big = flip_poset(sig, outer, force)
    witness = find_isomorphic_interval(small, big)
    return ProbeReport(sig, inner, outer, witness is not None, witness)
