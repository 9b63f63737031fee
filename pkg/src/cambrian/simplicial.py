"""Tree simplices inside a product of two simplices, and their geometry.

Each admissible edge (i, j) names the 0/1 vertex (e_i, e_j) of the product
of the black and white coordinate simplices; each tree spans a unimodular
simplex on its edges' vertices.  The collection of all tree simplices
triangulates the polytope: this module verifies that (pairwise proper
intersection, volume accounting, dual graph), certifies the triangulation as
regular under concave lifts of the arc depth, deduplicates triangulations
across signatures, and computes the companion fine mixed subdivision given
by reading the same simplices as Minkowski cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Mapping

from ._geom2d import Point2, clip_convex, convex_hull, polygon_area
from .core import Edge, Signature, edges_cross, ell
from .errors import (
    DegenerateLift,
    InputError,
    StructureError,
    TooLarge,
)
from .exactnum import SqrtSum, value_sign
from .forest import (
    IndexPair,
    Tree,
    build_edge_set,
    enumerate_trees,
    full_pair,
    is_tree,
    tree_count,
)
from .poset import increasing_flip_graph


@dataclass(frozen=True)
class LatticePoint:
    """A vertex of the product polytope: 1 at one black and one white slot."""

    edge: Edge
    vector: tuple[int, ...]  # black block then white block


def point_vector(e: Edge, ij: IndexPair) -> tuple[int, ...]:
    i, j = e
    return tuple(int(i == b) for b in ij.blacks) + tuple(
        int(j == w) for w in ij.whites
    )


def u_polytope_vertices(sig: Signature, ij: IndexPair) -> tuple[LatticePoint, ...]:
    """One lattice point per admissible edge, in canonical edge order."""
    return tuple(
        LatticePoint(e, point_vector(e, ij)) for e in build_edge_set(sig, ij)
    )


@dataclass(frozen=True)
class TreeSimplex:
    tree: Tree
    points: tuple[LatticePoint, ...]


def _int_det(rows) -> int:
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def _dropped_difference_matrix(t: Tree, ij: IndexPair) -> list[list[int]]:
    """Differences to the first vertex, with one redundant coordinate per
    block removed; the result is square of size |I|+|J|-2."""
    vecs = [point_vector(e, ij) for e in t]
    drop = {len(ij.blacks) - 1, len(ij.blacks) + len(ij.whites) - 1}
    base = vecs[0]
    return [
        [v[k] - base[k] for k in range(len(base)) if k not in drop]
        for v in vecs[1:]
    ]


def simplex_signed_volume(t: Tree, ij: IndexPair) -> int:
    """Lattice determinant of the tree simplex; ±1 exactly for trees."""
    return _int_det(_dropped_difference_matrix(t, ij))


def simplex_of_tree(t: Tree, sig: Signature, ij: IndexPair) -> TreeSimplex:
    if not is_tree(t, sig, ij):
        raise InputError(f"not a tree of this instance: {t}")
    t = tuple(sorted(t))
    if simplex_signed_volume(t, ij) == 0:
        raise StructureError(f"tree vertices are affinely dependent: {t}")
    return TreeSimplex(t, tuple(LatticePoint(e, point_vector(e, ij)) for e in t))


# ---------------------------------------------------------------------------
# Proper intersection of simplex pairs
# ---------------------------------------------------------------------------


def _alternating_cycle(s_edges, t_edges):
    """Simple cycle alternating an S-role edge with a T-role edge, if any.

    The simplices on edge sets S and T fail to meet in a common face exactly
    when such a cycle exists: uniform weights on its S-role edges and on its
    T-role edges describe one point with two distinct representations.
    Shared edges may take either role, but each edge is used at most once.
    Returns the cycle as ((edge, role), ...) or None.
    """
    s_set = {tuple(e) for e in s_edges}
    t_set = {tuple(e) for e in t_edges}
    adj: dict[tuple, list] = {}
    for e in sorted(s_set | t_set):
        b, w = ("b", e[0]), ("w", e[1])
        adj.setdefault(b, []).append((e, w))
        adj.setdefault(w, []).append((e, b))

    def dfs(v, need_s, visited, path, used, start):
        pool = s_set if need_s else t_set
        for e, w in adj[v]:
            if e not in pool or e in used:
                continue
            if w == start and not need_s and path:
                return path + [(e, "T")]
            if w in visited or w < start:
                continue
            found = dfs(
                v=w,
                need_s=not need_s,
                visited=visited | {w},
                path=path + [(e, "S" if need_s else "T")],
                used=used | {e},
                start=start,
            )
            if found:
                return found
        return None

    for start in sorted(adj):
        cycle = dfs(start, True, {start}, [], set(), start)
        if cycle:
            return tuple(cycle)
    return None


def trees_intersect_properly(s_edges, t_edges):
    """(True, None) if the two simplices meet in a common face, else
    (False, witness cycle)."""
    witness = _alternating_cycle(s_edges, t_edges)
    return witness is None, witness


@dataclass(frozen=True)
class TriangulationReport:
    ok: bool
    simplex_count: int
    expected_count: int
    improper_pairs: tuple  # ((index a, index b, witness cycle), ...)
    dual_equals_flips: bool

    def summary(self) -> str:
        if self.ok:
            return f"triangulation verified: {self.simplex_count} simplices"
        parts = []
        if self.simplex_count != self.expected_count:
            parts.append(
                f"count {self.simplex_count} != expected {self.expected_count}"
            )
        if self.improper_pairs:
            parts.append(f"{len(self.improper_pairs)} improper pairs")
        if not self.dual_equals_flips:
            parts.append("dual graph differs from flip graph")
        return "triangulation FAILED: " + "; ".join(parts)


def verify_triangulation(
    sig: Signature, ij: IndexPair, collection=None, force: bool = False
) -> TriangulationReport:
    """Check a simplex collection (default: all tree simplices) as a
    triangulation: pairwise proper intersections, simplex count against the
    all-minus signature on the same index sets, and dual graph equal to the
    flip graph."""
    if collection is None:
        collection = enumerate_trees(sig, ij, force)
    members = [tuple(sorted(set(map(tuple, m)))) for m in collection]
    improper = []
    for a in range(len(members)):
        for b in range(a, len(members)):
            ok, witness = trees_intersect_properly(members[a], members[b])
            if not ok:
                improper.append((a, b, witness))
    all_minus = Signature((-1,) * sig.n)
    expected = tree_count(all_minus, ij, force)
    dual = set()
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            shared = len(set(members[a]) & set(members[b]))
            if shared == len(members[a]) - 1 == len(members[b]) - 1:
                dual.add(frozenset((members[a], members[b])))
    g = increasing_flip_graph(sig, ij, force)
    flips = {frozenset((g.trees[a], g.trees[b])) for a, b in g.arcs}
    dual_ok = dual == flips
    ok = not improper and len(members) == expected and dual_ok
    return TriangulationReport(ok, len(members), expected, tuple(improper), dual_ok)


# ---------------------------------------------------------------------------
# Lifts and regularity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lift:
    """Assignment of exact heights to the admissible edges."""

    kind: str
    values: Mapping[Edge, object]

    def value(self, e: Edge):
        v = self.values.get(tuple(e))
        if v is None:
            raise InputError(f"lift has no value for edge {e}")
        return v


def _assert_submodular(sig: Signature, ij: IndexPair, values) -> None:
    edges = build_edge_set(sig, ij)
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            e, f = edges[a], edges[b]
            if not edges_cross(e, f, sig):
                continue
            (i, j), (i2, j2) = e, f
            if not (i < j2 and i2 < j):
                raise StructureError(f"crossing pair with bad exchange: {e}, {f}")
            fold = values[e] + values[f] - values[(i, j2)] - values[(i2, j)]
            if value_sign(fold) <= 0:
                raise StructureError(
                    f"lift is not strictly submodular on crossing pair {e}, {f}"
                )


def build_lift(sig: Signature, ij: IndexPair, kind: str) -> Lift:
    """Concave height of the arc depth: kind 'sqrt' gives exact symbolic
    square roots, 'rational' the parabola x - x^2/(2(n+2)) in Fractions.
    Strict submodularity across every crossing pair is asserted."""
    if kind not in ("sqrt", "rational"):
        raise InputError(f"lift kind must be 'sqrt' or 'rational': {kind!r}")
    denom = 2 * (sig.n + 2)
    values: dict[Edge, object] = {}
    for e in build_edge_set(sig, ij):
        depth = ell(e, sig)
        if kind == "sqrt":
            values[e] = SqrtSum.sqrt(depth)
        else:
            values[e] = Fraction(depth) - Fraction(depth * depth, denom)
    _assert_submodular(sig, ij, values)
    return Lift(kind, values)


def lift_from_function(
    sig: Signature, ij: IndexPair, fn: Callable[[Edge], object], kind: str = "custom"
) -> Lift:
    """Arbitrary per-edge heights, without the submodularity assertion."""
    return Lift(kind, {e: fn(e) for e in build_edge_set(sig, ij)})


@dataclass(frozen=True)
class FoldWitness:
    lower_tree: Tree
    upper_tree: Tree
    leaving: Edge
    entering: Edge


def regularity_check(sig: Signature, ij: IndexPair, lift: Lift, force: bool = False):
    """Exact wall-by-wall fold test of the lifted triangulation.

    Every interior wall comes from a flip exchanging (i, j) for (i2, j2),
    and the only affine dependence among the four points involved is
    (i,j) + (i2,j2) = (i,j2) + (i2,j); so the lift induces this triangulation
    as its regular subdivision iff every wall folds strictly upward:
    h(i,j) + h(i2,j2) > h(i,j2) + h(i2,j).  Returns (ok, witnesses); an
    exact tie raises DegenerateLift.
    """
    g = increasing_flip_graph(sig, ij, force)
    witnesses = []
    for (a, b), (leaving, entering) in zip(g.arcs, g.exchanged):
        (i, j), (i2, j2) = leaving, entering
        if not (i < j2 and i2 < j):
            raise StructureError(f"flip pair with bad exchange: {leaving}, {entering}")
        for shared in ((i, j2), (i2, j)):
            if shared not in g.trees[a] or shared not in g.trees[b]:
                raise StructureError(f"expected shared edge {shared} in both trees")
        fold = (
            lift.value(leaving)
            + lift.value(entering)
            - lift.value((i, j2))
            - lift.value((i2, j))
        )
        s = value_sign(fold)
        if s == 0:
            raise DegenerateLift(
                f"lift ties on the wall exchanging {leaving} for {entering}"
            )
        if s < 0:
            witnesses.append(FoldWitness(g.trees[a], g.trees[b], leaving, entering))
    return not witnesses, tuple(witnesses)


def distinct_epsilon_triangulations(n: int) -> int:
    """Number of distinct tree-simplex collections over all 2^n signatures
    on the full index sets."""
    if n > 6:
        raise TooLarge(f"signature sweep at n={n} exceeds the n <= 6 guard")
    if n < 1:
        raise InputError("n must be at least 1")
    seen = set()
    for signs in product((-1, 1), repeat=n):
        sig = Signature(signs)
        seen.add(frozenset(enumerate_trees(sig, full_pair(sig))))
    return len(seen)


# ---------------------------------------------------------------------------
# Mixed subdivision (Minkowski-cell reading of the same simplices)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MixedCell:
    tree: Tree
    vertices: tuple[tuple[int, ...], ...]  # points in the white coordinate space


def _minkowski_vertices(summand_sets, whites) -> tuple[tuple[int, ...], ...]:
    """Exact vertex set of a sum of coordinate simplices.

    Every vertex is the maximizer of some linear functional, and any generic
    functional induces a total order of the coordinates, so sweeping all
    |whites|! orders and picking each summand's top coordinate finds exactly
    the vertex set.
    """
    pos = {w: k for k, w in enumerate(whites)}
    out = set()
    for order in permutations(range(len(whites))):
        rank = [0] * len(whites)
        for priority, k in enumerate(order):
            rank[k] = priority
        point = [0] * len(whites)
        for a in summand_sets:
            best = max(a, key=lambda j: rank[pos[j]])
            point[pos[best]] += 1
        out.add(tuple(point))
    return tuple(sorted(out))


@dataclass(frozen=True)
class MixedSubdivision:
    sig: Signature
    ij: IndexPair
    cells: tuple[MixedCell, ...]
    ambient_vertices: tuple[tuple[int, ...], ...]


def mixed_subdivision(
    sig: Signature, ij: IndexPair, force: bool = False
) -> MixedSubdivision:
    """Per tree, the Minkowski sum over blacks i of the simplex on i's white
    neighbors, as an explicit exact vertex set; plus the ambient sum using
    all admissible neighbors."""
    if len(ij.whites) > 8:
        raise TooLarge("mixed cells need |whites|! sweeps; 8 is the guard")
    trees = enumerate_trees(sig, ij, force)
    whites = ij.whites
    cells = []
    for t in trees:
        sets = [[j for i2, j in t if i2 == i] for i in ij.blacks]
        cells.append(MixedCell(t, _minkowski_vertices(sets, whites)))
    ambient_sets = [
        [j for j in whites if i < j] for i in ij.blacks
    ]
    ambient = _minkowski_vertices(ambient_sets, whites)
    return MixedSubdivision(sig, ij, tuple(cells), ambient)


def _planar_points(vertices) -> tuple[Point2, ...]:
    return tuple((Fraction(p[0]), Fraction(p[1])) for p in vertices)


@dataclass(frozen=True)
class MixedReport:
    subdivision: MixedSubdivision
    cell_polygons: tuple[tuple[Point2, ...], ...]
    ambient_polygon: tuple[Point2, ...]
    areas_ok: bool
    face_to_face: bool
    adjacency: tuple[tuple[int, int], ...]
    adjacency_equals_flips: bool

    @property
    def ok(self) -> bool:
        return self.areas_ok and self.face_to_face and self.adjacency_equals_flips


def mixed_subdivision_report(
    sig: Signature, ij: IndexPair, force: bool = False
) -> MixedReport:
    """Planar (|whites| = 3) verification of the mixed subdivision: exact
    area accounting, face-to-face cell contacts, and cell adjacency equal to
    the flip graph."""
    if len(ij.whites) != 3:
        raise InputError("the planar mixed-subdivision report needs |whites| = 3")
    sub = mixed_subdivision(sig, ij, force)
    polys = [convex_hull(_planar_points(c.vertices)) for c in sub.cells]
    ambient = convex_hull(_planar_points(sub.ambient_vertices))
    areas_ok = sum(
        (polygon_area(p) for p in polys), Fraction(0)
    ) == polygon_area(ambient)
    face_to_face = True
    adjacency = []
    for a in range(len(polys)):
        va = set(polys[a])
        for b in range(a + 1, len(polys)):
            inter = clip_convex(polys[a], polys[b])
            if polygon_area(inter) != 0:
                face_to_face = False
                continue
            common = convex_hull(tuple(va & set(polys[b])))
            if inter != common:
                face_to_face = False
            if len(inter) == 2:
                adjacency.append((a, b))
    g = increasing_flip_graph(sig, ij, force)
    flips = {frozenset((g.trees[x], g.trees[y])) for x, y in g.arcs}
    contacts = {
        frozenset((sub.cells[a].tree, sub.cells[b].tree)) for a, b in adjacency
    }
    return MixedReport(
        sub,
        tuple(polys),
        ambient,
        areas_ok,
        face_to_face,
        tuple(adjacency),
        contacts == flips,
    )
