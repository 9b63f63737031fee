"""Dual tropical picture of the tree triangulation.

A lift of the admissible edges places one inverted tropical hyperplane per
black index in the coordinate space of the whites (normalized so that the
largest white coordinate is 0).  Trees map to the arrangement's vertices by
signed path sums; forests map to polyhedral faces cut out by difference
constraints; the bounded faces, indexed by the internal forests, assemble
into a polyhedral complex whose face poset is the reverse of forest
inclusion and whose edge graph is the flip graph.  All geometry here is
exact: coordinates are rationals or rational sums of square roots, and every
comparison goes through exact sign evaluation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Mapping

from .core import Edge, Signature
from .errors import InputError, StructureError
from .exactnum import value_sign
from .forest import (
    Forest,
    IndexPair,
    Tree,
    as_forest,
    build_edge_set,
    enumerate_trees,
    flippable_edges,
    irrelevant_edges,
    is_tree,
)
from .poset import increasing_flip_graph
from .simplicial import Lift


def tropical_point(t: Tree, sig: Signature, ij: IndexPair, lift: Lift) -> dict:
    """Coordinates of the arrangement vertex dual to a tree.

    Each white coordinate is the alternating sum of lift values along the
    tree path to the largest white: edges walked white-to-black count
    positively, black-to-white negatively; the largest white gets 0.
    """
    if not is_tree(t, sig, ij):
        raise InputError(f"not a tree of this instance: {t}")
    root = max(ij.whites)
    adj: dict[tuple, list] = {}
    for e in t:
        b, w = ("b", e[0]), ("w", e[1])
        adj.setdefault(b, []).append((e, w))
        adj.setdefault(w, []).append((e, b))
    pot = {("w", root): Fraction(0)}
    queue = deque([("w", root)])
    while queue:
        v = queue.popleft()
        for e, child in adj[v]:
            if child in pot:
                continue
            h = lift.value(e)
            pot[child] = pot[v] - h if child[0] == "b" else pot[v] + h
            queue.append(child)
    return {j: pot[("w", j)] for j in ij.whites}


def orientation_functional(sig: Signature, ij: IndexPair, point: Mapping[int, object]):
    """Sign-weighted sum of the white coordinates, omitting the largest."""
    total = Fraction(0)
    for j in ij.whites:
        if j != max(ij.whites):
            total = total + sig.sign(j) * point[j]
    return total


def _admissible_whites(i: int, ij: IndexPair) -> list[int]:
    return [j for j in ij.whites if i < j]


def hyperplane_contains(
    i: int, point: Mapping[int, object], sig: Signature, ij: IndexPair, lift: Lift
) -> bool:
    """Whether the inverted tropical hyperplane of black i contains the
    point: the maximum of point[j] - lift(i, j) is attained at least twice."""
    if i not in ij.blacks:
        raise InputError(f"{i} is not a black index of this instance")
    js = _admissible_whites(i, ij)
    if len(js) < 2:
        return False
    best = point[js[0]] - lift.value((i, js[0]))
    count = 1
    for j in js[1:]:
        x = point[j] - lift.value((i, j))
        s = value_sign(x - best)
        if s > 0:
            best, count = x, 1
        elif s == 0:
            count += 1
    return count >= 2


def hyperplane_class(i: int, ij: IndexPair) -> str:
    """Shape of black i's hyperplane: 'full' with 3+ admissible whites,
    'degenerate' (a line) with 2, 'at-infinity' with at most 1."""
    k = len(_admissible_whites(i, ij))
    if k >= 3:
        return "full"
    if k == 2:
        return "degenerate"
    return "at-infinity"


# ---------------------------------------------------------------------------
# Faces of the arrangement
# ---------------------------------------------------------------------------

_BOUND_KEYS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


def _exact_pair_cmp(p, q) -> int:
    s = value_sign(p[0] - q[0])
    if s:
        return s
    return value_sign(p[1] - q[1]) if len(p) > 1 else 0


@dataclass(frozen=True)
class FacePolyhedron:
    """Solution set of the difference constraints attached to a forest.

    `constraints` lists (k, j, rhs) meaning x_k - x_j <= rhs, on top of the
    normalization x_max = 0.  With at most three whites the planar fields
    are filled: exact `vertices` in the free coordinates (whites except the
    largest), the face `dim` (-1 when infeasible), and `bounded`.
    """

    whites: tuple[int, ...]
    constraints: tuple[tuple[int, int, object], ...]
    feasible: bool
    vertices: tuple | None
    dim: int | None
    bounded: bool | None

    def contains(self, point: Mapping[int, object]) -> bool:
        if value_sign(point[max(self.whites)]) != 0:
            return False
        return all(
            value_sign(point[k] - point[j] - rhs) <= 0
            for k, j, rhs in self.constraints
        )


def _feasibility(whites, constraints) -> bool:
    """Difference-constraint feasibility: no negative cycle among the
    tightest inter-white bounds."""
    best: dict[tuple[int, int], object] = {}
    for k, j, rhs in constraints:
        key = (j, k)
        if key not in best or value_sign(rhs - best[key]) < 0:
            best[key] = rhs
    for a in whites:
        for b in whites:
            if a >= b:
                continue
            if (a, b) in best and (b, a) in best:
                if value_sign(best[(a, b)] + best[(b, a)]) < 0:
                    return False
    for a in whites:
        for b in whites:
            for c in whites:
                if len({a, b, c}) < 3:
                    continue
                if (a, b) in best and (b, c) in best and (c, a) in best:
                    if value_sign(best[(a, b)] + best[(b, c)] + best[(c, a)]) < 0:
                        return False
    return True


def _planar_geometry(whites, constraints):
    """Exact vertices, dimension, and boundedness for at most 2 free
    coordinates; the largest white is pinned to 0."""
    free = [w for w in whites if w != max(whites)]
    if not _feasibility(whites, constraints):
        return (), -1, True
    if not free:
        return ((),), 0, True

    # tightest bound per outward direction over the free coordinates
    bounds: dict[tuple[int, int], object] = {}
    for k, j, rhs in constraints:
        a_u = (1 if free and k == free[0] else 0) - (1 if free and j == free[0] else 0)
        a_v = 0
        if len(free) == 2:
            a_v = (1 if k == free[1] else 0) - (1 if j == free[1] else 0)
        key = (a_u, a_v)
        if key == (0, 0):
            continue
        if key not in bounds or value_sign(rhs - bounds[key]) < 0:
            bounds[key] = rhs

    def satisfies(u, v) -> bool:
        for (a_u, a_v), rhs in bounds.items():
            if value_sign(a_u * u + a_v * v - rhs) > 0:
                return False
        return True

    if len(free) == 1:
        lo = -bounds[(-1, 0)] if (-1, 0) in bounds else None
        hi = bounds[(1, 0)] if (1, 0) in bounds else None
        verts = []
        for u in (lo, hi):
            if u is not None and satisfies(u, 0):
                verts.append((u,))
        verts.sort(key=cmp_to_key(_exact_pair_cmp))
        dedup = [v for i, v in enumerate(verts) if i == 0 or _exact_pair_cmp(v, verts[i - 1]) != 0]
        bounded = lo is not None and hi is not None
        dim = 0 if bounded and len(dedup) == 1 else 1
        return tuple(dedup), dim, bounded

    # two free coordinates: corners are feasible crossings of bounding lines
    lines = []  # (a_u, a_v, rhs) holding a_u*u + a_v*v = rhs
    for key, rhs in bounds.items():
        lines.append((key[0], key[1], rhs))
    verts = []
    for x in range(len(lines)):
        for y in range(x + 1, len(lines)):
            (a1, b1, c1), (a2, b2, c2) = lines[x], lines[y]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            u = (c1 * b2 - c2 * b1) * Fraction(1, det)
            v = (a1 * c2 - a2 * c1) * Fraction(1, det)
            if satisfies(u, v):
                verts.append((u, v))
    verts.sort(key=cmp_to_key(_exact_pair_cmp))
    dedup = [v for i, v in enumerate(verts) if i == 0 or _exact_pair_cmp(v, verts[i - 1]) != 0]

    bounded = True
    for d in ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)):
        if all(key[0] * d[0] + key[1] * d[1] <= 0 for key in bounds):
            bounded = False
            break
    if bounded:
        dim = 0 if len(dedup) == 1 else 1 if len(dedup) == 2 else 2
    else:
        dim = 2
        for key, rhs in bounds.items():
            opp = (-key[0], -key[1])
            if opp in bounds and value_sign(bounds[key] + bounds[opp]) == 0:
                dim = 1
                break
    return tuple(dedup), dim, bounded


def face_polyhedron(
    f: Forest, sig: Signature, ij: IndexPair, lift: Lift
) -> FacePolyhedron:
    """Inequality description of the face dual to a forest: for each forest
    edge (i, j) and each admissible white k of i,
    x_k - x_j <= lift(i, k) - lift(i, j); plus x_max = 0."""
    f = as_forest(f, sig, ij)
    constraints = []
    for i, j in f:
        for k in _admissible_whites(i, ij):
            if k == j:
                continue
            constraints.append((k, j, lift.value((i, k)) - lift.value((i, j))))
    whites = ij.whites
    if len(whites) <= 3:
        vertices, dim, bounded = _planar_geometry(whites, constraints)
        feasible = dim >= 0
    else:
        vertices, dim, bounded = None, None, None
        feasible = _feasibility(whites, constraints)
    return FacePolyhedron(whites, tuple(constraints), feasible, vertices, dim, bounded)


# ---------------------------------------------------------------------------
# Internal forests and the bounded complex
# ---------------------------------------------------------------------------


def internal_forests(
    sig: Signature, ij: IndexPair, force: bool = False
) -> tuple[Forest, ...]:
    """Forests indexing the bounded faces: a forest is internal iff it is
    contained in no set t minus delta with delta an unflippable edge of the
    tree t."""
    trees = enumerate_trees(sig, ij, force)
    edges = build_edge_set(sig, ij)
    index = {e: k for k, e in enumerate(edges)}

    def mask(es) -> int:
        m = 0
        for e in es:
            m |= 1 << index[e]
        return m

    blockers = set()
    for t in trees:
        flippable = set(flippable_edges(t, sig, ij))
        tm = mask(t)
        for delta in t:
            if delta not in flippable:
                blockers.add(tm & ~(1 << index[delta]))
    blockers = sorted(blockers)

    irr = mask(irrelevant_edges(sig, ij))
    candidates = set()
    for t in trees:
        tm = mask(t)
        varying = tm & ~irr
        s = varying
        while True:
            candidates.add(s | irr)
            if s == 0:
                break
            s = (s - 1) & varying
    result = []
    for m in sorted(candidates):
        if any(m & ~b == 0 for b in blockers):
            continue
        result.append(tuple(e for e in edges if (1 << index[e]) & m))
    result.sort(key=lambda f: (len(f), f))
    return tuple(result)


def moved_whites(t: Tree, e: Edge, ij: IndexPair) -> tuple[int, ...]:
    """Whites separated from max(whites) when edge e is removed from tree t.

    A flip leaving e translates exactly these coordinates by a common
    amount, so the orientation functional changes by that amount times the
    sign sum of the moved whites: the functional ties exactly on flips
    whose moved whites are sign-balanced.
    """
    adj: dict[tuple, list] = {}
    for f in t:
        if f == tuple(e):
            continue
        b, w = ("b", f[0]), ("w", f[1])
        adj.setdefault(b, []).append(w)
        adj.setdefault(w, []).append(b)
    root = ("w", max(ij.whites))
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return tuple(j for j in ij.whites if ("w", j) not in seen)


@dataclass(frozen=True)
class TropicalCell:
    forest: Forest
    dim: int
    vertex_trees: tuple[Tree, ...]


@dataclass(frozen=True)
class ComplexReport:
    sig: Signature
    ij: IndexPair
    lift_kind: str
    cells: tuple[TropicalCell, ...]
    tree_count: int
    edge_cell_count: int
    flip_count: int
    vertices_are_trees: bool
    walls_match: bool
    anti_isomorphic: bool
    functional_increasing: bool
    functional_monotone: bool
    tie_arcs: tuple[int, ...]
    geometry_ok: bool | None
    hyperplane_classes: Mapping[int, str]

    @property
    def ok(self) -> bool:
        """Structural health of the complex: full cells are the trees,
        walls are the flips, the cell poset reverses forest inclusion, and
        (with at most three whites) the exact planar geometry agrees.

        The orientation-functional checks are reported but deliberately not
        gated on: flips that translate a sign-balanced set of whites leave
        the functional constant, and on some mixed signatures an increasing
        flip can even decrease it, whatever the lift (see
        `functional_increasing`, `functional_monotone`, `tie_arcs`).
        """
        return (
            self.vertices_are_trees
            and self.walls_match
            and self.anti_isomorphic
            and self.geometry_ok is not False
        )


def associahedron_complex(
    sig: Signature, ij: IndexPair, lift: Lift, force: bool = False
) -> ComplexReport:
    """Assemble and cross-check the bounded complex of the arrangement.

    Checks: full-dimension cells are exactly the trees; cells of one less
    dimension match the flip walls; face inclusion reverses forest
    inclusion; and, with at most three whites, the exact planar geometry of
    every face (dimension, boundedness, vertex coordinates) agrees with the
    combinatorial prediction.  The behaviour of the orientation functional
    along the flip arcs (strict increase, weak increase with sign-balanced
    ties, or neither) is measured and reported, not asserted.
    """
    g = increasing_flip_graph(sig, ij, force)
    trees = g.trees
    full_size = len(ij.blacks) + len(ij.whites) - 1
    forests = internal_forests(sig, ij, force)
    tree_sets = [set(t) for t in trees]
    cells = []
    for f in forests:
        fs = set(f)
        vt = tuple(t for t, ts in zip(trees, tree_sets) if fs <= ts)
        if not vt:
            raise StructureError(f"internal forest with no containing tree: {f}")
        cells.append(TropicalCell(f, full_size - len(f), vt))

    vertices_are_trees = {c.vertex_trees for c in cells if c.dim == 0} == {
        (t,) for t in trees
    }
    walls = {frozenset(c.vertex_trees) for c in cells if c.dim == 1}
    flips = {frozenset((trees[a], trees[b])) for a, b in g.arcs}
    walls_match = walls == flips

    anti_isomorphic = True
    cell_sets = [set(c.forest) for c in cells]
    vert_sets = [set(c.vertex_trees) for c in cells]
    for a in range(len(cells)):
        for b in range(len(cells)):
            if (cell_sets[a] >= cell_sets[b]) != (vert_sets[a] <= vert_sets[b]):
                anti_isomorphic = False

    points = {t: tropical_point(t, sig, ij, lift) for t in trees}
    strict = []
    monotone = []
    tie_arcs = []
    for k, ((a, b), (leaving, _)) in enumerate(zip(g.arcs, g.exchanged)):
        s = value_sign(
            orientation_functional(sig, ij, points[trees[b]])
            - orientation_functional(sig, ij, points[trees[a]])
        )
        strict.append(s > 0)
        balanced = (
            sum(sig.sign(j) for j in moved_whites(trees[a], leaving, ij)) == 0
        )
        monotone.append(s > 0 or (s == 0 and balanced))
        if s == 0:
            tie_arcs.append(k)
    functional_increasing = all(strict)
    functional_monotone = all(monotone)

    geometry_ok: bool | None = None
    if len(ij.whites) <= 3:
        free = [w for w in ij.whites if w != max(ij.whites)]
        geometry_ok = True
        for c in cells:
            poly = face_polyhedron(c.forest, sig, ij, lift)
            expected = {tuple(points[t][w] for w in free) for t in c.vertex_trees}
            got = list(poly.vertices)
            same = len(got) == len(expected) and all(
                any(_exact_pair_cmp(p, q) == 0 for q in expected) for p in got
            )
            if poly.dim != c.dim or not poly.bounded or not same:
                geometry_ok = False
            if not all(poly.contains(points[t]) for t in c.vertex_trees):
                geometry_ok = False

    return ComplexReport(
        sig,
        ij,
        lift.kind,
        tuple(cells),
        len(trees),
        sum(1 for c in cells if c.dim == 1),
        len(g.arcs),
        vertices_are_trees,
        walls_match,
        anti_isomorphic,
        functional_increasing,
        functional_monotone,
        tuple(tie_arcs),
        geometry_ok,
        {i: hyperplane_class(i, ij) for i in ij.blacks},
    )
