"""Tropical dual: arrangement points, bounded faces, orientation functional."""

from __future__ import annotations

import itertools

import pytest

import cambrian as c
from cambrian.core import Signature, parse_signature
from cambrian.errors import InputError
from cambrian.exactnum import SqrtSum, value_sign
from cambrian.forest import IndexPair, flippable_edges
from cambrian.poset import increasing_flip_graph
from cambrian.tropical import (
    face_polyhedron,
    hyperplane_contains,
    internal_forests,
    moved_whites,
    orientation_functional,
    tropical_point,
)

RUNNING = parse_signature("-++-+--+")
THREE_WHITES = IndexPair((0, 1, 2, 4, 5, 7, 8), (3, 6, 9))


def all_signatures(n):
    for bits in itertools.product((1, -1), repeat=n):
        yield Signature(bits)


def test_extremal_tree_coordinates():
    lift = c.build_lift(RUNNING, THREE_WHITES, "sqrt")
    lo = tropical_point(c.extremal_tree(RUNNING, THREE_WHITES, "min"),
                        RUNNING, THREE_WHITES, lift)
    hi = tropical_point(c.extremal_tree(RUNNING, THREE_WHITES, "max"),
                        RUNNING, THREE_WHITES, lift)
    one = SqrtSum.rational(1)
    s2, s3 = SqrtSum.sqrt(2), SqrtSum.sqrt(3)
    assert (lo[3], lo[6], lo[9]) == (-one, s3 - one, 0)
    assert (hi[3], hi[6], hi[9]) == (s2 - s3, SqrtSum.rational(0) - s2, 0)
    middle = ((0, 3), (0, 6), (1, 6), (2, 3), (4, 6), (5, 6), (5, 9),
              (7, 9), (8, 9))
    mid = tropical_point(middle, RUNNING, THREE_WHITES, lift)
    assert (mid[3], mid[6]) == (s3 - s2, s3 - one)
    with pytest.raises(InputError):
        tropical_point(middle[:-1], RUNNING, THREE_WHITES, lift)


def test_point_lies_on_hyperplanes_of_branching_blacks():
    rng_cases = [("--", None), ("-+-", None)]
    for text, _ in rng_cases:
        sig = parse_signature(text)
        ij = c.full_pair(sig)
        lift = c.build_lift(sig, ij, "sqrt")
        for t in c.enumerate_trees(sig, ij):
            p = tropical_point(t, sig, ij, lift)
            degree = {i: 0 for i in ij.blacks}
            for i, _ in t:
                degree[i] += 1
            for i in ij.blacks:
                assert hyperplane_contains(i, p, sig, ij, lift) == (degree[i] >= 2)
    with pytest.raises(InputError):
        lift2 = c.build_lift(RUNNING, THREE_WHITES, "sqrt")
        hyperplane_contains(3, {}, RUNNING, THREE_WHITES, lift2)


def test_hyperplane_classes():
    assert {i: c.hyperplane_class(i, THREE_WHITES) for i in THREE_WHITES.blacks} == {
        0: "full",
        1: "full",
        2: "full",
        4: "degenerate",
        5: "degenerate",
        7: "at-infinity",
        8: "at-infinity",
    }


def test_face_of_full_tree_is_its_point():
    lift = c.build_lift(RUNNING, THREE_WHITES, "sqrt")
    t = c.extremal_tree(RUNNING, THREE_WHITES, "min")
    poly = face_polyhedron(t, RUNNING, THREE_WHITES, lift)
    assert poly.feasible and poly.bounded and poly.dim == 0
    point = tropical_point(t, RUNNING, THREE_WHITES, lift)
    assert poly.vertices == ((point[3], point[6]),)
    assert poly.contains(point)


def test_internal_forests_membership():
    sig = parse_signature("-")
    ij = c.full_pair(sig)
    assert internal_forests(sig, ij) == c.enumerate_trees(sig, ij)

    sig = parse_signature("--")
    ij = c.full_pair(sig)
    forests = internal_forests(sig, ij)
    assert sorted(len(f) for f in forests) == [4, 5, 5]
    assert () not in forests

    fig = IndexPair((0, 1, 3, 4, 5, 6, 8), (1, 2, 3, 5, 6, 9))
    t = ((0, 1), (0, 2), (1, 2), (1, 3), (1, 5), (3, 5), (4, 5), (4, 6),
         (4, 9), (5, 9), (6, 9), (8, 9))
    flips = flippable_edges(t, RUNNING, fig)
    members = set(internal_forests(RUNNING, fig))
    assert t in members
    assert tuple(e for e in t if e != flips[0]) in members
    stuck = next(e for e in t if e not in flips)
    assert tuple(e for e in t if e != stuck) not in members


def test_complex_report_running_instance():
    for kind in ("sqrt", "rational"):
        lift = c.build_lift(RUNNING, THREE_WHITES, kind)
        rep = c.associahedron_complex(RUNNING, THREE_WHITES, lift)
        assert rep.ok
        assert rep.tree_count == 12 and rep.flip_count == 16
        assert rep.vertices_are_trees and rep.walls_match and rep.anti_isomorphic
        assert rep.geometry_ok is True
        # euler characteristic of the contractible bounded complex
        by_dim = {}
        for cell in rep.cells:
            by_dim[cell.dim] = by_dim.get(cell.dim, 0) + 1
        assert by_dim == {0: 12, 1: 16, 2: 5}
        # three flips translate a sign-balanced white pair: weak monotonicity
        # holds but strictness fails on exactly those arcs
        assert not rep.functional_increasing
        assert rep.functional_monotone
        assert rep.tie_arcs == (0, 10, 14)


def test_tie_arcs_move_balanced_whites():
    g = increasing_flip_graph(RUNNING, THREE_WHITES)
    lift = c.build_lift(RUNNING, THREE_WHITES, "sqrt")
    points = {t: tropical_point(t, RUNNING, THREE_WHITES, lift) for t in g.trees}
    for (a, b), (leaving, _) in zip(g.arcs, g.exchanged):
        moved = moved_whites(g.trees[a], leaving, THREE_WHITES)
        balance = sum(RUNNING.sign(j) for j in moved)
        delta = value_sign(
            orientation_functional(RUNNING, THREE_WHITES, points[g.trees[b]])
            - orientation_functional(RUNNING, THREE_WHITES, points[g.trees[a]])
        )
        assert delta == (0 if balance == 0 else 1)


def test_uniform_signatures_are_strict():
    for n in range(1, 5):
        for bit in (1, -1):
            sig = Signature((bit,) * n)
            ij = c.full_pair(sig)
            rep = c.associahedron_complex(sig, ij, c.build_lift(sig, ij, "sqrt"))
            assert rep.ok and rep.functional_increasing and rep.tie_arcs == ()


def test_complex_report_small_sweep():
    for n in range(1, 4):
        for sig in all_signatures(n):
            ij = c.full_pair(sig)
            rep = c.associahedron_complex(sig, ij, c.build_lift(sig, ij, "sqrt"))
            assert rep.ok, (sig, rep)
            if len(ij.whites) <= 3:
                assert rep.geometry_ok is True


def test_functional_can_decrease_on_mixed_signatures():
    # The structure (vertices, walls, anti-isomorphism) is healthy here,
    # yet two increasing flips strictly decrease the functional: each
    # translates the whites {1, 2, 3} (sign sum +1) downwards.
    sig = parse_signature("++-")
    ij = c.full_pair(sig)
    for kind in ("sqrt", "rational"):
        rep = c.associahedron_complex(sig, ij, c.build_lift(sig, ij, kind))
        assert rep.ok
        assert not rep.functional_increasing
        assert not rep.functional_monotone
        assert rep.tie_arcs == (3,)
