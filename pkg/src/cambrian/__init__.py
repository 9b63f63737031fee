"""Non-crossing trees tuned by a sign sequence.

A signature of n signs bends the sides of a convex polygon; the maximal
non-crossing sets of chords between chosen "black" and "white" indices are
trees, and this package builds the surrounding structure exactly: the
slope-increasing flip order and its lattice/interval properties, the
triangulation of a product of two simplices by the tree simplices together
with its regularity under concave lifts, the companion fine mixed
subdivision, and the dual tropical arrangement whose bounded complex is an
associahedron.  Heavy kernels (clique enumeration, lattice checks) have a
compiled backend with a pure-Python fallback chosen at import time.
"""

from .backend import active_backend
from .core import (
    Signature,
    compare_slopes,
    cyclic_boundary_order,
    edges_cross,
    ell,
    embed,
    parse_signature,
    reflect,
    slope,
)
from .errors import (
    CambrianError,
    DegenerateLift,
    InputError,
    InvalidInstance,
    NoPerfectMatching,
    NotFlippable,
    SignatureParseError,
    StructureError,
    TooLarge,
    UndecidedSign,
)
from .exactnum import SqrtSum, value_float, value_sign
from .forest import (
    IndexPair,
    build_edge_set,
    canopy,
    dual_cambrian_tree,
    enumerate_trees,
    extremal_tree,
    flip,
    flippable_edges,
    full_pair,
    irrelevant_edges,
    is_forest,
    is_tree,
    matching_feasibility,
    noncrossing_perfect_matching,
    phi,
    phi_inverse,
    phi_triangulation,
    tree_count,
)
from .poset import (
    FinitePoset,
    cambrian_lattice,
    conjecture_probe,
    facial_interval,
    find_isomorphic_interval,
    flip_poset,
    increasing_flip_graph,
    is_lattice,
    poset_from_digraph,
)
from .simplicial import (
    Lift,
    build_lift,
    distinct_epsilon_triangulations,
    lift_from_function,
    mixed_subdivision,
    mixed_subdivision_report,
    regularity_check,
    simplex_of_tree,
    trees_intersect_properly,
    u_polytope_vertices,
    verify_triangulation,
)
from .tropical import (
    associahedron_complex,
    face_polyhedron,
    hyperplane_class,
    hyperplane_contains,
    internal_forests,
    orientation_functional,
    tropical_point,
)

__version__ = "0.1.0"

__all__ = [
    "CambrianError",
    "DegenerateLift",
    "FinitePoset",
    "IndexPair",
    "InputError",
    "InvalidInstance",
    "Lift",
    "NoPerfectMatching",
    "NotFlippable",
    "Signature",
    "SignatureParseError",
    "SqrtSum",
    "StructureError",
    "TooLarge",
    "UndecidedSign",
    "active_backend",
    "associahedron_complex",
    "build_edge_set",
    "build_lift",
    "cambrian_lattice",
    "canopy",
    "compare_slopes",
    "conjecture_probe",
    "cyclic_boundary_order",
    "distinct_epsilon_triangulations",
    "dual_cambrian_tree",
    "edges_cross",
    "ell",
    "embed",
    "enumerate_trees",
    "extremal_tree",
    "face_polyhedron",
    "facial_interval",
    "find_isomorphic_interval",
    "flip",
    "flip_poset",
    "flippable_edges",
    "full_pair",
    "hyperplane_class",
    "hyperplane_contains",
    "increasing_flip_graph",
    "internal_forests",
    "irrelevant_edges",
    "is_forest",
    "is_lattice",
    "is_tree",
    "lift_from_function",
    "matching_feasibility",
    "mixed_subdivision",
    "mixed_subdivision_report",
    "noncrossing_perfect_matching",
    "orientation_functional",
    "parse_signature",
    "phi",
    "phi_inverse",
    "phi_triangulation",
    "poset_from_digraph",
    "reflect",
    "regularity_check",
    "simplex_of_tree",
    "slope",
    "tree_count",
    "trees_intersect_properly",
    "tropical_point",
    "u_polytope_vertices",
    "value_float",
    "value_sign",
    "verify_triangulation",
]
