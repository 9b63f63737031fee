"""Signed polygons and their exact geometry.

A signature (a word in {+,-}^n) shapes two convex polygons: an (n+2)-gon on
"square" vertices 0..n+1, and a (2n+2)-gon obtained by splitting each inner
square vertex i into a white/black pair (i white on the left, i black on the
right).  Vertex i sits above the 0--(n+1) baseline when its sign is + and
below when it is -.

Everything downstream reduces to three exact predicates defined here:
whether two black-white edges cross, how their slopes compare, and the
arc-depth of a diagonal (the number of square vertices on its smaller side).
All coordinates are rational and all comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Literal

from .errors import InputError, SignatureParseError

BLACK = "black"
WHITE = "white"
SQUARE = "square"

# A decorated vertex is a (kind, index) pair.
Vertex = tuple[str, int]
# An edge joins black i to white j with i < j; stored as the bare index pair.
Edge = tuple[int, int]
Point = tuple[Fraction, Fraction]

_SIGN_CHARS = {"+": 1, "-": -1, "p": 1, "m": -1}
_DECORATIONS = {BLACK: "•", WHITE: "∘", SQUARE: "□"}


def black(i: int) -> Vertex:
    return (BLACK, i)


def white(j: int) -> Vertex:
    return (WHITE, j)


def square(i: int) -> Vertex:
    return (SQUARE, i)


def vertex_label(v: Vertex) -> str:
    kind, index = v
    return f"{index}{_DECORATIONS[kind]}"


@dataclass(frozen=True)
class Signature:
    """An immutable word in {+1, -1}^n, indexed 1..n."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if not self.signs:
            raise InputError("signature must have length at least 1")
        if any(s not in (-1, 1) for s in self.signs):
            raise InputError(f"signature entries must be +1 or -1: {self.signs}")

    @property
    def n(self) -> int:
        return len(self.signs)

    def sign(self, i: int) -> int:
        """Sign at position i, for 1 <= i <= n."""
        if not 1 <= i <= self.n:
            raise InputError(f"sign index {i} out of range 1..{self.n}")
        return self.signs[i - 1]

    @property
    def negatives(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.signs[i - 1] < 0)

    @property
    def positives(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.signs[i - 1] > 0)

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def __repr__(self) -> str:
        return f"Signature({str(self)!r})"


def parse_signature(text: str) -> Signature:
    """Parse a signature from one character per sign: '+' or '-', with
    shell-friendly aliases 'p' and 'm'."""
    if not text:
        raise InputError("empty signature")
    signs = []
    for pos, ch in enumerate(text, start=1):
        if ch not in _SIGN_CHARS:
            raise SignatureParseError(text, pos)
        signs.append(_SIGN_CHARS[ch])
    return Signature(tuple(signs))


def signature(value: "Signature | str | Iterable[int]") -> Signature:
    """Coerce a string or sign sequence to a Signature."""
    if isinstance(value, Signature):
        return value
    if isinstance(value, str):
        return parse_signature(value)
    return Signature(tuple(value))


def reflect(sig: Signature, mode: Literal["horizontal", "vertical"]) -> Signature:
    """Mirror a signature: 'horizontal' negates every sign (flip across the
    baseline), 'vertical' reverses the word (flip left to right)."""
    if mode == "horizontal":
        return Signature(tuple(-s for s in sig.signs))
    if mode == "vertical":
        return Signature(tuple(reversed(sig.signs)))
    raise InputError(f"unknown reflection mode: {mode!r}")


# ---------------------------------------------------------------------------
# Embedding
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def embed(sig: Signature) -> dict[Vertex, Point]:
    """Exact rational coordinates for all square, black and white vertices.

    Square vertex i sits at (i, s_i * i * (n+1-i)) where s_i is the sign at i
    (the endpoints 0 and n+1 sit on the baseline y = 0).  The split pair of an
    inner vertex i sits at x = i -/+ 1/4 (white left, black right) on the same
    parabola-scaled chain, which keeps the whole polygon strictly convex.
    """
    n = sig.n
    points: dict[Vertex, Point] = {}

    def chain_y(i: int, x: Fraction) -> Fraction:
        return sig.sign(i) * x * (n + 1 - x)

    for i in range(n + 2):
        y = Fraction(0) if i in (0, n + 1) else chain_y(i, Fraction(i))
        points[square(i)] = (Fraction(i), y)
    points[black(0)] = (Fraction(0), Fraction(0))
    points[white(n + 1)] = (Fraction(n + 1), Fraction(0))
    quarter = Fraction(1, 4)
    for i in range(1, n + 1):
        xw, xb = i - quarter, i + quarter
        points[white(i)] = (xw, chain_y(i, xw))
        points[black(i)] = (xb, chain_y(i, xb))
    return points


@lru_cache(maxsize=None)
def cyclic_boundary_order(sig: Signature) -> tuple[Vertex, ...]:
    """Counterclockwise boundary cycle of the split (2n+2)-gon.

    Starts at black 0, walks the lower chain left to right (the white/black
    pairs of negative positions), reaches white n+1, and returns along the
    upper chain right to left (pairs of positive positions, black first).
    """
    cycle: list[Vertex] = [black(0)]
    for i in sig.negatives:
        cycle.append(white(i))
        cycle.append(black(i))
    cycle.append(white(sig.n + 1))
    for i in reversed(sig.positives):
        cycle.append(black(i))
        cycle.append(white(i))
    return tuple(cycle)


@lru_cache(maxsize=None)
def square_boundary_order(sig: Signature) -> tuple[int, ...]:
    """Counterclockwise boundary cycle of the (n+2)-gon, as square indices."""
    return (0, *sig.negatives, sig.n + 1, *reversed(sig.positives))


@lru_cache(maxsize=None)
def _cycle_positions(sig: Signature) -> dict[Vertex, int]:
    return {v: k for k, v in enumerate(cyclic_boundary_order(sig))}


@lru_cache(maxsize=None)
def _square_positions(sig: Signature) -> dict[int, int]:
    return {v: k for k, v in enumerate(square_boundary_order(sig))}


# ---------------------------------------------------------------------------
# Edges and predicates
# ---------------------------------------------------------------------------


def check_edge(e: Edge, sig: Signature) -> Edge:
    """Validate that e = (i, j) joins black i to white j with i < j."""
    i, j = e
    if not (0 <= i <= sig.n and 1 <= j <= sig.n + 1 and i < j):
        raise InputError(f"not an edge for n={sig.n}: ({i}, {j})")
    return (i, j)


def edge_endpoints(e: Edge) -> tuple[Vertex, Vertex]:
    i, j = e
    return black(i), white(j)


def edges_cross(e1: Edge, e2: Edge, sig: Signature) -> bool:
    """True iff the two edges share no endpoint and their endpoints strictly
    interleave around the boundary cycle (open segments would intersect)."""
    check_edge(e1, sig)
    check_edge(e2, sig)
    if e1[0] == e2[0] or e1[1] == e2[1]:
        return False
    pos = _cycle_positions(sig)
    m = 2 * sig.n + 2
    a, b = pos[black(e1[0])], pos[white(e1[1])]
    span = (b - a) % m

    def inside(p: int) -> bool:
        return 0 < (p - a) % m < span

    return inside(pos[black(e2[0])]) != inside(pos[white(e2[1])])


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p): +1 left turn, -1 right, 0 flat."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def edges_cross_geometric(e1: Edge, e2: Edge, sig: Signature) -> bool:
    """Crossing decided by exact segment intersection in the embedding.

    Agrees with edges_cross; kept separate as an independent cross-check.
    """
    check_edge(e1, sig)
    check_edge(e2, sig)
    if e1[0] == e2[0] or e1[1] == e2[1]:
        return False
    pts = embed(sig)
    a, b = (pts[v] for v in edge_endpoints(e1))
    c, d = (pts[v] for v in edge_endpoints(e2))
    return (
        orientation(a, b, c) * orientation(a, b, d) < 0
        and orientation(c, d, a) * orientation(c, d, b) < 0
    )


def slope(e: Edge, sig: Signature) -> Fraction:
    """Exact slope of the straight edge in the embedding."""
    check_edge(e, sig)
    pts = embed(sig)
    (x1, y1), (x2, y2) = (pts[v] for v in edge_endpoints(e))
    if x1 == x2:  # cannot happen: black and white x-coordinates never coincide
        raise InputError(f"vertical edge {e}")
    return (y2 - y1) / (x2 - x1)


def compare_slopes(e1: Edge, e2: Edge, sig: Signature) -> int:
    """Exact slope comparison: -1 (less), 0 (equal) or +1 (greater)."""
    s1, s2 = slope(e1, sig), slope(e2, sig)
    return (s1 > s2) - (s1 < s2)


def ell(d: Edge, sig: Signature) -> int:
    """Arc depth of a diagonal of the square polygon.

    The diagonal (i, j) splits the boundary cycle into two arcs; ell is the
    smaller number of square vertices strictly inside an arc.  Boundary edges
    have depth 0.  Accepts the same (i, j) pairs as the black/white edges,
    which label the corresponding square diagonal.
    """
    i, j = d
    n = sig.n
    if not (0 <= i < j <= n + 1):
        raise InputError(f"not a diagonal for n={n}: ({i}, {j})")
    pos = _square_positions(sig)
    m = n + 2
    span = (pos[j] - pos[i]) % m
    return min(span - 1, m - span - 1)


def square_diagonals_cross(d1: Edge, d2: Edge, sig: Signature) -> bool:
    """True iff two square-polygon diagonals strictly interleave on the cycle."""
    if set(d1) & set(d2):
        return False
    pos = _square_positions(sig)
    m = sig.n + 2
    a, b = pos[d1[0]], pos[d1[1]]
    span = (b - a) % m

    def inside(p: int) -> bool:
        return 0 < (p - a) % m < span

    return inside(pos[d2[0]]) != inside(pos[d2[1]])
