"""Exact 2D helpers on Fraction points: hulls, areas, convex clipping.

Everything operates on (x, y) tuples of Fractions and stays exact; a convex
polygon is a counterclockwise tuple of its hull vertices (no repeats).
Degenerate hulls are allowed: a segment has two vertices, a point one.
"""

from __future__ import annotations

from fractions import Fraction

Point2 = tuple[Fraction, Fraction]


def cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> tuple[Point2, ...]:
    """Counterclockwise hull by monotone chain; collinear interior points
    and duplicates are dropped."""
    pts = sorted(set(points))
    if len(pts) <= 1:
        return tuple(pts)
    lower: list[Point2] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points coincide or are collinear both ways
        return tuple(pts[:1] + pts[-1:])
    return tuple(hull)


def polygon_area(hull) -> Fraction:
    """Shoelace area of a counterclockwise hull (0 for points and segments)."""
    total = Fraction(0)
    for k in range(len(hull)):
        x1, y1 = hull[k]
        x2, y2 = hull[(k + 1) % len(hull)]
        total += x1 * y2 - x2 * y1
    return total / 2


def clip_convex(subject, clip) -> tuple[Point2, ...]:
    """Intersection of two convex polygons (CCW hulls), as a hull tuple.

    Sutherland-Hodgman: clip the subject against each halfplane of `clip`,
    which must be full-dimensional (at least 3 vertices).
    """
    if len(clip) < 3:
        raise ValueError("clip polygon must be full-dimensional")
    output = list(subject)
    for k in range(len(clip)):
        a, b = clip[k], clip[(k + 1) % len(clip)]
        if not output:
            break
        current, output = output, []
        for i in range(len(current)):
            p, q = current[i], current[(i + 1) % len(current)]
            p_in = cross(a, b, p) >= 0
            q_in = cross(a, b, q) >= 0
            if p_in:
                output.append(p)
            if p_in != q_in:
                # exact crossing point of segment pq with line ab
                denom = cross(a, b, p) - cross(a, b, q)
                t = cross(a, b, p) / denom
                output.append(
                    (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
                )
    return convex_hull(output)
