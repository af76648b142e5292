"""Exact convex geometry in dimensions one and two.

Everything operates on Fraction coordinates: monotone-chain hulls, shoelace
areas and centroids, Sutherland-Hodgman halfplane clipping, and the lattice
(normalized) measure on edges, where a segment between integer points has
measure gcd of the coordinate differences.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Point = tuple[Fraction, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Sequence[Point]) -> list[Point]:
    """Hull vertices in counterclockwise order, collinear points dropped."""
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygon_area(verts: Sequence[Point]) -> Fraction:
    """Signed shoelace area; positive for counterclockwise order."""
    n = len(verts)
    if n < 3:
        return Fraction(0)
    s = Fraction(0)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s / 2


def polygon_centroid(verts: Sequence[Point]) -> Point:
    a = polygon_area(verts)
    if a == 0:
        raise ValueError("centroid of a degenerate polygon")
    cx = Fraction(0)
    cy = Fraction(0)
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        w = x1 * y2 - x2 * y1
        cx += (x1 + x2) * w
        cy += (y1 + y2) * w
    return (cx / (6 * a), cy / (6 * a))


def clip_polygon(verts: Sequence[Point], normal: Point, offset: Fraction) -> list[Point]:
    """Intersect a convex polygon with the halfplane normal.p >= offset."""
    if not verts:
        return []
    ux, uy = Fraction(normal[0]), Fraction(normal[1])
    off = Fraction(offset)

    def side(p: Point) -> Fraction:
        return ux * p[0] + uy * p[1] - off

    out: list[Point] = []
    n = len(verts)
    for i in range(n):
        cur, nxt = verts[i], verts[(i + 1) % n]
        s_cur, s_nxt = side(cur), side(nxt)
        if s_cur >= 0:
            out.append(cur)
        if (s_cur > 0 and s_nxt < 0) or (s_cur < 0 and s_nxt > 0):
            t = s_cur / (s_cur - s_nxt)
            out.append(
                (cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1]))
            )
    # drop consecutive duplicates introduced by vertices on the cut line
    dedup: list[Point] = []
    for p in out:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def point_in_polygon(p: Point, verts_ccw: Sequence[Point]) -> bool:
    """Closed containment test for a convex CCW polygon."""
    n = len(verts_ccw)
    px, py = Fraction(p[0]), Fraction(p[1])
    for i in range(n):
        if _cross(verts_ccw[i], verts_ccw[(i + 1) % n], (px, py)) < 0:
            return False
    return True


def rational_gcd(a: Fraction, b: Fraction) -> Fraction:
    """gcd extended to rationals: largest q with a/q, b/q integers."""
    a, b = abs(Fraction(a)), abs(Fraction(b))
    if a == 0:
        return b
    if b == 0:
        return a
    num = math.gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(num, a.denominator * b.denominator)


def lattice_edge_length(p: Point, q: Point) -> Fraction:
    """Lattice-normalized length of the segment pq."""
    return rational_gcd(q[0] - p[0], q[1] - p[1])


def count_lattice_points_2d(verts_ccw: Sequence[Point]) -> int:
    xs = [v[0] for v in verts_ccw]
    ys = [v[1] for v in verts_ccw]
    count = 0
    for x in range(math.ceil(min(xs)), math.floor(max(xs)) + 1):
        for y in range(math.ceil(min(ys)), math.floor(max(ys)) + 1):
            if point_in_polygon((Fraction(x), Fraction(y)), verts_ccw):
                count += 1
    return count


def count_lattice_points_1d(lo: Fraction, hi: Fraction) -> int:
    return max(0, math.floor(hi) - math.ceil(lo) + 1)


def clip_interval(
    lo: Fraction, hi: Fraction, coeff: Fraction, offset: Fraction
) -> tuple[Fraction, Fraction] | None:
    """Intersect [lo, hi] with {x : coeff*x >= offset}; None when empty."""
    coeff, offset = Fraction(coeff), Fraction(offset)
    if coeff == 0:
        return (lo, hi) if offset <= 0 else None
    bound = offset / coeff
    if coeff > 0:
        lo = max(lo, bound)
    else:
        hi = min(hi, bound)
    if lo > hi:
        return None
    return (lo, hi)
