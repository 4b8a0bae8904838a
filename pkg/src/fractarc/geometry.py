"""Exact rational geometry for axis-aligned boxes and polylines.

Coordinates are ``fractions.Fraction``; every predicate is decided by integer
arithmetic.  Floating point appears only in the ``float_*`` helpers, which are
for reporting, never for decisions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Point = tuple[Fraction, ...]
Box = tuple[tuple[Fraction, Fraction], ...]  # per-axis (lo, hi) with lo < hi

ZERO = Fraction(0)
ONE = Fraction(1)


def as_point(coords: Iterable) -> Point:
    return tuple(Fraction(c) for c in coords)


def vsub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def vlerp(p: Point, q: Point, t: Fraction) -> Point:
    return tuple(a + t * (b - a) for a, b in zip(p, q))


def norm_sq(p: Point) -> Fraction:
    return sum((c * c for c in p), ZERO)


def dist_sq(p: Point, q: Point) -> Fraction:
    return norm_sq(vsub(p, q))


def float_dist(p: Sequence, q: Sequence) -> float:
    return math.sqrt(sum((float(a) - float(b)) ** 2 for a, b in zip(p, q)))


def box_min_corner(box: Box) -> Point:
    return tuple(lo for lo, _ in box)


def box_max_corner(box: Box) -> Point:
    return tuple(hi for _, hi in box)


def box_corners(box: Box) -> list[Point]:
    corners: list[Point] = [()]
    for lo, hi in box:
        corners = [c + (v,) for c in corners for v in (lo, hi)]
    return corners


def box_diameter_sq(box: Box) -> Fraction:
    return sum(((hi - lo) ** 2 for lo, hi in box), ZERO)


def point_in_box(p: Point, box: Box) -> bool:
    return all(lo <= c <= hi for c, (lo, hi) in zip(p, box))


def point_in_box_interior(p: Point, box: Box) -> bool:
    return all(lo < c < hi for c, (lo, hi) in zip(p, box))


def boxes_disjoint(a: Box, b: Box) -> bool:
    """Closed boxes share no point iff they are separated along some axis."""
    return any(ahi < blo or bhi < alo for (alo, ahi), (blo, bhi) in zip(a, b))


def box_contains_box(outer: Box, inner: Box) -> bool:
    return all(olo <= ilo and ihi <= ohi
               for (olo, ohi), (ilo, ihi) in zip(outer, inner))


def segment_box_clip(p: Point, q: Point, box: Box) -> Optional[tuple[Fraction, Fraction]]:
    """Parameter range [t0, t1] of the segment p + t(q-p) inside the closed box.

    Returns None when the segment misses the box.  Exact slab clipping.
    """
    t0, t1 = ZERO, ONE
    for c_p, c_q, (lo, hi) in zip(p, q, box):
        d = c_q - c_p
        if d == 0:
            if c_p < lo or c_p > hi:
                return None
            continue
        ta = (lo - c_p) / d
        tb = (hi - c_p) / d
        if ta > tb:
            ta, tb = tb, ta
        if ta > t0:
            t0 = ta
        if tb < t1:
            t1 = tb
        if t0 > t1:
            return None
    return t0, t1


def point_on_segment(z: Point, p: Point, q: Point) -> bool:
    d = vsub(q, p)
    if all(c == 0 for c in d):
        return z == p
    axis = next(i for i, c in enumerate(d) if c != 0)
    t = (z[axis] - p[axis]) / d[axis]
    if t < 0 or t > 1:
        return False
    return all(z[i] == p[i] + t * d[i] for i in range(len(p)))


def segment_intersection(p1: Point, q1: Point, p2: Point, q2: Point):
    """Exact intersection of two closed segments in R^m, any m >= 1.

    Returns one of:
      ("empty", None)
      ("point", z)
      ("overlap", (a, b))   -- collinear segments sharing a positive-length piece
    """
    m = len(p1)
    d1 = vsub(q1, p1)
    d2 = vsub(q2, p2)
    w = vsub(p2, p1)

    pair = None
    for i in range(m):
        for j in range(i + 1, m):
            det = d2[i] * d1[j] - d1[i] * d2[j]
            if det != 0:
                pair = (i, j, det)
                break
        if pair is not None:
            break

    if pair is None:
        return _parallel_intersection(p1, q1, p2, q2, d1, d2)

    i, j, det = pair
    t = (d2[i] * w[j] - w[i] * d2[j]) / det
    u = (d1[i] * w[j] - w[i] * d1[j]) / det
    # the 2x2 solve must be consistent with every remaining coordinate
    for c in range(m):
        if t * d1[c] - u * d2[c] != w[c]:
            return ("empty", None)
    if 0 <= t <= 1 and 0 <= u <= 1:
        return ("point", vlerp(p1, q1, t))
    return ("empty", None)


def _parallel_intersection(p1, q1, p2, q2, d1, d2):
    z1 = all(c == 0 for c in d1)
    z2 = all(c == 0 for c in d2)
    if z1 and z2:
        return ("point", p1) if p1 == p2 else ("empty", None)
    if z1:
        return ("point", p1) if point_on_segment(p1, p2, q2) else ("empty", None)
    if z2:
        return ("point", p2) if point_on_segment(p2, p1, q1) else ("empty", None)

    # parallel, both nondegenerate: collinear iff p2 - p1 is parallel to d1
    w = vsub(p2, p1)
    for i in range(len(d1)):
        for j in range(i + 1, len(d1)):
            if w[i] * d1[j] - d1[i] * w[j] != 0:
                return ("empty", None)

    axis = next(i for i, c in enumerate(d1) if c != 0)
    a = w[axis] / d1[axis]
    b = a + d2[axis] / d1[axis]
    if a > b:
        a, b = b, a
    lo = max(a, ZERO)
    hi = min(b, ONE)
    if lo > hi:
        return ("empty", None)
    if lo == hi:
        return ("point", vlerp(p1, q1, lo))
    return ("overlap", (vlerp(p1, q1, lo), vlerp(p1, q1, hi)))


def segments_disjoint(p1: Point, q1: Point, p2: Point, q2: Point) -> bool:
    kind, _ = segment_intersection(p1, q1, p2, q2)
    return kind == "empty"


def _segment_bbox(p: Point, q: Point) -> Box:
    return tuple((min(a, b), max(a, b)) for a, b in zip(p, q))


def polyline_segments(vertices: Sequence[Point]) -> list[tuple[Point, Point]]:
    return list(zip(vertices, vertices[1:]))


def polylines_disjoint(v1: Sequence[Point], v2: Sequence[Point]) -> bool:
    """No shared point at all between the two polylines."""
    if boxes_disjoint(_points_bbox(v1), _points_bbox(v2)):
        return True
    for a, b in polyline_segments(v1):
        bb1 = _segment_bbox(a, b)
        for c, d in polyline_segments(v2):
            if boxes_disjoint(bb1, _segment_bbox(c, d)):
                continue
            if not segments_disjoint(a, b, c, d):
                return False
    return True


def _points_bbox(pts: Sequence[Point]) -> Box:
    return tuple((min(p[i] for p in pts), max(p[i] for p in pts))
                 for i in range(len(pts[0])))


def polyline_is_simple(vertices: Sequence[Point]) -> bool:
    """Non-self-intersecting: consecutive segments meet only at the shared
    vertex, all other segment pairs are disjoint, no zero-length segments."""
    segs = polyline_segments(vertices)
    for a, b in segs:
        if a == b:
            return False
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            kind, data = segment_intersection(*segs[i], *segs[j])
            if j == i + 1:
                if kind != "point" or data != vertices[j]:
                    return False
            elif kind != "empty":
                return False
    return True


def chain_self_intersection(vertices: Sequence[Point]) -> Optional[tuple[int, int]]:
    """First offending segment-index pair in a long vertex chain, or None.

    Same rule as polyline_is_simple but with bounding-box pruning so chains of
    several hundred segments stay fast.
    """
    segs = polyline_segments(vertices)
    boxes = [_segment_bbox(a, b) for a, b in segs]
    for a, b in segs:
        if a == b:
            raise ValueError("zero-length segment in chain")
    for i in range(len(segs)):
        bi = boxes[i]
        for j in range(i + 1, len(segs)):
            if boxes_disjoint(bi, boxes[j]):
                continue
            kind, data = segment_intersection(*segs[i], *segs[j])
            if j == i + 1:
                if kind != "point" or data != vertices[j]:
                    return (i, j)
            elif kind != "empty":
                return (i, j)
    return None
