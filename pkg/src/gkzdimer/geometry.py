"""Exact planar helpers: angular sorting, convex hulls, lattice point counts."""
from __future__ import annotations

from functools import cmp_to_key
from math import gcd
from typing import Sequence

Point = tuple[int, int]


def cross(o: Sequence[int], a: Sequence[int], b: Sequence[int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _half(v: Sequence[int]) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def angle_compare(u: Sequence[int], v: Sequence[int]) -> int:
    """Compare directions by angle in [0, 2pi) measured from the positive x axis."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def angular_order(vectors: Sequence[Sequence[int]]) -> list[int]:
    """Indices sorted counterclockwise by angle; ties keep the original order."""
    idx = list(range(len(vectors)))
    return sorted(idx, key=cmp_to_key(lambda i, j: angle_compare(vectors[i], vectors[j]) or (i - j)))


def convex_hull(points: Sequence[Sequence[int]]) -> list[Point]:
    """Strict hull vertices, counterclockwise, starting at the lexicographic minimum."""
    pts = sorted(set((int(p[0]), int(p[1])) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def twice_area(polygon: Sequence[Sequence[int]]) -> int:
    """Shoelace sum; positive for counterclockwise polygons."""
    n = len(polygon)
    return sum(
        polygon[k][0] * polygon[(k + 1) % n][1] - polygon[k][1] * polygon[(k + 1) % n][0]
        for k in range(n)
    )


def boundary_points(polygon: Sequence[Sequence[int]]) -> int:
    n = len(polygon)
    return sum(
        gcd(polygon[(k + 1) % n][0] - polygon[k][0], polygon[(k + 1) % n][1] - polygon[k][1])
        for k in range(n)
    )


def interior_points(polygon: Sequence[Sequence[int]]) -> int:
    """Pick's theorem on a convex lattice polygon given by its hull vertices."""
    a2 = abs(twice_area(polygon))
    return (a2 - boundary_points(polygon) + 2) // 2


def lattice_points(polygon: Sequence[Sequence[int]]) -> list[Point]:
    """All lattice points in a convex counterclockwise polygon, by brute force."""
    xs = [p[0] for p in polygon]
    ys = [p[1] for p in polygon]
    out = []
    n = len(polygon)
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if all(cross(polygon[k], polygon[(k + 1) % n], (x, y)) >= 0 for k in range(n)):
                out.append((x, y))
    return out


def is_convex_position(points: Sequence[Sequence[int]]) -> bool:
    """True if every point lies on the boundary of the convex hull."""
    hull = convex_hull(points)
    if len(hull) < 3:
        return False
    n = len(hull)
    for p in points:
        on_edge = False
        for k in range(n):
            a, b = hull[k], hull[(k + 1) % n]
            if cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(
                a[1], b[1]
            ) <= p[1] <= max(a[1], b[1]):
                on_edge = True
                break
        if not on_edge:
            return False
    return True
