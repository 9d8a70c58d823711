"""The fan cut out by the vectors b_i and the polygons attached to it.

Each two-dimensional cone of the fan gets an exponent vector psi; their convex
hull is the secondary polygon.  The lattice polygon Delta is built from partial
sums of the b_i in angular order and is a rotated copy of it.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .geometry import (
    angle_compare,
    angular_order,
    boundary_points,
    convex_hull,
    interior_points,
    is_convex_position,
    twice_area,
)
from .lattice import LatticeEmbedding, ValidationError, det2, primitive


@dataclass(frozen=True)
class SecondaryCone:
    """A 2-cone of the fan.

    ``right`` and ``left`` are the 0-based indices of the b_i on its clockwise and
    counterclockwise boundary rays (several when vectors are parallel).  ``pairs``
    lists every {k, l} whose positive span contains the cone, with |det|.
    """

    right: tuple[int, ...]
    left: tuple[int, ...]
    pairs: tuple[tuple[int, int, int], ...]
    psi: tuple[int, ...]

    @property
    def volume(self) -> int:
        return sum(w for _, _, w in self.pairs)

    def pair_set(self) -> set[frozenset]:
        return {frozenset((k, l)) for k, l, _ in self.pairs}

    def label(self) -> str:
        return "{" + ",".join(f"{k + 1}{l + 1}" for k, l, _ in self.pairs) + "}"


def rays(lattice: LatticeEmbedding) -> list[tuple[int, ...]]:
    """Groups of indices sharing a direction, in counterclockwise order from angle 0."""
    cols = lattice.columns
    order = angular_order(cols)
    groups: list[list[int]] = []
    for i in order:
        if groups and primitive(cols[groups[-1][0]]) == primitive(cols[i]):
            groups[-1].append(i)
        else:
            groups.append([i])
    return [tuple(g) for g in groups]


def _in_open_cone(k: tuple[int, int], l: tuple[int, int], v: tuple[int, int]) -> bool:
    return det2(k, v) > 0 and det2(v, l) > 0


def secondary_fan(lattice: LatticeEmbedding) -> list[SecondaryCone]:
    """Cones in counterclockwise order, the first one starting at the first ray."""
    cols = lattice.columns
    n = lattice.n
    groups = rays(lattice)
    if len(groups) < 3:
        raise ValidationError("the b_i must span at least three rays")
    cones = []
    for t in range(len(groups)):
        right, left = groups[t], groups[(t + 1) % len(groups)]
        pr, pl = primitive(cols[right[0]]), primitive(cols[left[0]])
        if det2(pr, pl) <= 0:
            raise AssertionError("consecutive rays span more than a half-plane")
        inner = (pr[0] + pl[0], pr[1] + pl[1])
        pairs = []
        for k in range(n):
            for l in range(k + 1, n):
                d = det2(cols[k], cols[l])
                if d > 0 and _in_open_cone(cols[k], cols[l], inner):
                    pairs.append((k, l, d))
                elif d < 0 and _in_open_cone(cols[l], cols[k], inner):
                    pairs.append((k, l, -d))
        psi = [0] * n
        for k, l, w in pairs:
            psi[k] += w
            psi[l] += w
        cones.append(SecondaryCone(tuple(right), tuple(left), tuple(pairs), tuple(psi)))
    return cones


def volume(lattice: LatticeEmbedding) -> int:
    """The normalized volume, which is the same sum over every cone."""
    return secondary_fan(lattice)[0].volume


@dataclass(frozen=True)
class SecondaryPolygon:
    """Convex hull of the psi vectors, drawn in Z^N and in lattice coordinates."""

    lattice: LatticeEmbedding
    points: tuple[tuple[int, ...], ...]   # psi of each cone, fan order
    vertices: tuple[tuple[int, ...], ...]  # hull vertices in Z^N, counterclockwise
    origin: tuple[int, ...]
    coords: tuple[tuple[int, int], ...]    # hull vertices in lattice coordinates

    def contains(self, point: Sequence[int]) -> bool:
        diff = [a - b for a, b in zip(point, self.origin)]
        if not self.lattice.contains(diff):
            return False
        xy = self.lattice.coordinates(diff)
        poly = self.coords
        m = len(poly)
        if m < 3:
            return xy in poly
        return all(
            (poly[(k + 1) % m][0] - poly[k][0]) * (xy[1] - poly[k][1])
            - (poly[(k + 1) % m][1] - poly[k][1]) * (xy[0] - poly[k][0])
            >= 0
            for k in range(m)
        )

    @property
    def twice_area(self) -> int:
        return twice_area(self.coords)


def lattice_coords_hull(lattice: LatticeEmbedding, points: Sequence[Sequence[int]], origin=None):
    """Hull of points lying in one coset of L, returned as (vertices in Z^N, 2d coords)."""
    origin = tuple(points[0]) if origin is None else tuple(origin)
    two_d = {}
    for p in points:
        xy = lattice.coordinates([a - b for a, b in zip(p, origin)])
        two_d[xy] = tuple(p)
    hull = convex_hull(list(two_d))
    return tuple(two_d[xy] for xy in hull), tuple(hull), origin


def secondary_polygon(lattice: LatticeEmbedding) -> SecondaryPolygon:
    cones = secondary_fan(lattice)
    pts = [c.psi for c in cones]
    verts, coords, origin = lattice_coords_hull(lattice, pts)
    return SecondaryPolygon(lattice, tuple(pts), verts, origin, coords)


# ---------------------------------------------------------------- the polygon Delta


@dataclass(frozen=True)
class DeltaPolygon:
    """Partial sums of the b_i taken in counterclockwise angular order.

    ``order`` is the permutation used (0-based original indices), ``path`` the
    partial sums p_1 .. p_N (p_N is the origin), ``vertices`` the strict hull.
    """

    order: tuple[int, ...]
    path: tuple[tuple[int, int], ...]
    vertices: tuple[tuple[int, int], ...]

    @property
    def twice_area(self) -> int:
        return twice_area(self.vertices)

    @property
    def interior_count(self) -> int:
        return interior_points(self.vertices)

    @property
    def boundary_count(self) -> int:
        return boundary_points(self.vertices)


def delta_polygon(lattice: LatticeEmbedding) -> DeltaPolygon:
    cols = lattice.columns
    order = angular_order(cols)
    path = []
    x = y = 0
    for i in order:
        x += cols[i][0]
        y += cols[i][1]
        path.append((x, y))
    return DeltaPolygon(tuple(order), tuple(path), tuple(convex_hull(path)))


def area_and_interior(lattice: LatticeEmbedding) -> tuple[int, int]:
    """(twice the area of Delta, number of interior lattice points).

    Both come from determinants alone: the area is half the sum of all |det|
    minus the volume, and Pick's theorem gives the interior count using the
    boundary count sum(gcd(b_i)).
    """
    n = lattice.n
    total = sum(abs(lattice.det(i, j)) for i in range(n) for j in range(i + 1, n))
    vol = volume(lattice)
    a2 = total - 2 * vol
    boundary = sum(gcd(*lattice.column(i)) for i in range(n))
    return a2, (a2 - boundary + 2) // 2


def lattice_from_polygon(points: Sequence[Sequence[int]]) -> LatticeEmbedding:
    """Inverse of the partial-sum construction.

    ``points`` are lattice points on the boundary of a convex polygon (hull
    vertices, optionally with extra boundary points).  They are put in
    counterclockwise order starting from the first given point and the final
    point is moved to the origin.
    """
    pts = [(int(p[0]), int(p[1])) for p in points]
    if len(pts) < 3:
        raise ValidationError("need at least three points")
    if len(set(pts)) != len(pts):
        raise ValidationError("points must be distinct")
    if not is_convex_position(pts):
        raise ValidationError("points are not in convex position or the polygon is degenerate")
    # counterclockwise order around an interior reference point
    cx2 = sum(p[0] for p in pts)
    cy2 = sum(p[1] for p in pts)
    m = len(pts)
    rel = [(p[0] * m - cx2, p[1] * m - cy2) for p in pts]
    from functools import cmp_to_key

    idx = sorted(range(m), key=cmp_to_key(lambda a, b: angle_compare(rel[a], rel[b])))
    start = idx.index(0)
    idx = idx[start:] + idx[:start]
    ordered = [pts[i] for i in idx]
    last = ordered[-1]
    shifted = [(p[0] - last[0], p[1] - last[1]) for p in ordered]
    cols = [shifted[0]] + [
        (shifted[k][0] - shifted[k - 1][0], shifted[k][1] - shifted[k - 1][1]) for k in range(1, m)
    ]
    return LatticeEmbedding([[c[0] for c in cols], [c[1] for c in cols]])


def delta_to_secondary(lattice: LatticeEmbedding) -> list[tuple[int, ...]]:
    """Map the partial-sum points of Delta into Z^N onto the secondary polygon.

    Rotate a quarter turn counterclockwise (v -> vJ), embed v -> (v . b_k)_k and
    translate by psi of the cone whose counterclockwise boundary contains the
    first vector in angular order.
    """
    delta = delta_polygon(lattice)
    cols = lattice.columns
    first = delta.order[0]
    anchor = next(c for c in secondary_fan(lattice) if first in c.left)
    out = []
    for p in delta.path:
        rot = (-p[1], p[0])
        emb = [rot[0] * b[0] + rot[1] * b[1] for b in cols]
        out.append(tuple(a + e for a, e in zip(anchor.psi, emb)))
    return out
