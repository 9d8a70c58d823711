"""Biadjacency (Kasteleyn) matrices of dessins, their matchings and determinants."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .dessin import DessinData, quiver_and_critical_weight
from .lattice import LatticeEmbedding
from .polyring import LaurentPoly, poly_det
from .secondary import SecondaryCone, lattice_coords_hull, secondary_fan

Weights = Union[str, Mapping[int, int]]


@dataclass(frozen=True)
class KasteleynMatrix:
    """Rows are black vertices, columns white vertices, both in increasing label order.

    ``edges[r][c]`` lists the edges (1-based) between that black and white vertex.
    """

    blacks: tuple[int, ...]
    whites: tuple[int, ...]
    entries: tuple[tuple[LaurentPoly, ...], ...]
    edges: tuple[tuple[tuple[int, ...], ...], ...]
    nvars: int

    def text(self) -> str:
        from .polyring import format_poly

        return "\n".join("[" + ", ".join(format_poly(x) for x in row) + "]" for row in self.entries)


def edge_weights(dessin: DessinData, weights: Weights) -> list[int] | None:
    """Integer weight of each edge, or None for symbolic weights."""
    m = dessin.n_edges
    if isinstance(weights, str):
        if weights == "unit":
            return [1] * m
        if weights == "critical":
            return list(quiver_and_critical_weight(dessin).critical)
        if weights == "symbolic":
            return None
        raise ValueError(f"unknown weight scheme {weights!r}")
    return [int(weights.get(e + 1, 1)) for e in range(m)]


def edge_monomial(dessin: DessinData, e: int, weights: Weights) -> LaurentPoly:
    """varpi(e) u_r u_r' for the 0-based edge e."""
    n = dessin.n_nodes
    symbolic = weights == "symbolic"
    nv = n + dessin.n_edges if symbolic else n
    exp = [0] * nv
    exp[dessin.red[e] - 1] += 1
    exp[dessin.red2[e] - 1] += 1
    if symbolic:
        exp[n + e] = 1
        return LaurentPoly.monomial(nv, exp)
    w = edge_weights(dessin, weights)[e]
    return LaurentPoly.monomial(nv, exp, w)


def kasteleyn_matrix(dessin: DessinData, weights: Weights = "unit") -> KasteleynMatrix:
    blacks = tuple(sorted(set(dessin.black)))
    whites = tuple(sorted(set(dessin.white)))
    if len(blacks) != len(whites):
        raise ValueError(f"{len(blacks)} black and {len(whites)} white vertices")
    symbolic = weights == "symbolic"
    nv = dessin.n_nodes + (dessin.n_edges if symbolic else 0)
    ints = None if symbolic else edge_weights(dessin, weights)
    bpos = {b: k for k, b in enumerate(blacks)}
    wpos = {w: k for k, w in enumerate(whites)}
    size = len(blacks)
    ent = [[LaurentPoly.zero(nv) for _ in range(size)] for _ in range(size)]
    edg: list[list[list[int]]] = [[[] for _ in range(size)] for _ in range(size)]
    for e in range(dessin.n_edges):
        r, c = bpos[dessin.black[e]], wpos[dessin.white[e]]
        exp = [0] * nv
        exp[dessin.red[e] - 1] += 1
        exp[dessin.red2[e] - 1] += 1
        if symbolic:
            exp[dessin.n_nodes + e] = 1
            mono = LaurentPoly.monomial(nv, exp)
        else:
            mono = LaurentPoly.monomial(nv, exp, ints[e])
        ent[r][c] = ent[r][c] + mono
        edg[r][c].append(e + 1)
    return KasteleynMatrix(
        blacks,
        whites,
        tuple(tuple(row) for row in ent),
        tuple(tuple(tuple(x) for x in row) for row in edg),
        nv,
    )


@dataclass(frozen=True)
class Matching:
    edges: tuple[int, ...]  # 1-based, one per black vertex in row order
    sign: int

    def exponent(self, dessin: DessinData) -> tuple[int, ...]:
        """Sum of e_r + e_r' over the matching."""
        out = [0] * dessin.n_nodes
        for e in self.edges:
            out[dessin.red[e - 1] - 1] += 1
            out[dessin.red2[e - 1] - 1] += 1
        return tuple(out)


def _perm_sign(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    sign = 1
    for s in range(len(p)):
        if seen[s]:
            continue
        length = 0
        e = s
        while not seen[e]:
            seen[e] = True
            e = p[e]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perfect_matchings(dessin: DessinData) -> list[Matching]:
    """Every set of edges covering each vertex once, with the sign of its row-to-column permutation."""
    km = kasteleyn_matrix(dessin, "unit")
    size = len(km.blacks)
    out: list[Matching] = []
    cols = [0] * size
    chosen = [0] * size
    used = [False] * size

    def rec(row: int):
        if row == size:
            out.append(Matching(tuple(chosen), _perm_sign(cols)))
            return
        for c in range(size):
            if used[c]:
                continue
            for e in km.edges[row][c]:
                used[c] = True
                cols[row] = c
                chosen[row] = e
                rec(row + 1)
                used[c] = False

    rec(0)
    return out


def normalize_sign(p: LaurentPoly) -> LaurentPoly:
    """Make the lexicographically least monomial positive.

    The lexicographic minimum of a finite point set is a vertex of its convex
    hull, so this is the least vertex monomial of the Newton polytope.
    """
    items = p.items()
    if items and items[0][1] < 0:
        return -p
    return p


def det_by_matchings(dessin: DessinData, weights: Weights = "unit") -> LaurentPoly:
    km = kasteleyn_matrix(dessin, weights)
    total = LaurentPoly.zero(km.nvars)
    for m in perfect_matchings(dessin):
        term = LaurentPoly.one(km.nvars)
        for e in m.edges:
            term = term * edge_monomial(dessin, e - 1, weights)
        total = total + (term if m.sign > 0 else -term)
    return total


def kasteleyn_det(dessin: DessinData, weights: Weights = "unit", check: bool = True) -> LaurentPoly:
    """det K, sign-normalized.  With ``check`` the matching expansion must agree."""
    km = kasteleyn_matrix(dessin, weights)
    det = poly_det(km.entries)
    if check:
        other = det_by_matchings(dessin, weights)
        if other != det:
            raise AssertionError("determinant disagrees with the matching expansion")
    return normalize_sign(det)


# ---------------------------------------------------------------- relation to the fan


def matching_for_cone(dessin: DessinData, cone: SecondaryCone) -> tuple[int, ...]:
    """Edges whose node pair belongs to the cone; they form a perfect matching."""
    pairs = cone.pair_set()
    chosen = tuple(
        e + 1
        for e in range(dessin.n_edges)
        if frozenset((dessin.red[e] - 1, dessin.red2[e] - 1)) in pairs
    )
    blacks = [dessin.black[e - 1] for e in chosen]
    whites = [dessin.white[e - 1] for e in chosen]
    if len(set(blacks)) != len(blacks) or len(set(whites)) != len(whites) or len(blacks) != dessin.n_black:
        raise AssertionError(f"edges {chosen} of cone {cone.label()} are not a perfect matching")
    return chosen


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[tuple[int, ...], ...]
    vertices: tuple[tuple[int, ...], ...]
    coords: tuple[tuple[int, int], ...]


def newton_polygon(p: LaurentPoly, lattice: LatticeEmbedding, origin=None) -> NewtonPolygon:
    """Support of p (first N variables) drawn in lattice coordinates; all exponents must be
    congruent modulo L."""
    n = lattice.n
    pts = sorted({e[:n] for e in p.support()})
    verts, coords, _ = lattice_coords_hull(lattice, pts, origin)
    return NewtonPolygon(tuple(pts), verts, coords)


def matching_bound_holds(dessin: DessinData, lattice: LatticeEmbedding, matchings=None) -> bool:
    """#{e in P : i in {r, r'}} <= (1/2) sum_j |det(b_i, b_j)| for every matching and node."""
    n = lattice.n
    bound2 = [sum(abs(lattice.det(i, j)) for j in range(n)) for i in range(n)]
    for m in matchings if matchings is not None else perfect_matchings(dessin):
        counts = [0] * n
        for e in m.edges:
            counts[dessin.red[e - 1] - 1] += 1
            counts[dessin.red2[e - 1] - 1] += 1
        if any(2 * counts[i] > bound2[i] for i in range(n)):
            return False
    return True


def vertex_coefficients(dessin: DessinData, lattice: LatticeEmbedding) -> dict[tuple[int, ...], tuple[int, int]]:
    """For each cone: (coefficient of u^psi in det K^crit, product of |det|^|det| over its pairs)."""
    det = kasteleyn_det(dessin, "critical")
    out = {}
    for cone in secondary_fan(lattice):
        expected = 1
        for _, _, w in cone.pairs:
            expected *= w ** w
        out[cone.psi] = (det.coefficient(cone.psi), expected)
    return out
