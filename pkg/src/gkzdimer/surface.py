"""Square-tiled surfaces inside R^N that are periodic under the lattice L.

A surface is stored on the torus, i.e. modulo L.  Every square is recorded as
``(corner, i, j)``: ``corner`` is the class of its lowest vertex in Z^N / L in
the exact coordinates of :class:`~gkzdimer.lattice.CosetSpace`, and
``i < j`` are the two coordinate directions it spans (0-based).  Adjacency is
always read off these squares, never from differences of classes.

The starting surface is the de Bruijn dual of the grid of lines
``lambda_k + (x, y) . b_k in Z`` on the unit square of the (x, y) plane.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterator, Sequence

from .lattice import CosetSpace, LatticeEmbedding, ValidationError

Cls = tuple[int, ...]
Square = tuple[Cls, int, int]
Direction = tuple[int, int]  # (sign, index)

DEFAULT_PRIME = 1_000_003
DEFAULT_CAP = 100_000


class ResonanceError(ValueError):
    """Three grid lines meet in a point for the requested offset."""


class CapExceeded(RuntimeError):
    """Enumeration produced more surfaces than allowed."""

    def __init__(self, cap: int, found: int):
        super().__init__(f"surface enumeration exceeded the cap of {cap} (found {found})")
        self.cap = cap
        self.found = found


@dataclass(frozen=True)
class DiscreteSurface:
    """An L-periodic square surface, stored modulo L."""

    lattice: LatticeEmbedding
    squares: frozenset
    cosets: CosetSpace = field(compare=False, hash=False, repr=False)

    # -- cells

    def corners(self, sq: Square) -> tuple[Cls, Cls, Cls, Cls]:
        """(lowest, +e_i, +e_j, +e_i+e_j)."""
        c, i, j = sq
        cs = self.cosets
        ci = cs.step(c, i)
        cj = cs.step(c, j)
        return c, ci, cj, cs.step(ci, j)

    def vertices(self) -> set[Cls]:
        out = set()
        for sq in self.squares:
            out.update(self.corners(sq))
        return out

    def edges(self) -> set[tuple[Cls, int]]:
        """Edges as (class of the lower end, direction)."""
        out = set()
        for sq in self.squares:
            c, ci, cj, _ = self.corners(sq)
            _, i, j = sq
            out.update({(c, i), (c, j), (cj, i), (ci, j)})
        return out

    def square_types(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for _, i, j in self.squares:
            out[(i, j)] = out.get((i, j), 0) + 1
        return out

    def levels(self) -> dict[Cls, int]:
        """Coordinate sum of each vertex."""
        return {v: self.cosets.level(v) for v in self.vertices()}

    def level_values(self) -> list[int]:
        return sorted(set(self.levels().values()))

    def is_perfect(self) -> bool:
        return len(self.level_values()) == 3

    def incidences(self) -> dict[Cls, list[tuple[Square, Direction, Direction]]]:
        """For each vertex, the squares touching it and the two side directions there."""
        out: dict[Cls, list] = {}
        for sq in self.squares:
            _, i, j = sq
            for v, (si, sj) in zip(self.corners(sq), ((1, 1), (-1, 1), (1, -1), (-1, -1))):
                out.setdefault(v, []).append((sq, (si, i), (sj, j)))
        return out

    def edge_squares(self) -> dict[tuple[Cls, int], list[Square]]:
        out: dict[tuple[Cls, int], list] = {}
        for sq in self.squares:
            c, ci, cj, _ = self.corners(sq)
            _, i, j = sq
            for e in ((c, i), (c, j), (cj, i), (ci, j)):
                out.setdefault(e, []).append(sq)
        return out

    # -- checks

    def check_counts(self) -> None:
        """Cell counts: |det| squares of type (i, j), sum_{i<j} |det| vertices."""
        lat = self.lattice
        n = lat.n
        types = self.square_types()
        for i in range(n):
            for j in range(i + 1, n):
                want = abs(lat.det(i, j))
                if types.get((i, j), 0) != want:
                    raise AssertionError(f"type ({i + 1},{j + 1}) has {types.get((i, j), 0)} squares, expected {want}")
        total = sum(abs(lat.det(i, j)) for i in range(n) for j in range(i + 1, n))
        nv = len(self.vertices())
        if nv != total:
            raise AssertionError(f"{nv} vertices, expected {total}")
        ne = len(self.edges())
        if ne != 2 * total:
            raise AssertionError(f"{ne} edges, expected {2 * total}")
        for e, sqs in self.edge_squares().items():
            if len(sqs) != 2:
                raise AssertionError(f"edge {e} lies on {len(sqs)} squares")

    def projected_area(self) -> int:
        """Sum of the areas of the projected squares; equals det(B B^t)."""
        lat = self.lattice
        return sum(abs(lat.det(i, j)) for _, i, j in self.squares)

    # -- moves

    def flip_sites(self) -> list[Cls]:
        sites = []
        for v, inc in self.incidences().items():
            if len(inc) != 3:
                continue
            dirs = {d for _, a, b in inc for d in (a, b)}
            if len(dirs) != 3:
                continue
            pairs = {frozenset((a, b)) for _, a, b in inc}
            if len(pairs) == 3:
                sites.append(v)
        return sorted(sites)

    def flip(self, v: Cls) -> DiscreteSurface:
        """Push the vertex v through the cube spanned by its three edges."""
        inc = self.incidences().get(v)
        if inc is None or len(inc) != 3:
            raise ValueError(f"{v} is not a flip site")
        dirs = sorted({d for _, a, b in inc for d in (a, b)}, key=lambda d: d[1])
        if len(dirs) != 3:
            raise ValueError(f"{v} is not a flip site")
        cs = self.cosets
        new = set(self.squares)
        for sq, _, _ in inc:
            new.remove(sq)
        for a in range(3):
            sa, ia = dirs[a]
            start = cs.step(v, ia, sa)
            others = [dirs[b] for b in range(3) if b != a]
            for s, k in others:
                if s < 0:
                    start = cs.step(start, k, -1)
            i, j = sorted(k for _, k in others)
            new.add((start, i, j))
        if len(new) != len(self.squares):
            raise AssertionError("flip produced overlapping squares")
        return DiscreteSurface(self.lattice, frozenset(new), cs)

    # -- canonical form

    def canonical_form(self) -> tuple:
        """Sorted square list, minimized over translations by Z^N."""
        cs = self.cosets
        best = None
        for u in self.vertices():
            enc = tuple(sorted((cs.sub(c, u), i, j) for c, i, j in self.squares))
            if best is None or enc < best:
                best = enc
        return best

    def translate(self, t: Cls) -> DiscreteSurface:
        cs = self.cosets
        return DiscreteSurface(
            self.lattice, frozenset((cs.add(c, t), i, j) for c, i, j in self.squares), cs
        )

    def permute(self, perm: Sequence[int]) -> DiscreteSurface:
        """Image under the coordinate permutation e_k -> e_perm[k] (0-based).

        The permutation must map L to itself, e.g. by swapping equal columns of B.
        """
        lat = self.lattice
        n = lat.n
        moved = [[0] * n for _ in range(2)]
        for k in range(n):
            moved[0][perm[k]] = lat.B[0][k]
            moved[1][perm[k]] = lat.B[1][k]
        if not all(lat.contains(r) for r in moved):
            raise ValueError("permutation does not preserve the lattice")
        cs = self.cosets
        out = set()
        for c, i, j in self.squares:
            p = cs.representative(c)
            q = [0] * n
            for k in range(n):
                q[perm[k]] = p[k]
            a, b = sorted((perm[i], perm[j]))
            out.add((cs.of(q), a, b))
        return DiscreteSurface(lat, frozenset(out), cs)

    # -- honest coordinates

    def lift(self) -> dict[Square, tuple[int, ...]]:
        """Honest Z^N positions of each square's lowest corner, glued along shared edges.

        The squares form a connected patch that covers one fundamental domain.
        """
        cs = self.cosets
        order = sorted(self.squares)
        root = order[0]
        pos = {root: cs.representative(root[0])}
        by_edge = self.edge_squares()
        queue = deque([root])
        while queue:
            sq = queue.popleft()
            c, i, j = sq
            base = pos[sq]
            cc, ci, cj, _ = self.corners(sq)
            for edge, start in (((cc, i), base), ((cc, j), base), ((cj, i), _plus(base, j)), ((ci, j), _plus(base, i))):
                for other in by_edge[edge]:
                    if other in pos:
                        continue
                    # honest lower end of the shared edge in the neighbour's frame
                    oc, oi, oj = other
                    oci, ocj = cs.step(oc, oi), cs.step(oc, oj)
                    k = edge[1]
                    if edge[0] == oc:
                        opos = start
                    elif edge[0] == oci and k == oj:
                        opos = _plus(start, oi, -1)
                    elif edge[0] == ocj and k == oi:
                        opos = _plus(start, oj, -1)
                    else:
                        raise AssertionError("inconsistent edge in lift")
                    pos[other] = opos
                    queue.append(other)
        return pos

    def projected_squares(self) -> list[tuple[Square, list[tuple[int, int]]]]:
        """Each square's corners projected to the plane via p -> sum p_k b_k."""
        cols = self.lattice.columns
        out = []
        for sq, base in sorted(self.lift().items()):
            _, i, j = sq

            def proj(p):
                return (sum(x * b[0] for x, b in zip(p, cols)), sum(x * b[1] for x, b in zip(p, cols)))

            pi = _plus(base, i)
            pij = _plus(pi, j)
            pj = _plus(base, j)
            out.append((sq, [proj(base), proj(pi), proj(pij), proj(pj)]))
        return out

    # -- zigzag paths

    def zigzag_loops(self, index: int) -> list[list[Square]]:
        """Loops of segments through squares whose type contains ``index``.

        In a square of type (index, j) the segment joins the midpoints of the two
        sides parallel to e_index, oriented along sign(det(b_index, b_j)) e_j.
        """
        lat = self.lattice
        by_edge = self.edge_squares()
        cs = self.cosets
        todo = sorted(sq for sq in self.squares if index in sq[1:])
        seen: set = set()
        loops = []
        for first in todo:
            if first in seen:
                continue
            loop = []
            sq = first
            while sq not in seen:
                seen.add(sq)
                loop.append(sq)
                c, i, j = sq
                other = j if i == index else i
                sign = 1 if lat.det(index, other) > 0 else -1
                # the two sides parallel to e_index: at c and at c + e_other
                low = (c, index)
                high = (cs.step(c, other), index)
                exit_side = high if sign > 0 else low
                nxt = [s for s in by_edge[exit_side] if s != sq]
                if len(nxt) != 1:
                    raise AssertionError("zigzag side is not shared by exactly two squares")
                sq = nxt[0]
            if sq != first:
                raise AssertionError("zigzag path did not close up")
            loops.append(loop)
        return loops


def _plus(p: Sequence[int], i: int, s: int = 1) -> tuple[int, ...]:
    out = list(p)
    out[i] += s
    return tuple(out)


# ---------------------------------------------------------------- construction


def random_offset(n: int, seed: int, prime: int = DEFAULT_PRIME) -> tuple[Fraction, ...]:
    rng = random.Random(seed)
    return tuple(Fraction(rng.randrange(1, prime), prime) for _ in range(n))


def _intersections(lattice: LatticeEmbedding, lam: Sequence[Fraction], i: int, j: int):
    """Points (x, y) in [0,1)^2 where lines of families i and j cross."""
    bi, bj = lattice.column(i), lattice.column(j)
    d = bi[0] * bj[1] - bi[1] * bj[0]
    if d == 0:
        return []

    def span(b, l):
        vals = [l + x * b[0] + y * b[1] for x in (0, 1) for y in (0, 1)]
        return range(floor(min(vals)), floor(max(vals)) + 1)

    pts = []
    for k in span(bi, lam[i]):
        alpha = k - lam[i]
        for m in span(bj, lam[j]):
            beta = m - lam[j]
            x = Fraction(alpha * bj[1] - beta * bi[1], d)
            y = Fraction(beta * bi[0] - alpha * bj[0], d)
            if 0 <= x < 1 and 0 <= y < 1:
                pts.append((x, y))
    if len(pts) != abs(d):
        raise AssertionError(f"found {len(pts)} crossings of families {i + 1},{j + 1}, expected {abs(d)}")
    return pts


def is_nonresonant(lattice: LatticeEmbedding, lam: Sequence) -> bool:
    """No three grid lines through one point, checked exactly on the unit square."""
    lam = [Fraction(x) for x in lam]
    n = lattice.n
    if len(lam) != n:
        raise ValidationError(f"offset must have {n} entries")
    cols = lattice.columns
    for i in range(n):
        for j in range(i + 1, n):
            try:
                pts = _intersections(lattice, lam, i, j)
            except AssertionError:
                # a crossing on the boundary of the unit square is itself a coincidence
                return False
            for x, y in pts:
                for k in range(n):
                    if k not in (i, j) and (lam[k] + x * cols[k][0] + y * cols[k][1]).denominator == 1:
                        return False
    return True


def initial_surface(
    lattice: LatticeEmbedding, lam: Sequence | None = None, seed: int = 0
) -> DiscreteSurface:
    """The surface F(lambda + L_R) for a non-resonant offset lambda.

    With ``lam`` omitted, lambda_k = k_k / P for a large prime P with k_k drawn
    from ``seed``.  A resonant explicit ``lam`` raises :class:`ResonanceError`.
    """
    n = lattice.n
    if lam is None:
        attempt = 0
        while True:
            try:
                return initial_surface(lattice, random_offset(n, seed * 7919 + attempt), seed)
            except ResonanceError:
                attempt += 1
    lam = [Fraction(x) for x in lam]
    if len(lam) != n:
        raise ValidationError(f"offset must have {n} entries")
    cs = lattice.cosets()
    cols = lattice.columns
    squares = set()
    for i in range(n):
        for j in range(i + 1, n):
            for x, y in _intersections(lattice, lam, i, j):
                z = [lam[k] + x * cols[k][0] + y * cols[k][1] for k in range(n)]
                for k in range(n):
                    if k not in (i, j) and z[k].denominator == 1:
                        raise ResonanceError(f"lines {i + 1}, {j + 1}, {k + 1} meet at ({x}, {y})")
                p = [floor(t) for t in z]
                p[i] -= 1
                p[j] -= 1
                squares.add((cs.of(p), i, j))
    surf = DiscreteSurface(lattice, frozenset(squares), cs)
    surf.check_counts()
    return surf


# ---------------------------------------------------------------- enumeration


@dataclass
class Enumeration:
    surfaces: list[DiscreteSurface]
    forms: list[tuple]
    complete: bool

    def perfect(self) -> list[DiscreteSurface]:
        return [s for s in self.surfaces if s.is_perfect()]

    def __len__(self) -> int:
        return len(self.surfaces)


def enumerate_surfaces(
    start: DiscreteSurface, cap: int = DEFAULT_CAP, first_step_only: bool = False
) -> Enumeration:
    """Breadth-first closure of ``start`` under flips, up to translation.

    Surfaces come out in discovery order, which is deterministic.  With
    ``first_step_only`` only the start and its immediate neighbours are listed.
    """
    seen: dict[tuple, int] = {}
    surfaces: list[DiscreteSurface] = []
    forms: list[tuple] = []

    def add(s: DiscreteSurface) -> bool:
        f = s.canonical_form()
        if f in seen:
            return False
        if len(surfaces) >= cap:
            raise CapExceeded(cap, len(surfaces) + 1)
        seen[f] = len(surfaces)
        surfaces.append(s)
        forms.append(f)
        return True

    add(start)
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for v in s.flip_sites():
            t = s.flip(v)
            if add(t) and not first_step_only:
                queue.append(t)
        if first_step_only:
            return Enumeration(surfaces, forms, complete=False)
    return Enumeration(surfaces, forms, complete=True)


def find_perfect(
    lattice: LatticeEmbedding, seed: int = 0, cap: int = DEFAULT_CAP
) -> list[DiscreteSurface]:
    """All perfect surfaces in the flip closure of the seeded starting surface."""
    return enumerate_surfaces(initial_surface(lattice, seed=seed), cap).perfect()


def iter_levels(surface: DiscreteSurface) -> Iterator[tuple[Cls, int]]:
    yield from sorted(surface.levels().items())
