"""Bipartite graphs on surfaces obtained by untwisting a perfect square surface.

A dessin is stored as a list with one entry per edge ``e``: its black vertex
``b(e)``, white vertex ``w(e)`` and an ordered pair of node labels
``(r(e), r'(e))``.  The pair is ordered so that det(b_r, b_r') > 0, which makes
``r -> r'`` an arrow of the quiver.  Labels are 1-based throughout this module's
public interface.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from typing import Sequence

from .lattice import LatticeEmbedding, Quiver
from .surface import DiscreteSurface


class DessinError(ValueError):
    """The edge list does not describe a consistent oriented surface."""


@dataclass(frozen=True)
class DessinData:
    """Edge list of a dessin; index k of each tuple describes edge k + 1."""

    n_nodes: int
    black: tuple[int, ...]
    white: tuple[int, ...]
    red: tuple[int, ...]
    red2: tuple[int, ...]

    def __post_init__(self):
        m = len(self.black)
        if not (len(self.white) == len(self.red) == len(self.red2) == m):
            raise DessinError("edge list columns have different lengths")
        for r, s in zip(self.red, self.red2):
            if r == s:
                raise DessinError("an edge joins a node to itself")
            if not (1 <= r <= self.n_nodes and 1 <= s <= self.n_nodes):
                raise DessinError("node label out of range")

    @property
    def n_edges(self) -> int:
        return len(self.black)

    @property
    def n_black(self) -> int:
        return len(set(self.black))

    @property
    def n_white(self) -> int:
        return len(set(self.white))

    def rows(self) -> list[tuple[int, int, int, int, int]]:
        return [(e + 1, self.black[e], self.white[e], self.red[e], self.red2[e]) for e in range(self.n_edges)]

    def mirror(self) -> DessinData:
        return DessinData(self.n_nodes, self.black, self.white, self.red2, self.red)

    def relabel_nodes(self, perm: Sequence[int]) -> DessinData:
        """perm[k - 1] is the new label of node k."""
        return DessinData(
            self.n_nodes,
            self.black,
            self.white,
            tuple(perm[r - 1] for r in self.red),
            tuple(perm[r - 1] for r in self.red2),
        )

    def table(self) -> str:
        width = max(2, len(str(self.n_edges)))
        head = ["e ", "b ", "w ", "r ", "r'"]
        cols = [
            list(range(1, self.n_edges + 1)),
            list(self.black),
            list(self.white),
            list(self.red),
            list(self.red2),
        ]
        lines = []
        for h, col in zip(head, cols):
            lines.append(h + " " + " ".join(str(x).rjust(width) for x in col))
        return "\n".join(lines)


# ---------------------------------------------------------------- from a surface


def _canonical_translate(surface: DiscreteSurface) -> DiscreteSurface:
    cs = surface.cosets
    best = None
    for u in sorted(surface.vertices()):
        enc = tuple(sorted((cs.sub(c, u), i, j) for c, i, j in surface.squares))
        if best is None or enc < best[0]:
            best = (enc, u)
    return surface.translate(cs.reduce([-x for x in best[1]]))


def quadruple_list(surface: DiscreteSurface) -> DessinData:
    """Untwist a perfect surface into its edge list.

    Each square is one edge: its lowest corner is white, its highest corner
    black, and its two directions are the node pair.
    """
    if not surface.is_perfect():
        raise DessinError("surface is not perfect")
    surface = _canonical_translate(surface)
    lat = surface.lattice
    cs = surface.cosets
    squares = sorted(surface.squares)
    blacks = sorted({cs.step(cs.step(c, i), j) for c, i, j in squares})
    whites = sorted({c for c, _, _ in squares})
    bidx = {v: k + 1 for k, v in enumerate(blacks)}
    widx = {v: k + 1 for k, v in enumerate(whites)}
    b, w, r, r2 = [], [], [], []
    for c, i, j in squares:
        b.append(bidx[cs.step(cs.step(c, i), j)])
        w.append(widx[c])
        if lat.det(i, j) > 0:
            r.append(i + 1)
            r2.append(j + 1)
        else:
            r.append(j + 1)
            r2.append(i + 1)
    return DessinData(lat.n, tuple(b), tuple(w), tuple(r), tuple(r2))


def dessin_from_edges(lattice: LatticeEmbedding, rows) -> DessinData:
    """Build an edge list from unordered records (edge, black, white, i, j).

    Records are sorted by edge label, and each node pair is ordered so that
    det(b_i, b_j) > 0.  This reads printed bi-adjacency matrices.
    """
    b, w, r, r2 = [], [], [], []
    labels = []
    for e, bb, ww, i, j in sorted(rows):
        labels.append(e)
        if lattice.det(i - 1, j - 1) == 0:
            raise DessinError(f"edge {e} joins nodes {i} and {j} with det 0")
        if lattice.det(i - 1, j - 1) < 0:
            i, j = j, i
        b.append(bb)
        w.append(ww)
        r.append(i)
        r2.append(j)
    if labels != list(range(1, len(labels) + 1)):
        raise DessinError("edge labels must be 1..E")
    return DessinData(lattice.n, tuple(b), tuple(w), tuple(r), tuple(r2))


def dessin_from_matrix(lattice: LatticeEmbedding, matrix) -> DessinData:
    """matrix[b][w] lists (edge, i, j) for each term of that entry."""
    rows = []
    for bi, row in enumerate(matrix):
        for wi, entry in enumerate(row):
            for e, i, j in entry:
                rows.append((e, bi + 1, wi + 1, i, j))
    return dessin_from_edges(lattice, rows)


# ---------------------------------------------------------------- constellations


@dataclass(frozen=True)
class Constellation:
    """Two permutations of the edges 1..E, stored 0-based: sigma0[e] is the image of e."""

    sigma0: tuple[int, ...]
    sigma1: tuple[int, ...]

    @property
    def n_edges(self) -> int:
        return len(self.sigma0)

    def cycles0(self) -> list[tuple[int, ...]]:
        return cycles(self.sigma0)

    def cycles1(self) -> list[tuple[int, ...]]:
        return cycles(self.sigma1)

    def face_permutation(self) -> tuple[int, ...]:
        """sigma0 after sigma1^{-1}: e -> sigma0(sigma1^{-1}(e))."""
        inv1 = invert(self.sigma1)
        return tuple(self.sigma0[inv1[e]] for e in range(self.n_edges))

    def text(self) -> str:
        return "sigma0 = " + format_cycles(self.cycles0()) + "\nsigma1 = " + format_cycles(self.cycles1())

    def is_transitive(self) -> bool:
        n = self.n_edges
        seen = {0}
        queue = deque([0])
        while queue:
            e = queue.popleft()
            for f in (self.sigma0[e], self.sigma1[e]):
                if f not in seen:
                    seen.add(f)
                    queue.append(f)
        return len(seen) == n


def invert(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for k, v in enumerate(p):
        out[v] = k
    return tuple(out)


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of a 0-based permutation, each started at its least element."""
    seen = set()
    out = []
    for s in range(len(p)):
        if s in seen:
            continue
        cyc = []
        e = s
        while e not in seen:
            seen.add(e)
            cyc.append(e)
            e = p[e]
        out.append(tuple(cyc))
    return out


def from_cycles(cyc: Sequence[Sequence[int]], n: int, one_based: bool = True) -> tuple[int, ...]:
    out = list(range(n))
    shift = 1 if one_based else 0
    seen = set()
    for c in cyc:
        for k, e in enumerate(c):
            if e in seen:
                raise DessinError(f"element {e} appears twice")
            seen.add(e)
            out[e - shift] = c[(k + 1) % len(c)] - shift
    return tuple(out)


def format_cycles(cyc: Sequence[Sequence[int]]) -> str:
    return "".join("(" + ",".join(str(e + 1) for e in c) + ")" for c in cyc)


def _cyclic_components(members: list[int], adjacent) -> list[list[int]]:
    """Split a set into cycles under a symmetric neighbour relation.

    Each component must be a cycle: every element has exactly two neighbours,
    or the component has at most two elements.
    """
    nbrs = {e: [f for f in members if f != e and adjacent(e, f)] for e in members}
    seen: set[int] = set()
    comps = []
    for start in sorted(members):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            e = queue.popleft()
            for f in nbrs[e]:
                if f not in seen:
                    seen.add(f)
                    comp.append(f)
                    queue.append(f)
        if len(comp) <= 2:
            comps.append(sorted(comp))
            continue
        if any(len(nbrs[e]) != 2 for e in comp):
            raise DessinError(f"ambiguous neighbour structure among edges {sorted(x + 1 for x in comp)}")
        # walk the cycle from its least element towards its smaller neighbour
        first = min(comp)
        order = [first]
        prev, cur = first, min(nbrs[first])
        while cur != first:
            order.append(cur)
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
        if len(order) != len(comp):
            raise DessinError("neighbour structure is not a single cycle")
        comps.append(order)
    return comps


def _successor(order: list[int]) -> dict[int, int]:
    return {e: order[(k + 1) % len(order)] for k, e in enumerate(order)}


def _orient(dessin: DessinData, reverse_seed: bool) -> tuple[dict, dict, list]:
    """Orient every black, white and zigzag cycle from a seed on the first zigzag cycle.

    Returns the successor maps of the black and white cycles that propagation
    reached, and the black or white cycles it could not reach as (kind, label,
    order).  That happens when every zigzag set has at most two edges.
    """
    m = dessin.n_edges
    reds = [{dessin.red[e], dessin.red2[e]} for e in range(m)]
    ends = [{("b", dessin.black[e]), ("w", dessin.white[e])} for e in range(m)]

    groups: dict[tuple, list[int]] = {}
    for e in range(m):
        groups.setdefault(("b", dessin.black[e]), []).append(e)
        groups.setdefault(("w", dessin.white[e]), []).append(e)
        for r in reds[e]:
            groups.setdefault(("z", r), []).append(e)

    comps: list[tuple[tuple, list[int]]] = []
    for key in sorted(groups):
        members = groups[key]
        if key[0] == "z":
            parts = _cyclic_components(members, lambda e, f: bool(ends[e] & ends[f]))
        else:
            parts = _cyclic_components(members, lambda e, f: bool(reds[e] & reds[f]))
            if len(parts) != 1:
                raise DessinError(f"the edges at {key[0]}{key[1]} do not form one cycle")
        for p in parts:
            comps.append((key, p))

    # orientation = successor map, fixed for each component
    succ: dict[int, dict[int, int] | None] = {k: None for k in range(len(comps))}
    by_edge: dict[int, list[int]] = {}
    for k, (_, order) in enumerate(comps):
        for e in order:
            by_edge.setdefault(e, []).append(k)

    seed = next((k for k, (key, order) in enumerate(comps) if key[0] == "z" and len(order) >= 3), None)
    queue = deque()
    if seed is not None:
        order = comps[seed][1]
        succ[seed] = _successor(order[::-1] if reverse_seed else order)
        queue.append(seed)
    while queue:
        k = queue.popleft()
        sk = succ[k]
        kind = comps[k][0][0]
        for e in comps[k][1]:
            for other in by_edge[e]:
                okind = comps[other][0][0]
                if other == k or (kind == "z") == (okind == "z"):
                    continue
                shared = set(comps[k][1]) & set(comps[other][1])
                oorder = comps[other][1]
                if len(oorder) <= 2 or len(comps[k][1]) <= 2:
                    continue
                osucc = _successor(oorder)
                # a shared pair adjacent in both cycles carries the orientation over
                pair = next(((a, sk[a]) for a in sorted(shared) if sk[a] in shared), None)
                if pair is None:
                    continue
                a, nxt = pair
                if osucc[a] == nxt:
                    want = osucc
                elif osucc[nxt] == a:
                    want = _successor(oorder[::-1])
                else:
                    continue
                if succ[other] is None:
                    succ[other] = want
                    queue.append(other)
                elif succ[other] != want:
                    raise DessinError("orientations of the cycles are inconsistent")

    black_succ: dict[int, dict[int, int]] = {}
    white_succ: dict[int, dict[int, int]] = {}
    free = []
    for k, (key, order) in enumerate(comps):
        if key[0] == "z":
            continue
        s = succ[k]
        if s is None:
            if len(order) > 2:
                free.append((key[0], key[1], order))
                continue
            s = _successor(order)
        (black_succ if key[0] == "b" else white_succ)[key[1]] = s
    return black_succ, white_succ, free


MAX_FREE_CYCLES = 16


def _constellations_with_seed(dessin: DessinData, reverse_seed: bool):
    """Every constellation compatible with the propagated orientations."""
    black_succ, white_succ, free = _orient(dessin, reverse_seed)
    if len(free) > MAX_FREE_CYCLES:
        raise DessinError(f"{len(free)} cycles cannot be oriented by propagation")
    m = dessin.n_edges
    for choice in product((False, True), repeat=len(free)):
        for flip, (kind, label, order) in zip(choice, free):
            (black_succ if kind == "b" else white_succ)[label] = _successor(order[::-1] if flip else order)
        s0 = [0] * m
        s1 = [0] * m
        for e in range(m):
            s0[e] = black_succ[dessin.black[e]][e]
            # sigma1 is the product of the inverses of the white cycles
            s1[white_succ[dessin.white[e]][e]] = e
        yield Constellation(tuple(s0), tuple(s1))


def constellation_from_list(dessin: DessinData, mirror: bool = False) -> Constellation:
    """Recover (sigma0, sigma1) from the edge list alone.

    Of the two global orientations, the default is the one whose face
    permutation reproduces the (r, r') order of the list; ``mirror`` returns
    the other, i.e. both permutations inverted.
    """
    for reverse in (False, True):
        for con in _constellations_with_seed(dessin, reverse):
            if _matches_order(dessin, list_from_constellation(con)):
                if mirror:
                    return Constellation(invert(con.sigma0), invert(con.sigma1))
                return con
    raise DessinError("no orientation reproduces the node order of the list")


def _node_map(original: DessinData, rebuilt: DessinData) -> dict[int, int] | None:
    phi: dict[int, int] = {}
    for e in range(original.n_edges):
        for got, want in ((rebuilt.red[e], original.red[e]), (rebuilt.red2[e], original.red2[e])):
            if phi.setdefault(got, want) != want:
                return None
    return phi


def _matches_order(original: DessinData, rebuilt: DessinData) -> bool:
    return _node_map(original, rebuilt) is not None


def list_from_constellation(con: Constellation) -> DessinData:
    """Edge list read off a constellation.

    Blacks are cycles of sigma0, whites cycles of sigma1, and the node pair of e
    is the face-permutation cycle through e followed by the one through sigma1(e).
    Faces are numbered by their least edge.
    """
    if not con.is_transitive():
        raise DessinError("sigma0 and sigma1 do not act transitively")
    m = con.n_edges
    label0 = _cycle_labels(con.sigma0)
    label1 = _cycle_labels(con.sigma1)
    face = _cycle_labels(con.face_permutation())
    red = tuple(face[e] for e in range(m))
    red2 = tuple(face[con.sigma1[e]] for e in range(m))
    n_faces = max(face) if face else 0
    return DessinData(n_faces, tuple(label0), tuple(label1), red, red2)


def _cycle_labels(p: Sequence[int]) -> list[int]:
    out = [0] * len(p)
    for k, cyc in enumerate(cycles(p)):
        for e in cyc:
            out[e] = k + 1
    return out


def node_map(original: DessinData, rebuilt: DessinData) -> dict[int, int] | None:
    """Map from the nodes of ``rebuilt`` to those of ``original`` matching every edge, if any."""
    return _node_map(original, rebuilt)


# ---------------------------------------------------------------- derived data


def superpotential_terms(con: Constellation) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Positive terms from sigma0 cycles, negative ones from sigma1, each at its least rotation."""
    pos = sorted(tuple(e + 1 for e in c) for c in con.cycles0())
    neg = sorted(tuple(e + 1 for e in c) for c in con.cycles1())
    return pos, neg


def superpotential(con: Constellation) -> str:
    pos, neg = superpotential_terms(con)
    text = " + ".join("*".join(f"X{e}" for e in t) for t in pos)
    for t in neg:
        text += " - " + "*".join(f"X{e}" for e in t)
    return text


@dataclass(frozen=True)
class DessinQuiver:
    quiver: Quiver
    source: tuple[int, ...]
    target: tuple[int, ...]
    critical: tuple[int, ...]


def quiver_and_critical_weight(dessin: DessinData) -> DessinQuiver:
    """Arrows r(e) -> r'(e); the critical weight counts parallel arrows."""
    arrows: dict[tuple[int, int], int] = {}
    for s, t in zip(dessin.red, dessin.red2):
        arrows[(s, t)] = arrows.get((s, t), 0) + 1
    for (s, t) in arrows:
        if (t, s) in arrows:
            raise DessinError(f"arrows in both directions between {s} and {t}")
    crit = tuple(arrows[(s, t)] for s, t in zip(dessin.red, dessin.red2))
    return DessinQuiver(Quiver(dessin.n_nodes, arrows), dessin.red, dessin.red2, crit)


def euler_characteristic(dessin: DessinData, pinched: bool = False) -> int:
    """Square tiling count: red points + blacks + whites - edges.

    The red points are the face cycles of the constellation, so a node whose
    zigzag path has several components contributes several points.  With
    ``pinched`` those points are identified to one per node, which is how the
    quiver sits on the surface but is not a manifold when a b_i is not primitive.
    """
    if pinched:
        nodes = len(set(dessin.red) | set(dessin.red2))
    else:
        nodes = len(cycles(constellation_from_list(dessin).face_permutation()))
    return nodes + dessin.n_black + dessin.n_white - dessin.n_edges


def genus(dessin: DessinData, pinched: bool = False) -> int:
    chi = euler_characteristic(dessin, pinched)
    if chi % 2:
        raise DessinError("odd Euler characteristic: the pinched surface is not a manifold")
    return (2 - chi) // 2


def genus_from_lattice(lattice: LatticeEmbedding) -> int:
    """Genus predicted from the determinants: interior points of Delta."""
    from .secondary import area_and_interior

    return area_and_interior(lattice)[1]


# ---------------------------------------------------------------- isomorphism


def canonical_form(dessin: DessinData) -> tuple:
    """Invariant under relabelling edges, blacks and whites; node labels are kept."""
    con = constellation_from_list(dessin)
    m = dessin.n_edges
    best = None
    for start in range(m):
        label = {start: 0}
        order = [start]
        k = 0
        while k < len(order):
            e = order[k]
            for f in (con.sigma0[e], con.sigma1[e]):
                if f not in label:
                    label[f] = len(order)
                    order.append(f)
            k += 1
        if len(order) != m:
            raise DessinError("constellation is not transitive")
        enc = tuple(
            (label[con.sigma0[e]], label[con.sigma1[e]], dessin.red[e], dessin.red2[e]) for e in order
        )
        if best is None or enc < best:
            best = enc
    return best


def isomorphic(a: DessinData, b: DessinData, relabel_nodes: bool = False) -> bool:
    if a.n_edges != b.n_edges or a.n_nodes != b.n_nodes:
        return False
    target = canonical_form(a)
    if not relabel_nodes:
        return canonical_form(b) == target
    return find_node_relabelling(a, b) is not None


def find_node_relabelling(a: DessinData, b: DessinData) -> tuple[int, ...] | None:
    """A permutation of node labels making b isomorphic to a, or None."""
    target = canonical_form(a)
    arrows_a = quiver_and_critical_weight(a).quiver.arrows
    arrows_b = quiver_and_critical_weight(b).quiver.arrows
    for perm in permutations(range(1, a.n_nodes + 1)):
        moved = {(perm[s - 1], perm[t - 1]): k for (s, t), k in arrows_b.items()}
        if moved != arrows_a:
            continue
        try:
            if canonical_form(b.relabel_nodes(perm)) == target:
                return perm
        except DessinError:
            continue
    return None


def dessin_from_surface(surface: DiscreteSurface) -> tuple[DessinData, Constellation]:
    m = quadruple_list(surface)
    return m, constellation_from_list(m)
