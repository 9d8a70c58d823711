"""The point configuration A dual to a lattice L, and its generic polynomial."""
from __future__ import annotations

from dataclasses import dataclass

from .lattice import LatticeEmbedding, ValidationError, complete_to_unimodular, smith_normal_form, unimodular_inverse
from .polyring import LaurentPoly
from .secondary import secondary_fan


@dataclass(frozen=True)
class ASequence:
    """Images a_i of the unit vectors in Z^N / L.

    ``free`` holds the free part as vectors in Z^(N-2) whose first coordinate
    is always 1.  ``torsion`` holds, for each a_i, its class in each cyclic
    summand of order ``torsion_orders[k]``.
    """

    free: tuple[tuple[int, ...], ...]
    torsion: tuple[tuple[int, ...], ...]
    torsion_orders: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.free)

    @property
    def dimension(self) -> int:
        return len(self.free[0]) if self.free else 0

    def exponents(self) -> list[tuple[int, ...]]:
        """Exponents of x in f_A: the free vectors without the leading 1."""
        return [v[1:] for v in self.free]


def _normalize_columns(vectors: list[list[int]]) -> list[list[int]]:
    """Shift each non-leading coordinate to start at 0, flipping its sign when that
    makes the column lexicographically smaller.  Both are unimodular changes."""
    n = len(vectors)
    dim = len(vectors[0])
    out = [list(v) for v in vectors]
    for k in range(1, dim):
        col = [v[k] for v in vectors]
        up = [c - min(col) for c in col]
        down = [max(col) - c for c in col]
        best = min(up, down)
        for i in range(n):
            out[i][k] = best[i]
    return out


def a_sequence(lattice: LatticeEmbedding) -> ASequence:
    n = lattice.n
    v = lattice.column_transform
    d1, d2 = lattice.invariant_factors
    moduli = (d1, d2)
    torsion_slots = [k for k in range(2) if moduli[k] > 1]
    free = [list(v[i][2:]) for i in range(n)]
    torsion = [tuple(v[i][k] % moduli[k] for k in torsion_slots) for i in range(n)]

    # coordinate-sum functional on the free part; it is primitive because s(e_1) = 1
    vinv = unimodular_inverse(v)
    weights = [sum(row) for row in vinv][2:]
    basis = complete_to_unimodular(weights)
    # new coordinates: basis @ old, first row gives the coordinate sum
    changed = [[sum(basis[r][c] * vec[c] for c in range(n - 2)) for r in range(n - 2)] for vec in free]
    if any(vec[0] != 1 for vec in changed):
        raise AssertionError("failed to normalize the a_i to height one")
    changed = _normalize_columns(changed)
    return ASequence(
        tuple(tuple(x) for x in changed),
        tuple(torsion),
        tuple(moduli[k] for k in torsion_slots),
    )


def minimal_relations(lattice: LatticeEmbedding) -> list[tuple[int, ...]]:
    """Rows of the Plücker form, each a relation sum_j det(b_i, b_j) a_j = 0."""
    n = lattice.n
    return [tuple(lattice.det(i, j) for j in range(n)) for i in range(n)]


def check_relation(seq: ASequence, coeffs) -> bool:
    """Does sum_j coeffs[j] a_j vanish in Z^(N-2) plus torsion?"""
    dim = seq.dimension
    for k in range(dim):
        if sum(c * a[k] for c, a in zip(coeffs, seq.free)):
            return False
    for k, order in enumerate(seq.torsion_orders):
        if sum(c * t[k] for c, t in zip(coeffs, seq.torsion)) % order:
            return False
    return True


def generic_polynomial(lattice: LatticeEmbedding, free_part_only: bool = False) -> LaurentPoly:
    """f_A = sum_i u_i x^{a_i} in variables u_1..u_N, x_1..x_{N-2}.

    Torsion classes cannot be seen in one Laurent polynomial, so a quotient
    with torsion is rejected unless ``free_part_only`` asks for the free part
    alone.  ``a_sequence`` exposes the torsion labels.
    """
    seq = a_sequence(lattice)
    if seq.torsion_orders and not free_part_only:
        raise ValidationError(f"Z^N / L has torsion {list(seq.torsion_orders)}")
    n = lattice.n
    nv = n + seq.dimension
    total = LaurentPoly.zero(nv)
    for i, a in enumerate(seq.free):
        exp = [0] * nv
        exp[i] = 1
        exp[n:] = a
        total = total + LaurentPoly.monomial(nv, exp)
    return total


def relation_lattice_of(points) -> list[list[int]]:
    """Integer basis of {v : sum v_i p_i = 0} for integer points p_i (as a kernel)."""
    a = [list(col) for col in zip(*points)]  # dim x n
    u, d, v = smith_normal_form(a)
    r = sum(1 for k in range(min(len(d), len(d[0]))) if d[k][k])
    n = len(points)
    return [[v[i][k] for i in range(n)] for k in range(r, n)]


def lattice_from_exponents(exponents) -> LatticeEmbedding:
    """The lattice of relations among the points (1, m_i) of a univariate support."""
    ex = [int(m) for m in exponents]
    if len(ex) != 4 or len(set(ex)) != 4:
        raise ValidationError("need four distinct exponents for a rank-two relation lattice")
    return LatticeEmbedding(relation_lattice_of([(1, m) for m in ex]))


def is_unimodular(lattice: LatticeEmbedding) -> bool:
    return any(all(w == 1 for _, _, w in cone.pairs) for cone in secondary_fan(lattice))


__all__ = [
    "ASequence",
    "a_sequence",
    "minimal_relations",
    "check_relation",
    "generic_polynomial",
    "relation_lattice_of",
    "lattice_from_exponents",
    "is_unimodular",
]
