"""Rank-two sublattices of Z^N with zero column sums, and their Plücker forms.

A lattice is given by a 2 x N integer matrix ``B`` whose rows span it.  The
columns ``b_1 .. b_N`` are vectors in the dual plane; they sum to zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


class ValidationError(ValueError):
    """Input violates a documented precondition."""


# ---------------------------------------------------------------- integer linear algebra


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ a @ V == D`` diagonal and U, V unimodular.

    The diagonal entries are non-negative and each divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not nonzero:
                return u, d, v
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            done = True
            for i in range(t + 1, m):
                q = d[i][t] // p
                if q:
                    add_row(t, i, -q)
                if d[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = d[t][j] // p
                if q:
                    add_col(t, j, -q)
                if d[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def unimodular_inverse(a: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = []
    for row in aug:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in tail])
    return out


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Solve ``x @ a == b`` for a row vector x; a has full row rank. None if no solution."""
    rows = len(a)
    cols = len(a[0])
    # work with the transpose: a^T x^T = b^T
    m = [[Fraction(a[r][c]) for r in range(rows)] + [Fraction(b[c])] for c in range(cols)]
    pivots = []
    r = 0
    for c in range(rows):
        p = next((i for i in range(r, cols) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(cols):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, cols):
        if m[i][rows] != 0:
            return None
    x = [Fraction(0)] * rows
    for i, c in enumerate(pivots):
        x[c] = m[i][rows]
    return x


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def complete_to_unimodular(row: Sequence[int]) -> Matrix:
    """A unimodular matrix whose first row is the given primitive vector."""
    u, d, v = smith_normal_form([list(row)])
    if d[0][0] != 1:
        raise ValueError(f"{list(row)} is not primitive")
    # u * row @ v == e_1 with u = +-1, so u * row is the first row of v^{-1}
    out = unimodular_inverse(v)
    if u[0][0] == -1:
        out[0] = [-x for x in out[0]]
    return out


# ---------------------------------------------------------------- the lattice


@dataclass(frozen=True)
class LatticeEmbedding:
    """A rank-two lattice in Z^N with (1,...,1) orthogonal to it.

    ``B`` holds two integer rows spanning the lattice.  The columns of ``B`` are
    the vectors ``b_i`` in the dual plane.
    """

    B: tuple[tuple[int, ...], tuple[int, ...]]
    _snf: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, B: Sequence[Sequence[int]]):
        rows = [tuple(int(x) for x in r) for r in B]
        if len(rows) != 2:
            raise ValidationError(f"B must have exactly 2 rows, got {len(rows)}")
        n = len(rows[0])
        if len(rows[1]) != n:
            raise ValidationError("rows of B have different lengths")
        if n < 3:
            raise ValidationError("need at least three columns")
        if any(sum(r) != 0 for r in rows):
            raise ValidationError("row sums of B must be zero")
        if all(det2(rows_col(rows, i), rows_col(rows, j)) == 0 for i in range(n) for j in range(n)):
            raise ValidationError("B must have rank 2")
        for i in range(n):
            if rows[0][i] == 0 and rows[1][i] == 0:
                raise ValidationError(f"column {i + 1} of B is zero")
        object.__setattr__(self, "B", (rows[0], rows[1]))
        object.__setattr__(self, "_snf", smith_normal_form([list(rows[0]), list(rows[1])]))

    @property
    def n(self) -> int:
        return len(self.B[0])

    def column(self, i: int) -> tuple[int, int]:
        """The vector b_i, with 0-based index."""
        return (self.B[0][i], self.B[1][i])

    @property
    def columns(self) -> list[tuple[int, int]]:
        return [self.column(i) for i in range(self.n)]

    def det(self, i: int, j: int) -> int:
        return det2(self.column(i), self.column(j))

    @property
    def invariant_factors(self) -> tuple[int, int]:
        d = self._snf[1]
        return d[0][0], d[1][1]

    @property
    def torsion(self) -> list[int]:
        """Orders of the cyclic torsion summands of Z^N / L."""
        return [x for x in self.invariant_factors if x > 1]

    @property
    def column_transform(self) -> Matrix:
        """Unimodular V with B @ V in Smith form; row i of V is e_i in new coordinates."""
        return self._snf[2]

    def contains(self, vec: Sequence[int]) -> bool:
        x = solve_rational([list(self.B[0]), list(self.B[1])], list(vec))
        return x is not None and all(t.denominator == 1 for t in x)

    def coordinates(self, vec: Sequence[int]) -> tuple[int, int]:
        """Integer (x, y) with vec == x*B[0] + y*B[1]; ValueError if vec is not in L."""
        x = solve_rational([list(self.B[0]), list(self.B[1])], list(vec))
        if x is None or any(t.denominator != 1 for t in x):
            raise ValueError(f"{list(vec)} is not in the lattice")
        return int(x[0]), int(x[1])

    def embed(self, xy: Sequence[int]) -> tuple[int, ...]:
        return tuple(xy[0] * a + xy[1] * b for a, b in zip(*self.B))

    def cosets(self) -> CosetSpace:
        return CosetSpace(self)

    def same_span(self, other: LatticeEmbedding) -> bool:
        return self.n == other.n and all(other.contains(r) for r in self.B) and all(
            self.contains(r) for r in other.B
        )


def rows_col(rows, i):
    return (rows[0][i], rows[1][i])


class CosetSpace:
    """Exact canonical representatives for Z^N / L.

    Vectors are moved into Smith coordinates ``q = p @ V``.  The first two
    coordinates are reduced modulo the invariant factors; the rest are free.
    Classes are plain integer tuples, so translation is tuple arithmetic
    followed by :meth:`reduce`.
    """

    def __init__(self, lattice: LatticeEmbedding):
        self.lattice = lattice
        self.n = lattice.n
        self.v = lattice.column_transform
        self.moduli = lattice.invariant_factors
        self.unit = [self.reduce(tuple(self.v[i])) for i in range(self.n)]
        vinv = unimodular_inverse(self.v)
        # the coordinate-sum functional, in Smith coordinates
        self._sum_weights = tuple(sum(row) for row in vinv)
        if any(self._sum_weights[k] * self.moduli[k] for k in range(2)):
            raise AssertionError("coordinate sum does not vanish on the lattice")
        self._vinv = vinv

    def reduce(self, q: Sequence[int]) -> tuple[int, ...]:
        out = list(q)
        for k in range(2):
            m = self.moduli[k]
            out[k] = out[k] % m if m else out[k]
        return tuple(out)

    def of(self, p: Sequence[int]) -> tuple[int, ...]:
        """Class of the honest vector p in Z^N."""
        q = [sum(p[i] * self.v[i][k] for i in range(self.n)) for k in range(self.n)]
        return self.reduce(q)

    def add(self, c: Sequence[int], d: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(c, d)])

    def sub(self, c: Sequence[int], d: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([x - y for x, y in zip(c, d)])

    def step(self, c: Sequence[int], i: int, sign: int = 1) -> tuple[int, ...]:
        """Class of p + sign*e_i (0-based i)."""
        u = self.unit[i]
        return self.reduce([x + sign * y for x, y in zip(c, u)])

    def level(self, c: Sequence[int]) -> int:
        """The coordinate sum of any representative."""
        return sum(w * x for w, x in zip(self._sum_weights, c))

    def representative(self, c: Sequence[int]) -> tuple[int, ...]:
        """Some honest vector in Z^N lying in the class c."""
        return tuple(sum(c[k] * self._vinv[k][i] for k in range(self.n)) for i in range(self.n))


# ---------------------------------------------------------------- Plücker form and quiver


def validate_lattice(b: Sequence[Sequence[int]]) -> LatticeEmbedding:
    return LatticeEmbedding(b)


def coset_canonical(p: Sequence[int], lattice: LatticeEmbedding) -> tuple[int, ...]:
    """Class of p in Z^N / L; equal outputs exactly when the difference lies in L."""
    if len(p) != lattice.n:
        raise ValidationError(f"vector must have {lattice.n} entries")
    return lattice.cosets().of(p)


def plucker_form(lattice: LatticeEmbedding) -> Matrix:
    """C_ij = det(b_i, b_j), which equals B^t J B."""
    n = lattice.n
    return [[lattice.det(i, j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class Quiver:
    """Nodes 1..n; arrows[(i, j)] is the number of arrows i -> j."""

    n: int
    arrows: dict

    def arrow_list(self) -> list[tuple[int, int]]:
        out = []
        for (i, j), k in sorted(self.arrows.items()):
            out.extend([(i, j)] * k)
        return out

    def antisymmetric_form(self) -> Matrix:
        c = [[0] * self.n for _ in range(self.n)]
        for (i, j), k in self.arrows.items():
            c[i - 1][j - 1] += k
            c[j - 1][i - 1] -= k
        return c


def validate_antisymmetric(c: Sequence[Sequence[int]]) -> Matrix:
    n = len(c)
    if any(len(row) != n for row in c):
        raise ValidationError("C must be square")
    for i in range(n):
        for j in range(n):
            if c[i][j] != -c[j][i]:
                raise ValidationError(f"C is not antisymmetric at ({i + 1},{j + 1})")
    return [list(map(int, row)) for row in c]


def quiver_from_plucker(c: Sequence[Sequence[int]]) -> Quiver:
    c = validate_antisymmetric(c)
    n = len(c)
    arrows = {(i + 1, j + 1): c[i][j] for i in range(n) for j in range(n) if c[i][j] > 0}
    return Quiver(n, arrows)


def _rank(c: Sequence[Sequence[int]]) -> int:
    _, d, _ = smith_normal_form(c)
    return sum(1 for k in range(min(len(d), len(d[0]))) if d[k][k])


def factor_antisymmetric(
    c: Sequence[Sequence[int]], g: Sequence[Sequence[int]] | None = None
) -> LatticeEmbedding:
    """Recover B from a rank-two antisymmetric integer matrix with C = B^t J B.

    ``g`` is a 2x2 integer matrix of determinant gcd(C); it defaults to
    diag(1, gcd).  Different choices give different lattices with the same
    Plücker form; see :func:`candidate_factors`.
    """
    c = validate_antisymmetric(c)
    n = len(c)
    if n < 3:
        raise ValidationError("need at least three nodes")
    if _rank(c) != 2:
        raise ValidationError("C must have rank 2")
    d = 0
    for row in c:
        for x in row:
            d = gcd(d, x)
    if g is None:
        g = [[1, 0], [0, d]]
    g = [list(map(int, r)) for r in g]
    if g[0][0] * g[1][1] - g[0][1] * g[1][0] != d:
        raise ValidationError(f"G must have determinant {d}")
    cp = [[x // d for x in row] for row in c]

    # Z-basis of the column lattice of C': column-style Smith decomposition
    u, sd, v = smith_normal_form(cp)
    # cp = u^{-1} sd v^{-1}; the column lattice is spanned by the first two columns of u^{-1} * diag
    uinv = unimodular_inverse(u)
    basis = [[uinv[r][k] * sd[k][k] for k in range(2)] for r in range(n)]  # n x 2
    # for a rank-two antisymmetric primitive matrix the invariant factors are (1, 1)
    if sd[0][0] != 1 or sd[1][1] != 1:
        raise ValidationError("C/gcd(C) is not a primitive rank-two form")
    # F: coordinates of the columns of C' in this basis, i.e. C' = D F
    f = [[0] * n for _ in range(2)]
    for col in range(n):
        x = solve_rational(transpose(basis), [cp[r][col] for r in range(n)])
        if x is None or any(t.denominator != 1 for t in x):
            raise AssertionError("column lattice basis failed")
        f[0][col], f[1][col] = int(x[0]), int(x[1])
    # C' = F^t (s J) F for a sign s; detect it on any nonzero entry
    i, j = next((i, j) for i in range(n) for j in range(n) if cp[i][j])
    sign = cp[i][j] // det2((f[0][i], f[1][i]), (f[0][j], f[1][j]))
    if sign == -1:
        f = [f[1], f[0]]
    b = matmul(g, f)
    lat = LatticeEmbedding(b)
    if plucker_form(lat) != c:
        raise AssertionError("factorization does not reproduce C")
    return lat


def candidate_factors(c: Sequence[Sequence[int]]) -> list[tuple[Matrix, LatticeEmbedding]]:
    """All lattices B = G F with G in Hermite form of determinant gcd(C).

    Left multiplication by SL(2, Z) does not change the lattice, so upper
    triangular G = [[a, t], [0, e]] with a*e = gcd and 0 <= t < e covers every
    sublattice arising from the factorization.
    """
    c = validate_antisymmetric(c)
    d = 0
    for row in c:
        for x in row:
            d = gcd(d, x)
    out = []
    for a in range(1, d + 1):
        if d % a:
            continue
        e = d // a
        for t in range(e):
            g = [[a, t], [0, e]]
            out.append((g, factor_antisymmetric(c, g)))
    return out


def lattice_from_plucker(c: Sequence[Sequence[int]]) -> LatticeEmbedding:
    return factor_antisymmetric(c)
