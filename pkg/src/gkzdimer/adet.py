"""Discriminants of univariate supports and the determinant comparison.

The comparison checks whether the critical Kasteleyn determinant, with every
variable inverted and cleared by the smallest monomial that makes it
polynomial, is the principal A-determinant up to sign.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .dessin import DessinData
from .gkz import a_sequence
from .kasteleyn import kasteleyn_det
from .lattice import LatticeEmbedding, ValidationError
from .polyring import LaurentPoly, parse_poly, poly_det
from .secondary import secondary_polygon, volume


def _sylvester(f: list[LaurentPoly], g: list[LaurentPoly], nvars: int) -> list[list[LaurentPoly]]:
    """Sylvester matrix of two coefficient lists given from the top degree down."""
    m = len(f) - 1
    n = len(g) - 1
    size = m + n
    zero = LaurentPoly.zero(nvars)
    rows = []
    for k in range(n):
        rows.append([zero] * k + f + [zero] * (size - k - len(f)))
    for k in range(m):
        rows.append([zero] * k + g + [zero] * (size - k - len(g)))
    return rows


def _extreme_sign(p: LaurentPoly, lo: int, hi: int) -> int:
    for exp, c in p.items():
        if all(x == 0 for k, x in enumerate(exp) if k not in (lo, hi)):
            return 1 if c > 0 else -1
    raise AssertionError("discriminant has no term in the extreme coefficients alone")


def sylvester_discriminant(exponents: Sequence[int]) -> LaurentPoly:
    """Discriminant of f = sum_i u_i x^{m_i}, as a polynomial in u_1..u_N.

    Res(f, f') is divided by the leading coefficient, then by the largest
    monomial and integer dividing every term.  The sign makes the term built
    from the two extreme coefficients positive, e.g. +27 u_1^2 u_2^2 for a cubic
    whose constant and cubic coefficients are u_1 and u_2.
    """
    ex = [int(m) for m in exponents]
    if len(set(ex)) != len(ex):
        raise ValidationError("exponents must be distinct")
    if len(ex) < 2:
        raise ValidationError("need at least two exponents")
    nv = len(ex)
    low = min(ex)
    shifted = [m - low for m in ex]
    deg = max(shifted)
    coeff = [LaurentPoly.zero(nv) for _ in range(deg + 1)]
    for i, m in enumerate(shifted):
        coeff[m] = LaurentPoly.var(nv, i + 1)
    deriv = [coeff[k] * k for k in range(1, deg + 1)]
    f_top = coeff[::-1]
    g_top = deriv[::-1]
    if deg == 1:
        # f' is a constant; Res(f, f') = u_top
        res = coeff[1]
    else:
        res = poly_det(_sylvester(f_top, g_top, nv))
    top = shifted.index(deg)
    exp = [0] * nv
    exp[top] = 1
    disc = res.divide_monomial(exp)
    disc = disc.divide_monomial(disc.monomial_gcd(), disc.content())
    sign = _extreme_sign(disc, shifted.index(0), top)
    return disc if sign > 0 else -disc


def endpoint_multiplicities(exponents: Sequence[int]) -> tuple[int, int]:
    """Multiplicities of the two vertex faces of a univariate support.

    For a vertex the multiplicity is the normalized volume that the support
    loses when the vertex is removed, i.e. the gap to the neighbouring exponent.
    """
    ex = sorted(exponents)
    return ex[1] - ex[0], ex[-1] - ex[-2]


def principal_a_det_univariate(exponents: Sequence[int], multiplicity: str = "gkz") -> LaurentPoly:
    """E_A for a univariate support: endpoint coefficients times the discriminant.

    The segment itself has multiplicity one.  With ``multiplicity="unit"`` the
    endpoints also get multiplicity one; the default uses the gap to the
    neighbouring exponent, which is one whenever the support has no gap at the
    ends (as for the generic polynomial).
    """
    ex = list(exponents)
    nv = len(ex)
    lo = ex.index(min(ex))
    hi = ex.index(max(ex))
    if multiplicity == "gkz":
        m_lo, m_hi = endpoint_multiplicities(ex)
    elif multiplicity == "unit":
        m_lo = m_hi = 1
    else:
        raise ValueError(f"unknown multiplicity rule {multiplicity!r}")
    ends = LaurentPoly.var(nv, lo + 1) ** m_lo * LaurentPoly.var(nv, hi + 1) ** m_hi
    return ends * sylvester_discriminant(ex)


def principal_a_det(lattice: LatticeEmbedding, multiplicity: str = "gkz") -> LaurentPoly:
    """E_A when the free part of A is one-dimensional, i.e. four vectors b_i and no torsion.

    Raises ValueError if the Newton polygon of the result is not the secondary
    polygon of A, which would signal a wrong multiplicity.
    """
    seq = a_sequence(lattice)
    if seq.dimension != 2 or seq.torsion_orders:
        raise ValidationError(
            "principal A-determinant is only computed for torsion-free univariate supports; "
            "supply a fixture instead"
        )
    e_a = principal_a_det_univariate([a[1] for a in seq.free], multiplicity)
    if not newton_matches_secondary(e_a, lattice):
        raise ValueError("Newton polygon of E_A differs from the secondary polygon of A")
    return e_a


def secondary_of_a(lattice: LatticeEmbedding) -> set[tuple[int, ...]]:
    """Vertices of the secondary polygon of A: phi_C = vol * (1,...,1) - psi_C."""
    vol = volume(lattice)
    return {tuple(vol - x for x in v) for v in secondary_polygon(lattice).vertices}


def newton_matches_secondary(poly: LaurentPoly, lattice: LatticeEmbedding) -> bool:
    """Is the Newton polygon of a polynomial in u_1..u_N exactly the secondary polygon of A?"""
    from .kasteleyn import newton_polygon

    target = secondary_of_a(lattice)
    base = next(iter(target))
    if any(not lattice.contains([a - b for a, b in zip(p, base)]) for p in poly.support()):
        return False
    return set(newton_polygon(poly, lattice).vertices) == target


def inverted_determinant(det: LaurentPoly, vol: int, n: int) -> LaurentPoly:
    """(prod u)^vol * det(u^{-1}) on the first n variables."""
    return det.truncate_vars(n).map_exponents(lambda e: tuple(vol - x for x in e))


@dataclass(frozen=True)
class ConjectureResult:
    lhs: LaurentPoly
    rhs: LaurentPoly
    sign: int  # +1 or -1 when lhs == sign * rhs, else 0

    @property
    def holds(self) -> bool:
        return self.sign != 0

    def discrepancies(self) -> list[tuple[tuple[int, ...], int, int]]:
        """(exponent, lhs coefficient, rhs coefficient) where lhs differs from s*rhs.

        s is the sign that matches the most terms.
        """
        keys = set(self.lhs.support()) | set(self.rhs.support())
        best = []
        for s in (1, -1):
            bad = [(k, self.lhs.coefficient(k), self.rhs.coefficient(k)) for k in sorted(keys)
                   if self.lhs.coefficient(k) != s * self.rhs.coefficient(k)]
            if not best or len(bad) < len(best[0]):
                best = [bad]
        return best[0]

    def matched(self) -> list[tuple[int, ...]]:
        s = self.sign or 1
        return [k for k in self.lhs.support() if self.lhs.coefficient(k) == s * self.rhs.coefficient(k)]


def compare_up_to_sign(lhs: LaurentPoly, rhs: LaurentPoly) -> int:
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    return 0


def conjecture_check(
    dessin: DessinData, lattice: LatticeEmbedding, e_a: LaurentPoly | None = None
) -> ConjectureResult:
    n = lattice.n
    det = kasteleyn_det(dessin, "critical")
    lhs = inverted_determinant(det, volume(lattice), n)
    rhs = principal_a_det(lattice) if e_a is None else e_a
    if rhs.nvars != n:
        raise ValidationError(f"E_A has {rhs.nvars} variables, expected {n}")
    return ConjectureResult(lhs, rhs, compare_up_to_sign(lhs, rhs))


def load_ea_fixture(path: str | Path) -> LaurentPoly:
    """Read E_A from JSON: {"polynomial": text} or {"factors": [[text, power], ...]}."""
    data = json.loads(Path(path).read_text())
    if "polynomial" in data:
        return parse_poly(data["polynomial"], data.get("nvars"))
    if "factors" in data:
        nv = data["nvars"]
        total = LaurentPoly.one(nv)
        for text, power in data["factors"]:
            total = total * parse_poly(text, nv) ** int(power)
        return total
    raise ValidationError("fixture needs a 'polynomial' or 'factors' entry")


def four_nomial_exponents(p: int, q: int) -> tuple[int, int, int, int]:
    """Exponents of u1 x^q + u2 x^p + u3 + u4 x^(p+q)."""
    if not 0 < q < p:
        raise ValidationError("need 0 < q < p")
    return (q, p, 0, p + q)
