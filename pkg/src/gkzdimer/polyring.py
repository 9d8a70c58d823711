"""Sparse Laurent polynomials with integer coefficients.

A polynomial lives in a fixed number of variables ``u_1 .. u_n`` and is stored
as a dict from exponent tuples to nonzero integer coefficients.  Exponents may
be negative.  Everything is exact; there are no floats anywhere.
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]


class LaurentPoly:
    """Immutable Laurent polynomial over the integers."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean: dict[Exponent, int] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length, expected {nvars}")
                if not isinstance(c, int):
                    raise TypeError("coefficients must be integers")
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if clean[exp] == 0:
                        del clean[exp]
        self._terms = clean
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> LaurentPoly:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: int) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> LaurentPoly:
        return cls.constant(nvars, 1)

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff: int = 1) -> LaurentPoly:
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def var(cls, nvars: int, index: int) -> LaurentPoly:
        """The variable u_index, with 1-based index."""
        if not 1 <= index <= nvars:
            raise ValueError(f"variable index {index} out of range 1..{nvars}")
        exp = [0] * nvars
        exp[index - 1] = 1
        return cls(nvars, {tuple(exp): 1})

    # inspection

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, int]]:
        """Terms sorted lexicographically by exponent."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> list[Exponent]:
        return sorted(self._terms)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def monomial_gcd(self) -> Exponent:
        """Componentwise minimum exponent, i.e. the largest dividing monomial."""
        if not self._terms:
            return (0,) * self.nvars
        exps = list(self._terms)
        return tuple(min(e[k] for e in exps) for k in range(self.nvars))

    # arithmetic

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (exp, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("inverse of a monomial needs a unit coefficient")
            return LaurentPoly(self.nvars, {tuple(k * e for e in exp): c ** (-k)})
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # transformations

    def shift(self, exps: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial u^exps."""
        return LaurentPoly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
        )

    def divide_monomial(self, exps: Sequence[int], coeff: int = 1) -> LaurentPoly:
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(c, coeff)
            if r:
                raise ValueError(f"coefficient {c} not divisible by {coeff}")
            out[tuple(a - b for a, b in zip(e, exps))] = q
        return LaurentPoly(self.nvars, out)

    def invert_variables(self) -> LaurentPoly:
        """Substitute u_i -> 1/u_i for every variable."""
        return LaurentPoly(self.nvars, {tuple(-a for a in e): c for e, c in self._terms.items()})

    def map_exponents(self, fn, nvars: int | None = None) -> LaurentPoly:
        n = self.nvars if nvars is None else nvars
        out: dict[Exponent, int] = {}
        for e, c in self._terms.items():
            ne = tuple(fn(e))
            out[ne] = out.get(ne, 0) + c
        return LaurentPoly(n, out)

    def truncate_vars(self, keep: int) -> LaurentPoly:
        """Drop trailing variables by setting them to 1."""
        return self.map_exponents(lambda e: e[:keep], keep)

    def evaluate(self, values: Sequence) -> object:
        """Evaluate at numeric (int, Fraction, float) values."""
        total = 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * (v ** k)
            total = total + term
        return total

    # text form

    def to_text(self) -> str:
        return format_poly(self)

    @classmethod
    def from_text(cls, text: str, nvars: int | None = None) -> LaurentPoly:
        return parse_poly(text, nvars)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def poly_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    out = dict(p._terms)
    for e, c in q._terms.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return LaurentPoly(p.nvars, out)


def poly_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    out: dict[Exponent, int] = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in q._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return LaurentPoly(p.nvars, {e: c for e, c in out.items() if c})


def poly_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant by Laplace expansion along rows, memoized on column subsets.

    Rows are consumed top to bottom; the minor built from the remaining rows and
    a given set of columns is cached under the column bitmask.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix has no well-defined variable count")
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    nvars = matrix[0][0].nvars
    for row in matrix:
        for entry in row:
            if entry.nvars != nvars:
                raise ValueError("entries have mismatched variable counts")

    cache: dict[int, LaurentPoly] = {}
    full = (1 << n) - 1

    def minor(mask: int) -> LaurentPoly:
        # rows still to expand are the last popcount(mask) rows
        if mask == 0:
            return LaurentPoly.one(nvars)
        hit = cache.get(mask)
        if hit is not None:
            return hit
        row = n - bin(mask).count("1")
        total = LaurentPoly.zero(nvars)
        position = 0
        for col in range(n):
            if not mask & (1 << col):
                continue
            entry = matrix[row][col]
            if not entry.is_zero():
                sub = minor(mask & ~(1 << col))
                if not sub.is_zero():
                    term = entry * sub
                    total = total + (term if position % 2 == 0 else -term)
            position += 1
        cache[mask] = total
        return total

    return minor(full)


def format_poly(p: LaurentPoly) -> str:
    """Render as ``c*u^[e1,...,eN]`` terms, sorted by exponent, joined by + and -."""
    items = p.items()
    if not items:
        return "0"
    parts = []
    for k, (e, c) in enumerate(items):
        mono = "u^[" + ",".join(str(x) for x in e) + "]"
        if k == 0:
            parts.append(f"{c}*{mono}")
        elif c < 0:
            parts.append(f" - {-c}*{mono}")
        else:
            parts.append(f" + {c}*{mono}")
    return "".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*u\^\[([-\d,\s]*)\]")


def parse_poly(text: str, nvars: int | None = None) -> LaurentPoly:
    """Inverse of :func:`format_poly`; also accepts the unicode minus sign."""
    text = text.replace("−", "-").strip()
    if text == "0":
        if nvars is None:
            raise ValueError("cannot infer variable count of the zero polynomial")
        return LaurentPoly.zero(nvars)
    terms: dict[Exponent, int] = {}
    pos = 0
    squeezed = text
    while pos < len(squeezed):
        m = _TERM.match(squeezed, pos)
        if m is None:
            raise ValueError(f"cannot parse polynomial near {squeezed[pos:pos + 20]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        exps = tuple(int(x) for x in m.group(3).split(",") if x.strip())
        if nvars is None:
            nvars = len(exps)
        if len(exps) != nvars:
            raise ValueError(f"term {m.group(0)!r} has {len(exps)} exponents, expected {nvars}")
        terms[exps] = terms.get(exps, 0) + sign * coeff
        pos = m.end()
        while pos < len(squeezed) and squeezed[pos].isspace():
            pos += 1
    return LaurentPoly(nvars, terms)


def poly_matrix_text(matrix: Sequence[Sequence[LaurentPoly]]) -> str:
    return "\n".join("[" + ", ".join(format_poly(x) for x in row) + "]" for row in matrix)


def sum_polys(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    total = LaurentPoly.zero(nvars)
    for p in polys:
        total = total + p
    return total
