"""Todd series, power sums of its formal roots, and Todd polynomials in Chern classes.

Everything is exact. The formal roots of the truncated Todd series never
appear as numbers; only their power sums, read off from log td, are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping

TODD_BOUND = 8


@dataclass(frozen=True)
class RationalSeries:
    """Exact power series in t, known modulo t^prec."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs precision >= 1")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __add__(self, other: RationalSeries) -> RationalSeries:
        n = min(self.prec, other.prec)
        return RationalSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __neg__(self) -> RationalSeries:
        return RationalSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: RationalSeries) -> RationalSeries:
        return self + (-other)

    def __mul__(self, other) -> RationalSeries:
        if not isinstance(other, RationalSeries):
            return RationalSeries(tuple(c * other for c in self.coeffs))
        n = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        return RationalSeries(tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)))

    __rmul__ = __mul__

    def inverse(self) -> RationalSeries:
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("constant term is zero")
        inv = [1 / a[0]]
        for n in range(1, self.prec):
            inv.append(-sum(a[k] * inv[n - k] for k in range(1, n + 1)) / a[0])
        return RationalSeries(tuple(inv))

    def __truediv__(self, other: RationalSeries) -> RationalSeries:
        return self * other.inverse()

    def derivative(self) -> RationalSeries:
        """Drops one order of precision."""
        if self.prec == 1:
            return RationalSeries((0,))
        return RationalSeries(tuple(n * c for n, c in enumerate(self.coeffs) if n))

    def integral(self) -> RationalSeries:
        return RationalSeries((Fraction(0),) + tuple(c / (n + 1) for n, c in enumerate(self.coeffs)))

    def log(self) -> RationalSeries:
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        if self.prec == 1:
            return RationalSeries((0,))
        return (self.derivative() * self.truncate(self.prec - 1).inverse()).integral()

    def exp(self) -> RationalSeries:
        a = self.coeffs
        if a[0] != 0:
            raise ValueError("exp needs constant term 0")
        e = [Fraction(1)]
        for n in range(1, self.prec):
            e.append(sum(k * a[k] * e[n - k] for k in range(1, n + 1)) / n)
        return RationalSeries(tuple(e))

    def truncate(self, prec: int) -> RationalSeries:
        return RationalSeries(self.coeffs[:prec])


def exp_minus_t(prec: int) -> RationalSeries:
    return RationalSeries(tuple(Fraction((-1) ** n, factorial(n)) for n in range(prec)))


@lru_cache(maxsize=None)
def td_series(prec: int) -> RationalSeries:
    """t / (1 - exp(-t)); the t cancels by shifting the denominator down one place."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    denom = [-c for c in exp_minus_t(prec + 1).coeffs[1:]]
    return RationalSeries(tuple(denom)).inverse()


@lru_cache(maxsize=None)
def _log_td(prec: int) -> RationalSeries:
    return td_series(prec).log()


def log_td_coefficient(k: int) -> Fraction:
    return _log_td(k + 1)[k]


def power_sum(m: int) -> Fraction:
    """Sum of m-th powers of the formal roots beta_j with td(t) = prod (1 + beta_j t) mod t^(m+1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return (-1) ** (m - 1) * m * log_td_coefficient(m)


# ---------------------------------------------------------------------------
# polynomials in Chern classes

Monomial = tuple[int, ...]


def grade(mono: Monomial) -> int:
    return sum((i + 1) * e for i, e in enumerate(mono))


@dataclass(frozen=True)
class ChernPolynomial:
    nvars: int
    terms: Mapping[Monomial, Fraction]

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            if len(mono) != self.nvars:
                raise ValueError("monomial length does not match the number of Chern classes")
            if c:
                clean[tuple(mono)] = Fraction(c)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def one(cls, nvars: int) -> ChernPolynomial:
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def chern(cls, i: int, nvars: int) -> ChernPolynomial:
        mono = [0] * nvars
        mono[i - 1] = 1
        return cls(nvars, {tuple(mono): Fraction(1)})

    def __add__(self, other: ChernPolynomial) -> ChernPolynomial:
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return ChernPolynomial(self.nvars, out)

    def scale(self, c) -> ChernPolynomial:
        return ChernPolynomial(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ChernPolynomial):
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if grade(m) <= self.nvars:
                    out[m] = out.get(m, 0) + c1 * c2
        return ChernPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ChernPolynomial) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def evaluate(self, values) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = c
            for v, e in zip(values, mono):
                term *= Fraction(v) ** e
            total += term
        return total

    def ordered_terms(self) -> list[tuple[Monomial, Fraction]]:
        # graded, then lexicographic with higher powers of c1 first
        return sorted(self.terms.items(), key=lambda mc: (grade(mc[0]), tuple(-e for e in mc[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.ordered_terms():
            factors = [f"c{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e]
            coeff = str(c)
            if not factors:
                parts.append(coeff)
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(coeff + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


def newton_power_sums(m: int) -> list[ChernPolynomial]:
    """P_0..P_m, power sums of the Chern roots written in c_1..c_m."""
    c = [None] + [ChernPolynomial.chern(i, m) for i in range(1, m + 1)]
    P = [ChernPolynomial.one(m).scale(m)]
    for k in range(1, m + 1):
        acc = c[k].scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + (c[i] * P[k - i]).scale((-1) ** (i - 1))
        P.append(acc)
    return P


@lru_cache(maxsize=None)
def _todd_piece(m: int) -> ChernPolynomial:
    P = newton_power_sums(m)
    A = [None] + [P[k].scale(log_td_coefficient(k)) for k in range(1, m + 1)]
    E = [ChernPolynomial.one(m)]
    for n in range(1, m + 1):
        acc = ChernPolynomial(m, {})
        for k in range(1, n + 1):
            acc = acc + (A[k] * E[n - k]).scale(k)
        E.append(acc.scale(Fraction(1, n)))
    return E[m]


def todd_polynomial(m: int, bound: int = TODD_BOUND) -> ChernPolynomial:
    """Degree-m part of prod td(gamma_i t), expressed in the Chern classes."""
    if not 1 <= m <= bound:
        raise ValueError(f"m must lie in 1..{bound}")
    return _todd_piece(m)


def top_chern_coefficient(m: int) -> Fraction:
    if m < 1:
        raise ValueError("m must be >= 1")
    mono = (0,) * (m - 1) + (1,)
    return _todd_piece(m).coefficient(mono)


def projective_space_genus(m: int) -> Fraction:
    """Todd_m evaluated at c_i = binomial(m+1, i)."""
    return todd_polynomial(m).evaluate([comb(m + 1, i) for i in range(1, m + 1)])


def todd_by_roots(m: int) -> ChernPolynomial:
    """Independent route: expand prod td(g_i t) in symbolic roots and symmetrize."""
    import sympy

    g = sympy.symbols(f"g1:{m + 1}")
    t = sympy.Symbol("t")
    td = td_series(m + 1)
    trunc = lambda x: sum(sympy.Rational(c.numerator, c.denominator) * (x * t) ** n  # noqa: E731
                          for n, c in enumerate(td.coeffs))
    prod = sympy.Integer(1)
    for gi in g:
        prod = sympy.expand(prod * trunc(gi))
        prod = sum(prod.coeff(t, n) * t ** n for n in range(m + 1))
    piece = sympy.expand(prod).coeff(t, m)
    sym, rest, names = _symmetrize(piece, g)
    if rest != 0:
        raise ArithmeticError("expansion is not symmetric")
    poly = sympy.Poly(sym, *names)
    terms = {tuple(mono): Fraction(int(c.p), int(c.q)) for mono, c in poly.terms()}
    return ChernPolynomial(m, terms)


def _symmetrize(expr, gens):
    from sympy.polys.polyfuncs import symmetrize

    sym, rest, mapping = symmetrize(expr, *gens, formal=True)
    return sym, rest, [s for s, _ in mapping]
