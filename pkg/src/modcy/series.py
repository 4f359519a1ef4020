"""Truncated q-series, eta quotients and the built-in newform registry."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from sympy import isprime, primerange


@dataclass(frozen=True)
class PowerSeries:
    """Integer power series in q, known modulo q^prec."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a power series needs precision >= 1")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def constant(cls, c: int, prec: int) -> PowerSeries:
        return cls((c,) + (0,) * (prec - 1))

    @classmethod
    def monomial(cls, n: int, prec: int, c: int = 1) -> PowerSeries:
        coeffs = [0] * prec
        if n < prec:
            coeffs[n] = c
        return cls(tuple(coeffs))

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < self.prec:
            raise IndexError(f"coefficient {n} lies outside precision {self.prec}")
        return self.coeffs[n]

    def truncate(self, prec: int) -> PowerSeries:
        if prec > self.prec:
            raise ValueError("cannot raise precision by truncation")
        return PowerSeries(self.coeffs[:prec])

    def _coerce(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, int):
            return PowerSeries.constant(other, self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.prec, other.prec)
        return PowerSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return PowerSeries(tuple(other * a for a in self.coeffs))
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        nz = [(j, b[j]) for j in range(n) if b[j]]
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if ai:
                for j, bj in nz:
                    if i + j >= n:
                        break
                    out[i + j] += ai * bj
        return PowerSeries(tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> PowerSeries:
        """Multiplicative inverse; only for constant term +1 or -1."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError("only series with unit constant term are invertible")
        n = self.prec
        a = self.coeffs
        out = [0] * n
        out[0] = c0
        for k in range(1, n):
            s = sum(a[j] * out[k - j] for j in range(1, k + 1))
            out[k] = -s * c0
        return PowerSeries(tuple(out))

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = PowerSeries.constant(1, self.prec)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __str__(self) -> str:
        terms = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if n == 0:
                body = str(mag)
            else:
                mono = "q" if n == 1 else f"q^{n}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        terms.append(f"O(q^{self.prec})" if not terms else f"+ O(q^{self.prec})")
        return " ".join(terms)


@dataclass(frozen=True)
class EtaQuotient:
    """Product of eta(d z)^r over the listed (d, r) pairs."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        factors = tuple((int(d), int(r)) for d, r in self.factors)
        for d, r in factors:
            if d < 1 or r == 0:
                raise ValueError(f"bad eta factor (d={d}, r={r})")
        object.__setattr__(self, "factors", factors)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    @property
    def q_order(self) -> Fraction:
        return Fraction(sum(d * r for d, r in self.factors), 24)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for d, r in self.factors:
            z = "z" if d == 1 else f"{d}z"
            parts.append(f"eta({z})^{r}")
        return "*".join(parts)


@dataclass(frozen=True)
class NewformSpec:
    level: int
    weight: int
    recipe: EtaQuotient
    label: str = field(default="")

    def __post_init__(self):
        if self.weight < 1 or self.weight % 2:
            raise ValueError("weight must be a positive even integer")
        if self.recipe.weight != self.weight:
            raise ValueError(f"recipe weight {self.recipe.weight} differs from {self.weight}")
        if self.recipe.q_order != 1:
            raise ValueError("recipe must have q-order 1")
        for d, _ in self.recipe.factors:
            if self.level % d:
                raise ValueError(f"eta argument {d} does not divide the level {self.level}")
        if not self.label:
            object.__setattr__(self, "label", f"{self.level}.{self.weight}")


def _spec(level, weight, *factors):
    return NewformSpec(level, weight, EtaQuotient(tuple(factors)))


REGISTRY: dict[tuple[int, int], NewformSpec] = {
    (1, 12): _spec(1, 12, (1, 24)),
    (2, 8): _spec(2, 8, (1, 8), (2, 8)),
    (3, 6): _spec(3, 6, (1, 6), (3, 6)),
    (4, 6): _spec(4, 6, (2, 12)),
    (5, 4): _spec(5, 4, (1, 4), (5, 4)),
    (6, 4): _spec(6, 4, (1, 2), (2, 2), (3, 2), (6, 2)),
    (11, 2): _spec(11, 2, (1, 2), (11, 2)),
}


def lookup(level: int, weight: int) -> NewformSpec:
    try:
        return REGISTRY[(level, weight)]
    except KeyError:
        known = ", ".join(f"({n},{k})" for n, k in REGISTRY)
        raise KeyError(f"no registry newform of level {level} and weight {weight}; known: {known}") from None


def divisor_sigma_table(n: int) -> list[int]:
    """sigma(m) for 0 <= m < n, with sigma(0) = 0."""
    sig = [0] * n
    for d in range(1, n):
        for m in range(d, n, d):
            sig[m] += d
    return sig


def eta_expand(recipe: EtaQuotient, prec: int) -> PowerSeries:
    """q-expansion of an eta quotient modulo q^prec.

    Writes g = prod (q^d; q^d)^{r_d} and uses q g'/g = h with
    h_n = -sum_{d | n} r_d d sigma(n/d), so n g_n = sum_k h_k g_{n-k}.
    Negative exponents need no special treatment here.
    """
    if prec < 1:
        raise ValueError("precision must be at least 1")
    order = recipe.q_order
    if order.denominator != 1 or order < 0:
        raise ValueError(f"eta quotient {recipe} has q-order {order}, not a nonnegative integer")
    shift = int(order)
    n = prec - shift
    if n <= 0:
        return PowerSeries((0,) * prec)
    sig = divisor_sigma_table(n)
    h = [0] * n
    for d, r in recipe.factors:
        for m in range(1, (n - 1) // d + 1):
            h[d * m] -= r * d * sig[m]
    nz = [(k, hk) for k, hk in enumerate(h) if hk]
    g = [0] * n
    g[0] = 1
    for m in range(1, n):
        s = 0
        for k, hk in nz:
            if k > m:
                break
            s += hk * g[m - k]
        g[m] = s // m
    return PowerSeries((0,) * shift + tuple(g))


_TABLES: dict[EtaQuotient, tuple[int, ...]] = {}


def coefficients(spec: NewformSpec, prec: int) -> tuple[int, ...]:
    """a_0 .. a_{prec-1} of a registry form, reusing longer expansions."""
    table = _TABLES.get(spec.recipe)
    if table is None or len(table) < prec:
        size = max(prec, 2 * len(table) if table else 64)
        table = eta_expand(spec.recipe, size).coeffs
        _TABLES[spec.recipe] = table
    return table[:prec]


def ap(spec: NewformSpec, n: int) -> int:
    if n < 1:
        raise ValueError("coefficient index must be positive")
    return coefficients(spec, n + 1)[n]


@dataclass(frozen=True)
class HeckeViolation:
    identity: str
    indices: tuple[int, ...]
    lhs: int
    rhs: int

    def __str__(self) -> str:
        idx = ",".join(map(str, self.indices))
        return f"{self.identity} at ({idx}): {self.lhs} != {self.rhs}"


def check_hecke_coefficients(a: Sequence[int], level: int, weight: int) -> list[HeckeViolation]:
    """Hecke identities for a coefficient list a[0..prec-1]."""
    prec = len(a)
    bad: list[HeckeViolation] = []
    if prec > 1 and a[1] != 1:
        bad.append(HeckeViolation("a_1 = 1", (1,), a[1], 1))
    for m in range(2, prec):
        for n in range(m + 1, (prec - 1) // m + 1):
            if gcd(m, n) == 1 and a[m * n] != a[m] * a[n]:
                bad.append(HeckeViolation("a_mn = a_m a_n", (m, n), a[m * n], a[m] * a[n]))
    for p in primerange(2, prec):
        if level % p == 0:
            pk, e = p * p, 2
            while pk < prec:
                if a[pk] != a[p] ** e:
                    bad.append(HeckeViolation("a_{p^r} = a_p^r", (p, e), a[pk], a[p] ** e))
                pk *= p
                e += 1
        else:
            w = p ** (weight - 1)
            prev, cur, pk = 1, a[p], p
            while pk * p < prec:
                expect = a[p] * cur - w * prev
                got = a[pk * p]
                if got != expect:
                    bad.append(HeckeViolation("a_{p^(r+1)} = a_p a_{p^r} - p^(k-1) a_{p^(r-1)}",
                                              (p, pk * p), got, expect))
                prev, cur, pk = cur, got, pk * p
    return bad


def hecke_check(spec: NewformSpec, prec: int) -> list[HeckeViolation]:
    if prec < 2:
        raise ValueError("precision must be at least 2")
    return check_hecke_coefficients(coefficients(spec, prec), spec.level, spec.weight)


def euler_factor(spec: NewformSpec, p: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the local factor polynomial in T."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    a = ap(spec, p)
    if spec.level % p == 0:
        return (1, -a)
    return (1, -a, p ** (spec.weight - 1))


def format_poly(coeffs: Iterable[int], var: str = "T") -> str:
    out = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        sign = "-" if c < 0 else "+"
        out.append(body if not out and c > 0 else (f"-{body}" if not out else f"{sign} {body}"))
    return " ".join(out) if out else "0"
