"""Linear systems of plane curves cut out by incidence and contact conditions."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from sympy import isprime

from .errors import BadPrime, InconsistentConditions
from .planegeom.curves import EXPONENTS, PlaneCurve, _derivative_terms, _monomial, format_polynomial
from .planegeom.points import P1P1, P2, ProjPoint, as_point

# ---------------------------------------------------------------------------
# exact and modular elimination


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; zero rows dropped."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def determinant(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def rref_mod_p(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m = [[int(x) % p for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod_p(rows, p)[0])


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    R, pivots = rref_mod_p(rows, p)
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis


def determinant_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [[int(x) % p for x in r] for r in rows]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[c])]
    return det % p


def integer_row(row: Sequence[Fraction]) -> list[int]:
    """Clear denominators of a rational row."""
    den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
    return [int(Fraction(x) * den) for x in row]


# ---------------------------------------------------------------------------
# conditions


@dataclass(frozen=True)
class Ruling:
    """Ruling line of P1xP1: the first (factor 0) or second factor is fixed to ``coords``."""

    factor: int
    coords: tuple

    def __post_init__(self):
        if self.factor not in (0, 1):
            raise ValueError("ruling factor is 0 or 1")
        pt = ProjPoint(tuple(self.coords) + (1, 0), P1P1)
        object.__setattr__(self, "coords", pt.coords[:2])

    def contains(self, P: ProjPoint) -> bool:
        block = P.coords[2 * self.factor: 2 * self.factor + 2]
        return block[0] * self.coords[1] - block[1] * self.coords[0] == 0

    def __str__(self) -> str:
        name = "u" if self.factor == 0 else "v"
        return f"{name}={self.coords[0]}:{self.coords[1]}"


def _line_contains(L, P: ProjPoint) -> bool:
    return sum(Fraction(a) * b for a, b in zip(L, P.coords)) == 0


def _second_point(L, P: ProjPoint) -> tuple:
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        Q = (L[1] * e[2] - L[2] * e[1], L[2] * e[0] - L[0] * e[2], L[0] * e[1] - L[1] * e[0])
        if not any(Q):
            continue
        a = P.coords
        cross = (a[1] * Q[2] - a[2] * Q[1], a[2] * Q[0] - a[0] * Q[2], a[0] * Q[1] - a[1] * Q[0])
        if any(cross):
            return tuple(Fraction(x) for x in Q)
    raise AssertionError("a line contains a second point")


def _restriction_coefficients(exps, P, Q, order):
    """For each monomial, the coefficients of s^0..s^(order-1) in m(P + sQ)."""
    rows = [[Fraction(0)] * len(exps) for _ in range(order)]
    for j, e in enumerate(exps):
        poly = [Fraction(1)]
        for a, b, k in zip(P, Q, e):
            for _ in range(k):
                nxt = [Fraction(0)] * (len(poly) + 1)
                for i, c in enumerate(poly):
                    nxt[i] += c * a
                    nxt[i + 1] += c * b
                poly = nxt
        for i in range(min(order, len(poly))):
            rows[i][j] = poly[i]
    return rows


def _value_row(exps, P):
    return [Fraction(_monomial(e, P)) for e in exps]


def _partial_row(exps, P, v):
    return [Fraction(k * _monomial(e, P)) if k else Fraction(0) for k, e in _derivative_terms(exps, v)]


@dataclass(frozen=True)
class Condition:
    """One incidence condition: ``through``, ``tangent`` or ``inflect``."""

    kind: str
    point: ProjPoint
    line: object = None

    def __post_init__(self):
        if self.kind not in ("through", "tangent", "inflect"):
            raise ValueError(f"unknown condition kind {self.kind!r}")
        if self.point.p is not None:
            raise ValueError("conditions are stated over Q")
        if self.kind == "through":
            return
        if self.line is None:
            raise ValueError(f"{self.kind} needs a line")
        if self.point.ambient == P2:
            L = tuple(Fraction(x) for x in self.line)
            if len(L) != 3 or not any(L):
                raise ValueError("a line of P2 is a nonzero covector of length 3")
            object.__setattr__(self, "line", L)
            if not _line_contains(L, self.point):
                raise ValueError(f"{self.point} does not lie on the line {L}")
        else:
            if self.kind == "inflect":
                raise ValueError("inflectional tangency is defined for plane cubics only")
            if not isinstance(self.line, Ruling) or not self.line.contains(self.point):
                raise ValueError(f"{self.point} does not lie on the ruling {self.line}")

    @classmethod
    def through(cls, P, ambient: str = P2) -> Condition:
        return cls("through", as_point(P, ambient))

    @classmethod
    def tangent(cls, L, P, ambient: str = P2) -> Condition:
        return cls("tangent", as_point(P, ambient), L)

    @classmethod
    def inflection(cls, L, P) -> Condition:
        return cls("inflect", as_point(P, P2), L)

    @property
    def ambient(self) -> str:
        return self.point.ambient

    def rows(self) -> list[list[Fraction]]:
        exps = EXPONENTS[self.ambient]
        P = self.point.coords
        value = _value_row(exps, P)
        if self.kind == "through":
            return [value]
        if self.ambient == P1P1:
            free = 1 - self.line.factor
            return [value] + [_partial_row(exps, P, 2 * free + i) for i in range(2)]
        L = self.line
        if self.kind == "tangent":
            k = next(i for i in range(3) if L[i])
            dk = _partial_row(exps, P, k)
            rows = [value]
            for i in range(3):
                if i != k:
                    di = _partial_row(exps, P, i)
                    rows.append([L[k] * a - L[i] * b for a, b in zip(di, dk)])
            return rows
        Q = _second_point(L, self.point)
        return _restriction_coefficients(exps, P, Q, 3)

    def __str__(self) -> str:
        if self.kind == "through":
            return f"through {self.point.key()}"
        if isinstance(self.line, Ruling):
            line = str(self.line)
        else:
            line = ":".join(str(x) for x in self.line)
        return f"{self.kind} {line} at {self.point.key()}"

    @classmethod
    def parse(cls, text: str) -> Condition:
        """Grammar: ``through PT`` | ``tangent LINE at PT`` | ``inflect LINE at PT``.

        PT is ``a:b:c`` on P2 or ``u:s|v:t`` on P1xP1; LINE is a covector
        ``l0:l1:l2`` or a ruling ``u=a:b`` / ``v=a:b``.
        """
        m = re.fullmatch(r"\s*(through|tangent|inflect)\s+(\S+)(?:\s+at\s+(\S+))?\s*", text)
        if not m:
            raise ValueError(f"cannot parse condition {text!r}")
        kind, first, second = m.groups()
        if kind == "through":
            if second is not None:
                raise ValueError("through takes a single point")
            return cls.through(first, P1P1 if "|" in first else P2)
        if second is None:
            raise ValueError(f"{kind} needs 'LINE at POINT'")
        ambient = P1P1 if "|" in second else P2
        if ambient == P1P1:
            rm = re.fullmatch(r"([uv])=(.+)", first)
            if not rm:
                raise ValueError(f"bad ruling {first!r}; use u=a:b or v=a:b")
            coords = tuple(Fraction(x) for x in rm.group(2).split(":"))
            line = Ruling(0 if rm.group(1) == "u" else 1, coords)
        else:
            line = tuple(Fraction(x) for x in first.split(":"))
        return cls(kind, as_point(second, ambient), line)


# ---------------------------------------------------------------------------
# linear systems


@dataclass(frozen=True)
class LinearSystem:
    ambient: str
    basis: tuple[tuple[Fraction, ...], ...]
    conditions: tuple[Condition, ...] = ()
    bad_primes: frozenset[int] = frozenset()
    condition_rank: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    def curves(self) -> list[PlaneCurve]:
        return [PlaneCurve(v, self.ambient) for v in self.basis]

    def member(self, params: Sequence) -> tuple[Fraction, ...]:
        if len(params) != self.dim:
            raise ValueError(f"system has dimension {self.dim}")
        return tuple(sum(Fraction(t) * v[i] for t, v in zip(params, self.basis))
                     for i in range(len(self.basis[0])))

    def residues(self) -> list[list[Fraction]]:
        rows = [r for c in self.conditions for r in c.rows()]
        return [[sum(a * b for a, b in zip(r, v)) for r in rows] for v in self.basis]

    def describe(self) -> str:
        lines = [f"ambient {self.ambient}", f"dimension {self.dim}"]
        for i, v in enumerate(self.basis):
            vec = " ".join(str(x) for x in v)
            lines.append(f"basis[{i}] = [{vec}]   # {format_polynomial(v, self.ambient)}")
        return "\n".join(lines)


def _ambient_size(ambient: str) -> int:
    return len(EXPONENTS[ambient])


def solve_conditions(ambient: str, conditions: Iterable[Condition],
                     bad_primes: Iterable[int] = ()) -> LinearSystem:
    conditions = tuple(conditions)
    for c in conditions:
        if c.ambient != ambient:
            raise ValueError(f"condition {c} lives on {c.ambient}, not {ambient}")
    n = _ambient_size(ambient)
    rows = [r for c in conditions for r in c.rows()]
    kernel = nullspace(rows, n) if rows else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if not kernel:
        raise InconsistentConditions("only the zero polynomial satisfies the conditions")
    basis, _ = rref(kernel)
    return LinearSystem(ambient, tuple(tuple(v) for v in basis), conditions,
                        frozenset(bad_primes), rank(rows) if rows else 0)


def _vectors(B) -> list[list[Fraction]]:
    out = []
    for v in B:
        coeffs = v.coeffs if isinstance(v, PlaneCurve) else v
        out.append([Fraction(x) for x in coeffs])
    return out


def same_subspace(A: LinearSystem, B) -> bool:
    vecs = _vectors(B)
    for v in vecs:
        if len(v) != _ambient_size(A.ambient):
            raise ValueError("vector length does not match the ambient")
    basis = [list(v) for v in A.basis]
    ra, rb = rank(basis), rank(vecs)
    return ra == rb == rank(basis + vecs)


def slice(S: LinearSystem, extra: Iterable[Condition]) -> LinearSystem:  # noqa: A001
    return solve_conditions(S.ambient, S.conditions + tuple(extra), S.bad_primes)


def reduce_mod_p(S: LinearSystem, p: int) -> list[PlaneCurve]:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p in S.bad_primes:
        raise BadPrime(f"{p} is a configured bad prime for this system")
    for v in S.basis:
        for x in v:
            if x.denominator % p == 0:
                raise BadPrime(f"basis denominator divisible by {p}")
    reduced = [[x.numerator * pow(x.denominator, -1, p) % p for x in v] for v in S.basis]
    if rank_mod_p(reduced, p) != S.dim:
        raise BadPrime(f"basis loses rank mod {p}")
    rows = [integer_row(r) for c in S.conditions for r in c.rows()]
    if rows and rank_mod_p(rows, p) != S.condition_rank:
        raise BadPrime(f"condition matrix loses rank mod {p}")
    return [PlaneCurve(tuple(v), S.ambient, p) for v in reduced]
