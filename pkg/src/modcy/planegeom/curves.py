"""Plane cubics and (2,2)-forms: evaluation, point counts, singular points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import BadReduction
from .field import Fp2, least_nonresidue
from .points import P1P1, P2, ProjPoint, ambient_points, projective_points, reduce_scalar

CUBIC_EXPONENTS = (
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
)
BIDEGREE_EXPONENTS = tuple((a, 2 - a, b, 2 - b) for a in (2, 1, 0) for b in (2, 1, 0))

EXPONENTS = {P2: CUBIC_EXPONENTS, P1P1: BIDEGREE_EXPONENTS}
VARIABLES = {P2: ("X", "Y", "Z"), P1P1: ("U", "S", "V", "T")}

# Global tally of curve point counts, read by the cache tests.
COUNTERS = {"curve_counts": 0}


def _monomial(exps, coords):
    out = 1
    for x, e in zip(coords, exps):
        if e:
            out = out * x ** e
    return out


def _derivative_terms(exps, v):
    """(coefficient factor, exponent) pairs of d/dx_v applied to each monomial."""
    out = []
    for e in exps:
        if e[v]:
            lowered = tuple(k - (i == v) for i, k in enumerate(e))
            out.append((e[v], lowered))
        else:
            out.append((0, None))
    return out


@dataclass(frozen=True)
class PlaneCurve:
    """Ternary cubic (ambient P2) or bidegree-(2,2) form (ambient P1xP1).

    Coefficients follow EXPONENTS[ambient]. ``p`` is None over Q.
    """

    coeffs: tuple
    ambient: str = P2
    p: int | None = None

    def __post_init__(self):
        n = len(EXPONENTS[self.ambient])
        if len(self.coeffs) != n:
            raise ValueError(f"{self.ambient} curves have {n} coefficients, got {len(self.coeffs)}")
        if self.p is None:
            coeffs = tuple(Fraction(c) for c in self.coeffs)
        else:
            coeffs = tuple(reduce_scalar(c, self.p) for c in self.coeffs)
        if not any(coeffs):
            raise ValueError("the zero polynomial does not define a curve")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def exponents(self):
        return EXPONENTS[self.ambient]

    @property
    def degree(self) -> int:
        return 3 if self.ambient == P2 else 2

    def reduce(self, p: int) -> PlaneCurve:
        if self.p == p:
            return self
        if self.p is not None:
            raise ValueError(f"curve is over F_{self.p}, cannot reduce mod {p}")
        try:
            coeffs = tuple(reduce_scalar(c, p) for c in self.coeffs)
        except ZeroDivisionError as exc:
            raise BadReduction(str(exc)) from None
        if not any(coeffs):
            raise BadReduction(f"curve reduces to zero mod {p}")
        return PlaneCurve(coeffs, self.ambient, p)

    def _coords(self, point):
        if isinstance(point, ProjPoint):
            return point.coords
        return tuple(point)

    def __call__(self, point):
        x = self._coords(point)
        total = sum(c * _monomial(e, x) for c, e in zip(self.coeffs, self.exponents) if c)
        return total % self.p if self.p is not None and isinstance(total, int) else total

    def gradient(self, point) -> tuple:
        x = self._coords(point)
        out = []
        for v in range(len(x)):
            s = 0
            for c, (k, e) in zip(self.coeffs, _derivative_terms(self.exponents, v)):
                if c and k:
                    s = s + c * k * _monomial(e, x)
            if self.p is not None and isinstance(s, int):
                s %= self.p
            out.append(s)
        return tuple(out)

    def contains(self, point) -> bool:
        return not self(point)

    def __str__(self) -> str:
        return format_polynomial(self.coeffs, self.ambient)

    @classmethod
    def parse(cls, text: str, ambient: str = P2, p: int | None = None) -> PlaneCurve:
        """Build from a polynomial string such as ``X^2*Z + Y^2*X - 3*X*Y*Z``."""
        import sympy

        names = VARIABLES[ambient]
        syms = sympy.symbols(names)
        expr = sympy.sympify(text.replace("^", "**"), locals=dict(zip(names, syms)))
        poly = sympy.Poly(sympy.expand(expr), *syms)
        terms = {tuple(m): c for m, c in poly.terms()}
        exps = EXPONENTS[ambient]
        extra = set(terms) - set(exps)
        if extra:
            raise ValueError(f"polynomial has monomials of the wrong degree: {sorted(extra)}")
        coeffs = tuple(Fraction(int(sympy.Rational(terms.get(e, 0)).p), int(sympy.Rational(terms.get(e, 0)).q))
                       for e in exps)
        curve = cls(coeffs, ambient)
        return curve.reduce(p) if p is not None else curve


def format_polynomial(coeffs, ambient: str = P2) -> str:
    names = VARIABLES[ambient]
    parts = []
    for c, e in zip(coeffs, EXPONENTS[ambient]):
        if not c:
            continue
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        neg = isinstance(c, (int, Fraction)) and c < 0
        mag = -c if neg else c
        body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# vectorized evaluation over F_p

@lru_cache(maxsize=32)
def monomial_matrix(ambient: str, p: int) -> np.ndarray:
    """Rows: points of the ambient space over F_p; columns: monomial values mod p."""
    pts = ambient_points(ambient, p)
    cols = []
    for e in EXPONENTS[ambient]:
        col = np.ones(len(pts), dtype=np.int64)
        for v, k in enumerate(e):
            for _ in range(k):
                col = col * pts[:, v] % p
        cols.append(col)
    out = np.stack(cols, axis=1)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=32)
def partial_matrices(ambient: str, p: int) -> tuple[np.ndarray, ...]:
    """For each variable v, the matrix of d/dx_v of every monomial at every point."""
    pts = ambient_points(ambient, p)
    mats = []
    for v in range(pts.shape[1]):
        cols = []
        for k, e in _derivative_terms(EXPONENTS[ambient], v):
            col = np.zeros(len(pts), dtype=np.int64)
            if k:
                col = np.full(len(pts), k % p, dtype=np.int64)
                for w, kk in enumerate(e):
                    for _ in range(kk):
                        col = col * pts[:, w] % p
            cols.append(col)
        m = np.stack(cols, axis=1)
        m.setflags(write=False)
        mats.append(m)
    return tuple(mats)


def divisible(M: np.ndarray, p: int) -> np.ndarray:
    """Elementwise p | M for an integer-valued float64 array below 2^53.

    Division of an exact multiple of p is exact in floating point, and any
    other quotient sits at least 1/p away from the nearest integer.
    """
    q = M / p
    return q == np.rint(q)


def _coeff_array(C: PlaneCurve) -> np.ndarray:
    return np.array([int(c) for c in C.coeffs], dtype=np.int64)


def _curve_over(C: PlaneCurve, p: int | None) -> tuple[PlaneCurve, int]:
    if p is None:
        if C.p is None:
            raise ValueError("a prime is required for a curve over Q")
        return C, C.p
    return C.reduce(p), p


def zero_mask(C: PlaneCurve, p: int | None = None) -> np.ndarray:
    C, p = _curve_over(C, p)
    return (monomial_matrix(C.ambient, p) @ _coeff_array(C)) % p == 0


def count_points(C: PlaneCurve, p: int | None = None) -> int:
    """Number of F_p-points by enumeration of the ambient space."""
    mask = zero_mask(C, p)
    COUNTERS["curve_counts"] += 1
    return int(mask.sum())


def _fp_singular_mask(C: PlaneCurve, p: int) -> np.ndarray:
    c = _coeff_array(C)
    mask = (monomial_matrix(C.ambient, p) @ c) % p == 0
    for m in partial_matrices(C.ambient, p):
        mask &= (m @ c) % p == 0
    return mask


# ---------------------------------------------------------------------------
# F_{p^2} evaluation (pairs of arrays a + b*w)

def _fp2_mul(x, y, n, p):
    return ((x[0] * y[0] + n * (x[1] * y[1] % p)) % p, (x[0] * y[1] + x[1] * y[0]) % p)


def _fp2_eval(terms, coords, n, p):
    """Evaluate sum c*monomial over arrays of F_{p^2} coordinates."""
    size = coords[0][0].shape
    deg = max((max(e) for c, e in terms if c), default=0)
    powers = []
    for x in coords:
        pw = [(np.ones(size, dtype=np.int64), np.zeros(size, dtype=np.int64))]
        for _ in range(deg):
            pw.append(_fp2_mul(pw[-1], x, n, p))
        powers.append(pw)
    acc_a = np.zeros(size, dtype=np.int64)
    acc_b = np.zeros(size, dtype=np.int64)
    for c, e in terms:
        c %= p
        if not c:
            continue
        m = None
        for v, k in enumerate(e):
            if k:
                m = powers[v][k] if m is None else _fp2_mul(m, powers[v][k], n, p)
        if m is None:
            m = powers[0][0]
        acc_a = (acc_a + c * m[0]) % p
        acc_b = (acc_b + c * m[1]) % p
    return acc_a, acc_b


def _int_terms(C: PlaneCurve):
    return [(int(c), e) for c, e in zip(C.coeffs, C.exponents)]


def _partial_terms(C: PlaneCurve, v: int):
    out = []
    for c, (k, e) in zip(C.coeffs, _derivative_terms(C.exponents, v)):
        if k and c:
            out.append((int(c) * k, e))
    return out


def _fp2_singular(C: PlaneCurve, coords, n, p) -> np.ndarray:
    a, b = _fp2_eval(_int_terms(C), coords, n, p)
    mask = (a == 0) & (b == 0)
    for v in range(len(coords)):
        a, b = _fp2_eval(_partial_terms(C, v), coords, n, p)
        mask &= (a == 0) & (b == 0)
    return mask


def _fp2_projective_line(p):
    """P1(F_{p^2}) as ((s_a, s_b), (t_a, t_b)) arrays: (1:e) for all e, then (0:1)."""
    e = np.arange(p * p, dtype=np.int64)
    s = (np.append(np.ones(p * p, dtype=np.int64), 0), np.zeros(p * p + 1, dtype=np.int64))
    t = (np.append(e % p, 1), np.append(e // p, 0))
    return s, t


def _fp2_plane(p):
    """P2(F_{p^2}) with leading-one normalization, as three coordinate pairs."""
    q = p * p
    blocks = []
    for lead in range(3):
        tail = 2 - lead
        grid = np.indices((q,) * tail, dtype=np.int64).reshape(tail, -1) if tail else np.zeros((0, 1), dtype=np.int64)
        cnt = grid.shape[1]
        coords = []
        for v in range(3):
            if v < lead:
                coords.append((np.zeros(cnt, dtype=np.int64), np.zeros(cnt, dtype=np.int64)))
            elif v == lead:
                coords.append((np.ones(cnt, dtype=np.int64), np.zeros(cnt, dtype=np.int64)))
            else:
                g = grid[v - lead - 1]
                coords.append((g % p, g // p))
        blocks.append(coords)
    return [tuple(np.concatenate([b[v][i] for b in blocks]) for i in range(2)) for v in range(3)]


def _points_from_arrays(coords, idx, ambient, p) -> list[ProjPoint]:
    out = []
    for i in idx:
        vals = [Fp2(int(c[0][i]), int(c[1][i]), p) for c in coords]
        vals = [v.a if v.is_rational() else v for v in vals]
        out.append(ProjPoint(tuple(vals), ambient, p))
    return out


def rational_line_components(C: PlaneCurve, p: int | None = None) -> list[tuple[int, int, int]]:
    """F_p-rational lines contained in a plane cubic (odd p)."""
    C, p = _curve_over(C, p)
    if C.ambient != P2:
        raise ValueError("line components are computed for plane cubics")
    if p == 2:
        raise ValueError("line-component search needs p >= 3")
    pts = projective_points(2, p)
    zeros = pts[zero_mask(C, p)]
    if len(zeros) < 4:
        return []
    lines = projective_points(2, p)
    # a line meeting the cubic in >= 4 points is a component
    hits = ((lines @ zeros.T) % p == 0).sum(axis=1)
    return [tuple(int(x) for x in lines[i]) for i in np.nonzero(hits >= 4)[0]]


def _line_basis(line, p):
    """Two F_p points spanning the line with covector ``line``."""
    l0, l1, l2 = line
    cands = [(0, l2, -l1), (-l2, 0, l0), (l1, -l0, 0)]
    first = next(c for c in cands if any(x % p for x in c))
    for c in cands:
        if not any(x % p for x in c):
            continue
        cross = (first[1] * c[2] - first[2] * c[1], first[2] * c[0] - first[0] * c[2],
                 first[0] * c[1] - first[1] * c[0])
        if any(x % p for x in cross):
            return tuple(x % p for x in first), tuple(x % p for x in c)
    raise AssertionError("a line has two independent points")


def _line_fp2_points(line, p):
    A, B = _line_basis(line, p)
    (sa, sb), (ta, tb) = _fp2_projective_line(p)
    return [((sa * A[v] + ta * B[v]) % p, (sb * A[v] + tb * B[v]) % p) for v in range(3)]


def singular_points(C: PlaneCurve, p: int | None = None, degree_bound: int = 1,
                    limit: int = 31) -> list[ProjPoint]:
    """Singular points over F_p, and also over F_{p^2} when degree_bound is 2.

    For plane cubics the F_{p^2} search is restricted to F_p-rational line
    components: a non-rational singular point and its conjugate span a rational
    line meeting the cubic with multiplicity at least 4.
    """
    C, p = _curve_over(C, p)
    if degree_bound not in (1, 2):
        raise ValueError("degree_bound must be 1 or 2")
    pts = ambient_points(C.ambient, p)
    found = [ProjPoint(tuple(int(x) for x in row), C.ambient, p)
             for row in pts[_fp_singular_mask(C, p)]]
    if degree_bound == 1:
        return found
    if p > limit:
        raise ValueError(f"F_{{p^2}} search is limited to p <= {limit}")
    n = least_nonresidue(p)
    extra: set[ProjPoint] = set()
    if C.ambient == P2:
        for line in rational_line_components(C, p):
            coords = _line_fp2_points(line, p)
            mask = _fp2_singular(C, coords, n, p)
            extra.update(_points_from_arrays(coords, np.nonzero(mask)[0], P2, p))
    else:
        (sa, sb), (ta, tb) = _fp2_projective_line(p)
        m = len(sa)
        coords = [(np.repeat(sa, m), np.repeat(sb, m)), (np.repeat(ta, m), np.repeat(tb, m)),
                  (np.tile(sa, m), np.tile(sb, m)), (np.tile(ta, m), np.tile(tb, m))]
        mask = _fp2_singular(C, coords, n, p)
        extra.update(_points_from_arrays(coords, np.nonzero(mask)[0], P1P1, p))
    nonrational = sorted((q for q in extra if not q.is_rational()), key=ProjPoint.key)
    return found + nonrational


def singular_points_bruteforce(C: PlaneCurve, p: int | None = None) -> list[ProjPoint]:
    """All singular points in P2(F_{p^2}) by full enumeration (oracle, small p)."""
    C, p = _curve_over(C, p)
    if C.ambient != P2:
        raise ValueError("brute-force oracle is for plane cubics")
    coords = _fp2_plane(p)
    mask = _fp2_singular(C, coords, least_nonresidue(p), p)
    return sorted(_points_from_arrays(coords, np.nonzero(mask)[0], P2, p), key=ProjPoint.key)


def is_smooth(C: PlaneCurve, p: int | None = None, limit: int = 31) -> bool:
    return not singular_points(C, p, 2, limit)


def on_curve_points(C: PlaneCurve, p: int | None = None) -> list[ProjPoint]:
    C, p = _curve_over(C, p)
    pts = ambient_points(C.ambient, p)
    return [ProjPoint(tuple(int(x) for x in row), C.ambient, p) for row in pts[zero_mask(C, p)]]
