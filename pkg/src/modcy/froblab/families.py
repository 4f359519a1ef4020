"""Registry of elliptic families and their fibre-count machinery."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from sympy import isprime, primefactors

from .. import constructions
from ..errors import BadPrime
from ..linsys import LinearSystem, nullspace_mod_p, reduce_mod_p
from ..planegeom.curves import COUNTERS, PlaneCurve, divisible, monomial_matrix, partial_matrices
from ..planegeom.points import P1P1, P2, ProjPoint, point_key, projective_points
from ..planegeom.weierstrass import discriminant_mask, weierstrass_traces
from ..series import NewformSpec, lookup

WEIERSTRASS = "weierstrass"
CHUNK = 2048


def _bad_primes(level: int) -> frozenset[int]:
    return frozenset({2, 3, 5} | set(primefactors(level)))


# ---------------------------------------------------------------------------
# predicates for the nonlinear (2,2) conditions


def _restrict_ruling(coeffs, factor: int, point) -> list[int]:
    """Binary quadratic (coefficients of the free factor's monomials, degree 2..0)
    obtained by fixing one factor of P1xP1 to ``point``."""
    a0, b0 = point
    out = [0, 0, 0]
    for idx, c in enumerate(coeffs):
        if not c:
            continue
        a, b = divmod(idx, 3)
        a, b = 2 - a, 2 - b  # exponents of U and V
        if factor == 0:
            out[2 - b] += c * a0 ** a * b0 ** (2 - a)
        else:
            out[2 - a] += c * a0 ** b * b0 ** (2 - b)
    return out


def _residual_root(q, known, p):
    """Second root of q0 x^2 + q1 xy + q2 y^2 given the root ``known``; None if q = 0."""
    q0, q1, q2 = (x % p for x in q)
    if not (q0 or q1 or q2):
        return None
    x0, y0 = known
    # q = c (y0 x - x0 y)(y1 x - x1 y)
    if y0 % p:
        return (-(q1 * y0 + x0 * q0) % p, q0 * y0 % p)
    return (q2, -q1 % p)


def _same_p1(P, Q, p) -> bool:
    return (P[0] * Q[1] - P[1] * Q[0]) % p == 0


def level4_22_predicate(coeffs, p) -> bool:
    """Residual points of E on P1 x {0} and P1 x {1} share their first coordinate."""
    u = _residual_root(_restrict_ruling(coeffs, 1, (0, 1)), (0, 1), p)
    v = _residual_root(_restrict_ruling(coeffs, 1, (1, 1)), (1, 1), p)
    return u is not None and v is not None and _same_p1(u, v, p)


def level2_22_predicate(coeffs, p) -> bool:
    """The vertical ruling through the residual point (u,0) is tangent there."""
    u = _residual_root(_restrict_ruling(coeffs, 1, (0, 1)), (0, 1), p)
    if u is None:
        return False
    q = _restrict_ruling(coeffs, 0, u)
    # tangency at v = (0:1): the T^2 and V*T coefficients vanish
    return q[2] % p == 0 and q[1] % p == 0 and any(x % p for x in q)


# ---------------------------------------------------------------------------

_BASIS_CACHE: dict[tuple[str, int], np.ndarray] = {}


@dataclass(frozen=True)
class Family:
    id: str
    ambient: str
    level: int
    weight: int
    r: int
    construction: Optional[str] = None
    predicate: Optional[Callable] = None
    torsion: Optional[tuple] = None
    summary: str = ""

    @property
    def form(self) -> NewformSpec:
        return lookup(self.level, self.weight)

    @property
    def bad_primes(self) -> frozenset[int]:
        return _bad_primes(self.level)

    def is_good(self, p: int) -> bool:
        return isprime(p) and p > 5 and self.level % p != 0

    def check_prime(self, p: int) -> None:
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if not self.is_good(p):
            raise BadPrime(f"{p} is a bad prime for {self.id} (policy: p > 5 and p does not divide {self.level})")

    def good_primes(self, lo: int, hi: int) -> list[int]:
        return [p for p in range(lo, hi + 1) if self.is_good(p)]

    def system(self) -> LinearSystem:
        if self.construction is None:
            raise ValueError(f"{self.id} is not a linear family")
        return constructions.system(self.construction, self.bad_primes)

    @property
    def param_dim(self) -> int:
        return 2 if self.ambient == WEIERSTRASS else self.system().dim

    def basis_mod_p(self, p: int) -> np.ndarray:
        key = (self.id, p)
        if key not in _BASIS_CACHE:
            rows = [[int(c) for c in C.coeffs] for C in reduce_mod_p(self.system(), p)]
            _BASIS_CACHE[key] = np.array(rows, dtype=np.int64)
            _BASIS_CACHE[key].setflags(write=False)
        return _BASIS_CACHE[key]

    def parameters(self, p: int) -> np.ndarray:
        """Parameter rows in canonical order, after the predicate."""
        self.check_prime(p)
        if self.ambient == WEIERSTRASS:
            A, B = np.nonzero(~discriminant_mask(p))
            return np.stack([A, B], axis=1).astype(np.int64)
        params = projective_points(self.system().dim - 1, p)
        if self.predicate is None:
            return params
        coeffs = params @ self.basis_mod_p(p) % p
        keep = [i for i, row in enumerate(coeffs.tolist()) if self.predicate(row, p)]
        return params[keep]

    def fibre(self, param, p: int) -> PlaneCurve:
        if self.ambient == WEIERSTRASS:
            A, B = (int(x) for x in param)
            # y^2 z = x^3 + A x z^2 + B z^3
            return PlaneCurve((1, 0, 0, 0, 0, A, 0, -1, 0, B), P2, p)
        coeffs = np.asarray(param, dtype=np.int64) @ self.basis_mod_p(p) % p
        return PlaneCurve(tuple(int(c) for c in coeffs), self.ambient, p)

    def param_key(self, param) -> str:
        return point_key(param)

    def marked(self, p: int):
        if self.torsion is None:
            raise ValueError(f"{self.id} has no marked torsion point")
        o, x, order = self.torsion
        return ProjPoint.parse(o, p), ProjPoint.parse(x, p), order


def _cubic(fid, level, weight, r, summary):
    return Family(fid, P2, level, weight, r, construction=fid, torsion=constructions.TORSION[fid],
                  summary=summary)


FAMILIES: dict[str, Family] = {
    "level1_weierstrass": Family("level1_weierstrass", WEIERSTRASS, 1, 12, 10,
                                 summary="y^2 = x^3 + Ax + B over all (A,B) with 4A^3+27B^2 != 0"),
    "level2_cubic": _cubic("level2_cubic", 2, 8, 6, "web of cubics with a 2-torsion section"),
    "level3_cubic": _cubic("level3_cubic", 3, 6, 4, "net of cubics with a 3-torsion section"),
    "level4_cubic": _cubic("level4_cubic", 4, 6, 4, "pencil of cubics with a 4-torsion section"),
    "level5_cubic": _cubic("level5_cubic", 5, 4, 2, "pencil of cubics with a 5-torsion section"),
    "level2_22": Family("level2_22", P1P1, 2, 8, 6, construction="level2_22",
                        predicate=level2_22_predicate, summary="(2,2)-forms, level 2 alternate"),
    "level3_22": Family("level3_22", P1P1, 3, 6, 4, construction="level3_22",
                        summary="(2,2)-forms, level 3 alternate"),
    "level4_22": Family("level4_22", P1P1, 4, 6, 4, construction="level4_22",
                        predicate=level4_22_predicate, summary="(2,2)-forms, level 4 alternate"),
    "level5_22": Family("level5_22", P1P1, 5, 4, 2, construction="level5_22",
                        summary="(2,2)-forms, level 5 alternate"),
}

CUBIC_FAMILIES = ("level2_cubic", "level3_cubic", "level4_cubic", "level5_cubic")


def get_family(fid: str) -> Family:
    try:
        return FAMILIES[fid]
    except KeyError:
        raise KeyError(f"unknown family {fid!r}; known: {', '.join(FAMILIES)}") from None


# ---------------------------------------------------------------------------
# vectorized fibre counts


def _chunks(n: int, size: int = CHUNK):
    for start in range(0, n, size):
        yield slice(start, min(n, start + size))


def fibre_counts(F: Family, p: int, params: np.ndarray) -> np.ndarray:
    """n_t for each parameter row, by enumeration of the ambient plane."""
    COUNTERS["curve_counts"] += len(params)
    if F.ambient == WEIERSTRASS:
        traces = weierstrass_traces(p)
        return p + 1 - traces[params[:, 0], params[:, 1]]
    V = (monomial_matrix(F.ambient, p) @ F.basis_mod_p(p).T % p).astype(np.float64)
    out = np.empty(len(params), dtype=np.int64)
    T = params.astype(np.float64)
    for sl in _chunks(len(params)):
        out[sl] = divisible(V @ T[sl].T, p).sum(axis=0)
    return out


def _codes(rows: np.ndarray, p: int) -> np.ndarray:
    """Injective integer code of normalized projective rows."""
    code = np.zeros(len(rows), dtype=np.int64)
    for col in range(rows.shape[1]):
        code = code * p + rows[:, col]
    return code


def _normalize_rows(rows: np.ndarray, p: int) -> np.ndarray:
    lead = rows[np.arange(len(rows)), (rows != 0).argmax(axis=1)]
    inv = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    return rows * inv[lead][:, None] % p


def singular_parameters(F: Family, p: int) -> np.ndarray:
    """Codes of parameters whose fibre is singular at some F_p-point.

    At a fixed point the fibres singular there form a linear subspace of the
    parameter space, cut out by the value and the partials of the basis.
    """
    B = F.basis_mod_p(p).T
    mats = [monomial_matrix(F.ambient, p) @ B % p] + [D @ B % p for D in partial_matrices(F.ambient, p)]
    stacked = np.stack(mats, axis=1)  # points x conditions x dim
    d = B.shape[1]
    found = []
    for A in stacked.tolist():
        kernel = nullspace_mod_p(A, d, p)
        if not kernel:
            continue
        K = np.array(kernel, dtype=np.int64)
        span = projective_points(len(kernel) - 1, p) @ K % p
        found.append(_codes(_normalize_rows(span, p), p))
    if not found:
        return np.zeros(0, dtype=np.int64)
    return np.unique(np.concatenate(found))


def singular_flags(F: Family, p: int, params: np.ndarray) -> np.ndarray:
    """True where the fibre has a singular F_p-point (no point counts involved)."""
    if F.ambient == WEIERSTRASS:
        return np.zeros(len(params), dtype=bool)
    return np.isin(_codes(params, p), singular_parameters(F, p))


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
