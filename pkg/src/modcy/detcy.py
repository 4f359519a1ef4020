"""Anticanonical sections of the four-point blow-up of P2 and the determinantal fibration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DegeneratePoint, NotGeneral, SingularFibre
from .linsys import Condition, determinant, determinant_mod_p, nullspace_mod_p, rank, rank_mod_p, solve_conditions
from .planegeom.curves import PlaneCurve, _monomial, CUBIC_EXPONENTS, singular_points
from .planegeom.grouplaw import CubicWithOrigin
from .planegeom.points import P2, ProjPoint, as_point

BASE_POINTS = ("1:0:0", "0:1:0", "0:0:1", "1:1:1")


@dataclass(frozen=True)
class AnticanonicalBasis:
    base_points: tuple[ProjPoint, ...]
    basis: tuple[tuple[Fraction, ...], ...]

    def curves(self) -> list[PlaneCurve]:
        return [PlaneCurve(v) for v in self.basis]


@lru_cache(maxsize=1)
def anticanonical_basis() -> AnticanonicalBasis:
    system = solve_conditions(P2, [Condition.through(b) for b in BASE_POINTS])
    return AnticanonicalBasis(tuple(as_point(b) for b in BASE_POINTS), system.basis)


@lru_cache(maxsize=16)
def _basis_mod_p(p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(x.numerator * pow(x.denominator, -1, p) % p for x in v)
                 for v in anticanonical_basis().basis)


def _points(points, p) -> list[ProjPoint]:
    pts = [as_point(P, P2, p) for P in points]
    bases = {as_point(b, P2, p) for b in BASE_POINTS}
    for P in pts:
        if P in bases:
            raise DegeneratePoint(f"{P} is a base point of the anticanonical system")
    return pts


def section_matrix(points: Sequence, p: int | None = None) -> list[list]:
    """6 x n matrix B_i(P_j); points normalized with first nonzero coordinate 1."""
    pts = _points(points, p)
    basis = _basis_mod_p(p) if p is not None else anticanonical_basis().basis
    rows = []
    for v in basis:
        row = []
        for P in pts:
            val = sum(c * _monomial(e, P.coords) for c, e in zip(v, CUBIC_EXPONENTS) if c)
            row.append(val % p if p is not None else val)
        rows.append(row)
    return rows


def rank_profile(points: Sequence, p: int | None = None) -> int:
    M = section_matrix(points, p)
    return rank_mod_p(M, p) if p is not None else rank(M)


def det6(points: Sequence, p: int | None = None):
    if len(points) != 6:
        raise ValueError("det6 needs exactly six points")
    M = section_matrix(points, p)
    return determinant_mod_p(M, p) if p is not None else determinant(M)


def v6_member(points: Sequence, p: int | None = None) -> bool:
    return det6(points, p) == 0


def fibre_cubic(fixed5: Sequence, p: int) -> PlaneCurve:
    """The cubic through the base points and the five given points."""
    if len(fixed5) != 5:
        raise ValueError("fibre_cubic needs five points")
    M = section_matrix(fixed5, p)
    columns = [list(col) for col in zip(*M)]  # one row per point
    if rank_mod_p(columns, p) < 5:
        raise NotGeneral("the five points impose fewer than five conditions")
    (kernel,) = nullspace_mod_p(columns, 6, p)
    lead = next(x for x in kernel if x)
    inv = pow(lead, -1, p)
    kernel = [x * inv % p for x in kernel]
    basis = _basis_mod_p(p)
    coeffs = tuple(sum(k * v[i] for k, v in zip(kernel, basis)) % p for i in range(10))
    return PlaneCurve(coeffs, P2, p)


def fibre_group(fixed5: Sequence, p: int) -> CubicWithOrigin:
    """Fibre cubic with origin at the fifth point, after certifying smoothness."""
    C = fibre_cubic(fixed5, p)
    if singular_points(C, p, 2, limit=max(p, 31)):
        raise SingularFibre("the fibre cubic is singular")
    return CubicWithOrigin(C, as_point(fixed5[4], P2, p))


def tau_fibre(fixed5: Sequence, Q, p: int, group: CubicWithOrigin | None = None) -> ProjPoint:
    G = group or fibre_group(fixed5, p)
    return G.neg(Q)
