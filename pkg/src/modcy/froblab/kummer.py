"""Point counts on the Kummer surface of E x E."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BadReduction
from ..planegeom.field import Fp2, fp2_elements
from ..planegeom.weierstrass import discriminant_zero, weierstrass_trace


@dataclass(frozen=True)
class KummerCounts:
    a: int
    f2: int
    singular_quotient_count: int
    smooth_model_count: int


def two_torsion_count(A: int, B: int, p: int) -> int:
    """#E[2](F_p): rational roots of x^3 + Ax + B plus the point at infinity."""
    roots = sum(1 for x in range(p) if (x * x * x + A * x + B) % p == 0)
    return roots + 1


def kummer_counts(A: int, B: int, p: int) -> KummerCounts:
    if p == 2:
        raise ValueError("p must be odd")
    if discriminant_zero(A, B, p):
        raise BadReduction(f"y^2 = x^3 + {A}x + {B} is singular mod {p}")
    a = weierstrass_trace(A, B, p)
    f2 = two_torsion_count(A, B, p) ** 2
    singular = (p + 1) ** 2 + a * a
    return KummerCounts(a, f2, singular, singular + p * f2)


# ---------------------------------------------------------------------------
# enumeration oracle


def _frobenius_stable_points(A: int, B: int, p: int):
    """Points P of E(F_{p^2}) with Frob(P) = P or Frob(P) = -P, tagged by the sign(s)."""
    elements = fp2_elements(p)
    roots: dict[Fp2, list[Fp2]] = {}
    for y in elements:
        roots.setdefault(y * y, []).append(y)
    out = {("inf",): {1, -1}}
    for x in elements:
        rhs = x * x * x + x * A + B
        for y in roots.get(rhs, []):
            P = (x, y)
            fx, fy = x.conjugate(), y.conjugate()
            signs = set()
            if fx == x and fy == y:
                signs.add(1)
            if fx == x and fy == -y:
                signs.add(-1)
            if signs:
                out[P] = signs
    return out


def _neg(P):
    return P if P == ("inf",) else (P[0], -P[1])


def kummer_orbit_counts(A: int, B: int, p: int) -> tuple[int, int]:
    """(singular quotient count, smooth model count) by direct enumeration.

    Rational points of (E x E)/(-1) are orbits {x, -x} with Frob(x) = +-x; each
    rational fixed point is blown up into a line carrying p extra points.
    """
    if discriminant_zero(A, B, p):
        raise BadReduction(f"y^2 = x^3 + {A}x + {B} is singular mod {p}")
    pts = _frobenius_stable_points(A, B, p)
    orbits = set()
    fixed = 0
    for P, sp in pts.items():
        for Q, sq in pts.items():
            if not sp & sq:
                continue
            pair, opp = (P, Q), (_neg(P), _neg(Q))
            orbits.add(frozenset((pair, opp)))
            if pair == opp:
                fixed += 1
    return len(orbits), len(orbits) + p * fixed
