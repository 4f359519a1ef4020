"""Chord-tangent construction on plane cubics with an arbitrary smooth origin."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import DegenerateLine, NotFound
from .curves import PlaneCurve
from .points import P2, ProjPoint, as_point


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


class _Cubic:
    """Hot-path evaluator for a ternary cubic over F_p on raw coordinate tuples."""

    __slots__ = ("c", "p")

    def __init__(self, coeffs, p):
        self.c = tuple(int(x) for x in coeffs)
        self.p = p

    def value(self, P):
        c0, c1, c2, c3, c4, c5, c6, c7, c8, c9 = self.c
        X, Y, Z = P
        return (X * X * (c0 * X + c1 * Y + c2 * Z) + X * (c3 * Y * Y + c4 * Y * Z + c5 * Z * Z)
                + Y * Y * (c6 * Y + c7 * Z) + Z * Z * (c8 * Y + c9 * Z)) % self.p

    def grad(self, P):
        c0, c1, c2, c3, c4, c5, c6, c7, c8, c9 = self.c
        X, Y, Z = P
        p = self.p
        return ((3 * c0 * X * X + 2 * c1 * X * Y + 2 * c2 * X * Z + c3 * Y * Y + c4 * Y * Z + c5 * Z * Z) % p,
                (c1 * X * X + 2 * c3 * X * Y + c4 * X * Z + 3 * c6 * Y * Y + 2 * c7 * Y * Z + c8 * Z * Z) % p,
                (c2 * X * X + c4 * X * Y + 2 * c5 * X * Z + c7 * Y * Y + 2 * c8 * Y * Z + 3 * c9 * Z * Z) % p)

    def normalize(self, R):
        p = self.p
        for v in R:
            v %= p
            if v:
                inv = pow(v, -1, p)
                return (R[0] * inv % p, R[1] * inv % p, R[2] * inv % p)
        raise DegenerateLine("the line through the points lies in the curve")

    def other_point(self, L, P):
        """A point on the line L distinct from P."""
        p = self.p
        for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            Q = _cross(L, e)
            if any(x % p for x in Q) and any(x % p for x in _cross(P, Q)):
                return tuple(x % p for x in Q)
        raise AssertionError("a line has more than one point")

    def third(self, P, Q):
        if P == Q:
            L = self.grad(P)
            if not any(L):
                raise DegenerateLine(f"no tangent line at the singular point {P}")
            Q2 = self.other_point(L, P)
            f = self.value(Q2)
            g = _dot(self.grad(Q2), P)
            return self.normalize((f * P[0] - g * Q2[0], f * P[1] - g * Q2[1], f * P[2] - g * Q2[2]))
        c1 = _dot(self.grad(Q), P)
        c2 = _dot(self.grad(P), Q)
        return self.normalize((c1 * P[0] - c2 * Q[0], c1 * P[1] - c2 * Q[1], c1 * P[2] - c2 * Q[2]))


def _third_exact(C: PlaneCurve, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    if P == Q:
        L = C.gradient(P)
        if not any(L):
            raise DegenerateLine(f"no tangent line at the singular point {P}")
        Q2 = None
        for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            cand = _cross(L, e)
            if any(cand) and any(_cross(P.coords, cand)):
                Q2 = cand
                break
        f = C(Q2)
        g = _dot(C.gradient(Q2), P.coords)
        R = tuple(f * a - g * b for a, b in zip(P.coords, Q2))
    else:
        c1 = _dot(C.gradient(Q), P.coords)
        c2 = _dot(C.gradient(P), Q.coords)
        R = tuple(c1 * a - c2 * b for a, b in zip(P.coords, Q.coords))
    if not any(R):
        raise DegenerateLine("the line through the points lies in the curve")
    return ProjPoint(R, P2)


def third_intersection(C: PlaneCurve, P, Q) -> ProjPoint:
    """Residual point R with P + Q + R cut out by a line (the tangent line if P = Q)."""
    if C.ambient != P2:
        raise ValueError("the chord construction needs a plane cubic")
    P, Q = as_point(P, P2, C.p), as_point(Q, P2, C.p)
    for pt in (P, Q):
        if not C.contains(pt):
            raise ValueError(f"{pt} is not on the curve")
    if C.p is None:
        return _third_exact(C, P, Q)
    return ProjPoint(_Cubic(C.coeffs, C.p).third(P.coords, Q.coords), P2, C.p)


@dataclass(frozen=True)
class CubicWithOrigin:
    """A plane cubic over F_p with a chosen smooth origin.

    Smoothness of the whole curve is the caller's responsibility; the origin
    itself is checked.
    """

    curve: PlaneCurve
    origin: ProjPoint
    _fast: _Cubic = field(init=False, repr=False, compare=False)
    _oo: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.curve.p is None or self.curve.ambient != P2:
            raise ValueError("group law is implemented for plane cubics over F_p")
        o = as_point(self.origin, P2, self.curve.p)
        object.__setattr__(self, "origin", o)
        if not self.curve.contains(o):
            raise ValueError(f"origin {o} is not on the curve")
        fast = _Cubic(self.curve.coeffs, self.curve.p)
        if not any(fast.grad(o.coords)):
            raise ValueError(f"origin {o} is a singular point")
        object.__setattr__(self, "_fast", fast)
        object.__setattr__(self, "_oo", fast.third(o.coords, o.coords))

    @property
    def p(self) -> int:
        return self.curve.p

    def _pt(self, P) -> tuple:
        P = as_point(P, P2, self.p)
        if not self.curve.contains(P):
            raise ValueError(f"{P} is not on the curve")
        return P.coords

    def add_raw(self, P: tuple, Q: tuple) -> tuple:
        f = self._fast
        return f.third(f.third(P, Q), self.origin.coords)

    def neg_raw(self, P: tuple) -> tuple:
        return self._fast.third(P, self._oo)

    def add(self, P, Q) -> ProjPoint:
        return ProjPoint(self.add_raw(self._pt(P), self._pt(Q)), P2, self.p)

    def neg(self, P) -> ProjPoint:
        return ProjPoint(self.neg_raw(self._pt(P)), P2, self.p)

    def multiple(self, P, m: int) -> ProjPoint:
        P = self._pt(P)
        if m < 0:
            P, m = self.neg_raw(P), -m
        R = self.origin.coords
        for _ in range(m):
            R = self.add_raw(R, P)
        return ProjPoint(R, P2, self.p)

    def order(self, P, bound: int) -> int:
        P = self._pt(P)
        o = self.origin.coords
        R = P
        for m in range(1, bound + 1):
            if R == o:
                return m
            R = self.add_raw(R, P)
        raise NotFound(f"no m <= {bound} with m*P = o")


def cubic_add(G: CubicWithOrigin, P, Q) -> ProjPoint:
    return G.add(P, Q)


def cubic_neg(G: CubicWithOrigin, P) -> ProjPoint:
    return G.neg(P)


def cubic_order(G: CubicWithOrigin, P, bound: int) -> int:
    return G.order(P, bound)
