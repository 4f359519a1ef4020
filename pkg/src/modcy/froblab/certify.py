"""Batch smoothness certification and torsion orders on cubic families."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateLine
from ..planegeom.curves import PlaneCurve, monomial_matrix
from ..planegeom.grouplaw import _Cubic
from ..planegeom.points import P2, projective_points
from .families import Family, fibre_counts, get_family, singular_flags


def smooth_mask(F: Family, p: int, params: np.ndarray, counts: np.ndarray | None = None) -> np.ndarray:
    """True for fibres that are smooth over the algebraic closure.

    A plane cubic with no singular F_p-point can still be singular only as a
    rational line plus a conic meeting it in a conjugate pair, and then it has
    exactly 2p + 2 points. A conjugate triangle of lines is excluded because
    every fibre carries a rational base point that would be a vertex. So only
    fibres with 2p + 2 points need the exact line-component test.
    """
    if F.ambient != P2:
        raise ValueError("batch certification is for plane cubic families")
    if counts is None:
        counts = fibre_counts(F, p, params)
    ok = ~singular_flags(F, p, params)
    suspects = np.nonzero(ok & (counts == 2 * p + 2))[0]
    if len(suspects):
        ok[suspects[has_line_component(params[suspects] @ F.basis_mod_p(p) % p, p)]] = False
    return ok


def has_line_component(coeffs: np.ndarray, p: int) -> np.ndarray:
    """Rows of cubic coefficients that contain an F_p-rational line.

    Batched form of rational_line_components: a line meeting a cubic in four
    or more points lies in it.
    """
    pts = projective_points(2, p)
    incidence = ((pts @ pts.T) % p == 0).astype(np.float64)  # lines x points
    V = monomial_matrix(P2, p).astype(np.float64)
    out = np.empty(len(coeffs), dtype=bool)
    for start in range(0, len(coeffs), 256):
        block = coeffs[start:start + 256].astype(np.float64)
        Z = (np.fmod(V @ block.T, p) == 0).astype(np.float64)
        out[start:start + 256] = ((incidence @ Z) >= 4).any(axis=0)
    return out


def point_order(f: _Cubic, o: tuple, oo: tuple, x: tuple, bound: int) -> int | None:
    """Order of x with origin o, or None if it exceeds bound."""
    R = x
    for m in range(1, bound + 1):
        if R == o:
            return m
        R = f.third(f.third(R, x), o)
    return None


@dataclass(frozen=True)
class TorsionReport:
    family: str
    p: int
    expected: int
    fibres: int
    smooth: int
    orders: tuple[tuple[int | None, int], ...]
    exceptions: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.exceptions and all(order == self.expected for order, _ in self.orders)

    def render(self) -> str:
        hist = " ".join(f"{'>' + str(self.expected) if o is None else o}:{n}" for o, n in self.orders)
        line = (f"{self.family} p {self.p} fibres {self.fibres} smooth {self.smooth} "
                f"expected {self.expected} orders {hist or '-'}")
        return line + "".join(f"\n  exception {e}" for e in self.exceptions[:5])


def torsion_orders(F: Family | str, p: int) -> TorsionReport:
    if isinstance(F, str):
        F = get_family(F)
    params = F.parameters(p)
    smooth = smooth_mask(F, p, params)
    o_pt, x_pt, expected = F.marked(p)
    o, x = o_pt.coords, x_pt.coords
    basis = F.basis_mod_p(p)
    coeffs = (params[smooth] @ basis % p).tolist()
    keys = params[smooth]
    hist: Counter = Counter()
    exceptions = []
    for row, key in zip(coeffs, keys):
        f = _Cubic(row, p)
        try:
            oo = f.third(o, o)
            order = point_order(f, o, oo, x, expected + 1)
        except DegenerateLine as exc:
            exceptions.append(f"{':'.join(map(str, key))} {exc}")
            continue
        hist[order] += 1
        if order != expected:
            exceptions.append(f"{':'.join(map(str, key))} order {order}")
    orders = tuple(sorted(hist.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)))
    return TorsionReport(F.id, p, expected, len(params), int(smooth.sum()), orders, tuple(exceptions))


def fibre_curve(F: Family, param, p: int) -> PlaneCurve:
    return F.fibre(param, p)
