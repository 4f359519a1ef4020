"""Trace calculus for symmetric powers and Rankin products, and the level-11 curve."""

from __future__ import annotations

from ..planegeom.weierstrass import general_trace

# y^2 + y = x^3 - x^2 - 10x - 20, as (a1, a2, a3, a4, a6)
SHIMURA_CURVE = (0, -1, 1, -10, -20)


def sym_trace(a: int, p: int, k: int, m: int) -> int:
    """Trace of Sym^m on an eigenvalue pair with sum a and product p^(k-1)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    w = p ** (k - 1)
    prev, cur = 1, a
    if m == 0:
        return 1
    for _ in range(m - 1):
        prev, cur = cur, a * cur - w * prev
    return cur


def rankin_trace(a_g: int, a_h: int) -> int:
    return a_g * a_h


def rankin_weight(k: int, r: int) -> int:
    """Motivic weight attached to the Rankin product of weights k and r."""
    return k + r - 2


def shimura_trace(p: int) -> int:
    """p + 1 - #E(F_p) for the conductor-11 model."""
    if p == 11:
        raise ValueError("11 is the bad prime of the model")
    return general_trace(*SHIMURA_CURVE, p)
