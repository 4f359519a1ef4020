"""Character-sum point counts for Weierstrass models."""

from __future__ import annotations

import numpy as np

from ..errors import BadReduction
from .field import chi_table


def discriminant_zero(A: int, B: int, p: int) -> bool:
    return (4 * A ** 3 + 27 * B ** 2) % p == 0


def weierstrass_trace(A: int, B: int, p: int) -> int:
    """Frobenius trace of y^2 = x^3 + A x + B over F_p (p odd)."""
    if p == 2:
        raise ValueError("the character method needs odd p")
    A, B = A % p, B % p
    if discriminant_zero(A, B, p):
        raise BadReduction(f"y^2 = x^3 + {A}x + {B} is singular mod {p}")
    x = np.arange(p, dtype=np.int64)
    return -int(chi_table(p)[(x * x % p * x + A * x + B) % p].sum())


def weierstrass_traces(p: int) -> np.ndarray:
    """Matrix a[A, B] of traces for all pairs (zero where the model is singular)."""
    chi = chi_table(p)
    x = np.arange(p, dtype=np.int64)
    cube = x * x % p * x % p
    out = np.zeros((p, p), dtype=np.int64)
    for A in range(p):
        base = (cube + A * x) % p
        vals = (base[None, :] + x[:, None]) % p  # rows indexed by B
        out[A] = -chi[vals].sum(axis=1)
    out[discriminant_mask(p)] = 0
    return out


def discriminant_mask(p: int) -> np.ndarray:
    """Boolean matrix, True where 4A^3 + 27B^2 vanishes mod p."""
    a = np.arange(p, dtype=np.int64)
    return (4 * (a * a % p * a % p)[:, None] + 27 * (a * a % p)[None, :]) % p == 0


def affine_count(a1: int, a2: int, a3: int, a4: int, a6: int, p: int) -> int:
    """Affine points of y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6 by enumeration."""
    x = np.arange(p, dtype=np.int64)
    y = np.arange(p, dtype=np.int64)
    X, Y = np.meshgrid(x, y, indexing="ij")
    lhs = (Y * Y + a1 * X * Y + a3 * Y) % p
    rhs = (X * X % p * X + a2 * X * X + a4 * X + a6) % p
    return int((lhs == rhs).sum())


def general_trace(a1: int, a2: int, a3: int, a4: int, a6: int, p: int) -> int:
    """p + 1 - #E(F_p) for a long Weierstrass model."""
    if p == 2:
        return p - affine_count(a1, a2, a3, a4, a6, p)
    b2 = a1 * a1 + 4 * a2
    b4 = a1 * a3 + 2 * a4
    b6 = a3 * a3 + 4 * a6
    x = np.arange(p, dtype=np.int64)
    rhs = (4 * (x * x % p * x % p) + b2 * x * x + 2 * b4 * x + b6) % p
    return -int(chi_table(p)[rhs].sum())
