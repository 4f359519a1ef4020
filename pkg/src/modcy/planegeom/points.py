"""Projective points and deterministic enumeration of P^n(F_p) and P1xP1(F_p)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .field import Fp2

P2 = "P2"
P1P1 = "P1xP1"

BLOCKS = {P2: (3,), P1P1: (2, 2)}


def is_zero(x) -> bool:
    return not x


def scalar_inverse(x, p: int | None):
    if isinstance(x, Fp2):
        return x.inverse()
    if p is None:
        return 1 / Fraction(x)
    return pow(x, -1, p)


def reduce_scalar(x, p: int | None):
    if p is None or isinstance(x, Fp2):
        return x
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
        return x.numerator * pow(x.denominator, -1, p) % p
    return x % p


def _normalize_block(block, p):
    for c in block:
        if not is_zero(c):
            inv = scalar_inverse(c, p)
            return tuple(reduce_scalar(c * inv, p) for c in block)
    raise ValueError("a homogeneous block has all coordinates zero")


def _fmt(x) -> str:
    return str(x)


@dataclass(frozen=True)
class ProjPoint:
    """Point of P2 or P1xP1, stored normalized (first nonzero entry of each block is 1).

    ``p`` is None for exact rational coordinates, otherwise the characteristic;
    coordinates may then be ints mod p or Fp2 elements.
    """

    coords: tuple
    ambient: str = P2
    p: int | None = None

    def __post_init__(self):
        sizes = BLOCKS[self.ambient]
        raw = tuple(self.coords)
        if len(raw) != sum(sizes):
            raise ValueError(f"{self.ambient} points need {sum(sizes)} coordinates")
        if self.p is None:
            raw = tuple(x if isinstance(x, Fraction) else Fraction(x) for x in raw)
        else:
            raw = tuple(reduce_scalar(x, self.p) for x in raw)
        out, start = [], 0
        for size in sizes:
            out.extend(_normalize_block(raw[start:start + size], self.p))
            start += size
        # rational elements of F_{p^2} are stored as plain residues
        out = [x.a if isinstance(x, Fp2) and x.is_rational() else x for x in out]
        object.__setattr__(self, "coords", tuple(out))

    def key(self) -> str:
        c = [_fmt(x) for x in self.coords]
        if self.ambient == P2:
            return ":".join(c)
        return f"{c[0]}:{c[1]}|{c[2]}:{c[3]}"

    def __str__(self) -> str:
        return f"({self.key()})"

    def reduce(self, p: int) -> ProjPoint:
        return ProjPoint(self.coords, self.ambient, p)

    def is_rational(self) -> bool:
        return not any(isinstance(x, Fp2) and not x.is_rational() for x in self.coords)

    @classmethod
    def parse(cls, text: str, p: int | None = None, ambient: str | None = None) -> ProjPoint:
        """Parse ``1:0:-1`` (P2) or ``1:0|0:1`` (P1xP1)."""
        text = text.strip().strip("()")
        if ambient is None:
            ambient = P1P1 if "|" in text else P2
        parts = text.replace("|", ":").split(":")
        vals = [Fraction(s.strip()) for s in parts]
        if p is not None:
            vals = [reduce_scalar(v, p) for v in vals]
        return cls(tuple(vals), ambient, p)


def as_point(x, ambient: str = P2, p: int | None = None) -> ProjPoint:
    if isinstance(x, ProjPoint):
        return x if (p is None or x.p == p) else x.reduce(p)
    if isinstance(x, str):
        return ProjPoint.parse(x, p, ambient)
    return ProjPoint(tuple(x), ambient, p)


@lru_cache(maxsize=64)
def projective_points(n: int, p: int) -> np.ndarray:
    """Normalized points of P^n(F_p) as rows; leading-one position ascending, then lex."""
    rows = []
    for lead in range(n + 1):
        tail = n - lead
        if tail:
            grid = np.indices((p,) * tail, dtype=np.int64).reshape(tail, -1).T
        else:
            grid = np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((len(grid), n + 1), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = grid
        rows.append(block)
    out = np.concatenate(rows)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def p1p1_points(p: int) -> np.ndarray:
    line = projective_points(1, p)
    m = len(line)
    out = np.concatenate([np.repeat(line, m, axis=0), np.tile(line, (m, 1))], axis=1)
    out.setflags(write=False)
    return out


def ambient_points(ambient: str, p: int) -> np.ndarray:
    return projective_points(2, p) if ambient == P2 else p1p1_points(p)


def point_key(row) -> str:
    return ":".join(str(int(x)) for x in row)
