"""Prime fields and their quadratic extensions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import isprime


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, x: int) -> int:
        return x % self.p

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(x, -1, self.p)

    def chi(self, x: int) -> int:
        """Quadratic character, with chi(0) = 0."""
        x %= self.p
        if x == 0:
            return 0
        if self.p == 2:
            return 1
        return 1 if pow(x, (self.p - 1) // 2, self.p) == 1 else -1

    def chi_table(self) -> np.ndarray:
        return chi_table(self.p)

    def nonresidue(self) -> int:
        return least_nonresidue(self.p)


@lru_cache(maxsize=None)
def chi_table(p: int) -> np.ndarray:
    table = np.full(p, -1, dtype=np.int64)
    table[0] = 0
    table[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    if p == 2:
        raise ValueError("F_4 is not realized as a square-root extension")
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class Fp2:
    """Element a + b*w of F_p(w), w^2 = n the least non-residue mod p."""

    a: int
    b: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    @property
    def w2(self) -> int:
        return least_nonresidue(self.p)

    def _lift(self, other) -> Fp2:
        if isinstance(other, Fp2):
            return other
        if isinstance(other, int):
            return Fp2(other, 0, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return Fp2(self.a + o.a, self.b + o.b, self.p)

    __radd__ = __add__

    def __neg__(self):
        return Fp2(-self.a, -self.b, self.p)

    def __sub__(self, other):
        o = self._lift(other)
        return Fp2(self.a - o.a, self.b - o.b, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return Fp2(self.a * o.a + self.w2 * self.b * o.b, self.a * o.b + self.b * o.a, self.p)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result, base = Fp2(1, 0, self.p), self
        if e < 0:
            base, e = self.inverse(), -e
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.p
        if isinstance(other, Fp2):
            return (self.a, self.b, self.p) == (other.a, other.b, other.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.p))

    def norm(self) -> int:
        return (self.a * self.a - self.w2 * self.b * self.b) % self.p

    def conjugate(self) -> Fp2:
        return Fp2(self.a, -self.b, self.p)

    def inverse(self) -> Fp2:
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("zero has no inverse")
        ninv = pow(nm, -1, self.p)
        return Fp2(self.a * ninv, -self.b * ninv, self.p)

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}w"


def fp2_elements(p: int) -> list[Fp2]:
    return [Fp2(a, b, p) for b in range(p) for a in range(p)]
