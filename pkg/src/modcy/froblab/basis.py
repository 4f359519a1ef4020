"""Named functions of p used as fit bases.

A basis term is a product of factors joined by ``*``:

    1         the constant function
    p, p^j    powers of p
    ap        a_p of the family's associated form (``tau`` is a_p of level 1, weight 12)
    ap[N.k]   a_p of another registry form
    ap[2.10]  the weight-10 newform of level 2
    ap[3.7cm] the weight-7 CM newform of level 3
    chiD      the Kronecker symbol (D/p), D a signed integer
"""

from __future__ import annotations

import re
from functools import lru_cache

from sympy import legendre_symbol

from ..series import PowerSeries, ap as series_ap, divisor_sigma_table, eta_expand, lookup, EtaQuotient

_FACTOR = re.compile(r"^(?:1|p(?:\^(\d+))?|ap(?:\[([0-9a-z.]+)\])?|tau|chi(-?\d+))$")


@lru_cache(maxsize=8)
def _level2_weight10(prec: int) -> tuple[int, ...]:
    """(eta(z) eta(2z))^8 * (2 E2(2z) - E2(z))."""
    f = eta_expand(EtaQuotient(((1, 8), (2, 8))), prec)
    sig = divisor_sigma_table(prec)
    e = [1] + [24 * (sig[n] - (2 * sig[n // 2] if n % 2 == 0 else 0)) for n in range(1, prec)]
    return (f * PowerSeries(tuple(e))).coeffs


def level2_weight10(p: int) -> int:
    size = 64
    while size <= p:
        size *= 2
    return _level2_weight10(size)[p]


def cm_weight7_level3(p: int) -> int:
    """a_p of the CM form attached to the sixth power of the Hecke character of Q(sqrt(-3))."""
    if p == 3:
        raise ValueError("p = 3 is ramified")
    if p % 3 == 2:
        return 0
    # p = A^2 - AB + B^2 = N(A + B*omega); trace of alpha is 2A - B
    for A in range(1, p):
        disc = 4 * p - 3 * A * A
        if disc < 0:
            break
        # solve B^2 - A B + A^2 - p = 0
        root = _isqrt_exact(disc)
        if root is not None and (A + root) % 2 == 0:
            B = (A + root) // 2
            t = 2 * A - B
            s0, s1 = 2, t
            for _ in range(5):
                s0, s1 = s1, t * s1 - p * s0
            return s1
    raise AssertionError(f"no norm representation for {p}")


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def kronecker(D: int, p: int) -> int:
    if p == 2:
        raise ValueError("only odd primes are supported")
    if D % p == 0:
        return 0
    return int(legendre_symbol(D % p, p))


def _form_value(label: str | None, family_form, p: int) -> int:
    if label is None:
        return series_ap(family_form, p)
    if label == "2.10":
        return level2_weight10(p)
    if label == "3.7cm":
        return cm_weight7_level3(p)
    try:
        level, weight = (int(x) for x in label.split("."))
    except ValueError:
        raise ValueError(f"bad form label {label!r}") from None
    return series_ap(lookup(level, weight), p)


def check_term(name: str) -> None:
    for factor in name.split("*"):
        if not _FACTOR.match(factor.strip()):
            raise ValueError(f"unknown basis factor {factor!r} in {name!r}")


def evaluate_term(name: str, p: int, family_form) -> int:
    value = 1
    for factor in name.split("*"):
        factor = factor.strip()
        m = _FACTOR.match(factor)
        if not m:
            raise ValueError(f"unknown basis factor {factor!r} in {name!r}")
        if factor == "1":
            continue
        if factor == "tau":
            value *= series_ap(lookup(1, 12), p)
        elif factor.startswith("p"):
            value *= p ** int(m.group(1) or 1)
        elif factor.startswith("ap"):
            value *= _form_value(m.group(2), family_form, p)
        else:
            value *= kronecker(int(m.group(3)), p)
    return value


def parse_basis(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    for n in names:
        check_term(n)
    return names
