"""Pinned fit bases and the exact moment identities found by oracle runs.

ACCEPTANCE holds the basis each moment suite fits and validates. Where the
suite's listed basis admits an exact fit, or a small documented extension of
it does, that basis is pinned; otherwise the listed basis is pinned as is and
the suite reports its failure.

IDENTITIES records complete exact identities (with their own exponent r),
shown by the suites as diagnostics.
"""

from __future__ import annotations

from fractions import Fraction

ACCEPTANCE = {
    "level1_weierstrass": {
        "r": 10,
        "basis": ("tau", "p*tau", "1", "p", "p^2", "p^3", "p^4", "p^5", "p^6"),
        "fit": "first9",
        "validate": (7, 97),
    },
    "level5_cubic": {
        "r": 2,
        "basis": ("ap", "p", "p^2", "p*chi5"),
        "fit": (7, 11, 13, 17),
        "validate": (7, 199),
    },
    "level4_cubic": {
        "r": 4,
        "basis": ("ap", "1", "p", "p^2", "p^3", "p^4"),
        "fit": (7, 11, 13, 17, 19, 23),
        "validate": (7, 149),
    },
    "level3_cubic": {
        "r": 4,
        "basis": ("ap", "p*ap", "1", "p", "p^2", "p^3"),
        "fit": (7, 11, 13, 17, 19, 23),
        "validate": (7, 61),
    },
    "level2_cubic": {
        "r": 6,
        "basis": ("ap", "p*ap", "1", "p", "p^2", "p^3", "p^4"),
        "fit": (7, 11, 13, 17, 19, 23, 29),
        "validate": (7, 31),
    },
}


def _coeffs(*pairs):
    return tuple((name, Fraction(c)) for name, c in pairs)


IDENTITIES = {
    "level1_weierstrass": [{
        "r": 10,
        "terms": _coeffs(("tau", 1), ("p*tau", -1), ("1", 1), ("p", 8), ("p^2", 26), ("p^3", 40),
                         ("p^4", 15), ("p^5", -90), ("p^6", -42), ("p^7", 42)),
        "range": (7, 97),
    }],
    "level5_cubic": [{
        "r": 2,
        "terms": _coeffs(("ap", -1), ("p", -8), ("p^2", 6), ("p*chi5", -1)),
        "range": (7, 199),
    }],
    "level4_cubic": [{
        "r": 4,
        "terms": _coeffs(("ap", -1), ("1", -1), ("p", -17), ("p^2", 20), ("p^3", -30), ("p^4", 17)),
        "range": (7, 149),
    }],
    "level3_cubic": [
        {
            "r": 4,
            "terms": _coeffs(("ap", 2), ("p*ap", -1), ("ap[3.7cm]", 1), ("p", 18), ("p^2", 27),
                             ("p^3", -60), ("p^4", 35), ("p^5", 3), ("p*chi-3", 4), ("p^2*chi-3", 5)),
            "range": (7, 61),
        },
        {
            "r": 3,
            "terms": _coeffs(("ap", 1), ("p", 12), ("p^2", 9), ("p^3", -14), ("p^4", -3),
                             ("p*chi-3", 4), ("p^2*chi-3", -2)),
            "range": (7, 61),
        },
    ],
    "level2_cubic": [
        {
            "r": 6,
            "terms": _coeffs(("ap[2.10]", -1), ("ap", -3), ("p*ap", -3), ("p^2*ap", -1),
                             ("p", -15), ("p^2", -246), ("p^3", 496), ("p^4", -952), ("p^5", 1084),
                             ("p^6", -601), ("p^7", 193), ("p^8", 2)),
            "range": (7, 31),
        },
        {
            "r": 4,
            "terms": _coeffs(("ap", -1), ("p", -9), ("p^2", -83), ("p^3", 137), ("p^4", -103),
                             ("p^5", 51), ("p^6", 2)),
            "range": (7, 31),
        },
    ],
}
