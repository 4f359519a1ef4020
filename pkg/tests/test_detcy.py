import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from modcy import detcy
from modcy.errors import DegeneratePoint, NotGeneral, SingularFibre
from modcy.planegeom import PlaneCurve, ProjPoint, cubic_add, on_curve_points, projective_points

FIVE = "1:8:1 5:9:1 4:4:1 8:9:1 9:8:1".split()
SINGULAR_FIVE = "2:3:1 3:5:1 4:1:1 5:7:1 6:2:1".split()
X, Y, Z = sp.symbols("X Y Z")


def random_points(rng, p, n):
    bases = {ProjPoint.parse(b, p) for b in detcy.BASE_POINTS}
    out = []
    while len(out) < n:
        P = ProjPoint((rng.randrange(p), rng.randrange(p), 1), "P2", p)
        if P not in bases and P not in out:
            out.append(P)
    return out


def kernel_by_search(points, p):
    """All projective coefficient vectors in the 6-dim system vanishing at the points, by enumeration."""
    M = np.array(detcy.section_matrix(points, p), dtype=np.int64)  # 6 x n
    params = projective_points(5, p)
    return params[((params @ M) % p == 0).all(axis=1)]


def test_anticanonical_basis():
    A = detcy.anticanonical_basis()
    assert len(A.basis) == 6
    for v in A.basis:
        C = PlaneCurve(v)
        assert all(C(P.coords) == 0 for P in A.base_points)
    assert sp.Matrix([list(v) for v in A.basis]).rank() == 6


def test_section_matrix_by_substitution():
    pts = ["2:3:5", "1:-1:4"]
    M = detcy.section_matrix(pts)
    for i, C in enumerate(detcy.anticanonical_basis().curves()):
        for j, P in enumerate(pts):
            a, b, c = (sp.Integer(int(x)) for x in P.split(":"))
            # the matrix uses the normalized representative (first coordinate 1)
            expr = sp.sympify(str(C).replace("^", "**")).subs({X: 1, Y: b / a, Z: c / a})
            assert Fraction(int(sp.numer(expr)), int(sp.denom(expr))) == M[i][j]


def test_base_points_rejected():
    with pytest.raises(DegeneratePoint):
        detcy.rank_profile(["1:1:1", "2:3:5"])
    with pytest.raises(DegeneratePoint):
        detcy.section_matrix(["8:8:8"], 7)


def test_rank_examples():
    assert detcy.rank_profile(["2:3:5"] * 4, 101) == 1
    rng = random.Random(11)
    for n in range(1, 6):
        assert detcy.rank_profile(random_points(rng, 101, n), 101) == n


def test_six_points_on_a_member():
    C = PlaneCurve(detcy.anticanonical_basis().basis[2], "P2", 101)
    on = [P for P in on_curve_points(C) if P.key() not in detcy.BASE_POINTS]
    six = random.Random(5).sample(on, 6)
    assert detcy.rank_profile(six, 101) == 5
    assert detcy.det6(six, 101) == 0 and detcy.v6_member(six, 101)


def test_det6_generic_and_dual_route():
    six = FIVE + ["7:9:1"]
    d = detcy.det6(six, 101)
    M = sp.Matrix(detcy.section_matrix(six, 101))
    assert d != 0 and d == M.det() % 101
    exact = detcy.det6(six)
    assert exact == sp.Matrix(detcy.section_matrix(six)).det()
    assert exact != 0
    with pytest.raises(ValueError):
        detcy.det6(FIVE)


def test_det_zero_iff_sixth_point_on_fibre():
    p = 11
    C = detcy.fibre_cubic(FIVE, p)
    bases = {ProjPoint.parse(b, p) for b in detcy.BASE_POINTS}
    for row in projective_points(2, p).tolist():
        Q = ProjPoint(tuple(row), "P2", p)
        if Q in bases:
            continue
        assert detcy.v6_member(FIVE + [Q], p) == C.contains(Q)


def test_fibre_cubic_fixture():
    C = detcy.fibre_cubic(FIVE, 11)
    assert C.coeffs == (0, 1, 4, 0, 6, 8, 0, 7, 7, 0)
    (found,) = kernel_by_search(FIVE, 11)
    coeffs = found @ np.array(detcy._basis_mod_p(11)) % 11
    lead = next(c for c in C.coeffs if c)
    first = next(c for c in coeffs.tolist() if c)
    assert tuple(int(c) * lead * pow(first, -1, 11) % 11 for c in coeffs) == C.coeffs
    for P in FIVE + list(detcy.BASE_POINTS):
        assert C.contains(ProjPoint.parse(P, 11))


def test_fibre_cubic_not_general():
    with pytest.raises(NotGeneral):
        detcy.fibre_cubic(FIVE[:4] + [FIVE[0]], 11)
    with pytest.raises(ValueError):
        detcy.fibre_cubic(FIVE[:4], 11)


def test_singular_fibre_rejected():
    with pytest.raises(SingularFibre):
        detcy.fibre_group(SINGULAR_FIVE, 11)


def test_tau_is_an_involution_and_homomorphism():
    p = 11
    G = detcy.fibre_group(FIVE, p)
    o = G.origin
    assert o == ProjPoint.parse(FIVE[4], p)
    pts = on_curve_points(G.curve)
    assert detcy.tau_fibre(FIVE, o, p, G) == o
    for Q in pts:
        t = detcy.tau_fibre(FIVE, Q, p, G)
        assert G.curve.contains(t)
        assert detcy.tau_fibre(FIVE, t, p, G) == Q
        assert cubic_add(G, Q, t) == o
    for P, Q in itertools.combinations(pts, 2):
        lhs = detcy.tau_fibre(FIVE, cubic_add(G, P, Q), p, G)
        assert lhs == cubic_add(G, detcy.tau_fibre(FIVE, P, p, G), detcy.tau_fibre(FIVE, Q, p, G))


def test_tau_without_precomputed_group():
    Q = on_curve_points(detcy.fibre_cubic(FIVE, 11))[0]
    assert detcy.tau_fibre(FIVE, detcy.tau_fibre(FIVE, Q, 11), 11) == Q
