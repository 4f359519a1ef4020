import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from modcy.series import (
    REGISTRY,
    EtaQuotient,
    NewformSpec,
    PowerSeries,
    ap,
    check_hecke_coefficients,
    coefficients,
    eta_expand,
    euler_factor,
    format_poly,
    hecke_check,
    lookup,
)


def naive_eta(recipe: EtaQuotient, prec: int) -> PowerSeries:
    """Oracle: multiply out the factors (1 - q^(dm))^r one at a time."""
    result = PowerSeries.constant(1, prec)
    for d, r in recipe.factors:
        for m in range(1, prec):
            if d * m >= prec:
                break
            factor = PowerSeries.constant(1, prec) - PowerSeries.monomial(d * m, prec)
            result = result * factor ** r
    shift = int(recipe.q_order)
    return PowerSeries(((0,) * shift + result.coeffs)[:prec])


def series(coeffs):
    return PowerSeries(tuple(coeffs))


def test_delta_leading_terms():
    assert eta_expand(lookup(1, 12).recipe, 4).coeffs == (0, 1, -24, 252)
    assert str(eta_expand(lookup(1, 12).recipe, 4)) == "q - 24*q^2 + 252*q^3 + O(q^4)"


def test_level2_weight8_leading_terms():
    assert eta_expand(lookup(2, 8).recipe, 4).coeffs == (0, 1, -8, 12)


def test_level2_weight8_displayed_coefficients_sit_at_other_indices():
    a = coefficients(lookup(2, 8), 8)
    assert a[4] == 64 == a[2] ** 2
    assert a[5] == -210
    assert a[7] == 1016


def test_empty_recipe_is_one():
    assert eta_expand(EtaQuotient(()), 3).coeffs == (1, 0, 0)


def test_eta_rejects_bad_input():
    with pytest.raises(ValueError):
        eta_expand(lookup(1, 12).recipe, 0)
    with pytest.raises(ValueError):
        eta_expand(EtaQuotient(((1, 1),)), 5)  # q-order 1/24
    with pytest.raises(ValueError):
        EtaQuotient(((0, 2),))


@pytest.mark.parametrize("key", sorted(REGISTRY))
def test_recurrence_matches_naive_product(key):
    recipe = REGISTRY[key].recipe
    assert eta_expand(recipe, 40) == naive_eta(recipe, 40)


def test_negative_exponents_match_naive_product():
    recipe = EtaQuotient(((1, -24), (2, 48)))  # weight 12, q-order 3
    assert eta_expand(recipe, 30) == naive_eta(recipe, 30)


def test_truncation_stability():
    recipe = lookup(3, 6).recipe
    assert eta_expand(recipe, 80).coeffs[:30] == eta_expand(recipe, 30).coeffs


@pytest.mark.parametrize("level,weight,n,value", [(1, 12, 2, -24), (2, 8, 4, 64), (11, 2, 2, -2),
                                                  (1, 12, 5, 4830), (5, 4, 2, -4)])
def test_ap_examples(level, weight, n, value):
    assert ap(lookup(level, weight), n) == value


def test_ap_a1_and_index_guard():
    for spec in REGISTRY.values():
        assert ap(spec, 1) == 1
    with pytest.raises(ValueError):
        ap(lookup(1, 12), 0)


def test_newform_spec_invariants():
    with pytest.raises(ValueError):
        NewformSpec(1, 10, EtaQuotient(((1, 24),)))  # weight mismatch
    with pytest.raises(ValueError):
        NewformSpec(4, 6, EtaQuotient(((3, 12),)))  # 3 does not divide 4
    with pytest.raises(KeyError):
        lookup(7, 2)


@pytest.mark.parametrize("key,prec", [((1, 12), 200), ((2, 8), 100)])
def test_hecke_clean(key, prec):
    assert hecke_check(REGISTRY[key], prec) == []


def test_hecke_catches_injected_fault():
    a = list(coefficients(lookup(1, 12), 60))
    a[6] += 1
    bad = check_hecke_coefficients(a, 1, 12)
    assert bad and bad[0].identity == "a_mn = a_m a_n"
    assert bad[0].indices == (2, 3)
    a = list(coefficients(lookup(2, 8), 30))
    a[8] += 1
    assert any(v.identity == "a_{p^r} = a_p^r" for v in check_hecke_coefficients(a, 2, 8))


@pytest.mark.parametrize("key", sorted(REGISTRY))
def test_deligne_bound(key):
    spec = REGISTRY[key]
    for p in primerange(2, 300):
        if spec.level % p:
            bound = math.ceil(2 * p ** ((spec.weight - 1) / 2))
            assert abs(ap(spec, p)) <= bound


def test_euler_factors():
    assert euler_factor(lookup(1, 12), 2) == (1, 24, 2048)
    assert format_poly(euler_factor(lookup(1, 12), 2)) == "1 + 24T + 2048T^2"
    assert euler_factor(lookup(2, 8), 2) == (1, 8)
    assert format_poly(euler_factor(lookup(11, 2), 2)) == "1 + 2T + 2T^2"
    with pytest.raises(ValueError):
        euler_factor(lookup(1, 12), 4)


small = st.lists(st.integers(-50, 50), min_size=1, max_size=12)


@settings(max_examples=60, deadline=None)
@given(small, small, small)
def test_multiplication_is_commutative_and_associative(a, b, c):
    A, B, C = series(a), series(b), series(c)
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert (A * B).prec == min(A.prec, B.prec)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=10), st.sampled_from([1, -1]))
def test_inverse_round_trip(tail, unit):
    A = series([unit] + tail)
    assert A * A.inverse() == PowerSeries.constant(1, A.prec)
    assert A ** -2 * A ** 2 == PowerSeries.constant(1, A.prec)
