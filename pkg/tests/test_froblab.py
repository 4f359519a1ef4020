from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from sympy import primerange

from modcy.errors import BadPrime, BadReduction, CacheCorrupt, InconsistentFit, SingularFit
from modcy.froblab import (
    CacheStore,
    TraceRecord,
    TraceTable,
    fit,
    get_family,
    kummer_counts,
    moment,
    moment_value,
    rankin_trace,
    rankin_weight,
    scan,
    shimura_trace,
    sym_trace,
    validate,
)
from modcy.froblab.basis import cm_weight7_level3, evaluate_term, level2_weight10, parse_basis
from modcy.froblab.certify import has_line_component, smooth_mask, torsion_orders
from modcy.froblab.families import CUBIC_FAMILIES, FAMILIES, singular_flags
from modcy.froblab.kummer import kummer_orbit_counts
from modcy.froblab.pinned import ACCEPTANCE, IDENTITIES
from modcy.planegeom import COUNTERS, PlaneCurve, count_points, on_curve_points, singular_points
from modcy.series import ap, check_hecke_coefficients, lookup

UNRESTRICTED = [f for f, F in FAMILIES.items() if F.predicate is None and f != "level1_weierstrass"]


def projective_size(k, p):
    return (p ** (k + 1) - 1) // (p - 1)


def table(traces):
    return TraceTable("synthetic", 7, tuple(TraceRecord(str(i), 8 - a, a, False) for i, a in enumerate(traces)))


# --- scans ----------------------------------------------------------------------

def test_scan_examples():
    T = scan("level5_cubic", 7)
    assert len(T) == 8
    assert all(r.trace + r.count == 8 for r in T.records)
    assert len(scan("level1_weierstrass", 7)) == 42
    with pytest.raises(BadPrime):
        scan("level5_cubic", 5)
    with pytest.raises(ValueError):
        scan("level5_cubic", 9)
    with pytest.raises(KeyError):
        get_family("level7_cubic")


@pytest.mark.parametrize("fid", sorted(FAMILIES))
def test_scan_counts_match_enumeration(fid):
    F = get_family(fid)
    p = 7 if F.level != 7 else 11
    T = scan(F, p)
    params = F.parameters(p)
    step = max(1, len(params) // 60)
    for row, rec in list(zip(params, T.records))[::step]:
        assert rec.count == count_points(F.fibre(row, p))


@pytest.mark.parametrize("fid", sorted(f for f in FAMILIES if f != "level1_weierstrass"))
@pytest.mark.parametrize("p", [7, 11])
def test_singular_flags_match_per_fibre_search(fid, p):
    F = get_family(fid)
    params = F.parameters(p)
    flags = singular_flags(F, p, params)
    for row, flag in zip(params, flags):
        assert flag == bool(singular_points(F.fibre(row, p), p, 1))


@pytest.mark.parametrize("fid", CUBIC_FAMILIES)
@pytest.mark.parametrize("p", [7, 11, 13])
def test_smooth_mask_matches_search_over_fp2(fid, p):
    F = get_family(fid)
    params = F.parameters(p)
    mask = smooth_mask(F, p, params)
    for row, ok in zip(params, mask):
        assert ok == (not singular_points(F.fibre(row, p), p, 2))


def test_has_line_component():
    p = 7
    curves = [PlaneCurve.parse(s, "P2", p) for s in
              ("Z*(X^2 + Y^2 + Z^2)", "X^3 + Y^3 + Z^3", "X*Y*Z", "Y^2*Z - X^3 - X*Z^2")]
    got = has_line_component(np.array([C.coeffs for C in curves], dtype=np.int64), p)
    assert got.tolist() == [True, False, True, False]


@pytest.mark.parametrize("fid", UNRESTRICTED)
@pytest.mark.parametrize("p", [7, 11])
def test_incidence_bookkeeping(fid, p):
    """Sum of fibre counts = points of the incidence correspondence, counted from the ambient side."""
    F = get_family(fid)
    curves = [PlaneCurve(tuple(int(c) for c in row), F.ambient, p) for row in F.basis_mod_p(p)]
    base = set.intersection(*(set(on_curve_points(C)) for C in curves))
    ambient_size = projective_size(2, p) if F.ambient == "P2" else (p + 1) ** 2
    d = F.param_dim
    expected = (ambient_size - len(base)) * projective_size(d - 2, p) + len(base) * projective_size(d - 1, p)
    assert sum(r.count for r in scan(F, p).records) == expected


# --- moments --------------------------------------------------------------------

def test_moment_trivial_cases():
    assert moment(table([0, 0, 0]), 4).total == 0
    assert moment(table([1, -1, 1, -1, 1]), 2).total == 5
    assert moment(table([1, -1, 1]), 3).total == 1
    with pytest.raises(ValueError):
        moment(table([1]), 0)


def test_pinned_level5_second_moment():
    T = scan("level5_cubic", 7)
    brute = sum((8 - count_points(get_family("level5_cubic").fibre(row, 7))) ** 2
                for row in get_family("level5_cubic").parameters(7))
    assert moment(T, 2).total == brute == 239
    assert moment_value("level5_cubic", 7, 2) == 239


def test_moment_smooth_part_excludes_singular_fibres():
    T = scan("level3_cubic", 11)
    M = moment(T, 4)
    assert M.total - M.smooth == sum(r.trace ** 4 for r in T.records if r.singular)
    assert M.singular_fibres == sum(r.singular for r in T.records)


# --- cache ----------------------------------------------------------------------

def test_cache_round_trip_skips_counting(tmp_path):
    store = CacheStore(tmp_path)
    first = scan("level3_cubic", 13, store)
    before = COUNTERS["curve_counts"]
    second = scan("level3_cubic", 13, store)
    assert COUNTERS["curve_counts"] == before
    assert first == second == scan("level3_cubic", 13)
    text = store.path("level3_cubic").read_text()
    assert text.startswith("family,p,param,count\n") and text.endswith("\n")
    assert text.count("\n") == 1 + len(first)


def test_cache_partial_file_is_completed(tmp_path):
    store = CacheStore(tmp_path)
    full = scan("level5_cubic", 11)
    store.append("level5_cubic", 11, [(r.param, r.count) for r in full.records[:3]])
    assert scan("level5_cubic", 11, store) == full
    assert len(store.load("level5_cubic", 11)) == len(full)


@pytest.mark.parametrize("mutate", [
    lambda t: "fam,p,param,count\n" + t.split("\n", 1)[1],
    lambda t: t[:-1],
    lambda t: t.replace(",11,", ",x1,", 1),
    lambda t: t + t.split("\n")[1].rsplit(",", 1)[0] + ",999\n",
    lambda t: t.replace("\n", "\nlevel5_cubic,11,\n", 1),
])
def test_cache_corruption_detected(tmp_path, mutate):
    store = CacheStore(tmp_path)
    scan("level5_cubic", 11, store)
    path = store.path("level5_cubic")
    path.write_text(mutate(path.read_text()))
    with pytest.raises(CacheCorrupt):
        scan("level5_cubic", 11, store)


def test_cache_wrong_count_detected(tmp_path):
    store = CacheStore(tmp_path)
    full = scan("level5_cubic", 13)
    bad = [(r.param, r.count + 1) for r in full.records[:1]]
    store.append("level5_cubic", 13, bad)
    with pytest.raises(CacheCorrupt):
        scan("level5_cubic", 13, store)


# --- fitting --------------------------------------------------------------------

def test_fit_inconsistent_and_singular():
    with pytest.raises(InconsistentFit):
        fit("level5_cubic", ["1"], [7, 11])
    with pytest.raises(SingularFit):
        fit("level5_cubic", ["p", "p^2"], [7])
    with pytest.raises(SingularFit):
        fit("level5_cubic", ["p", "p*1"], [7, 11])
    with pytest.raises(ValueError):
        parse_basis("ap, q^2")


def test_fit_recovers_synthetic_coefficients():
    truth = {"ap": Fraction(3), "p": Fraction(-5, 2), "p^2": Fraction(1)}
    form = lookup(5, 4)
    moments = lambda p: sum(c * evaluate_term(n, p, form) for n, c in truth.items())  # noqa: E731
    M = fit("level5_cubic", list(truth), [7, 11, 13], moments=moments)
    assert dict(zip(M.basis, M.coefficients)) == truth
    assert validate(M, [17, 19, 23], moments=moments).ok


def test_level5_pinned_fit_and_perturbation():
    pin = ACCEPTANCE["level5_cubic"]
    M = fit("level5_cubic", pin["basis"], pin["fit"])
    primes = get_family("level5_cubic").good_primes(7, 61)
    assert validate(M, primes).ok
    assert M.coefficient("ap") != 0
    bad = validate(M.perturbed(0), primes)
    assert not bad.ok and len(bad.failures()) == len(primes)
    assert "status FAIL" in bad.render()


@pytest.mark.parametrize("fid", ["level5_cubic", "level4_cubic"])
def test_recorded_identities_hold_on_small_primes(fid):
    form = get_family(fid).form
    for ident in IDENTITIES[fid]:
        for p in get_family(fid).good_primes(7, 41):
            rhs = sum(c * evaluate_term(n, p, form) for n, c in ident["terms"])
            assert moment_value(fid, p, ident["r"]) == rhs


# --- basis functions ------------------------------------------------------------

def test_basis_terms():
    form = lookup(5, 4)
    assert evaluate_term("p^2*chi-3", 7, form) == 49
    assert evaluate_term("p*chi5", 13, form) == -13
    assert evaluate_term("tau", 2, form) == -24
    assert evaluate_term("ap", 7, form) == ap(form, 7)
    assert evaluate_term("ap[11.2]", 3, form) == -1


def test_auxiliary_forms_are_hecke_eigenforms():
    from modcy.froblab.basis import _level2_weight10

    a = list(_level2_weight10(200))
    assert a[1] == 1 and check_hecke_coefficients(a, 2, 10) == []
    for p in primerange(5, 200):
        assert abs(level2_weight10(p)) <= 2 * p ** 4.5
        c = cm_weight7_level3(p)
        assert abs(c) <= 2 * p ** 3
        assert (c == 0) == (p % 3 == 2)


# --- trace calculus -------------------------------------------------------------

def sym_by_eigenvalues(a, p, k, m):
    x = sp.Symbol("x")
    al, be = sp.roots(x ** 2 - a * x + p ** (k - 1), x, multiple=True)
    return sp.nsimplify(sp.expand(sum(al ** i * be ** (m - i) for i in range(m + 1))))


def test_sym_trace_examples():
    assert sym_trace(2, 5, 2, 0) == 1
    assert sym_trace(2, 5, 2, 2) == -1
    assert sym_trace(2, 5, 2, 3) == -12
    with pytest.raises(ValueError):
        sym_trace(2, 5, 2, -1)


@pytest.mark.parametrize("a,p,k", [(2, 5, 2), (-24, 2, 12), (-4, 5, 4), (0, 7, 2), (3, 11, 2)])
def test_sym_trace_identities(a, p, k):
    w = p ** (k - 1)
    for m in range(1, 7):
        # Clebsch-Gordan: Sym^1 * Sym^m = Sym^(m+1) + w Sym^(m-1)
        assert a * sym_trace(a, p, k, m) == sym_trace(a, p, k, m + 1) + w * sym_trace(a, p, k, m - 1)
        assert sym_trace(a, p, k, m) == sym_by_eigenvalues(a, p, k, m)


def test_rankin():
    assert rankin_trace(0, 17) == 0
    assert rankin_trace(ap(lookup(11, 2), 2), ap(lookup(5, 4), 2)) == (-2) * (-4) == 8
    assert rankin_weight(2, 4) == 4


def test_shimura_curve_trace_by_projective_count():
    C = PlaneCurve.parse("Y^2*Z + Y*Z^2 - X^3 + X^2*Z + 10*X*Z^2 + 20*Z^3")
    for p in (2, 3, 5, 7, 13, 17):
        assert shimura_trace(p) == p + 1 - count_points(C, p) == ap(lookup(11, 2), p)
    with pytest.raises(ValueError):
        shimura_trace(11)


# --- Kummer ---------------------------------------------------------------------

def test_kummer_example():
    k = kummer_counts(1, 0, 5)
    assert (k.a, k.f2, k.singular_quotient_count, k.smooth_model_count) == (2, 16, 40, 120)
    assert kummer_orbit_counts(1, 0, 5) == (40, 120)
    with pytest.raises(BadReduction):
        kummer_counts(0, 0, 5)
    with pytest.raises(BadReduction):
        kummer_orbit_counts(0, 0, 5)


@pytest.mark.parametrize("A,B", [(1, 1), (-1, 0), (0, 1), (2, 3), (3, 7)])
def test_kummer_closed_form_matches_orbits(A, B):
    for p in primerange(3, 24):
        if (4 * A ** 3 + 27 * B ** 2) % p == 0:
            continue
        k = kummer_counts(A, B, p)
        assert (k.singular_quotient_count, k.smooth_model_count) == kummer_orbit_counts(A, B, p)
        assert k.smooth_model_count - (p + 1) ** 2 - k.a ** 2 == p * k.f2
        if k.f2 == 1:
            assert k.smooth_model_count == (p + 1) ** 2 + k.a ** 2 + p


# --- torsion --------------------------------------------------------------------

@pytest.mark.parametrize("fid", CUBIC_FAMILIES)
def test_torsion_small_prime(fid):
    R = torsion_orders(fid, 13)
    assert R.ok and R.smooth > 0
    assert R.orders == ((R.expected, R.smooth),)


def test_torsion_weierstrass_rejected():
    with pytest.raises(ValueError):
        torsion_orders("level1_weierstrass", 7)


def test_hasse_on_certified_fibres():
    T = scan("level4_cubic", 29)
    F = get_family("level4_cubic")
    mask = smooth_mask(F, 29, F.parameters(29))
    assert all(r.trace ** 2 <= 4 * 29 for r, ok in zip(T.records, mask) if ok)
