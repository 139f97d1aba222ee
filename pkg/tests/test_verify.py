import json
import math

import mpmath
import pytest

from conftest import mp_gamma
from gammaforge.verify import (SUITES, GridSpec, VerificationReport, check_conjugate_symmetry,
                               check_duplication, check_falsifier, check_functional_eq, check_imaginary_axis,
                               check_log_convexity, check_reflection, check_residues, check_strip_bound,
                               cross_compare, falsifier, falsifier_callable, imag_digamma_at_1,
                               residue_removable, standard_grid, thread_count)

SMALL = GridSpec(0.25, 4.0, 6, -4.0, 4.0, 5, 0.25)
REPORT_KEYS = {"suite", "method", "grid", "points_tested", "max_residual", "worst_point", "failures", "passed",
               "tool_version"}


def exact_gamma(s):
    return mp_gamma(s)


# -- grids --------------------------------------------------------------------


def test_grid_invariants():
    with pytest.raises(ValueError):
        GridSpec(0, 1, 0, 0, 1, 3)
    with pytest.raises(ValueError):
        GridSpec(0, 1, 3, 0, 1, 3, pole_exclusion_radius=0)
    with pytest.raises(ValueError):
        GridSpec(1, 0, 3, 0, 1, 3)


def test_standard_grid_shape():
    g = standard_grid()
    assert (g.re_min, g.re_max, g.re_steps, g.im_min, g.im_max, g.im_steps) == (0.25, 4, 16, -8, 8, 33)
    assert g.pole_exclusion_radius == 0.25
    pts = g.points()
    assert len(pts) == 16 * 33
    assert g.conjugate_closed()


def test_grid_skips_poles_and_integers():
    g = GridSpec(-3, 3, 25, 0, 0, 1, 0.3)
    pts = g.points()
    assert all(min(abs(s - n) for n in range(-3, 1)) >= 0.3 for s in pts)
    assert 1 + 0j in pts
    pts_refl = g.points(avoid_integers=True)
    assert all(min(abs(s - n) for n in range(-3, 4)) >= 0.3 for s in pts_refl)
    assert 1 + 0j not in pts_refl


# -- reports ------------------------------------------------------------------


def test_report_json_schema():
    rep = check_functional_eq("lerch", SMALL)
    d = json.loads(rep.to_json())
    assert set(d) == REPORT_KEYS
    assert set(d["worst_point"]) == {"re", "im"}
    assert d["grid"]["re_steps"] == 6


def test_report_failures_serialize_with_null_for_inf():
    rep = check_functional_eq(lambda s: 1 / 0, SMALL)
    d = json.loads(rep.to_json())
    assert not d["passed"] and d["max_residual"] is None
    assert set(d["failures"][0]) == {"re", "im", "residual"}
    assert d["failures"][0]["residual"] is None
    assert len(d["failures"]) == d["points_tested"]


@pytest.mark.parametrize("suite", [
    lambda: check_functional_eq("gauss", SMALL, tol=1e-14),
    lambda: check_functional_eq("lerch", SMALL),
    lambda: check_reflection("lerch", SMALL),
])
def test_passed_iff_no_failures_iff_within_tol(suite):
    rep = suite()
    assert rep.passed == (not rep.failures) == (rep.max_residual <= rep.tol)


def test_suites_are_deterministic():
    a = check_reflection("euler-integral", SMALL).to_dict()
    b = check_reflection("euler-integral", SMALL).to_dict()
    assert a == b


def test_thread_count_does_not_change_results(monkeypatch):
    monkeypatch.setenv("GAMMAFORGE_THREADS", "1")
    one = check_duplication("lerch").to_dict()
    monkeypatch.setenv("GAMMAFORGE_THREADS", "4")
    assert thread_count() == 4
    four = check_duplication("lerch").to_dict()
    assert one == four


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("GAMMAFORGE_THREADS", "0")
    assert thread_count() >= 1
    monkeypatch.setenv("GAMMAFORGE_THREADS", "-2")
    with pytest.raises(ValueError):
        thread_count()


# -- identity suites ----------------------------------------------------------


def test_functional_eq_on_oracle_passes():
    assert check_functional_eq(exact_gamma, SMALL, tol=1e-14).passed


def test_functional_eq_at_one():
    rep = check_functional_eq("lerch", GridSpec(1, 1, 1, 0, 0, 1))
    assert rep.points_tested == 1 and rep.max_residual < 1e-15


def test_functional_eq_catches_wrong_function():
    rep = check_functional_eq(lambda s: mp_gamma(s) * (1 + 1e-3 * s), SMALL)
    assert not rep.passed


def test_reflection_examples():
    assert check_reflection("lerch", GridSpec(0.5, 0.5, 1, 0, 0, 1)).max_residual < 1e-14
    rep = check_reflection("euler-integral", GridSpec(0.3, 0.3, 1, 0, 0, 1))
    assert rep.passed and rep.max_residual < 1e-9
    assert check_imaginary_axis("lerch", (1.0,)).max_residual < 1e-12


def test_duplication_examples():
    pts = GridSpec(0.5, 1.0, 2, 0, 0, 1)
    assert check_duplication("lerch", pts).max_residual < 1e-14
    assert check_duplication("euler-integral", GridSpec(0.8, 0.8, 1, 0.6, 0.6, 1)).passed


def test_residue_examples():
    gam = lambda s: 1.0
    assert residue_removable(gam, 0) == 1
    assert residue_removable(gam, 1) == -1
    assert residue_removable(gam, 5) == pytest.approx(-1 / 120, rel=1e-15)
    assert check_residues("lerch", 12).passed


def test_residues_reject_negative_order():
    with pytest.raises(ValueError):
        check_residues("lerch", -1)


def test_conjugate_symmetry_real_points():
    rep = check_conjugate_symmetry("euler-integral", GridSpec(0.5, 3.5, 7, 0, 0, 1))
    assert rep.passed
    assert abs(imag_digamma_at_1(exact_gamma)) < 1e-12


def test_strip_bound_examples():
    rep = check_strip_bound("lerch", 1, 2, 20)
    assert rep.passed and rep.points_tested == 11 * 81
    assert abs(mp_gamma(1.5 + 10j)) < 1e-5 * mp_gamma(1.5).real


def test_strip_bound_detects_growth():
    rep = check_strip_bound(lambda s: mp_gamma(s) * math.exp(abs(s.imag)), 1, 2, 5)
    assert not rep.passed


def test_log_convexity_examples():
    assert check_log_convexity("lerch", 1, 2, 100).passed
    assert check_log_convexity("euler-integral", 0.1, 0.9, 100).passed
    # the minimum on (1, 2): first differences change sign
    xs = [1 + i / 99 for i in range(100)]
    vals = [mp_gamma(x).real for x in xs]
    diffs = [b - a for a, b in zip(vals, vals[1:])]
    assert diffs[0] < 0 < diffs[-1]


def test_log_convexity_rejects_concave():
    assert not check_log_convexity(lambda s: cmath_exp_neg_sq(s), 1, 2, 50).passed


def cmath_exp_neg_sq(s):
    return complex(math.exp(-s.real**2 * 3), 0)


def test_coupling_of_reflection_functional_and_duplication():
    # on a shared grid the duplication residual is no larger than 3x the component residuals
    g = GridSpec(0.3, 2.0, 18, -4.0, 4.0, 17, 0.25)
    fe = check_functional_eq("lerch", g)
    refl = check_reflection("lerch", g)
    dup = check_duplication("lerch", g)
    assert max(fe.max_residual, refl.max_residual, dup.max_residual) < 1e-7
    assert dup.max_residual <= 3 * max(fe.max_residual, refl.max_residual)


# -- falsifier ----------------------------------------------------------------


def test_falsifier_k0_is_gamma():
    assert falsifier(0, "lerch", 0.3 + 1j) == pytest.approx(mp_gamma(0.3 + 1j), rel=1e-12)


def test_falsifier_k1_properties():
    f = falsifier_callable(1)
    assert check_functional_eq(f, SMALL).passed
    assert abs(f(1.0) - 1) < 1e-10
    assert imag_digamma_at_1(f) == pytest.approx(2 * math.pi, abs=1e-6)
    assert not check_conjugate_symmetry(f, SMALL, tol=1e-8).passed


@pytest.mark.parametrize("k", [-2, -1, 0, 1, 2])
def test_falsifier_suite(k):
    rep = check_falsifier(k)
    assert rep.passed
    assert any(f"k={k}" in n for n in rep.notes)


def test_falsifier_suite_fails_for_wrong_k_expectation():
    # a route that is secretly the k = 1 function makes the k = 0 suite fail
    rep = check_falsifier(0, falsifier_callable(1))
    assert not rep.passed


# -- cross comparison ---------------------------------------------------------


def test_compare_integral_routes():
    rep = cross_compare(["euler-integral", "hankel", "lerch", "malmsten"], SMALL)
    assert rep.passed and rep.max_residual < 1e-8
    assert len(rep.rows) == rep.points_tested


def test_compare_product_routes():
    rep = cross_compare(["weierstrass", "gauss"], SMALL, tol=1e-6)
    assert rep.passed


def test_compare_single_method_has_zero_deviation():
    rep = cross_compare(["lerch"], SMALL)
    assert rep.max_residual == 0


def test_compare_consensus_is_median_by_modulus():
    rep = cross_compare(["birkhoff", "gauss", "lerch"], GridSpec(1.5, 1.5, 1, 0, 0, 1))
    row = rep.rows[0]
    mods = sorted(abs(r.value) for r in row.values.values())
    assert abs(row.consensus) == mods[1]


def test_compare_unknown_route():
    with pytest.raises(KeyError):
        cross_compare(["lerch", "nope"], SMALL)


def test_suite_names():
    assert SUITES == ("functional", "reflection", "duplication", "residues", "conjugate", "strip",
                      "convexity", "falsifier")
