"""Dominant root, conjugate structure, and the certified classical facts."""

from fractions import Fraction

import pytest

from pellrep.algebraic import (
    all_roots,
    asymptotic_decomposition_check,
    binet_coefficient_bound_check,
    binet_error_check,
    binet_full_eval,
    char_poly,
    dominant_root,
    g_alpha,
    g_eval,
    g_fixed_point_exact,
    growth_bounds_check,
    large_k_regime_check,
    lemma1_checks,
    root_moduli_check,
    weierstrass_disks,
)
from pellrep.ball import RealBall, golden_ratio
from pellrep.bigseq import RecurrenceSpec, _generate_terms_naive


def test_char_poly_coefficients():
    assert char_poly(2) == (1, -2, -1)
    assert char_poly(3) == (1, -2, -1, -1)
    assert char_poly(5) == (1, -2, -1, -1, -1, -1)
    with pytest.raises(ValueError):
        char_poly(1)


def test_dominant_root_bracket_and_value():
    alpha = dominant_root(3)
    assert alpha > 2 and alpha < 3
    # alpha(3) = 2.5468182768840820791359975... to forty places
    assert alpha > Fraction("2.546818276884082079135997")
    assert alpha < Fraction("2.546818276884082079135998")
    # root of the characteristic polynomial: x^3 - 2x^2 - x - 1 straddles 0
    assert (alpha.pow_int(3) - 2 * alpha.pow_int(2) - alpha - 1).contains_zero()


def test_dominant_root_monotone_in_k():
    roots = [dominant_root(k, 192) for k in range(3, 12)]
    for a, b in zip(roots, roots[1:]):
        assert a < b
        assert b < 3


def test_dominant_root_approaches_phi_squared():
    phi2 = golden_ratio(256).pow_int(2)
    gap_small = phi2 - dominant_root(10, 256)
    gap_big = phi2 - dominant_root(60, 256)
    assert gap_small > gap_big
    assert gap_big > 0


def test_lemma1_all_parts():
    for k in list(range(3, 31)) + [100, 400]:
        r = lemma1_checks(k)
        assert r.monotone, k
        assert r.bracket, k
        assert r.fixed_value_exact, k
        assert r.g_range, k


def test_g_fixed_point_exact_is_symbolic():
    # g_k(phi^2) = 1/(phi+2) holds in Z[phi] for every order
    for k in (3, 4, 7, 20, 121):
        assert g_fixed_point_exact(k)


def test_g_alpha_window():
    for k in (3, 5, 17, 64, 200):
        g = g_alpha(k, 192)
        assert g > Fraction(276, 1000)
        assert g < Fraction(1, 2)


def test_weierstrass_disks_on_factored_cubic():
    # (x - 1)(x - 2)(x - 3)
    disks = weierstrass_disks([1, -6, 11, -6], 128)
    assert len(disks) == 3
    hit = set()
    for root in (1, 2, 3):
        for i, d in enumerate(disks):
            if d.box.contains(root):
                hit.add((root, i))
    assert {r for r, _ in hit} == {1, 2, 3}
    # disjointness means no disk grabs two roots
    assert len({i for _, i in hit}) == 3


def test_all_roots_structure():
    for k in (2, 3, 5, 10, 24):
        roots = all_roots(k, 256)
        assert len(roots.disks) == k
        dom = roots.dominant
        assert dom.is_real_axis
        # the dominant disk and the interval-Newton root agree
        assert (dom.box.re - dominant_root(k, 256)).contains_zero()
        worst = root_moduli_check(k, 256)
        assert worst.endpoints_mpq()[1] < 1


def test_binet_coefficient_bound():
    for k in (2, 3, 10, 30):
        worst = binet_coefficient_bound_check(k)
        assert worst.endpoints_mpq()[1] < 2


def test_binet_full_eval_encloses_exact_terms():
    for k in (3, 5, 9):
        spec = RecurrenceSpec.pell(k)
        terms = _generate_terms_naive(spec, 40)
        for n in range(0, 41):
            expected = terms[n - spec.first_index]
            assert binet_full_eval(k, n).contains(expected), (k, n)
    with pytest.raises(ValueError):
        binet_full_eval(3, -1)


def test_binet_error_below_half():
    for k in (3, 8, 20):
        worst, worst_n = binet_error_check(k, 2 - k, 200)
        assert worst.endpoints_mpq()[1] < Fraction(1, 2), (k, worst_n)


def test_growth_bounds():
    for k in (3, 7, 15):
        assert growth_bounds_check(k, 1, 200)


def test_asymptotic_decomposition():
    for k, n in ((30, 5), (40, 25), (60, 199)):
        d = asymptotic_decomposition_check(k, n)
        assert d.delta_bound, (k, n)
        assert d.eta_bound, (k, n)
        assert d.identity_contains_zero, (k, n)


def test_large_k_chain():
    for k in (401, 1000, 10 ** 6):
        c = large_k_regime_check(k)
        assert c.stage1_bound_below_phi_half_k
        assert c.eta_tail_small
        assert c.eta_delta_tail_small
    # the chain is a k > 400 statement; the guard should refuse small k
    with pytest.raises(ValueError):
        large_k_regime_check(400)


def test_g_eval_matches_direct_formula():
    alpha = dominant_root(5, 192)
    direct = (alpha - 1) / (
        (5 + 1) * alpha.pow_int(2) - 3 * 5 * alpha + (5 - 1))
    assert (g_eval(5, alpha) - direct).contains_zero()
