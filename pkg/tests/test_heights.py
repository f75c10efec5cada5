"""Heights, the Matveev machinery, and the two absolute bound chains."""

from fractions import Fraction

import pytest

from pellrep.algebraic import dominant_root
from pellrep.ball import RealBall, ball_log
from pellrep.heights import (
    IntPoly,
    a_value_admissible,
    algebraic_height,
    alpha_height,
    bounds_after_k_cap,
    closed_form_n_bound,
    gk_height_check,
    gk_minimal_polynomial,
    matveev_constant,
    matveev_exponent,
    matveev_lower_bound,
    n_over_log_n_bound,
    rational_height,
    stage1_n_bound,
    stage2_k_bound,
)


def test_int_poly_normalization():
    p = IntPoly((-4, 0, 8))
    q = p.normalized()
    assert q.coeffs == (1, 0, -2)
    assert q.leading == 1 and q.degree == 2
    assert IntPoly((3,)).degree == 0
    with pytest.raises(ValueError):
        IntPoly(())
    with pytest.raises(ValueError):
        IntPoly((0, 1))


def test_int_poly_eval():
    p = IntPoly((1, -2, -1, -1))  # x^3 - 2x^2 - x - 1
    x = RealBall.exact(2, 128)
    assert p.eval_ball(x).contains(-3)
    assert p.eval_ball(dominant_root(3, 128)).contains_zero()


def test_rational_height():
    assert rational_height(1).contains(0)
    assert (rational_height(Fraction(3, 2)) - ball_log(3, 512)).contains_zero()
    assert (rational_height(Fraction(1, 5)) - ball_log(5, 256)).contains_zero()
    assert (rational_height(-7) - ball_log(7, 256)).contains_zero()


def test_algebraic_height_sqrt2():
    # h(sqrt 2) = (1/2) log 2
    h = algebraic_height(IntPoly((1, 0, -2)))
    assert (h - ball_log(2, 256) / 2).contains_zero()


def test_algebraic_height_golden_ratio():
    # h(phi) = (1/2) log phi: conjugate -1/phi sits inside the unit circle
    from pellrep.ball import golden_ratio
    h = algebraic_height(IntPoly((1, -1, -1)))
    assert (h - golden_ratio(256).log() / 2).contains_zero()


def test_alpha_height_is_log_alpha_over_k():
    for k in (3, 5, 8):
        h = alpha_height(k)
        expected = dominant_root(k, 256).log() / k
        assert (h - expected).contains_zero()


def test_gk_minimal_polynomial_order_three():
    # resultant elimination for k = 3 lands on 87 y^3 - 5 y - 1
    p = gk_minimal_polynomial(3)
    assert p.coeffs == (87, 0, -5, -1)


def test_gk_minimal_polynomial_has_gk_as_root():
    from pellrep.algebraic import g_alpha
    for k in (3, 4, 5, 6):
        p = gk_minimal_polynomial(k)
        assert p.eval_ball(g_alpha(k, 256)).contains_zero()
        assert p.degree <= k


def test_gk_height_bound():
    for k in range(3, 11):
        h, ok = gk_height_check(k)
        assert ok, k
        assert h.endpoints_mpq()[1] <= 4 * Fraction(7, 10) * k  # far looser sanity lid


def test_matveev_constant_exact_point():
    # t = 1, D = 1, A = 1: C = 1.4 * 30^4 = 1134000 exactly
    c = matveev_constant(1, [RealBall.exact(1, 192)])
    assert c.contains(1134000)


def test_matveev_monotone_in_inputs():
    a = [RealBall.exact(2, 192), RealBall.exact(3, 192)]
    small = matveev_exponent(2, a, 10)
    large = matveev_exponent(2, a, 1000)
    assert small < large
    # exp(-C) underflows the working precision by design; the enclosure
    # must still be a sound positive-width interval starting at >= 0
    lower = matveev_lower_bound(2, a, 10)
    lo, hi = lower.endpoints_mpq()
    assert lo >= 0
    assert 0 < hi < Fraction(1, 10 ** 100)


def test_a_value_admissible():
    k = 5
    h_alpha = alpha_height(k)
    log_alpha = dominant_root(k, 192).log()
    a1 = ball_log(10, 192) * k
    assert a_value_admissible(a1, k, h_alpha, log_alpha)
    # too small against the 0.16 floor
    tiny = RealBall.exact(Fraction(1, 100), 192)
    assert not a_value_admissible(tiny, 1, RealBall.exact(0, 192),
                                  RealBall.exact(Fraction(1, 1000), 192))


def test_n_over_log_n_inversion():
    a = RealBall.exact(100, 192)
    bound = n_over_log_n_bound(a)
    # x/log x < 100 certainly fails at x = 2 * 100 * log 100
    x = bound.endpoints_mpq()[1]
    assert x > 600
    # inversion is sound: bound/log(bound) >= a
    check = bound / bound.log()
    assert check >= 100
    with pytest.raises(ArithmeticError):
        n_over_log_n_bound(RealBall.exact(2, 192))


def test_closed_form_monotone():
    assert closed_form_n_bound(4) > closed_form_n_bound(3)
    assert closed_form_n_bound(400) > closed_form_n_bound(100)


def test_stage1_bound_order_three_frozen():
    b = stage1_n_bound(3)
    assert b.all_ok
    assert b.n_bound == 123514008637404967
    assert b.ratio_ok and b.inversion_ok
    assert b.lambda_coeff_ok and b.residue_coeff_ok


def test_stage1_bound_sample_orders():
    for k in (4, 10, 100, 400):
        b = stage1_n_bound(k)
        assert b.all_ok, k
        assert b.n_bound > 0
        # closed form dominates the rederived chain
        assert b.closed_form.endpoints_mpq()[1] >= \
            b.rederived_ratio.endpoints_mpq()[0]


def test_stage2_chain_frozen():
    chain = stage2_k_bound()
    assert chain.all_ok
    # constant = 2.5879...e13, within half a percent of the working value
    assert chain.constant > Fraction("2.575e13")
    assert chain.constant < Fraction("2.59e13")
    assert chain.constant_close
    assert chain.k_star == 35 * 10 ** 16
    assert chain.n_bound.endpoints_mpq()[1] < Fraction("1.14e90")
    assert chain.m_bound.endpoints_mpq()[1] < Fraction("8.55e89")


def test_bounds_after_k_cap():
    n_ball, m_ball, n_int, m_int = bounds_after_k_cap(889)
    assert n_int < Fraction("2.25e29")
    assert m_int < Fraction("1.69e29")
    assert m_int <= n_int
    assert n_ball.contains(n_int) or n_ball.endpoints_mpq()[1] >= n_int
    assert m_ball.endpoints_mpq()[1] >= m_int
