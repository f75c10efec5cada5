"""Certified root isolation and Binet-form analysis for k-Pell recurrences.

The characteristic polynomial of the k-Pell recurrence is

    Psi_k(x) = x^k - 2x^{k-1} - x^{k-2} - ... - x - 1,

which satisfies (x - 1) * Psi_k(x) = x^{k+1} - 3x^k + x^{k-1} + 1.  That
companion form needs only O(log k) ball multiplications per evaluation, so
it drives both the bisection and the interval-Newton refinement of the
dominant root alpha = alpha(k) in (2, 3).

Everything returned from this module is an enclosure with a proof
obligation discharged along the way: dominant_root() re-certifies the
final bracket by exact sign evaluation at its endpoints, all_roots()
certifies one simple root per disk through a Weierstrass-style residual
bound, and the various *_check functions certify inequalities by interval
comparison, escalating the working precision until the comparison is
decided or the cap is hit.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from gmpy2 import mpq

from .ball import (
    DEFAULT_PRECISION,
    ComplexBall,
    PrecisionExhausted,
    RealBall,
    UndecidedComparison,
    golden_ratio,
    precision_ladder,
)

ALL_ROOTS_MAX_K = 64


def char_poly(k: int) -> tuple:
    """Coefficients of Psi_k, leading first: (1, -2, -1, ..., -1)."""
    if k < 2:
        raise ValueError("need k >= 2")
    return (1, -2) + (-1,) * (k - 1)


# ----- dominant root --------------------------------------------------------

def _companion_eval(k, x):
    """(x - 1) * Psi_k(x) = x^{k+1} - 3x^k + x^{k-1} + 1 on a RealBall."""
    t = (x - 3) * x + 1
    return x.pow_int(k - 1) * t + 1


def _companion_derivative(k, x):
    """d/dx of the companion form: x^{k-2} * ((k+1)x^2 - 3kx + (k-1))."""
    quad = x.pow_int(2) * (k + 1) - x * (3 * k) + (k - 1)
    return x.pow_int(k - 2) * quad


def _sign_at(k: int, point, start_bits: int = 128) -> int:
    """Exact sign of the companion polynomial at an exact rational point.

    Always resolves: a rational zero of the companion form would have to be
    an integer (the polynomial is monic with constant term 1), and the only
    integer candidates +-1 are not zeros for k >= 2.
    """
    for prec in precision_ladder(start_bits):
        try:
            return _companion_eval(k, RealBall.exact(point, prec)).sign()
        except UndecidedComparison:
            continue
    raise PrecisionExhausted(f"sign of companion poly at {point} unresolved")


_root_cache: dict = {}
_root_lock = threading.Lock()


def dominant_root(k: int, precision_bits: int = DEFAULT_PRECISION) -> RealBall:
    """Certified enclosure of the single root alpha(k) of Psi_k in (2, 3).

    Bisection on exact dyadic points brings the bracket to width 2^-64,
    interval Newton then contracts it to width below 2^(4 - precision_bits),
    and the final bracket is re-certified by exact sign evaluation at both
    endpoints, so the enclosure does not depend on the Newton argument
    being right.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    key = (k, precision_bits)
    with _root_lock:
        cached = _root_cache.get(key)
    if cached is not None:
        return cached

    lo, hi = mpq(2), mpq(3)
    # q(2) = 1 - 2^{k-1} < 0 and q(3) = 3^{k-1} + 1 > 0
    for _ in range(64):
        mid = (lo + hi) / 2
        if _sign_at(k, mid) < 0:
            lo = mid
        else:
            hi = mid

    working = precision_bits + 64
    x = RealBall.from_endpoints(lo, hi, working)
    goal = mpq(2) ** (4 - precision_bits)
    for _ in range(200):
        if mpq(x.width()) <= goal:
            break
        deriv = _companion_derivative(k, x)
        if deriv.contains_zero():
            raise PrecisionExhausted(
                f"companion derivative straddles zero on bracket for k={k}")
        mid_q = mpq(x.mid)
        f_mid = _companion_eval(k, RealBall.exact(mid_q, working))
        newton = RealBall.exact(mid_q, working) - f_mid / deriv
        shrunk = x.intersect(newton)
        if mpq(shrunk.width()) >= mpq(x.width()):
            working *= 2
            if working > 64 * precision_bits:
                raise PrecisionExhausted(f"Newton stalled for k={k}")
            a, b = x.endpoints_mpq()
            x = RealBall.from_endpoints(a, b, working)
            continue
        x = shrunk
    else:
        raise PrecisionExhausted(f"Newton did not reach target width for k={k}")

    lo_q, hi_q = x.endpoints_mpq()
    if not (_sign_at(k, lo_q, working) < 0 < _sign_at(k, hi_q, working)):
        raise ArithmeticError(f"endpoint signs failed to certify bracket, k={k}")
    result = RealBall.from_endpoints(lo_q, hi_q, precision_bits)
    with _root_lock:
        _root_cache[key] = result
    return result


# ----- the weight function g_k ---------------------------------------------

def g_eval(k: int, z):
    """g_k(z) = (z - 1) / ((k+1)z^2 - 3kz + k - 1) on a Real or Complex ball."""
    den = z * z * (k + 1) - z * (3 * k) + (k - 1)
    num = z - 1
    try:
        return num / den
    except ZeroDivisionError:
        raise UndecidedComparison(
            f"denominator of g_{k} straddles zero on {z!r}") from None


_g_cache: dict = {}


def g_alpha(k: int, precision_bits: int = DEFAULT_PRECISION) -> RealBall:
    """Enclosure of g_k(alpha(k))."""
    key = (k, precision_bits)
    with _root_lock:
        cached = _g_cache.get(key)
    if cached is not None:
        return cached
    value = g_eval(k, dominant_root(k, precision_bits))
    with _root_lock:
        _g_cache[key] = value
    return value


class _PhiNumber:
    """Exact elements u + v*phi of Q(phi), using phi^2 = phi + 1."""

    __slots__ = ("u", "v")

    def __init__(self, u, v=0):
        self.u = Fraction(u)
        self.v = Fraction(v)

    def __add__(self, other):
        o = other if isinstance(other, _PhiNumber) else _PhiNumber(other)
        return _PhiNumber(self.u + o.u, self.v + o.v)

    def __sub__(self, other):
        o = other if isinstance(other, _PhiNumber) else _PhiNumber(other)
        return _PhiNumber(self.u - o.u, self.v - o.v)

    def __mul__(self, other):
        o = other if isinstance(other, _PhiNumber) else _PhiNumber(other)
        return _PhiNumber(self.u * o.u + self.v * o.v,
                          self.u * o.v + self.v * o.u + self.v * o.v)

    def inverse(self):
        # conjugate of phi is 1 - phi; the norm is u^2 + uv - v^2
        norm = self.u * self.u + self.u * self.v - self.v * self.v
        if norm == 0:
            raise ZeroDivisionError("zero element of Q(phi)")
        return _PhiNumber((self.u + self.v) / norm, -self.v / norm)

    def __eq__(self, other):
        o = other if isinstance(other, _PhiNumber) else _PhiNumber(other)
        return self.u == o.u and self.v == o.v


def g_fixed_point_exact(k: int) -> bool:
    """Exact check that g_k(phi^2) = 1/(phi + 2), in rational phi-arithmetic."""
    phi = _PhiNumber(0, 1)
    z = phi * phi
    num = z - _PhiNumber(1)
    den = z * z * _PhiNumber(k + 1) - z * _PhiNumber(3 * k) + _PhiNumber(k - 1)
    return num * den.inverse() == (_PhiNumber(2) + phi).inverse()


@dataclass(frozen=True)
class Lemma1Result:
    k: int
    monotone: bool          # alpha(k) > alpha(k-1)
    bracket: bool           # phi^2 (1 - phi^-k) < alpha(k) < phi^2
    fixed_value_exact: bool  # g_k(phi^2) = 1/(phi+2), exact
    g_range: bool           # 0.276 < g_k(alpha) < 1/2


def lemma1_checks(k: int, precision_bits: int = 0) -> Lemma1Result:
    """Certify the four dominant-root facts used throughout the sieve.

    The comparison margins shrink like phi^-k, so the starting precision
    scales with k; escalation covers the rest.
    """
    if k < 3:
        raise ValueError("need k >= 3 (monotonicity compares against k-1)")
    start = precision_bits or max(128, k + 64)

    def certify(predicate):
        for prec in precision_ladder(start):
            try:
                return predicate(prec)
            except UndecidedComparison:
                continue
        raise PrecisionExhausted(f"lemma-1 certification stalled at k={k}")

    monotone = certify(lambda p: dominant_root(k, p) > dominant_root(k - 1, p))

    def bracket_at(prec):
        alpha = dominant_root(k, prec)
        phi2 = golden_ratio(prec).pow_int(2)
        lower = phi2 * (1 - golden_ratio(prec).pow_int(-k))
        return (lower < alpha) and (alpha < phi2)

    bracket = certify(bracket_at)
    fixed = g_fixed_point_exact(k)
    g_range = certify(lambda p: (Fraction(276, 1000) < g_alpha(k, p))
                      and (g_alpha(k, p) < Fraction(1, 2)))
    return Lemma1Result(k=k, monotone=monotone, bracket=bracket,
                        fixed_value_exact=fixed, g_range=g_range)


# ----- full root sets -------------------------------------------------------

@dataclass(frozen=True)
class RootDisk:
    """A disk certified to contain exactly one simple root.

    center_re/center_im are the exact rational coordinates of the center;
    radius is an mpfr upper bound; box is a rectangular ComplexBall
    enclosure of the disk (slightly larger, convenient for arithmetic).
    """

    center_re: object
    center_im: object
    radius: object
    box: ComplexBall

    @property
    def is_real_axis(self) -> bool:
        return self.box.im.contains_zero()


@dataclass(frozen=True)
class RootSet:
    """All k roots of Psi_k as pairwise disjoint certified disks.

    disks[0] is the dominant root (the one in (2, 3)); every other disk is
    certified to have modulus below 1.
    """

    k: int
    precision_bits: int
    disks: tuple

    @property
    def dominant(self) -> RootDisk:
        return self.disks[0]

    @property
    def others(self) -> tuple:
        return self.disks[1:]


def _exact_mpf(x) -> mpq:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return mpq(0)
    value = mpq(man) * mpq(2) ** exp
    return -value if sign else value


def _poly_eval_complex(coeffs, z: ComplexBall) -> ComplexBall:
    acc = ComplexBall.exact(coeffs[0], 0, z.prec)
    for c in coeffs[1:]:
        acc = acc * z + c
    return acc


def weierstrass_disks(coeffs, precision_bits: int) -> list:
    """Certified disjoint root disks for a squarefree integer polynomial.

    Approximations come from mpmath.polyroots; each one is then wrapped in
    the a-posteriori inclusion disk of radius deg * |p(z_j) / (a_0 *
    prod_{i != j} (z_j - z_i))|, evaluated in outward-rounded ball
    arithmetic.  The union of those disks contains every root, so if they
    are pairwise disjoint each disk holds exactly one.  Raises
    UndecidedComparison when the disks overlap or are too large, so the
    caller can escalate.
    """
    deg = len(coeffs) - 1
    dps = int(precision_bits * 0.30103) + 20
    with mpmath.workdps(dps):
        try:
            approx = mpmath.polyroots([mpmath.mpf(c) for c in coeffs],
                                      maxsteps=200, extraprec=80)
        except mpmath.libmp.NoConvergence:
            raise UndecidedComparison("root approximation did not converge")
    centers = [(_exact_mpf(r.real), _exact_mpf(r.imag)) for r in approx]

    prec = precision_bits
    disks = []
    for j, (re_q, im_q) in enumerate(centers):
        z = ComplexBall.exact(re_q, im_q, prec)
        residual = _poly_eval_complex(coeffs, z)
        denom = ComplexBall.exact(coeffs[0], 0, prec)
        for i, (re_i, im_i) in enumerate(centers):
            if i != j:
                denom = denom * ComplexBall.exact(re_q - re_i, im_q - im_i, prec)
        try:
            w_abs = (residual / denom).abs()
        except ZeroDivisionError:
            raise UndecidedComparison("root approximations too close") from None
        radius = (w_abs * deg).hi
        if not radius < mpq(2) ** (-(precision_bits // 2)):
            raise UndecidedComparison("inclusion radius too large")
        half = RealBall.from_midrad(0, mpq(radius), prec)
        box = ComplexBall(RealBall.exact(re_q, prec) + half,
                          RealBall.exact(im_q, prec) + half)
        disks.append(RootDisk(center_re=re_q, center_im=im_q,
                              radius=radius, box=box))

    for a in range(deg):
        for b in range(a + 1, deg):
            da, db = disks[a], disks[b]
            gap_sq = ((da.center_re - db.center_re) ** 2
                      + (da.center_im - db.center_im) ** 2)
            reach = mpq(da.radius) + mpq(db.radius)
            if not gap_sq > reach * reach:
                raise UndecidedComparison("inclusion disks overlap")
    return disks


_rootset_cache: dict = {}


def all_roots(k: int, precision_bits: int = 256) -> RootSet:
    """Certified disks around all k roots of Psi_k, dominant first.

    Besides disjointness this certifies the structural facts the Binet
    analysis needs: exactly one root lies in (2, 3) and every other root
    has modulus strictly below 1.
    """
    if not 2 <= k <= ALL_ROOTS_MAX_K:
        raise ValueError(f"all_roots supports 2 <= k <= {ALL_ROOTS_MAX_K}")
    key = (k, precision_bits)
    with _root_lock:
        cached = _rootset_cache.get(key)
    if cached is not None:
        return cached

    coeffs = char_poly(k)
    outcome = None
    for prec in precision_ladder(max(precision_bits, 64)):
        try:
            disks = weierstrass_disks(coeffs, prec)
            dominant = [d for d in disks if d.center_re > 1]
            rest = [d for d in disks if d.center_re <= 1]
            if len(dominant) != 1:
                raise UndecidedComparison("dominant disk not unique")
            dom = dominant[0]
            in_range = dom.box.re > 2 and dom.box.re < 3
            if not (in_range and dom.box.im.contains_zero()):
                raise ArithmeticError(
                    f"dominant root certified outside (2, 3) at k={k}")
            for d in rest:
                if not d.box.abs() < 1:
                    raise ArithmeticError(
                        f"non-dominant root certified with modulus >= 1 at k={k}")
            rest.sort(key=lambda d: (d.center_re, d.center_im))
            outcome = RootSet(k=k, precision_bits=prec,
                              disks=tuple([dom] + rest))
            break
        except UndecidedComparison:
            continue
    if outcome is None:
        raise PrecisionExhausted(f"could not certify root set for k={k}")
    with _root_lock:
        _rootset_cache[key] = outcome
    return outcome


def binet_coefficients(k: int, precision_bits: int = 256) -> list:
    """Enclosures of c_j = g_k(alpha_j) over all roots, dominant first."""
    roots = all_roots(k, precision_bits)
    return [g_eval(k, d.box) for d in roots.disks]


def binet_coefficient_bound_check(k: int, precision_bits: int = 256) -> RealBall:
    """Certify |c_j| <= 2 for every root; returns the largest |c_j| ball."""
    for prec in precision_ladder(precision_bits):
        try:
            moduli = [c.abs() for c in binet_coefficients(k, prec)]
            worst = moduli[0]
            for m in moduli[1:]:
                if m.hi > worst.hi:
                    worst = m
            if not worst <= 2:
                raise ArithmeticError(f"certified |c_j| > 2 at k={k}: {worst!r}")
            return worst
        except UndecidedComparison:
            continue
    raise PrecisionExhausted(f"coefficient bound undecided for k={k}")


def root_moduli_check(k: int, precision_bits: int = 256) -> RealBall:
    """Certify that all non-dominant moduli are < 1; returns the largest."""
    roots = all_roots(k, precision_bits)
    worst = None
    for d in roots.others:
        m = d.box.abs()
        if worst is None or m.hi > worst.hi:
            worst = m
    if not worst < 1:  # already certified inside all_roots; re-assert
        raise ArithmeticError(f"non-dominant modulus reaches 1 at k={k}")
    return worst


def binet_full_eval(k: int, n: int, precision_bits: int = 320) -> RealBall:
    """Enclosure of sum_j g_k(alpha_j) alpha_j^n over all roots of Psi_k.

    The sum is the exact Binet expansion of P_n^{(k)}, so the returned
    interval must contain that integer; tests lean on this as a whole-
    pipeline consistency check.
    """
    if n < 0:
        raise ValueError("need n >= 0")
    for prec in precision_ladder(precision_bits):
        try:
            roots = all_roots(k, prec)
            total = ComplexBall.exact(0, 0, prec)
            for d in roots.disks:
                total = total + g_eval(k, d.box) * d.box.pow_int(n)
            if not total.im.contains_zero():
                raise ArithmeticError(
                    f"imaginary part of Binet sum excludes zero, k={k} n={n}")
            return total.re
        except UndecidedComparison:
            continue
    raise PrecisionExhausted(f"Binet sum unresolved for k={k}, n={n}")


# ----- Binet-error and growth sweeps ---------------------------------------

def binet_error_check(k: int, n_lo: int, n_hi: int,
                      precision_bits: int = 256):
    """Certify |P_n - g_k(alpha) alpha^n| < 1/2 for n in [n_lo, n_hi].

    Returns (max_error_ball, argmax_n).  n_lo is clamped to 2 - k, the
    first index where the one-term approximation is claimed.
    """
    from . import bigseq
    n_lo = max(n_lo, 2 - k)
    if n_hi < n_lo:
        raise ValueError("empty index range")
    window = bigseq.generate(bigseq.RecurrenceSpec.pell(k), n_hi)
    half = Fraction(1, 2)
    for prec in precision_ladder(precision_bits):
        try:
            alpha = dominant_root(k, prec)
            g = g_alpha(k, prec)
            power = alpha.pow_int(n_lo)
            worst, worst_n = None, None
            for n in range(n_lo, n_hi + 1):
                err = abs(g * power - window.term(n))
                if not err < half:
                    raise ArithmeticError(
                        f"certified |P_n - g alpha^n| >= 1/2 at k={k}, n={n}")
                if worst is None or err.hi > worst.hi:
                    worst, worst_n = err, n
                power = power * alpha
            return worst, worst_n
        except UndecidedComparison:
            continue
    raise PrecisionExhausted(f"Binet error sweep unresolved for k={k}")


def growth_bounds_check(k: int, n_lo: int = 1, n_hi: int = 300,
                        precision_bits: int = 192) -> bool:
    """Certify alpha^{n-2} <= P_n <= alpha^{n-1} for n in [n_lo, n_hi]."""
    from . import bigseq
    if n_lo < 1:
        raise ValueError("growth bounds start at n = 1")
    window = bigseq.generate(bigseq.RecurrenceSpec.pell(k), n_hi)
    for prec in precision_ladder(precision_bits):
        try:
            alpha = dominant_root(k, prec)
            for n in range(n_lo, n_hi + 1):
                value = window.term(n)
                # fresh pow_int keeps exponent 0 exact, which matters at
                # n = 1 where P_1 = alpha^0 holds with equality
                low = alpha.pow_int(n - 2)
                up = alpha.pow_int(n - 1)
                if not mpq(low.hi) <= value:
                    if mpq(low.lo) > value:
                        raise ArithmeticError(
                            f"certified alpha^(n-2) > P_n at k={k}, n={n}")
                    raise UndecidedComparison(f"lower growth bound at n={n}")
                if not value <= mpq(up.lo):
                    if value > mpq(up.hi):
                        raise ArithmeticError(
                            f"certified P_n > alpha^(n-1) at k={k}, n={n}")
                    raise UndecidedComparison(f"upper growth bound at n={n}")
            return True
        except UndecidedComparison:
            continue
    raise PrecisionExhausted(f"growth bounds unresolved for k={k}")


# ----- asymptotic (large k) decomposition -----------------------------------

@dataclass(frozen=True)
class AsymptoticDecomposition:
    """delta = alpha^n - phi^{2n} and eta = g_k(alpha) - 1/(phi+2), with the
    certified facts |delta| < phi^{2n - k/2}, |eta| < (3k/2)/phi^k, and the
    exact splitting g alpha^n = phi^{2n}/(phi+2) + delta/(phi+2) +
    eta phi^{2n} + eta delta."""

    k: int
    n: int
    delta: RealBall
    eta: RealBall
    delta_bound: bool
    eta_bound: bool
    identity_contains_zero: bool


def asymptotic_decomposition_check(k: int, n: int,
                                   precision_bits: int = 0) -> AsymptoticDecomposition:
    """Certify the two-scale splitting of g_k(alpha) alpha^n around phi^{2n}.

    Preconditions k >= 30 and 5 <= n < phi^{k/2} are enforced (the n upper
    bound by certified comparison).
    """
    if k < 30:
        raise ValueError("asymptotic decomposition needs k >= 30")
    if n < 5:
        raise ValueError("asymptotic decomposition needs n >= 5")
    # cancellation in alpha^n - phi^{2n} eats about 0.7k + log2(n) bits
    start = precision_bits or max(192, k + n.bit_length() + 96)
    for prec in precision_ladder(start):
        try:
            phi = golden_ratio(prec)
            half_k = phi.pow_int(k).sqrt()
            if not RealBall.exact(n, prec) < half_k:
                raise ValueError(f"need n < phi^(k/2); n={n} too large for k={k}")
            alpha = dominant_root(k, prec)
            g = g_alpha(k, prec)
            phi2n = phi.pow_int(2 * n)
            delta = alpha.pow_int(n) - phi2n
            eta = g - 1 / (phi + 2)
            delta_ok = abs(delta) < phi2n / half_k
            eta_ok = abs(eta) < RealBall.exact(Fraction(3 * k, 2), prec) / phi.pow_int(k)
            lhs = g * alpha.pow_int(n)
            rhs = (phi2n / (phi + 2) + delta / (phi + 2)
                   + eta * phi2n + eta * delta)
            identity = (lhs - rhs).contains_zero()
            return AsymptoticDecomposition(
                k=k, n=n, delta=delta, eta=eta, delta_bound=delta_ok,
                eta_bound=eta_ok, identity_contains_zero=identity)
        except UndecidedComparison:
            continue
    raise PrecisionExhausted(f"asymptotic decomposition unresolved k={k} n={n}")


@dataclass(frozen=True)
class LargeKChain:
    """The three inequalities that close the k > 400 regime."""

    k: int
    stage1_bound_below_phi_half_k: bool   # 1.15e15 k^4 (log k)^3 < phi^{k/2}
    eta_tail_small: bool                  # 3k(phi+2)/(2 phi^k)      < 0.005/phi^{k/2}
    eta_delta_tail_small: bool            # 3k(phi+2)/(2 phi^{3k/2}) < 0.005/phi^{k/2}


def large_k_regime_check(k: int, precision_bits: int = 192) -> LargeKChain:
    """Certify the tail inequalities for k > 400, entirely in log space.

    Log space keeps k = 10^6 comfortable: phi^{k/2} itself would have
    hundreds of thousands of digits.
    """
    if k <= 400:
        raise ValueError("large-k chain applies to k > 400 only")
    for prec in precision_ladder(precision_bits):
        try:
            phi = golden_ratio(prec)
            log_phi = phi.log()
            log_k = RealBall.exact(k, prec).log()
            half_k_log = log_phi * Fraction(k, 2)

            lhs1 = (RealBall.exact(Fraction("1.15e15"), prec).log()
                    + log_k * 4 + log_k.log() * 3)
            ok1 = lhs1 < half_k_log

            # log(3k(phi+2)/2) - k log phi < log(1/200) - (k/2) log phi
            log_head = (RealBall.exact(3 * k, prec) * (phi + 2) / 2).log()
            rhs_tail = RealBall.exact(Fraction(1, 200), prec).log() - half_k_log
            ok2 = log_head - log_phi * k < rhs_tail
            ok3 = log_head - log_phi * Fraction(3 * k, 2) < rhs_tail

            return LargeKChain(k=k, stage1_bound_below_phi_half_k=ok1,
                               eta_tail_small=ok2, eta_delta_tail_small=ok3)
        except UndecidedComparison:
            continue
    raise PrecisionExhausted(f"large-k chain unresolved for k={k}")
