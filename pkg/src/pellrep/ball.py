"""Directed-rounding interval arithmetic over MPFR.

Every quantity is carried as a pair of mpfr endpoints lo <= hi with the
guarantee that the exact mathematical value lies in [lo, hi].  Lower
endpoints are always rounded toward -inf and upper endpoints toward +inf,
so enclosures stay sound through arbitrarily long computations.  A RealBall
either proves a fact about its interval (a comparison, a sign, a floor) or
raises UndecidedComparison to say the interval is too wide; callers that
can recompute their inputs at higher precision catch that and retry via
precision_ladder().

The exponent range is widened to the MPFR maximum at context creation, so
quantities like alpha^n for n around 10^5 are representable without
overflow.  Truly astronomical exponents (10^26 and beyond) must be handled
in log space by the caller; see heights.matveev_exponent.
"""

from __future__ import annotations

import fractions
import numbers

import gmpy2
from gmpy2 import mpfr, mpq, mpz

DEFAULT_PRECISION = 2048
PRECISION_CAP = 2 ** 20

_EMIN = gmpy2.get_emin_min()
_EMAX = gmpy2.get_emax_max()

# (RoundDown, RoundUp, RoundToNearest) context triples, cached per precision.
_context_cache: dict[int, tuple] = {}


class UndecidedComparison(ArithmeticError):
    """The interval is too wide to certify the requested predicate."""


class PrecisionExhausted(ArithmeticError):
    """Escalation reached the precision cap without resolving a predicate."""


def precision_ladder(start: int, cap: int = PRECISION_CAP):
    """Yield working precisions start, 2*start, 4*start, ... up to cap.

    The canonical retry loop looks like::

        for prec in precision_ladder(bits):
            try:
                return attempt(prec)
            except UndecidedComparison:
                continue
        raise PrecisionExhausted(...)

    """
    if start < 2:
        raise ValueError("precision must be at least 2 bits")
    prec = start
    while prec <= cap:
        yield prec
        prec *= 2


def _contexts(prec):
    try:
        return _context_cache[prec]
    except KeyError:
        kw = dict(precision=prec, emin=_EMIN, emax=_EMAX)
        triple = (
            gmpy2.context(round=gmpy2.RoundDown, **kw),
            gmpy2.context(round=gmpy2.RoundUp, **kw),
            gmpy2.context(round=gmpy2.RoundToNearest, **kw),
        )
        _context_cache[prec] = triple
        return triple


def _sci(x, sig: int = 3) -> str:
    """Plain scientific-notation rendering of an mpfr (display only)."""
    if gmpy2.is_zero(x):
        return "0"
    ds, exp, _ = gmpy2.digits(x, 10, sig)
    sign = "-" if ds.startswith("-") else ""
    ds = ds.lstrip("-")
    mantissa = ds[0] + ("." + ds[1:] if len(ds) > 1 else "")
    return f"{sign}{mantissa}e{exp - 1:+d}"


def _to_exact(value):
    """Convert an exact scalar (int, Fraction, mpz, mpq, mpfr, float, or a
    decimal string) to an mpz/mpq that gmpy2 can round in one step."""
    if isinstance(value, (int, type(mpz(0)), type(mpq(0)))):
        return value
    if isinstance(value, type(mpfr(0))):
        if not gmpy2.is_finite(value):
            raise ValueError(f"non-finite value {value!r}")
        return mpq(value)
    if isinstance(value, str):
        value = fractions.Fraction(value)
    if isinstance(value, float):
        value = fractions.Fraction(value)
    if isinstance(value, fractions.Fraction):
        return mpq(value.numerator, value.denominator)
    raise TypeError(f"cannot interpret {value!r} as an exact number")


class RealBall:
    """A real number known to lie in [lo, hi], endpoints mpfr."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec):
        # Internal constructor: endpoints must already be mpfr at some
        # precision <= prec.  External code should use exact()/from_endpoints().
        if not (gmpy2.is_finite(lo) and gmpy2.is_finite(hi)):
            raise ValueError(f"non-finite endpoint: [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"inverted interval: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # ----- construction -------------------------------------------------

    @classmethod
    def exact(cls, value, prec: int = DEFAULT_PRECISION) -> "RealBall":
        """Tightest prec-bit enclosure of an exactly representable value."""
        v = _to_exact(value)
        down, up, _ = _contexts(prec)
        return cls(mpfr(v, prec, context=down), mpfr(v, prec, context=up), prec)

    @classmethod
    def from_endpoints(cls, lo, hi, prec: int = DEFAULT_PRECISION) -> "RealBall":
        """Enclosure [lo, hi] from exact endpoint values, rounded outward."""
        lo_v, hi_v = _to_exact(lo), _to_exact(hi)
        down, up, _ = _contexts(prec)
        return cls(mpfr(lo_v, prec, context=down), mpfr(hi_v, prec, context=up), prec)

    @classmethod
    def from_midrad(cls, mid, rad, prec: int = DEFAULT_PRECISION) -> "RealBall":
        m, r = _to_exact(mid), _to_exact(rad)
        if r < 0:
            raise ValueError("negative radius")
        return cls.from_endpoints(m - r, m + r, prec)

    # ----- views ---------------------------------------------------------

    @property
    def mid(self):
        """Midpoint as an mpfr (round-to-nearest; always inside or within one
        ulp of the interval, and the rad property accounts for that)."""
        _, _, near = _contexts(self.prec)
        return near.div(near.add(self.lo, self.hi), 2)

    @property
    def rad(self):
        _, up, _ = _contexts(self.prec)
        m = self.mid
        return max(up.sub(self.hi, m), up.sub(m, self.lo), mpfr(0))

    def width(self):
        _, up, _ = _contexts(self.prec)
        return up.sub(self.hi, self.lo)

    def endpoints_mpq(self):
        """Exact rational endpoints."""
        return mpq(self.lo), mpq(self.hi)

    def __repr__(self):
        return f"[{_sci(self.mid, 20)} +/- {_sci(self.rad)}]"

    # ----- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RealBall):
            return other
        return RealBall.exact(other, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        down, up, _ = _contexts(p)
        return RealBall(down.add(self.lo, o.lo), up.add(self.hi, o.hi), p)

    __radd__ = __add__

    def __neg__(self):
        # NB: bare -mpfr would round through the *thread* context (53 bits);
        # minus() under our own context keeps the full precision and is exact.
        down, _, _ = _contexts(self.prec)
        return RealBall(down.minus(self.hi), down.minus(self.lo), self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        down, up, _ = _contexts(p)
        return RealBall(down.sub(self.lo, o.hi), up.sub(self.hi, o.lo), p)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        down, up, _ = _contexts(p)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(down.mul(a, b) for a, b in pairs)
        hi = max(up.mul(a, b) for a, b in pairs)
        return RealBall(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor straddles zero")
        p = max(self.prec, o.prec)
        down, up, _ = _contexts(p)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(down.div(a, b) for a, b in pairs)
        hi = max(up.div(a, b) for a, b in pairs)
        return RealBall(lo, hi, p)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        down, _, _ = _contexts(self.prec)
        return RealBall(mpfr(0), max(down.minus(self.lo), self.hi), self.prec)

    def pow_int(self, n: int) -> "RealBall":
        """Monotonicity-aware x**n for integer n (exact for the endpoints,
        unlike repeated interval multiplication on sign-straddling input)."""
        if not isinstance(n, (int, type(mpz(0)))):
            raise TypeError("pow_int wants an integer exponent")
        n = int(n)
        if n == 0:
            return RealBall.exact(1, self.prec)
        if n < 0:
            return RealBall.exact(1, self.prec) / self.pow_int(-n)
        down, up, _ = _contexts(self.prec)
        if self.lo >= 0:
            return RealBall(down.pow(self.lo, n), up.pow(self.hi, n), self.prec)
        if self.hi <= 0:
            body = (-self).pow_int(n)
            return body if n % 2 == 0 else -body
        if n % 2 == 1:
            return RealBall(down.pow(self.lo, n), up.pow(self.hi, n), self.prec)
        m = max(down.minus(self.lo), self.hi)
        return RealBall(mpfr(0), up.pow(m, n), self.prec)

    def sqrt(self):
        if self.lo < 0:
            raise ValueError("sqrt of an interval reaching below zero")
        down, up, _ = _contexts(self.prec)
        return RealBall(down.sqrt(self.lo), up.sqrt(self.hi), self.prec)

    def log(self):
        if self.lo <= 0:
            raise ValueError("log of an interval reaching zero or below")
        down, up, _ = _contexts(self.prec)
        return RealBall(down.log(self.lo), up.log(self.hi), self.prec)

    def exp(self):
        down, up, _ = _contexts(self.prec)
        return RealBall(down.exp(self.lo), up.exp(self.hi), self.prec)

    # ----- certified predicates -------------------------------------------
    #
    # Rich comparisons return a *certified* truth value or raise
    # UndecidedComparison.  They never guess.

    def __lt__(self, other):
        o = self._coerce(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        raise UndecidedComparison(f"{self!r} < {o!r} undecided")

    def __le__(self, other):
        o = self._coerce(other)
        if self.hi <= o.lo:
            return True
        if self.lo > o.hi:
            return False
        raise UndecidedComparison(f"{self!r} <= {o!r} undecided")

    def __gt__(self, other):
        o = self._coerce(other)
        if self.lo > o.hi:
            return True
        if self.hi <= o.lo:
            return False
        raise UndecidedComparison(f"{self!r} > {o!r} undecided")

    def __ge__(self, other):
        o = self._coerce(other)
        if self.lo >= o.hi:
            return True
        if self.hi < o.lo:
            return False
        raise UndecidedComparison(f"{self!r} >= {o!r} undecided")

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int:
        """Certified sign: +1, -1, or 0 only for the exact point interval."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        raise UndecidedComparison(f"sign of {self!r} undecided")

    def contains(self, value) -> bool:
        """Exact containment test for an exact scalar."""
        v = _to_exact(value)
        return mpq(self.lo) <= v <= mpq(self.hi)

    def contains_ball(self, other: "RealBall") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def in_interior_of(self, other: "RealBall") -> bool:
        return other.lo < self.lo and self.hi < other.hi

    def intersect(self, other: "RealBall") -> "RealBall":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("intersection of disjoint intervals")
        return RealBall(lo, hi, max(self.prec, other.prec))

    def union(self, other: "RealBall") -> "RealBall":
        return RealBall(min(self.lo, other.lo), max(self.hi, other.hi),
                        max(self.prec, other.prec))

    def floor_certain(self) -> int:
        """floor(x) when it is the same for every point of the interval."""
        lo_q, hi_q = self.endpoints_mpq()
        f_lo = lo_q.numerator // lo_q.denominator
        f_hi = hi_q.numerator // hi_q.denominator
        if f_lo == f_hi:
            return int(f_lo)
        raise UndecidedComparison(f"floor of {self!r} undecided")

    def dist_to_nearest_int(self) -> "RealBall":
        """Enclosure of ||x|| = min over integers n of |x - n|.

        Computed exactly in rational arithmetic on the endpoints, with a
        single outward rounding at the end, so the result is as tight as
        the input interval allows.
        """
        lo_q, hi_q = self.endpoints_mpq()
        base = lo_q.numerator // lo_q.denominator
        candidates = [base, base + 1, base + 2]
        half = mpq(1, 2)

        if hi_q - lo_q >= 1:
            lower = mpq(0)
        else:
            dists = []
            for n in candidates:
                if lo_q <= n <= hi_q:
                    dists.append(mpq(0))
                elif n < lo_q:
                    dists.append(lo_q - n)
                else:
                    dists.append(n - hi_q)
            lower = min(dists)
        upper = min(min(max(abs(lo_q - n), abs(hi_q - n)) for n in candidates), half)
        if lower > upper:  # wide interval straddling a half-integer boundary
            lower = upper
        down, up, _ = _contexts(self.prec)
        return RealBall(mpfr(lower, self.prec, context=down),
                        mpfr(upper, self.prec, context=up), self.prec)


class ComplexBall:
    """Rectangular complex enclosure: re and im are RealBalls."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealBall, im: RealBall):
        self.re = re
        self.im = im

    @classmethod
    def exact(cls, re, im=0, prec: int = DEFAULT_PRECISION) -> "ComplexBall":
        return cls(RealBall.exact(re, prec), RealBall.exact(im, prec))

    @classmethod
    def from_real(cls, re: RealBall) -> "ComplexBall":
        return cls(re, RealBall.exact(0, re.prec))

    @property
    def prec(self):
        return max(self.re.prec, self.im.prec)

    def __repr__(self):
        return f"({self.re!r} + {self.im!r}*i)"

    def _coerce(self, other):
        if isinstance(other, ComplexBall):
            return other
        if isinstance(other, RealBall):
            return ComplexBall.from_real(other)
        return ComplexBall.exact(other, 0, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        return ComplexBall(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexBall(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        return ComplexBall(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        return ComplexBall(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        den = o.re.pow_int(2) + o.im.pow_int(2)
        num = self * o.conj()
        return ComplexBall(num.re / den, num.im / den)

    def conj(self):
        return ComplexBall(self.re, -self.im)

    def abs(self) -> RealBall:
        return (self.re.pow_int(2) + self.im.pow_int(2)).sqrt()

    def pow_int(self, n: int) -> "ComplexBall":
        if n < 0:
            raise ValueError("negative complex powers not needed here")
        result = ComplexBall.exact(1, 0, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def contains(self, re_value, im_value=0) -> bool:
        return self.re.contains(re_value) and self.im.contains(im_value)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()


# ----- module-level conveniences ------------------------------------------

_phi_cache: dict[int, RealBall] = {}


def golden_ratio(prec: int = DEFAULT_PRECISION) -> RealBall:
    """Enclosure of (1 + sqrt 5)/2."""
    ball = _phi_cache.get(prec)
    if ball is None:
        ball = (RealBall.exact(5, prec).sqrt() + 1) / 2
        _phi_cache[prec] = ball
    return ball


def ball_log(value, prec: int = DEFAULT_PRECISION) -> RealBall:
    """log of an exact positive scalar."""
    return RealBall.exact(value, prec).log()
