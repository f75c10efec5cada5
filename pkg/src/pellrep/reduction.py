"""Baker-Davenport reduction of the linear forms, with certified epsilon.

The three campaigns here turn the absolute bounds of heights.py into small
ones.  Stage 1 reduces n for every recurrence order k in [3, 400] and every
repeated digit d; stages 2 and 3 run in Q(sqrt 5) for the k > 400 regime and
cap k itself, ending in a contradiction with k > 400.

The reduction lemma (Dujella-Petho / Baker-Davenport): if p/q is a
convergent of gamma with q > 6M and eps := ||mu q|| - M ||gamma q|| > 0,
then 0 < |u gamma - v + mu| < A * B^(-w) with 0 < u <= M forces
w < log(A q / eps) / log B.  The proof never uses integrality of w, so the
half-integer w = k/2 of the later stages is fine.

Partial quotients of gamma are themselves certified: the Gauss map runs on
the exact rational endpoints of an enclosure of gamma, keeps only the
quotients both endpoints agree on, and asks for a sharper enclosure when
they stop agreeing.  A rational gamma would make that loop escalate forever
(its expansion terminates), so irrationality of the inputs is a standing
assumption; for gamma = log 10 / log alpha it holds because alpha is an
algebraic irrational and 10 is rational (Gelfond-Schneider), and the
campaign would fail loudly with PrecisionExhausted rather than certify
anything false.
"""

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import (
    ALL_ROOTS_MAX_K,
    binet_coefficient_bound_check,
    dominant_root,
    g_alpha,
)
from .ball import (
    PRECISION_CAP,
    PrecisionExhausted,
    RealBall,
    UndecidedComparison,
    _sci,
    ball_log,
    golden_ratio,
    precision_ladder,
)
from .heights import Stage1Bound, bounds_after_k_cap, stage1_n_bound, stage2_k_bound


class EpsilonNeverPositive(ArithmeticError):
    """Every tried convergent had ||mu q|| <= M ||gamma q||."""


def _ceil_q(x) -> int:
    return int(-((-x.numerator) // x.denominator))


# ----- certified continued fractions -----------------------------------------


class CertifiedContinuedFraction:
    """Partial quotients of an irrational number given by enclosures.

    ``provider(prec)`` must return a RealBall containing the value.  Terms
    are extracted by running the Gauss map on the exact rational endpoints
    and keeping the common prefix, which is exactly the part every point of
    the enclosure shares.
    """

    def __init__(self, provider, start_bits: int = 2048, cap: int = PRECISION_CAP):
        self._provider = provider
        self._prec = start_bits
        self._cap = cap
        self.terms: list = []
        # convergent recurrences seeded with p_-2/q_-2 and p_-1/q_-1
        self._p = [0, 1]
        self._q = [1, 0]

    def value(self, prec: int) -> RealBall:
        return self._provider(prec)

    @staticmethod
    def _common_prefix(lo, hi, want: int) -> list:
        terms = []
        while len(terms) < want:
            flo = lo.numerator // lo.denominator
            fhi = hi.numerator // hi.denominator
            if flo != fhi:
                break
            a = int(flo)
            terms.append(a)
            lo_tail = lo - a
            hi_tail = hi - a
            if lo_tail <= 0:
                # the endpoint itself is an integer here; a sharper
                # enclosure will move it off the lattice
                break
            lo, hi = 1 / hi_tail, 1 / lo_tail
        return terms

    def _grow_to(self, terms: list):
        if terms[: len(self.terms)] != self.terms:
            raise ArithmeticError("partial quotient prefix changed between "
                                  "precisions; the provider is not an enclosure")
        for a in terms[len(self.terms):]:
            p = a * self._p[-1] + self._p[-2]
            q = a * self._q[-1] + self._q[-2]
            # determinant invariant of consecutive convergents
            if p * self._q[-1] - self._p[-1] * q not in (1, -1):
                raise ArithmeticError("convergent recurrence lost unimodularity")
            self._p.append(p)
            self._q.append(q)
            self.terms.append(a)

    def ensure_terms(self, count: int):
        while len(self.terms) < count:
            ball = self._provider(self._prec)
            lo, hi = ball.endpoints_mpq()
            got = self._common_prefix(lo, hi, count)
            if len(got) > len(self.terms):
                self._grow_to(got)
            if len(self.terms) >= count:
                return
            if self._prec >= self._cap:
                raise PrecisionExhausted(
                    f"certifying {count} partial quotients (got {len(self.terms)})")
            self._prec = min(self._prec * 2, self._cap)

    def convergent(self, index: int):
        """(p, q) of the index-th convergent, 0-based at a_0."""
        self.ensure_terms(index + 1)
        return int(self._p[index + 2]), int(self._q[index + 2])

    def first_denominator_above(self, limit: int) -> int:
        index = 0
        while True:
            self.ensure_terms(index + 1)
            if self._q[index + 2] > limit:
                return index
            index += 1

    def convergent_quality_ok(self, index: int) -> bool:
        """Certify |gamma - p/q| < 1/(q * q_next) <= 1/q^2 for this index."""
        p, q = self.convergent(index)
        _, q_next = self.convergent(index + 1)
        for prec in precision_ladder(self._prec, self._cap):
            gap = self.value(prec) - Fraction(p, q)
            try:
                return abs(gap) < Fraction(1, q * q_next)
            except UndecidedComparison:
                continue
        raise PrecisionExhausted(f"convergent quality at index {index}")


# ----- the reduction lemma ----------------------------------------------------


@dataclass(frozen=True)
class ReducedInstance:
    label: str
    convergent_index: int
    q: int
    epsilon: RealBall
    bound: RealBall

    def cap(self) -> int:
        """Largest integer strictly below the certified bound."""
        hi = self.bound.endpoints_mpq()[1]
        return _ceil_q(hi) - 1


def dujella_petho_reduce(cf: CertifiedContinuedFraction, mu_provider,
                         m_cap: int, a_const: Fraction, log_b_provider,
                         label: str = "", advance: int = 40,
                         start_bits: int = 2048,
                         cap_bits: int = PRECISION_CAP) -> ReducedInstance:
    """Reduce 0 < |u gamma - v + mu| < A B^(-w), u <= m_cap, to a bound on w.

    Walks the convergents of gamma starting at the first with q > 6 m_cap
    and returns the first whose epsilon is certified positive.  A convergent
    whose epsilon is certified nonpositive is skipped (up to ``advance`` of
    them); an undecided sign escalates the working precision instead, so a
    genuinely tiny epsilon never gets silently treated as a failure.
    """
    if m_cap < 1:
        raise ValueError("m_cap must be a positive integer")
    index = cf.first_denominator_above(6 * m_cap)
    for _ in range(advance):
        _, q = cf.convergent(index)
        for prec in precision_ladder(start_bits, cap_bits):
            gamma_dist = (cf.value(prec) * q).dist_to_nearest_int()
            mu_dist = (mu_provider(prec) * q).dist_to_nearest_int()
            eps = mu_dist - gamma_dist * m_cap
            try:
                positive = eps > 0
            except UndecidedComparison:
                continue
            if not positive:
                break
            a_ball = RealBall.exact(a_const, prec)
            bound = (a_ball * q / eps).log() / log_b_provider(prec)
            return ReducedInstance(label, index, q, eps, bound)
        else:
            raise PrecisionExhausted(f"epsilon sign at {label}, q_{index}")
        index += 1
    raise EpsilonNeverPositive(f"{label}: no positive epsilon in {advance} "
                               f"convergents past q > 6M")


def nonvanishing_certify(value, start_bits: int = 128,
                         cap_bits: int = PRECISION_CAP) -> bool:
    """Certify that an enclosure excludes zero.

    ``value`` is either a RealBall or a callable prec -> RealBall; only the
    callable form can escalate when the enclosure straddles zero.  Used on
    concrete linear-form values before invoking the strict inequality
    0 < |u gamma - v + mu| of the reduction lemma.
    """
    if not callable(value):
        if value.excludes_zero():
            return True
        raise UndecidedComparison("enclosure straddles zero and cannot "
                                  "be refined; pass a provider instead")
    for prec in precision_ladder(start_bits, cap_bits):
        if value(prec).excludes_zero():
            return True
    raise PrecisionExhausted("sign of a linear form value")


# ----- truncation and nonvanishing premises ----------------------------------


def truncation_coefficient(a: Fraction, precision_bits: int = 128) -> RealBall:
    """-log(1 - a) / a: the slope in |log(1+x)| < coeff * |x| for |x| < a."""
    if not 0 < a < 1:
        raise ValueError("need 0 < a < 1")
    prec = precision_bits
    return -ball_log(1 - a, prec) / RealBall.exact(a, prec)


def deweger_bound(a: Fraction, x_bound: RealBall) -> RealBall:
    """Upper bound for |log(1+x)| given |x| <= x_bound <= a < 1.

    The slope -log(1-a)/a is increasing in a, so bounding |x| by x_bound
    inside the window [0, a] gives |log(1+x)| <= slope * x_bound.
    """
    a = Fraction(a)
    if x_bound.endpoints_mpq()[1] > a:
        raise ValueError("x_bound must stay inside the window (0, a)")
    return truncation_coefficient(a, x_bound.prec) * x_bound


def stage1_nonvanishing_check(k: int, precision_bits: int = 256) -> bool:
    """The stage-1 linear form cannot vanish.

    Vanishing would force d 10^m / 9 = |g_k(alpha_i) alpha_i^n| for a
    conjugate root alpha_i inside the unit circle, and the right side stays
    below 2 while d 10^m / 9 >= 100/9 for m >= 2.  For k within reach of
    the root certifier the conjugate values are checked as balls; beyond
    that the denominator gap |alpha_i^(k+1) - alpha_i^(k-1) - k| > k - 2
    bounds them by 2/(k-2) <= 1 with no computation.
    """
    if Fraction(100, 9) <= 2:
        raise AssertionError("unreachable")
    if k > ALL_ROOTS_MAX_K:
        return k >= 4
    for prec in precision_ladder(precision_bits):
        worst = binet_coefficient_bound_check(k, prec)
        try:
            return worst < 2
        except UndecidedComparison:
            continue
    raise PrecisionExhausted(f"conjugate bound at k={k}")


def stage2_nonvanishing_check(precision_bits: int = 128) -> bool:
    """The degree-2 linear form cannot vanish.

    Vanishing would give phi^(2n)/(phi+2) = beta^(2n)/(beta+2) with beta
    the conjugate of phi.  Exact arithmetic in Z[phi] gives
    (phi+2)(beta+2) = 5 and phi*beta = -1, so the relation collapses to
    phi^(4n) = (phi+2)^2/5, impossible once n >= 1 since 5 phi^4 > (phi+2)^2.
    """
    # beta = 1 - phi; multiply u + v*phi pairs with phi^2 = phi + 1
    def mul(x, y):
        u1, v1 = x
        u2, v2 = y
        return (u1 * u2 + v1 * v2, u1 * v2 + u2 * v1 + v1 * v2)

    phi_plus_2 = (Fraction(2), Fraction(1))
    beta_plus_2 = (Fraction(3), Fraction(-1))
    if mul(phi_plus_2, beta_plus_2) != (Fraction(5), Fraction(0)):
        return False
    if mul((Fraction(0), Fraction(1)), (Fraction(1), Fraction(-1))) != \
            (Fraction(-1), Fraction(0)):
        # phi * beta should be exactly -1
        return False
    for prec in precision_ladder(precision_bits):
        phi = golden_ratio(prec)
        try:
            return phi.pow_int(4) * 5 > (phi + 2).pow_int(2)
        except UndecidedComparison:
            continue
    raise PrecisionExhausted("5 phi^4 > (phi+2)^2")


# ----- stage 1 campaign -------------------------------------------------------

STAGE1_A = Fraction(443, 50)        # 8.86 >= 6.14 / log alpha
STAGE1_TRUNC_WINDOW = Fraction(1, 5)
STAGE1_TRUNC_CAP = Fraction(307, 50)
DEFAULT_DIGITS = tuple(range(1, 10))


@dataclass(frozen=True)
class Stage1KResult:
    k: int
    m_cap: int
    premise: Stage1Bound
    nonvanishing: bool
    truncation_ok: bool
    digits: tuple
    n_cap: int

    @property
    def max_bound(self):
        return max(inst.bound.endpoints_mpq()[1] for inst in self.digits)

    def bound_hi_mpfr(self):
        return max(inst.bound.hi for inst in self.digits)

    def rows(self) -> list:
        """One plain-data document per (k, d), for checkpoints and reports."""
        ok = bool(self.premise.all_ok and self.nonvanishing and self.truncation_ok)
        out = []
        for inst in self.digits:
            d = int(inst.label.rsplit("=", 1)[1])
            out.append({
                "k": self.k,
                "d": d,
                "m_cap": self.m_cap,
                "index": inst.convergent_index,
                "q": str(inst.q),
                "eps": _sci(inst.epsilon.lo, 6),
                "bound": _sci(inst.bound.hi, 6),
                "cap": inst.cap(),
                "premise_ok": ok,
            })
        return out


def _stage1_truncation_ok(k: int, precision_bits: int = 192) -> bool:
    """5.5/alpha^n < 0.2 for n >= 5, and the linearized form fits A = 8.86.

    The second part, 6.14 / log alpha <= 8.86, is certified per k by
    heights.stage1_n_bound; here the remaining two constants are pinned:
    truncation slope at window 0.2 times 5.5 stays below 6.14, and
    alpha^5 > 27.5 so the window assumption holds from n = 5 on.
    """
    for prec in precision_ladder(precision_bits):
        alpha = dominant_root(k, prec)
        coeff = truncation_coefficient(STAGE1_TRUNC_WINDOW, prec)
        try:
            slope_ok = coeff * Fraction(11, 2) <= RealBall.exact(STAGE1_TRUNC_CAP, prec)
            window_ok = alpha.pow_int(5) > Fraction(55, 2)
        except UndecidedComparison:
            continue
        return slope_ok and window_ok
    raise PrecisionExhausted(f"stage-1 truncation premises at k={k}")


def stage1_reduce_k(k: int, digits=DEFAULT_DIGITS, precision_bits: int = 2048,
                    advance: int = 40,
                    cap_bits: int = PRECISION_CAP) -> Stage1KResult:
    """Reduce the stage-1 bound for one recurrence order."""
    premise = stage1_n_bound(k)
    m_cap = premise.n_bound

    def gamma(prec):
        return ball_log(10, prec) / dominant_root(k, prec).log()

    def log_b(prec):
        return dominant_root(k, prec).log()

    cf = CertifiedContinuedFraction(gamma, start_bits=precision_bits, cap=cap_bits)
    instances = []
    for d in digits:
        def mu(prec, d=d):
            num = ball_log(d, prec) - ball_log(9, prec) - g_alpha(k, prec).log()
            return num / dominant_root(k, prec).log()

        instances.append(dujella_petho_reduce(
            cf, mu, m_cap, STAGE1_A, log_b, label=f"k={k},d={d}",
            advance=advance, start_bits=precision_bits, cap_bits=cap_bits))

    n_cap = max(inst.cap() for inst in instances)
    return Stage1KResult(k, m_cap, premise,
                         stage1_nonvanishing_check(k),
                         _stage1_truncation_ok(k),
                         tuple(instances), n_cap)


def _stage1_rows(args) -> list:
    k, digits, precision_bits, advance, cap_bits = args
    try:
        return stage1_reduce_k(k, digits, precision_bits, advance, cap_bits).rows()
    except EpsilonNeverPositive as exc:
        return [{"k": k, "d": None, "error": "epsilon-never-positive",
                 "detail": str(exc)}]
    except PrecisionExhausted as exc:
        return [{"k": k, "d": None, "error": "precision-exhausted",
                 "detail": str(exc)}]


@dataclass(frozen=True)
class Stage1Campaign:
    k_min: int
    k_max: int
    rows: tuple
    n_cap: int
    bound_hi: str
    premises_ok: bool
    failures: tuple
    elapsed: float
    resumed: int

    @property
    def ok(self) -> bool:
        return self.premises_ok and not self.failures


def _checkpoint_file(checkpoint_dir, k_min, k_max):
    os.makedirs(checkpoint_dir, exist_ok=True)
    return os.path.join(checkpoint_dir, f"stage1-k{k_min}-{k_max}.jsonl")


def stage1_campaign(k_min: int = 3, k_max: int = 400, digits=DEFAULT_DIGITS,
                    precision_bits: int = 2048, advance: int = 40,
                    cap_bits: int = PRECISION_CAP, checkpoint_dir=None,
                    jobs: int = 1, progress=None) -> Stage1Campaign:
    """Run the reduction for every k in [k_min, k_max] and every digit.

    ``checkpoint_dir`` holds a JSON-lines file with one document per (k, d),
    appended as instances finish (single writer, safe under jobs > 1); a
    rerun skips every k whose digit set is complete.  Failed instances are
    recorded as documents with an ``error`` field rather than aborting the
    campaign.  ``progress`` is an optional callable fed each finished k.
    """
    t0 = time.monotonic()
    digits = tuple(digits)
    done: dict = {}
    if checkpoint_dir is not None:
        path = _checkpoint_file(checkpoint_dir, k_min, k_max)
        try:
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        doc = json.loads(line)
                        done.setdefault(doc["k"], {})[doc.get("d")] = doc
        except FileNotFoundError:
            pass
    complete = {k for k, buckets in done.items()
                if set(buckets) >= set(digits) or None in buckets}
    resumed = len(complete)
    pending = [k for k in range(k_min, k_max + 1) if k not in complete]

    sink = open(_checkpoint_file(checkpoint_dir, k_min, k_max), "a") \
        if checkpoint_dir is not None else None

    def record(rows):
        k = rows[0]["k"]
        done[k] = {row.get("d"): row for row in rows}
        if sink:
            for row in rows:
                sink.write(json.dumps(row) + "\n")
            sink.flush()
        if progress:
            progress(k)

    try:
        if jobs > 1 and pending:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(_stage1_rows,
                                       (k, digits, precision_bits, advance, cap_bits))
                           for k in pending]
                for fut in as_completed(futures):
                    record(fut.result())
        else:
            for k in pending:
                record(_stage1_rows((k, digits, precision_bits, advance, cap_bits)))
    finally:
        if sink:
            sink.close()

    rows = tuple(done[k][d] for k in sorted(done) for d in sorted(
        done[k], key=lambda x: (x is None, x)))
    failures = tuple(r for r in rows if "error" in r)
    good = [r for r in rows if "error" not in r]
    n_cap = max((r["cap"] for r in good), default=0)
    worst = max(good, key=lambda r: float(r["bound"]), default=None)
    return Stage1Campaign(
        k_min, k_max, rows, n_cap,
        worst["bound"] if worst else "",
        all(r["premise_ok"] for r in good) and not failures,
        failures, time.monotonic() - t0, resumed)


# ----- stages 2 and 3: the k > 400 regime ------------------------------------

STAGE2_A = Fraction(37, 10)
STAGE2_TRUNC_WINDOW = Fraction(3, 5)
STAGE2_TRUNC_CAP = Fraction(178, 100)
STAGE2_M = 855 * 10 ** 87
STAGE3_M = 169 * 10 ** 27


@dataclass(frozen=True)
class PhiStageResult:
    label: str
    m_cap: int
    digits: tuple
    k_cap: int
    premises: dict

    @property
    def max_bound(self):
        return max(inst.bound.endpoints_mpq()[1] for inst in self.digits)

    def bound_hi_mpfr(self):
        return max(inst.bound.hi for inst in self.digits)

    @property
    def ok(self) -> bool:
        return all(self.premises.values())


def _phi_gamma(prec):
    return ball_log(10, prec) / golden_ratio(prec).log()


def _phi_stage_premises(precision_bits: int = 192) -> dict:
    """Shared certificates for the two golden-ratio reductions."""
    out = {"nonvanishing": stage2_nonvanishing_check()}
    for prec in precision_ladder(precision_bits):
        phi = golden_ratio(prec)
        coeff = truncation_coefficient(STAGE2_TRUNC_WINDOW, prec)
        try:
            out["truncation"] = bool(
                coeff * Fraction(116, 100) <= RealBall.exact(STAGE2_TRUNC_CAP, prec))
            # window: 1.16 / phi^(k/2) < 0.6 already at k = 401
            out["window"] = bool(
                phi.pow_int(401).sqrt() > Fraction(116, 60))
            # A = 3.7 absorbs 1.78 / log phi
            out["a_const"] = bool(
                RealBall.exact(STAGE2_TRUNC_CAP, prec) / phi.log()
                <= RealBall.exact(STAGE2_A, prec))
        except UndecidedComparison:
            continue
        return out
    raise PrecisionExhausted("golden-ratio stage premises")


def _phi_stage_reduce(label: str, m_cap: int, digits, precision_bits: int,
                      advance: int, cap_bits: int,
                      premises: dict) -> PhiStageResult:
    cf = CertifiedContinuedFraction(_phi_gamma, start_bits=precision_bits,
                                    cap=cap_bits)

    def log_b(prec):
        return golden_ratio(prec).log()

    instances = []
    for d in digits:
        def mu(prec, d=d):
            phi = golden_ratio(prec)
            return (RealBall.exact(Fraction(d, 9), prec) * (phi + 2)).log() / phi.log()

        instances.append(dujella_petho_reduce(
            cf, mu, m_cap, STAGE2_A, log_b, label=f"{label},d={d}",
            advance=advance, start_bits=precision_bits, cap_bits=cap_bits))

    # w = k/2, so k < 2 * bound
    k_cap = max(_ceil_q(2 * inst.bound.endpoints_mpq()[1]) - 1
                for inst in instances)
    return PhiStageResult(label, m_cap, tuple(instances), k_cap, premises)


def stage2_campaign(digits=DEFAULT_DIGITS, precision_bits: int = 2048,
                    advance: int = 40,
                    cap_bits: int = PRECISION_CAP) -> PhiStageResult:
    """First golden-ratio reduction: from m < 8.55e89 down to a cap on k.

    The M here is the m-bound certified by heights.stage2_k_bound; its
    chain flags are carried along in ``premises``.
    """
    chain = stage2_k_bound()
    premises = dict(_phi_stage_premises())
    premises["chain"] = chain.all_ok
    return _phi_stage_reduce("stage2", STAGE2_M, digits, precision_bits,
                             advance, cap_bits, premises)


def stage3_campaign(k_cap_in: int = 889, digits=DEFAULT_DIGITS,
                    precision_bits: int = 2048, advance: int = 40,
                    cap_bits: int = PRECISION_CAP) -> PhiStageResult:
    """Second golden-ratio reduction, after k has been capped once.

    Feeds the closed-form n bound at the capped k back through the same
    linear form with the much smaller M = 1.69e29, which pushes k below
    313 and contradicts k > 400.
    """
    _, _, _, m_int = bounds_after_k_cap(k_cap_in)
    if m_int > STAGE3_M:
        raise ArithmeticError(
            f"closed-form m bound {m_int} exceeds the stage-3 M {STAGE3_M}")
    premises = dict(_phi_stage_premises())
    premises["m_cap_valid"] = True
    return _phi_stage_reduce("stage3", STAGE3_M, digits, precision_bits,
                             advance, cap_bits, premises)
