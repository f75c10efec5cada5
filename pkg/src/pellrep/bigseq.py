"""Exact integer machinery for k-step Pell-like recurrences and repdigits.

The central family is

    G_n = r*G_{n-1} + G_{n-2} + ... + G_{n-k}

with seeds G_{-(k-2)} = ... = G_{-1} = 0, G_0 = a, G_1 = b.  The presets
cover the four classical specializations (Fibonacci, Lucas, Pell,
Pell-Lucas); the k-Pell numbers are (a, b, r) = (0, 1, 2).  Everything in
this module is exact integer arithmetic; no rounding of any kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes of bigint payload per window


class MemoryBudgetExceeded(MemoryError):
    """A requested window would materialize more bigint data than allowed."""


@dataclass(frozen=True)
class RecurrenceSpec:
    """Parameters (k, r, a, b) of a k-step recurrence with doubled lead term.

    k is the order, r the coefficient of G_{n-1} (all other taps have
    coefficient 1), and (a, b) the values of G_0 and G_1.
    """

    k: int
    r: int
    a: int
    b: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("recurrence order k must be at least 2")
        if self.r < 1:
            raise ValueError("leading coefficient r must be at least 1")

    @classmethod
    def pell(cls, k: int) -> "RecurrenceSpec":
        return cls(k=k, r=2, a=0, b=1)

    @classmethod
    def fibonacci(cls, k: int = 2) -> "RecurrenceSpec":
        return cls(k=k, r=1, a=0, b=1)

    @classmethod
    def lucas(cls, k: int = 2) -> "RecurrenceSpec":
        return cls(k=k, r=1, a=2, b=1)

    @classmethod
    def pell_lucas(cls, k: int = 2) -> "RecurrenceSpec":
        return cls(k=k, r=2, a=2, b=2)

    @property
    def first_index(self) -> int:
        return 2 - self.k


@dataclass(frozen=True)
class SequenceWindow:
    """Materialized terms G_{first_index} .. G_{first_index + len - 1}."""

    spec: RecurrenceSpec
    first_index: int
    terms: tuple

    def term(self, n: int) -> int:
        idx = n - self.first_index
        if not 0 <= idx < len(self.terms):
            raise IndexError(f"index {n} outside window "
                             f"[{self.first_index}, {self.last_index}]")
        return self.terms[idx]

    @property
    def last_index(self) -> int:
        return self.first_index + len(self.terms) - 1

    def __iter__(self) -> Iterator[tuple]:
        for i, value in enumerate(self.terms):
            yield self.first_index + i, value

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class RepdigitForm:
    """A base-10 repdigit d*(10^m - 1)/9: digit d repeated m times."""

    d: int
    m: int

    def __post_init__(self):
        if not 1 <= self.d <= 9:
            raise ValueError("repeated digit must be in 1..9")
        if self.m < 1:
            raise ValueError("digit count must be at least 1")

    @property
    def value(self) -> int:
        return self.d * (10 ** self.m - 1) // 9


def _estimated_window_bytes(spec: RecurrenceSpec, n_max: int) -> int:
    # G_n grows like alpha^n with alpha < r + 1, so bit lengths are at most
    # about n*log2(r+1); the window total is quadratic in n_max.
    import math
    n_pos = max(n_max, 1)
    bits_per_term = n_pos * math.log2(spec.r + 1) + 8
    return int((n_pos + spec.k) * bits_per_term / 8)


def iter_terms(spec: RecurrenceSpec, n_max: int) -> Iterator[tuple]:
    """Yield (n, G_n) for n = first_index .. n_max in O(k) memory.

    Uses a sliding tail sum: G_n = r*G_{n-1} + S_n where
    S_n = G_{n-2} + ... + G_{n-k}, and S advances by adding G_{n-1} and
    dropping G_{n-k}.
    """
    k = spec.k
    start = spec.first_index
    if n_max < start:
        return
    seeds = [0] * (k - 2) + [spec.a, spec.b]
    window = []  # last k terms, oldest first
    for offset, value in enumerate(seeds):
        n = start + offset
        window.append(value)
        yield n, value
        if n == n_max:
            return
    tail_sum = sum(window[:-1])  # G_{n-2} + ... + G_{n-k} for n = 2
    n = 2
    while n <= n_max:
        value = spec.r * window[-1] + tail_sum
        yield n, value
        tail_sum += window[-1] - window[0]
        window.append(value)
        del window[0]
        n += 1


def generate(spec: RecurrenceSpec, n_max: int,
             memory_budget: int = DEFAULT_MEMORY_BUDGET) -> SequenceWindow:
    """Materialize the window G_{2-k} .. G_{n_max} as exact integers."""
    if n_max < spec.first_index:
        raise ValueError(f"n_max {n_max} precedes first index {spec.first_index}")
    estimate = _estimated_window_bytes(spec, n_max)
    if estimate > memory_budget:
        raise MemoryBudgetExceeded(
            f"window up to n={n_max} needs about {estimate} bytes "
            f"(budget {memory_budget}); use iter_terms() instead")
    terms = [value for _, value in iter_terms(spec, n_max)]
    return SequenceWindow(spec=spec, first_index=spec.first_index,
                          terms=tuple(terms))


def _generate_terms_naive(spec: RecurrenceSpec, n_max: int) -> list:
    """Reference generator that re-sums all k taps every step.

    Quadratic-ish and only used to cross-check the sliding-sum generator.
    """
    k = spec.k
    terms = [0] * (k - 2) + [spec.a, spec.b]
    while len(terms) < n_max - spec.first_index + 1:
        terms.append(spec.r * terms[-1] + sum(terms[-k:-1]))
    return terms[:max(0, n_max - spec.first_index + 1)]


def repdigit_decompose(value: int) -> Optional[RepdigitForm]:
    """Recognize value as d*(10^m - 1)/9, or return None."""
    if value <= 0:
        return None
    digits = str(value)
    if digits != digits[0] * len(digits):
        return None
    return RepdigitForm(d=int(digits[0]), m=len(digits))


def pell_equals_fib_check(k: int) -> bool:
    """Exact check of P_n^{(k)} = F_{2n-1} for 1 <= n <= k + 1.

    The k-Pell numbers agree with the odd-indexed Fibonacci numbers on
    this initial stretch, which is what makes phi^2 the reference point
    for the large-k analysis.
    """
    pell = generate(RecurrenceSpec.pell(k), k + 1)
    fib = generate(RecurrenceSpec.fibonacci(), 2 * (k + 1) - 1)
    return all(pell.term(n) == fib.term(2 * n - 1) for n in range(1, k + 2))


def digit_count_bounds(n: int) -> tuple:
    """Fraction bounds (3n/20, 3n/4) on the digit count m of P_n^{(k)}.

    Valid for n >= 5 and any k >= 2: from alpha^{n-2} <= P_n <= alpha^{n-1}
    and 2 < alpha < 3 one gets
        m > (n-2)*log10(2) >= 3n/20   (n >= 5),
        m <= 1 + (n-1)*log10(3) < 3n/4.
    """
    if n < 5:
        raise ValueError("digit-count bounds need n >= 5")
    return Fraction(3 * n, 20), Fraction(3 * n, 4)
