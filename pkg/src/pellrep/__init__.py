"""Certified solver for repdigits among k-generalized Pell numbers.

The pipeline proves, with interval-certified arithmetic end to end, that
33 and 88 are the only terms of the order-k Pell recurrences (k >= 3)
whose decimal digits repeat a single digit at least twice.  bigseq holds
the exact integer sequences, algebraic the dominant-root analysis,
heights the absolute bounds from linear forms in logarithms, reduction
the continued-fraction descent, search the final finite scan, and cli
the orchestration plus the machine-readable report.
"""

from .ball import PrecisionExhausted, RealBall, UndecidedComparison
from .bigseq import RecurrenceSpec, RepdigitForm, iter_terms, repdigit_decompose
from .search import (
    THEOREM_SOLUTIONS,
    SearchDomain,
    SolutionRecord,
    exhaustive_search,
    search_matches_theorem,
    verify_solution,
)

__version__ = "1.0.0"

__all__ = [
    "PrecisionExhausted",
    "RealBall",
    "RecurrenceSpec",
    "RepdigitForm",
    "SearchDomain",
    "SolutionRecord",
    "THEOREM_SOLUTIONS",
    "UndecidedComparison",
    "__version__",
    "exhaustive_search",
    "iter_terms",
    "repdigit_decompose",
    "search_matches_theorem",
    "verify_solution",
]
