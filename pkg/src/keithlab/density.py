"""Finite ingredients of the density-zero argument for Keith numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import BudgetExceeded, DomainError, EmptyInput
from .fixedpoint import log_fixed
from .keith_engine import KeithWitness, search_fast

__all__ = [
    "CensusRow",
    "ZeroHeavyCount",
    "AlphaInterval",
    "KappaSummary",
    "DEFAULT_CENSUS_BUDGET",
    "keith_census",
    "cumulative_count",
    "zero_heavy_count",
    "alpha_conditions_hold",
    "feasible_alpha",
    "kappa",
    "kappa_stat",
]

DEFAULT_CENSUS_BUDGET = 10**9

Rational = Union[Fraction, int, str, float]


@dataclass(frozen=True)
class CensusRow:
    base: int
    n: int
    values: tuple[int, ...]
    witnesses: tuple[KeithWitness, ...] = ()

    @property
    def keith_count(self) -> int:
        return len(self.values)

    @property
    def bound_ratio(self) -> float:
        # display only
        return self.keith_count * math.sqrt(self.n) / float(self.base**self.n)


def keith_census(
    base: int,
    n_max: int,
    n_min: int = 2,
    jobs: int = 1,
    budget: int = DEFAULT_CENSUS_BUDGET,
) -> list[CensusRow]:
    """Keith numbers with n_min..n_max digits, one row per digit count."""
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if n_min < 2 or n_max < n_min:
        raise DomainError(f"need 2 <= n_min <= n_max, got {n_min}..{n_max}")
    if base**n_max > budget:
        raise BudgetExceeded(base**n_max, budget)
    rows = []
    for n in range(n_min, n_max + 1):
        found = search_fast(base, n, jobs=jobs)
        rows.append(CensusRow(base, n, tuple(w.value for w in found), tuple(found)))
    return rows


def cumulative_count(rows: Sequence[CensusRow], x: int) -> int:
    """Number of census values <= x (rows must cover every length up to x)."""
    return sum(1 for row in rows for v in row.values if v <= x)


@dataclass(frozen=True)
class ZeroHeavyCount:
    n: int
    base: int
    alpha: Fraction
    count: int
    majorant: int

    @property
    def within_majorant(self) -> bool:
        return self.count <= self.majorant


def _as_fraction(alpha: Rational) -> Fraction:
    if isinstance(alpha, float):
        # 0.49 means 49/100, not its binary expansion
        return Fraction(repr(alpha))
    return Fraction(alpha)


def zero_heavy_count(n: int, base: int = 10, alpha: Rational = Fraction(1, 2)) -> ZeroHeavyCount:
    """Length-n strings over base digits having at least alpha*n zeros.

    ``count`` is the exact sum over i >= alpha*n of C(n, i)(b-1)^(n-i);
    ``majorant`` is n * 2^n * (b-1)^floor((1-alpha)n).
    """
    a = _as_fraction(alpha)
    if not 0 < a < 1:
        raise DomainError(f"alpha must lie strictly between 0 and 1, got {a}")
    if n < 1 or base < 2:
        raise DomainError("need n >= 1 and base >= 2")
    i_min = math.ceil(a * n)
    count = sum(math.comb(n, i) * (base - 1) ** (n - i) for i in range(i_min, n + 1))
    majorant = n * 2**n * (base - 1) ** math.floor((1 - a) * n)
    return ZeroHeavyCount(n, base, a, count, majorant)


def alpha_conditions_hold(base: int, alpha: Rational) -> bool:
    """Exact test of 2(b-1)^(1-alpha) < b and b^alpha < b/2 for rational alpha.

    With alpha = p/q both become integer comparisons after raising to q.
    """
    a = _as_fraction(alpha)
    if not 0 < a < 1:
        return False
    p, q = a.numerator, a.denominator
    first = 2**q * (base - 1) ** (q - p) < base**q
    second = base**p * 2**q < base**q
    return first and second


@dataclass(frozen=True)
class AlphaInterval:
    """Open interval (lower, upper) of certified-feasible alpha, or empty."""

    base: int
    lower: Optional[Fraction]
    upper: Optional[Fraction]

    @property
    def empty(self) -> bool:
        return self.lower is None

    def __contains__(self, alpha: Rational) -> bool:
        if self.empty:
            return False
        a = _as_fraction(alpha)
        return self.lower < a < self.upper


def feasible_alpha(base: int, digits: int = 6) -> AlphaInterval:
    """Alpha values admissible for the zero-heavy cut in base ``base``.

    The exact interval is (1 - log(b/2)/log(b-1), 1 - log 2/log b).  Endpoints
    are reported with ``digits`` decimals, the lower one rounded up and the
    upper one rounded down, then certified with :func:`alpha_conditions_hold`.
    """
    if base < 3:
        raise DomainError(f"base must be >= 3, got {base}")
    p = 4 * digits + 64
    scale = 10**digits
    lb = log_fixed(base, p)
    l2 = log_fixed(2, p)
    lbm1 = log_fixed(base - 1, p)
    # ulp slack of 4 on each ratio covers the log rounding
    lo_num = (lbm1 - (lb - l2)) * scale
    hi_num = (lb - l2) * scale
    lower = Fraction(-(-(lo_num + 4 * scale) // lbm1), scale)  # ceil, nudged up
    upper = Fraction((hi_num - 4 * scale) // lb, scale)  # floor, nudged down
    while lower < upper and not alpha_conditions_hold(base, lower):
        lower += Fraction(1, scale)
    while lower < upper and not alpha_conditions_hold(base, upper):
        upper -= Fraction(1, scale)
    if lower >= upper or not alpha_conditions_hold(base, lower):
        return AlphaInterval(base, None, None)
    return AlphaInterval(base, lower, upper)


def kappa(base: int) -> float:
    return 1.0 + math.log2(base)


@dataclass(frozen=True)
class KappaSummary:
    base: int
    kappa: float
    count: int
    ratio_min: float
    ratio_max: float
    ratio_mean: float

    @property
    def mean_deviation(self) -> float:
        return self.ratio_mean - self.kappa

    @property
    def max_abs_deviation(self) -> float:
        return max(abs(self.ratio_min - self.kappa), abs(self.ratio_max - self.kappa))


def kappa_stat(base: int, witnesses: Sequence[KeithWitness]) -> KappaSummary:
    """Compare the observed hit ratios m/n with 1 + log2(base)."""
    if not witnesses:
        raise EmptyInput("kappa statistics need at least one witness")
    if any(w.base != base for w in witnesses):
        raise DomainError("all witnesses must use the requested base")
    ratios = [w.m / w.n for w in witnesses]
    return KappaSummary(
        base, kappa(base), len(ratios), min(ratios), max(ratios), sum(ratios) / len(ratios)
    )
