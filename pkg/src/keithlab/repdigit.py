"""Repdigit Keith numbers and the linear form in logarithms behind them.

A repdigit ``a * (b**n - 1) / (b - 1)`` seeds ``a`` times the all-ones
recurrence, so it is Keith exactly when the repunit of the same length is.
If the repunit equals ``L^n_m``, then

    Lambda = n*log(b) - log((b-1)*(n-1)) - (m-n-1)*log(2)

is forced to be tiny.  This module evaluates Lambda in fixed point, decides
``Lambda != 0`` by exact integer comparison, and turns the explicit defect
bound into a rational envelope that any repunit hit would have to violate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, PrecisionError
from .fixedpoint import log_ratio_fixed
from .keith_engine import is_keith

__all__ = [
    "LambdaReport",
    "repdigit_value",
    "repunit",
    "repdigit_keith_scan",
    "repdigit_cross_check",
    "lambda_eval",
    "lambda_nonzero_exact",
    "lambda_window_min",
    "lambda_window",
    "hit_envelope",
    "repunit_hit_excluded",
]

GUARD_BITS = 64


@dataclass(frozen=True)
class LambdaReport:
    base: int
    n: int
    m: int
    precision_bits: int
    lambda_fixed: int  # Lambda * 2**precision_bits, rounded
    nonzero_exact: bool

    @property
    def value(self) -> float:
        return float(self.fraction)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.lambda_fixed, 1 << self.precision_bits)

    @property
    def log2_abs_lambda(self) -> float:
        if self.lambda_fixed == 0:
            return -math.inf
        return math.log2(abs(self.lambda_fixed)) - self.precision_bits

    @property
    def error_bound(self) -> Fraction:
        return Fraction(1, 1 << (self.precision_bits - 2))


def repdigit_value(a: int, n: int, base: int = 10) -> int:
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if not 1 <= a <= base - 1:
        raise DomainError(f"repeated digit {a} out of range for base {base}")
    if n < 1:
        raise DomainError("length must be >= 1")
    return a * (base**n - 1) // (base - 1)


def repunit(n: int, base: int = 10) -> int:
    return repdigit_value(1, n, base)


def repdigit_keith_scan(base: int, n_max: int) -> list[tuple[int, int]]:
    """All (a, n) with 2 <= n <= n_max whose repdigit is Keith.

    Only the repunit is tested per length; every digit a then shares its
    verdict.  :func:`repdigit_cross_check` confirms that sharing directly.
    """
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if n_max < 2:
        raise DomainError("n_max must be >= 2")
    hits = []
    for n in range(2, n_max + 1):
        if is_keith(repunit(n, base), base) is not None:
            hits.extend((a, n) for a in range(1, base))
    return hits


def repdigit_cross_check(base: int, n_max: int = 8) -> bool:
    """Check every repdigit of length 2..n_max agrees with its repunit."""
    for n in range(2, n_max + 1):
        unit = is_keith(repunit(n, base), base)
        for a in range(1, base):
            w = is_keith(repdigit_value(a, n, base), base)
            if (w is None) != (unit is None):
                return False
            if w is not None and w.m != unit.m:
                return False
    return True


def _check_lambda_args(base: int, n: int, m: int) -> None:
    if base < 3:
        raise DomainError(f"linear form needs base >= 3, got {base}")
    if n < 2:
        raise DomainError(f"linear form needs n >= 2, got {n}")
    if m < n + 2:
        raise DomainError(f"linear form needs m >= n+2, got n={n}, m={m}")


def lambda_nonzero_exact(base: int, n: int, m: int) -> bool:
    """Decide Lambda != 0, i.e. b**n != (b-1)*(n-1)*2**(m-n-1), exactly."""
    _check_lambda_args(base, n, m)
    return base**n != (base - 1) * (n - 1) << (m - n - 1)


def lambda_eval(base: int, n: int, m: int, precision_bits: Optional[int] = None,
                form: str = "auto") -> LambdaReport:
    """Evaluate Lambda with ``precision_bits`` fractional bits.

    ``form="decimal"`` uses (2n+1-m)*log 2 + n*log 5 - log(9(n-1)) and is
    only valid for base 10; ``"general"`` uses the base-b expression;
    ``"auto"`` picks the decimal form for base 10.
    """
    _check_lambda_args(base, n, m)
    floor = n + GUARD_BITS
    if precision_bits is None:
        precision_bits = floor
    if precision_bits < floor:
        raise PrecisionError(f"need at least {floor} fractional bits for n={n}, got {precision_bits}")
    if form == "auto":
        form = "decimal" if base == 10 else "general"
    if form == "decimal":
        if base != 10:
            raise DomainError("decimal form only applies to base 10")
        terms = [(2 * n + 1 - m, 2), (n, 5), (-1, 9 * (n - 1))]
    elif form == "general":
        terms = [(n, base), (-1, (base - 1) * (n - 1)), (-(m - n - 1), 2)]
    else:
        raise ValueError(f"unknown form {form!r}")
    fixed = log_ratio_fixed(terms, precision_bits)
    return LambdaReport(base, n, m, precision_bits, fixed, lambda_nonzero_exact(base, n, m))


def lambda_window(n: int) -> range:
    return range(2 * n + 1, 7 * n)


def lambda_window_min(base: int, n: int, precision_bits: Optional[int] = None) -> tuple[int, LambdaReport]:
    """Minimise |Lambda| over 2n < m < 7n; ties go to the smaller m."""
    best: Optional[LambdaReport] = None
    for m in lambda_window(n):
        rep = lambda_eval(base, n, m, precision_bits)
        if best is None or abs(rep.lambda_fixed) < abs(best.lambda_fixed):
            best = rep
    assert best is not None
    return best.m, best


def hit_envelope(base: int, n: int, m: int) -> Fraction:
    """Upper bound on |exp(Lambda) - 1| implied by ``repunit == L^n_m``.

    Writing L^n_m = (2**(m-n-1) - d)(n-1) + 1 gives
    exp(Lambda) - 1 = (b - (b-1)(n-1)d) / ((b-1)(n-1)2**(m-n-1)), and the
    defect satisfies 0 <= d < m*2**(m-2n).
    """
    _check_lambda_args(base, n, m)
    denom = (base - 1) * (n - 1) << (m - n - 1)
    first = Fraction(base, denom)
    second = Fraction(2 * m, 1 << n)
    return max(first, second)


def repunit_hit_excluded(base: int, n: int, m: int) -> bool:
    """True when |exp(Lambda) - 1| alone rules out repunit == L^n_m.

    Exact rational test; a False result is inconclusive, not a hit.
    """
    _check_lambda_args(base, n, m)
    denom = (base - 1) * (n - 1) << (m - n - 1)
    gap = Fraction(abs(base**n - denom), denom)
    # gap == b/denom exactly when the defect is zero, so that side is strict
    return gap > Fraction(base, denom) and gap >= Fraction(2 * m, 1 << n)
