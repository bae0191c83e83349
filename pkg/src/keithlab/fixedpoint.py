"""Binary fixed-point natural logarithms of positive integers and rationals.

A fixed-point number with ``p`` fractional bits is an int ``X`` standing for
``X / 2**p``.  Logarithms are split as ``log x = e*log 2 + log y`` with
``e = bit_length(x) - 1`` and ``y = x / 2**e`` in [1, 2); the fractional
part uses ``log y = 2*atanh((y-1)/(y+1))``, whose argument is below 1/3.
Each public routine returns a value within one unit in the last place.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

__all__ = ["ln2_fixed", "log_fixed", "log_ratio_fixed", "round_shift", "to_fraction"]

_GUARD = 32


def round_shift(x: int, k: int) -> int:
    """Round ``x / 2**k`` to nearest (ties away from zero)."""
    if k <= 0:
        return x << -k
    half = 1 << (k - 1)
    return (x + half) >> k if x >= 0 else -((-x + half) >> k)


def _atanh_series(t: int, p: int) -> int:
    """sum t^(2j+1)/(2j+1) for a fixed-point t with |t| < 1/2, truncating."""
    t2 = (t * t) >> p
    term = t
    total = t
    j = 1
    while term:
        term = (term * t2) >> p
        total += term // (2 * j + 1)
        j += 1
    return total


@lru_cache(maxsize=64)
def _ln2_raw(p: int) -> int:
    # log 2 = 2*atanh(1/3)
    return 2 * _atanh_series((1 << p) // 3, p)


def ln2_fixed(p: int) -> int:
    wp = p + _GUARD
    return round_shift(_ln2_raw(wp), _GUARD)


def _log_int_raw(x: int, wp: int) -> int:
    e = x.bit_length() - 1
    lo = 1 << e
    t = ((x - lo) << wp) // (x + lo)
    return e * _ln2_raw(wp) + 2 * _atanh_series(t, wp)


def log_fixed(x: int, p: int) -> int:
    """log(x) for an integer x >= 1, with p fractional bits."""
    if x < 1:
        raise ValueError("logarithm needs a positive integer")
    wp = p + _GUARD + x.bit_length().bit_length()
    return round_shift(_log_int_raw(x, wp), wp - p)


def log_ratio_fixed(terms: list[tuple[int, int]], p: int) -> int:
    """sum(coef * log(x)) over (coef, x) pairs, rounded once at the end.

    Guard bits scale with the coefficient sizes so the accumulated error
    stays below half an ulp before the final rounding.
    """
    weight = sum(abs(c) for c, _ in terms) + 1
    size = max((x.bit_length() for _, x in terms), default=1)
    wp = p + _GUARD + weight.bit_length() + size.bit_length()
    acc = 0
    for c, x in terms:
        if x < 1:
            raise ValueError("logarithm needs a positive integer")
        if c:
            acc += c * _log_int_raw(x, wp)
    return round_shift(acc, wp - p)


def to_fraction(x: int, p: int) -> Fraction:
    return Fraction(x, 1 << p)
