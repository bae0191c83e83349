"""Digit strings and the n-term sum recurrences K^N and L^n.

A digit string seeds an order-n recurrence in which every new term is the sum
of the n previous ones.  ``K^N`` is the sequence seeded by the digits of ``N``
(leading zeros allowed) and ``L^n`` is the one seeded by n ones.

All arithmetic is on Python ints, so values never overflow.
"""

from __future__ import annotations

import string
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, EmptyInput, InvalidDigit

__all__ = [
    "DigitString",
    "SeqEngine",
    "parse_digit_string",
    "value_of",
    "digits_of",
    "k_sequence",
    "l_term",
    "l_sequence",
    "main_term_and_defect",
]

_NUMERAL_CHARS = string.digits + string.ascii_lowercase
MAX_TEXT_BASE = len(_NUMERAL_CHARS)


@dataclass(frozen=True)
class DigitString:
    """Base-``base`` digit vector, most significant digit first."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.base < 2:
            raise DomainError(f"base must be >= 2, got {self.base}")
        if not self.digits:
            raise EmptyInput("digit string must have at least one digit")
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        for d in self.digits:
            if not 0 <= d < self.base:
                raise InvalidDigit(f"digit {d} out of range for base {self.base}")

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    @property
    def n(self) -> int:
        return len(self.digits)

    @property
    def nonzero_count(self) -> int:
        return sum(1 for d in self.digits if d)

    def numeral(self) -> str:
        if self.base > MAX_TEXT_BASE:
            return ",".join(map(str, self.digits))
        return "".join(_NUMERAL_CHARS[d] for d in self.digits)

    def strip(self) -> "DigitString":
        """Drop leading zeros (keeping at least one digit)."""
        i = 0
        while i < len(self.digits) - 1 and self.digits[i] == 0:
            i += 1
        return DigitString(self.base, self.digits[i:])


def parse_digit_string(text: str, base: int = 10) -> DigitString:
    """Read a numeral, keeping leading zeros."""
    if not 2 <= base <= MAX_TEXT_BASE:
        raise DomainError(f"text base must lie in [2, {MAX_TEXT_BASE}], got {base}")
    text = text.strip()
    if not text:
        raise EmptyInput("empty numeral")
    digits = []
    for ch in text.lower():
        d = _NUMERAL_CHARS.find(ch)
        if d < 0 or d >= base:
            raise InvalidDigit(f"character {ch!r} is not a base-{base} digit")
        digits.append(d)
    return DigitString(base, tuple(digits))


def value_of(ds: DigitString) -> int:
    v = 0
    b = ds.base
    for d in ds.digits:
        v = v * b + d
    return v


def digits_of(value: int, base: int = 10) -> DigitString:
    """Canonical digits of ``value``; zero maps to ``[0]``."""
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if value < 0:
        raise DomainError("value must be nonnegative")
    if value == 0:
        return DigitString(base, (0,))
    if base == 10:
        return DigitString(10, tuple(map(int, str(value))))
    out = []
    while value:
        value, r = divmod(value, base)
        out.append(r)
    return DigitString(base, tuple(reversed(out)))


class SeqEngine:
    """Streaming evaluator of the order-n sum recurrence.

    Keeps the last n terms in a ring buffer together with their running sum,
    so each step costs one addition and one subtraction.

    >>> eng = SeqEngine([1, 9, 7])
    >>> [eng.step() for _ in range(5)]
    [17, 33, 57, 107, 197]
    >>> eng.index
    8
    """

    __slots__ = ("order", "window", "index", "_total")

    def __init__(self, init: Iterable[int]):
        init = [int(x) for x in init]
        if not init:
            raise EmptyInput("recurrence needs at least one initial term")
        if any(x < 0 for x in init):
            raise DomainError("initial terms must be nonnegative")
        self.order = len(init)
        self.window: deque[int] = deque(init, maxlen=self.order)
        self.index = self.order
        self._total = sum(init)

    def step(self) -> int:
        term = self._total
        self._total += term - self.window[0]
        self.window.append(term)
        self.index += 1
        return term

    def __iter__(self) -> Iterator[int]:
        while True:
            yield self.step()


def k_sequence(init: Sequence[int], count: int) -> list[int]:
    """First ``count`` terms of the recurrence seeded by ``init``."""
    init = list(init)
    if count < len(init):
        raise DomainError(f"count {count} shorter than the {len(init)} initial terms")
    eng = SeqEngine(init)
    out = list(init)
    out.extend(eng.step() for _ in range(count - len(init)))
    return out


def l_sequence(n: int, count: int) -> list[int]:
    if n < 1:
        raise DomainError("order n must be >= 1")
    if count <= n:
        return [1] * count
    return k_sequence([1] * n, count)


def l_term(n: int, m: int) -> int:
    """m-th term (1-based) of L^n, by exact recurrence."""
    if n < 1 or m < 1:
        raise DomainError("need n >= 1 and m >= 1")
    if m <= n:
        return 1
    eng = SeqEngine([1] * n)
    term = 1
    while eng.index < m:
        term = eng.step()
    return term


def main_term_and_defect(n: int, m: int) -> tuple[int, int]:
    """Split L^n_m as ``(2**(m-n-1) - d) * (n-1) + 1``.

    Returns ``(2**(m-n-1) * (n-1) + 1, d)``.
    """
    if n < 2:
        raise DomainError("decomposition needs n >= 2")
    if m <= n:
        raise DomainError(f"decomposition needs m > n, got n={n}, m={m}")
    power = 1 << (m - n - 1)
    q, r = divmod(l_term(n, m) - 1, n - 1)
    if r:
        raise ArithmeticError(f"L^{n}_{m} - 1 not divisible by {n - 1}")
    return power * (n - 1) + 1, power - q
