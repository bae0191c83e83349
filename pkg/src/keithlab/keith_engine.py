"""Keith-number verification and enumeration.

Two enumerators are provided.  :func:`search_naive` runs :func:`is_keith` on
every n-digit value and serves as the oracle.  :func:`search_fast` uses the
fact that the m-th term of the digit-seeded recurrence is a linear form in
the digits: for every candidate hit index m it solves
``sum(a_i * c_i) == 0`` by depth-first search with interval pruning.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .core import digits_of, k_sequence
from .errors import BudgetExceeded, DomainError

__all__ = [
    "KeithWitness",
    "WeightTable",
    "DEFAULT_BUDGET",
    "naive_budget",
    "is_keith",
    "hit_index",
    "weight_table",
    "iter_weight_tables",
    "solve_digits",
    "search_naive",
    "search_fast",
    "search",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "KEITHLAB_BUDGET"


def naive_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET
    return int(raw.strip())


@dataclass(frozen=True)
class KeithWitness:
    """Certificate that ``value`` is the m-th term of its own digit recurrence."""

    value: int
    base: int
    n: int
    m: int
    prefix_terms: Optional[tuple[int, ...]] = None

    @property
    def digits(self) -> tuple[int, ...]:
        return digits_of(self.value, self.base).digits

    @property
    def in_window(self) -> bool:
        return 2 * self.n < self.m < 7 * self.n

    def verify(self) -> bool:
        terms = k_sequence(self.digits, self.m)
        return len(self.digits) == self.n and terms[-1] == self.value


@dataclass(frozen=True)
class WeightTable:
    """K^N_m written as a linear functional of the digits of N.

    ``weights[i]`` is the m-th term of the recurrence seeded by the i-th unit
    vector; ``coefficients[i] = weights[i] - base**(n-1-i)``, so a digit
    string hits itself at index m iff its dot product with the coefficients
    vanishes.
    """

    base: int
    n: int
    m: int
    weights: tuple[int, ...]
    coefficients: tuple[int, ...]

    def evaluate(self, digits: Sequence[int]) -> int:
        return sum(a * w for a, w in zip(digits, self.weights))

    def residual(self, digits: Sequence[int]) -> int:
        return sum(a * c for a, c in zip(digits, self.coefficients))


def hit_index(digits: Sequence[int], value: int) -> Optional[int]:
    """Smallest m > n with K_m == value, or None once the sequence passes it.

    Requires a nonzero leading digit so that the sequence eventually grows.
    """
    n = len(digits)
    window = list(digits)
    total = sum(window)
    pos = 0
    m = n
    while True:
        m += 1
        if total >= value:
            return m if total == value else None
        term = total
        total += term - window[pos]
        window[pos] = term
        pos += 1
        if pos == n:
            pos = 0


def is_keith(value: int, base: int = 10, with_terms: bool = False) -> Optional[KeithWitness]:
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if value < base:
        raise DomainError(f"{value} has a single base-{base} digit; Keith numbers need n >= 2")
    digits = digits_of(value, base).digits
    m = hit_index(digits, value)
    if m is None:
        return None
    terms = tuple(k_sequence(digits, m)) if with_terms else None
    return KeithWitness(value, base, len(digits), m, terms)


def _check_args(base: int, n: int) -> None:
    if base < 2:
        raise DomainError(f"base must be >= 2, got {base}")
    if n < 2:
        raise DomainError(f"digit count must be >= 2, got {n}")


def search_naive(base: int, n: int, budget: Optional[int] = None) -> list[KeithWitness]:
    """Every n-digit base-``base`` Keith number, by checking each candidate."""
    _check_args(base, n)
    budget = naive_budget() if budget is None else budget
    count = (base - 1) * base ** (n - 1)
    if count > budget:
        raise BudgetExceeded(count, budget)
    found = []
    value = base ** (n - 1)
    for digits in itertools.product(range(1, base), *[range(base)] * (n - 1)):
        m = hit_index(digits, value)
        if m is not None:
            found.append(KeithWitness(value, base, n, m))
        value += 1
    return found


def iter_weight_tables(base: int, n: int) -> Iterator[WeightTable]:
    """Weight tables for m = n+1, n+2, ... until no n-digit value can be hit.

    Iteration stops once the weight of the leading digit reaches ``base**n``:
    every later term of every admissible sequence is at least that weight.
    """
    _check_args(base, n)
    places = tuple(base ** (n - 1 - i) for i in range(n))
    limit = base**n
    # window of unit-vector rows; row j holds the coefficients of K_{m-n+j}
    window: deque[list[int]] = deque(
        ([1 if i == j else 0 for i in range(n)] for j in range(n)), maxlen=n
    )
    total = [1] * n
    m = n
    while True:
        m += 1
        row = total
        if row[0] >= limit:
            return
        yield WeightTable(
            base, n, m, tuple(row), tuple(w - p for w, p in zip(row, places))
        )
        oldest = window[0]
        total = [t + r - o for t, r, o in zip(total, row, oldest)]
        window.append(row)


def weight_table(base: int, n: int, m: int) -> WeightTable:
    _check_args(base, n)
    if m < n + 1:
        raise DomainError(f"weight tables need m >= n+1, got m={m}")
    weights = []
    for i in range(n):
        seed = [0] * n
        seed[i] = 1
        weights.append(k_sequence(seed, m)[-1])
    places = (base ** (n - 1 - i) for i in range(n))
    return WeightTable(
        base, n, m, tuple(weights), tuple(w - p for w, p in zip(weights, places))
    )


def _suffix_bounds(coeffs: Sequence[int], top: int) -> tuple[list[int], list[int]]:
    n = len(coeffs)
    lo = [0] * (n + 1)
    hi = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        c = coeffs[i] * top
        lo[i] = lo[i + 1] + min(0, c)
        hi[i] = hi[i + 1] + max(0, c)
    return lo, hi


def _digit_range(c: int, partial: int, lo: int, hi: int, first: int, last: int) -> range:
    """Digits d in [first, last] keeping 0 inside partial + d*c + [lo, hi]."""
    if c == 0:
        return range(first, last + 1) if lo <= -partial <= hi else range(0)
    # need d*c in [a, b]
    a = -hi - partial
    b = -lo - partial
    if c > 0:
        d_min, d_max = -(-a // c), b // c
    else:
        d_min, d_max = -(-b // c), a // c
    return range(max(first, d_min), min(last, d_max) + 1)


def solve_digits(
    coeffs: Sequence[int],
    base: int,
    lead: Optional[int] = None,
    stats: Optional[dict] = None,
) -> list[tuple[int, ...]]:
    """All digit tuples (leading digit >= 1) with ``sum(a_i * c_i) == 0``.

    Digits are fixed most-significant first, smallest digit first.  A prefix
    is expanded only while the interval of reachable sums still contains 0.
    ``lead`` restricts the leading digit; ``stats`` (if given) accumulates
    ``nodes`` and ``pruned`` counters.
    """
    n = len(coeffs)
    top = base - 1
    lo, hi = _suffix_bounds(coeffs, top)
    out: list[tuple[int, ...]] = []
    prefix = [0] * n
    nodes = 0
    pruned = 0

    def rec(i: int, partial: int, first: int, last: int) -> None:
        nonlocal nodes, pruned
        nodes += 1
        rng = _digit_range(coeffs[i], partial, lo[i + 1], hi[i + 1], first, last)
        pruned += (last - first + 1) - len(rng)
        c = coeffs[i]
        if i == n - 1:
            for d in rng:
                prefix[i] = d
                out.append(tuple(prefix))
            return
        for d in rng:
            prefix[i] = d
            rec(i + 1, partial + d * c, 0, top)

    if lead is None:
        rec(0, 0, 1, top)
    elif 1 <= lead <= top:
        rec(0, 0, lead, lead)
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + nodes
        stats["pruned"] = stats.get("pruned", 0) + pruned
    return out


def _solve_task(task: tuple[int, int, tuple[int, ...], int]) -> tuple[int, list[tuple[int, ...]]]:
    base, m, coeffs, lead = task
    return m, solve_digits(coeffs, base, lead=lead)


def _root_feasible(coeffs: Sequence[int], base: int) -> bool:
    lo, hi = _suffix_bounds(coeffs, base - 1)
    return len(_digit_range(coeffs[0], 0, lo[1], hi[1], 1, base - 1)) > 0


def search_fast(base: int, n: int, jobs: int = 1) -> list[KeithWitness]:
    """Every n-digit base-``base`` Keith number, via per-index linear solving.

    Candidate indices run over every m > n at which some n-digit value could
    still be reached (a superset of the window 2n < m < 7n); indices whose
    root interval excludes zero cost one test.  Each hit is re-verified with
    :func:`hit_index`.  Output does not depend on ``jobs``.
    """
    _check_args(base, n)
    if n == 2:
        # window argument needs n >= 3; the two-digit range is tiny anyway
        return search_naive(base, n, budget=max(naive_budget(), base * base))

    tasks = []
    for table in iter_weight_tables(base, n):
        if not _root_feasible(table.coefficients, base):
            continue
        if not 2 * n < table.m < 7 * n:
            log.debug("base %d n %d: scanning m=%d outside window", base, n, table.m)
        for lead in range(1, base):
            tasks.append((base, table.m, table.coefficients, lead))

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_solve_task(t) for t in tasks]

    best: dict[int, int] = {}
    for m, sols in results:
        for digits in sols:
            value = 0
            for d in digits:
                value = value * base + d
            if value not in best or m < best[value]:
                best[value] = m

    found = []
    for value in sorted(best):
        m = hit_index(digits_of(value, base).digits, value)
        if m != best[value]:
            raise RuntimeError(
                f"linear search claimed {value} hits at m={best[value]}, recurrence says {m}"
            )
        found.append(KeithWitness(value, base, n, m))
    return found


def search(base: int, n: int, algo: str = "fast", jobs: int = 1,
           budget: Optional[int] = None) -> list[KeithWitness]:
    if algo == "fast":
        return search_fast(base, n, jobs=jobs)
    if algo == "naive":
        return search_naive(base, n, budget=budget)
    raise ValueError(f"unknown search algorithm {algo!r}")
