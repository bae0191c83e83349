"""Antichains in the product poset P(k, n) = ({1..k}^n, coordinatewise <=).

Includes the Sperner-type bound ``|X| < (k/2) k^n / sqrt(n)``, an exact
maximum-antichain oracle, the k = 3 equal-sum construction, the composite
split of P(lm, n) into P(m, n) x P(l, n), and the suffix-antichain check on
blocks of Keith numbers.

All comparisons involving sqrt(n) are made after squaring, on exact ints.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, DomainError
from .keith_engine import KeithWitness

__all__ = [
    "PosetPoint",
    "SpernerBound",
    "AntichainReport",
    "leq_p",
    "is_antichain",
    "sperner_bound",
    "composite_factor",
    "refined_bound",
    "max_matching",
    "brute_max_antichain",
    "construct_k3",
    "k3_size",
    "composite_split",
    "composite_join",
    "keith_blocks",
    "keith_block_check",
]

DEFAULT_POSET_BUDGET = 4096


@dataclass(frozen=True)
class PosetPoint:
    k: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise DomainError(f"k must be positive, got {self.k}")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        for c in self.coords:
            if not 1 <= c <= self.k:
                raise DomainError(f"coordinate {c} outside [1, {self.k}]")

    @property
    def n(self) -> int:
        return len(self.coords)


def _same_space(a: PosetPoint, b: PosetPoint) -> None:
    if a.k != b.k or a.n != b.n:
        raise DimensionMismatch(f"P({a.k},{a.n}) vs P({b.k},{b.n})")


def leq_p(a: PosetPoint, b: PosetPoint) -> bool:
    _same_space(a, b)
    return all(x <= y for x, y in zip(a.coords, b.coords))


def is_antichain(points: Iterable[PosetPoint]) -> bool:
    """True iff no two distinct points are comparable."""
    pts = list(dict.fromkeys(points))
    if len(pts) <= 1:
        return True
    first = pts[0]
    for p in pts[1:]:
        _same_space(first, p)
    arr = np.array([p.coords for p in pts], dtype=np.int64)
    s = len(arr)
    chunk = max(1, 2_000_000 // (s * arr.shape[1]))
    for start in range(0, s, chunk):
        block = arr[start:start + chunk]
        below = (block[:, None, :] <= arr[None, :, :]).all(axis=2)
        idx = np.arange(len(block))
        below[idx, start + idx] = False
        if below.any():
            return False
    return True


@dataclass(frozen=True)
class SpernerBound:
    """The bound ``factor * k**n / sqrt(n)`` held as exact numbers."""

    k: int
    n: int
    factor: Fraction

    @property
    def numerator(self) -> Fraction:
        return self.factor * self.k**self.n

    @property
    def value(self) -> float:
        return float(self.numerator) / math.sqrt(self.n)

    def holds(self, size: int) -> bool:
        """size < numerator/sqrt(n), i.e. size^2 * n < numerator^2."""
        return size * size * self.n < self.numerator**2

    def beats_or_meets(self, size: int) -> bool:
        return not self.holds(size)


def sperner_bound(k: int, n: int) -> SpernerBound:
    if k < 2 or n < 1:
        raise DomainError("need k >= 2 and n >= 1")
    return SpernerBound(k, n, Fraction(k, 2))


def composite_factor(k: int) -> Optional[int]:
    """Smallest m >= 2 with k = l*m and l >= m, or None when k is prime."""
    for m in range(2, math.isqrt(k) + 1):
        if k % m == 0:
            return m
    return None


def refined_bound(k: int, n: int) -> SpernerBound:
    """Bound with factor m/2 for k = l*m (falls back to k/2 for prime k)."""
    m = composite_factor(k)
    if m is None:
        return sperner_bound(k, n)
    return SpernerBound(k, n, Fraction(m, 2))


@dataclass(frozen=True)
class AntichainReport:
    k: int
    n: int
    bound: SpernerBound
    brute_size: Optional[int] = None
    witness: Optional[frozenset] = field(default=None, compare=False)

    @property
    def bound_holds(self) -> Optional[bool]:
        if self.brute_size is None:
            return None
        return self.bound.holds(self.brute_size)


def max_matching(
    size: int,
    successors: Callable[[int], Iterable[int]],
    initial: Optional[list[Optional[int]]] = None,
) -> tuple[list[Optional[int]], list[Optional[int]], set[int], set[int]]:
    """Hopcroft-Karp on the bipartite graph u_left -> v_right for v in successors(u).

    Returns ``(match_left, match_right, reach_left, reach_right)``; the last
    two are the vertices reachable from unmatched left vertices along
    alternating paths once the matching is maximum (König's construction).
    """
    match_l: list[Optional[int]] = [None] * size
    match_r: list[Optional[int]] = [None] * size
    if initial is not None:
        for u, v in enumerate(initial):
            if v is not None and match_r[v] is None:
                match_l[u] = v
                match_r[v] = u

    while True:
        dist: dict[int, int] = {}
        queue: deque[int] = deque()
        for u in range(size):
            if match_l[u] is None:
                dist[u] = 0
                queue.append(u)
        reach_r: set[int] = set()
        found = False
        limit = math.inf
        while queue:
            u = queue.popleft()
            if dist[u] >= limit:
                continue
            for v in successors(u):
                if v in reach_r:
                    continue
                reach_r.add(v)
                w = match_r[v]
                if w is None:
                    found = True
                    limit = dist[u] + 1
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l, match_r, set(dist), reach_r

        dead: set[int] = set()
        for root in range(size):
            if match_l[root] is not None:
                continue
            # iterative layered DFS from root
            stack: list[tuple[int, Iterator[int]]] = [(root, iter(successors(root)))]
            path: list[int] = []
            done = False
            while stack and not done:
                u, it = stack[-1]
                advanced = False
                for v in it:
                    w = match_r[v]
                    if w is None:
                        path.append(v)
                        done = True
                        advanced = True
                        break
                    if w not in dead and dist.get(w) == dist[u] + 1:
                        path.append(v)
                        stack.append((w, iter(successors(w))))
                        advanced = True
                        break
                if done:
                    break
                if not advanced:
                    dead.add(u)
                    stack.pop()
                    if path:
                        path.pop()
            if done:
                for (u, _), v in zip(stack, path):
                    match_l[u] = v
                    match_r[v] = u
                for u, _ in stack:
                    dead.add(u)


class _Grid:
    """Mixed-radix indexing of P(k, n)."""

    def __init__(self, k: int, n: int):
        self.k = k
        self.n = n
        self.size = k**n
        self.places = [k ** (n - 1 - i) for i in range(n)]

    def coords(self, idx: int) -> tuple[int, ...]:
        out = []
        for p in self.places:
            q, idx = divmod(idx, p)
            out.append(q + 1)
        return tuple(out)

    def index(self, coords: Sequence[int]) -> int:
        return sum((c - 1) * p for c, p in zip(coords, self.places))

    def successors(self, idx: int) -> Iterator[int]:
        c = self.coords(idx)
        steps = [
            [(j - ci) * p for j in range(ci, self.k + 1)]
            for ci, p in zip(c, self.places)
        ]
        it = itertools.product(*steps)
        next(it)  # all-zero offset is idx itself
        for offs in it:
            yield idx + sum(offs)

    def greedy_cover(self) -> list[Optional[int]]:
        """Match each element to an unused upper cover, last coordinate first."""
        used = bytearray(self.size)
        out: list[Optional[int]] = [None] * self.size
        for idx in range(self.size):
            c = self.coords(idx)
            for i in range(self.n - 1, -1, -1):
                if c[i] < self.k:
                    v = idx + self.places[i]
                    if not used[v]:
                        used[v] = 1
                        out[idx] = v
                        break
        return out


def brute_max_antichain(k: int, n: int, budget: int = DEFAULT_POSET_BUDGET) -> AntichainReport:
    """Exact maximum antichain of P(k, n) via a minimum chain partition.

    The width equals ``k**n - |maximum matching|`` on the strict
    comparability graph; the witness comes from König's vertex cover.
    """
    if k < 2 or n < 1:
        raise DomainError("need k >= 2 and n >= 1")
    size = k**n
    if size > budget:
        raise BudgetExceeded(size, budget, what="poset elements")
    grid = _Grid(k, n)
    if n == 1:
        # a chain; the cover matching is already perfect on k-1 pairs
        initial = [i + 1 if i + 1 < size else None for i in range(size)]
    else:
        initial = grid.greedy_cover()
    match_l, _, reach_l, reach_r = max_matching(size, grid.successors, initial)
    width = size - sum(1 for v in match_l if v is not None)
    witness = frozenset(
        PosetPoint(k, grid.coords(x)) for x in reach_l if x not in reach_r
    )
    if len(witness) != width:
        raise RuntimeError(f"König witness has {len(witness)} points, width is {width}")
    return AntichainReport(k, n, sperner_bound(k, n), width, witness)


def k3_size(n: int) -> int:
    """Sum over i = 1..n/3 of the multinomial n! / (i!^2 (n-2i)!)."""
    if n < 3 or n % 3:
        raise DomainError(f"n must be a positive multiple of 3, got {n}")
    f = math.factorial
    return sum(f(n) // (f(i) ** 2 * f(n - 2 * i)) for i in range(1, n // 3 + 1))


def construct_k3(n: int) -> frozenset[PosetPoint]:
    """All points of P(3, n) with i ones, i threes and n-2i twos, 1 <= i <= n/3.

    Every such point has coordinate sum 2n, which makes the set an antichain.
    """
    if n < 3 or n % 3:
        raise DomainError(f"n must be a positive multiple of 3, got {n}")
    out = set()
    positions = range(n)
    for i in range(1, n // 3 + 1):
        for ones in itertools.combinations(positions, i):
            rest = [p for p in positions if p not in ones]
            for threes in itertools.combinations(rest, i):
                c = [2] * n
                for p in ones:
                    c[p] = 1
                for p in threes:
                    c[p] = 3
                out.add(PosetPoint(3, tuple(c)))
    return frozenset(out)


def _check_split(k: int, l: int, m: int) -> None:
    if m < 2 or l < m:
        raise DomainError(f"need l >= m >= 2, got l={l}, m={m}")
    if k != l * m:
        raise DomainError(f"k={k} is not l*m = {l * m}")


def composite_split(u: PosetPoint, l: int, m: int) -> tuple[PosetPoint, PosetPoint]:
    """Map u in P(lm, n) to (v, w) in P(m, n) x P(l, n).

    w_i = ceil(u_i / m) picks the length-m block, v_i the position inside it.
    """
    _check_split(u.k, l, m)
    w = tuple(-(-c // m) for c in u.coords)
    v = tuple(c - m * wi + m for c, wi in zip(u.coords, w))
    return PosetPoint(m, v), PosetPoint(l, w)


def composite_join(v: PosetPoint, w: PosetPoint) -> PosetPoint:
    if v.n != w.n:
        raise DimensionMismatch("v and w have different lengths")
    m, l = v.k, w.k
    return PosetPoint(l * m, tuple(a + m * (b - 1) for a, b in zip(v.coords, w.coords)))


def keith_blocks(
    witnesses: Sequence[KeithWitness], prefix_len: int
) -> dict[tuple[int, tuple[int, ...]], list[PosetPoint]]:
    """Group witnesses by (m, leading digits); map each suffix into P(b, n-prefix_len).

    Suffix digits are shifted by +1 so that they live in [1, b].
    """
    if not witnesses:
        return {}
    base, n = witnesses[0].base, witnesses[0].n
    for w in witnesses:
        if w.base != base or w.n != n:
            raise DimensionMismatch("witnesses must share base and digit count")
    if not 1 <= prefix_len <= n - 1:
        raise DomainError(f"prefix_len must lie in [1, {n - 1}], got {prefix_len}")
    groups: dict[tuple[int, tuple[int, ...]], list[PosetPoint]] = defaultdict(list)
    for w in witnesses:
        d = w.digits
        groups[(w.m, d[:prefix_len])].append(
            PosetPoint(base, tuple(x + 1 for x in d[prefix_len:]))
        )
    return dict(groups)


def keith_block_check(witnesses: Sequence[KeithWitness], prefix_len: int) -> bool:
    return all(is_antichain(pts) for pts in keith_blocks(witnesses, prefix_len).values())
