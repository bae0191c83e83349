"""Acceptance gate: one test per criterion, each tagged with its number.

The terminal summary prints a PASS/FAIL line per criterion.
"""

import io
import itertools
import json
import random
import time
from collections import Counter
from fractions import Fraction


from keithlab.antichain import (
    PosetPoint,
    brute_max_antichain,
    composite_join,
    composite_split,
    construct_k3,
    is_antichain,
    keith_block_check,
)
from keithlab.cli import main
from keithlab.core import k_sequence, l_term, main_term_and_defect
from keithlab.density import feasible_alpha, keith_census, zero_heavy_count
from keithlab.keith_engine import is_keith, search_fast
from keithlab.repdigit import lambda_eval, lambda_nonzero_exact, lambda_window_min

from oracles import keith_index, multinomial_k3, ones_term

GOLDEN = [14, 19, 28, 47, 61, 75, 197, 742, 1104, 1537, 2208, 2580, 3684, 4788]


def cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, [json.loads(line)["payload"] for line in out.getvalue().splitlines()]


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_criterion_01_golden_list(record_property):
    record_property("criterion", "1")
    with Clock() as clock:
        code, rows = cli("search", "--base", "10", "--digits", "2..4")
    values = [int(r["value"]) for r in rows]
    assert code == 0
    assert clock.seconds < 5
    assert values == GOLDEN


def test_criterion_02_sequence_fixture(record_property):
    record_property("criterion", "2")
    code, (row,) = cli("sequence", "--init", "1,9,7", "--terms", "10")
    assert code == 0
    assert [int(t) for t in row["terms"]] == [1, 9, 7, 17, 33, 57, 107, 197, 361, 665]


def test_criterion_03_oracle_equivalence(record_property, equivalence_runs):
    record_property("criterion", "3")
    assert equivalence_runs.elapsed < 120
    for (base, n), (fast, naive) in equivalence_runs.runs.items():
        assert Counter(fast) == Counter(naive), (base, n)


def test_criterion_04_defect(record_property):
    record_property("criterion", "4")
    with Clock() as clock:
        for n in range(2, 17):
            for m in range(n + 1, 7 * n):
                main_term, d = main_term_and_defect(n, m)
                value = l_term(n, m)
                assert value == ones_term(n, m)
                assert main_term - d * (n - 1) == value
                assert d >= 0
                # d < m * 2^(m - 2n), cleared of the possibly negative exponent
                assert d * 2 ** (2 * n) < m * 2**m
                assert (value - 1) % (n - 1) == 0
                assert (d == 0) == (m <= 2 * n + 1)
    assert clock.seconds < 10


def test_criterion_05_growth_inequalities(record_property):
    record_property("criterion", "5")
    ones = {(k, m): ones_term(k, m) for k in range(1, 9) for m in range(1, 57)}
    rng = random.Random(20240501)
    with Clock() as clock:
        for base in (2, 10):
            for _ in range(10**4):
                n = rng.randint(1, 8)
                digits = [rng.randrange(base) for _ in range(n)]
                nz = sum(1 for a in digits if a)
                seq = k_sequence(digits, 7 * n)
                for m in range(1, 7 * n + 1):
                    term = seq[m - 1]
                    assert term <= (base - 1) * ones[(n, m)]
                    if m >= n + 1 and nz:
                        assert term >= ones[(n, m - n)]
                        for k in range(1, nz + 1):
                            assert term >= ones[(k, k + m - n)]
    assert clock.seconds < 60


def test_criterion_06_index_window(record_property, equivalence_runs):
    record_property("criterion", "6")
    outside = [
        (w.base, w.value, w.n, w.m)
        for fast, _ in equivalence_runs.runs.values()
        for w in fast
        if w.n >= 3 and not 2 * w.n < w.m < 7 * w.n
    ]
    assert outside == []


def test_criterion_07_binary_powers(record_property):
    record_property("criterion", "7")
    with Clock() as clock:
        for j in range(1, 17):
            w = is_keith(2**j, 2)
            assert w is not None and w.verify()
    assert clock.seconds < 1


def test_criterion_08_repdigit_scan(record_property):
    record_property("criterion", "8")
    with Clock() as clock:
        code, (row,) = cli("repdigit", "scan", "--base", "10", "--max-n", "60")
    assert code == 0
    assert row["hit_count"] == "0" and row["hit_values"] == []
    assert int(row["cross_check_max_n"]) >= 8 and row["cross_check"] is True
    assert clock.seconds < 30


def test_criterion_09_lambda(record_property):
    record_property("criterion", "9")
    with Clock() as clock:
        for base in range(3, 17):
            for n in range(2, 201):
                for m in range(2 * n + 1, 7 * n):
                    assert lambda_nonzero_exact(base, n, m), (base, n, m)
        m_star, rep = lambda_window_min(10, 3, 128)
        assert m_star == 10
        assert abs(float(rep.value) - (-0.1415)) <= 1e-3
        for base, n, m in [(10, 3, 10), (10, 40, 150), (3, 5, 14), (16, 100, 450), (10, 200, 855)]:
            for p in (n + 64, 2 * n + 100, 512):
                lo = lambda_eval(base, n, m, p).fraction
                hi = lambda_eval(base, n, m, 2 * p).fraction
                assert abs(lo - hi) < Fraction(1, 2 ** (p - 2))
    assert clock.seconds < 60


def test_criterion_10_antichain_bound(record_property):
    record_property("criterion", "10")
    with Clock() as clock:
        checked = 0
        for n in range(1, 13):
            k = 2
            while k**n <= 4096:
                s = brute_max_antichain(k, n).brute_size
                # s^2 n < ((k/2) k^n)^2, times 4
                assert 4 * s * s * n < (k ** (n + 1)) ** 2, (k, n, s)
                if k & (k - 1) == 0:
                    assert s * s * n < (k**n) ** 2, (k, n, s)
                checked += 1
                k += 1
    assert checked > 4000
    assert clock.seconds < 120


def test_criterion_11_constructions(record_property):
    record_property("criterion", "11")
    with Clock() as clock:
        for n in range(1, 6):
            images = set()
            for coords in itertools.product(range(1, 5), repeat=n):
                u = PosetPoint(4, coords)
                v, w = composite_split(u, 2, 2)
                assert composite_join(v, w) == u
                images.add((v, w))
            assert len(images) == 4**n
        small, large = construct_k3(3), construct_k3(6)
        assert is_antichain(small) and is_antichain(large)
        assert len(small) == multinomial_k3(3) == 6
        assert len(large) == multinomial_k3(6)
        assert len(large) == 210
    assert clock.seconds < 30


def test_criterion_12_block_antichains(record_property, equivalence_runs):
    record_property("criterion", "12")
    with Clock() as clock:
        for n in (4, 5, 6):
            fast, _ = equivalence_runs.runs[(10, n)]
            assert keith_block_check(fast, n // 2), n
    assert clock.seconds < 10


def test_criterion_13_density_ingredients(record_property):
    record_property("criterion", "13")
    with Clock() as clock:
        for n in range(1, 31):
            assert zero_heavy_count(n, 10, Fraction(1, 2)).count <= n * 6**n
        assert 0.49 in feasible_alpha(4)
        assert Fraction(1, 2) in feasible_alpha(10)
        assert feasible_alpha(3).empty
    assert clock.seconds < 5


def test_criterion_14_census_reverifies(record_property):
    record_property("criterion", "14")
    rows = keith_census(10, 6)
    values = [v for row in rows for v in row.values]
    assert values[: len(GOLDEN)] == GOLDEN
    for row in rows:
        for w in row.witnesses:
            assert w.verify()
            assert is_keith(w.value) == w
            assert keith_index(w.value, 10) == w.m
