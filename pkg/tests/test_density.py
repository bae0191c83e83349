import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from keithlab.density import (
    alpha_conditions_hold,
    cumulative_count,
    feasible_alpha,
    kappa,
    kappa_stat,
    keith_census,
    zero_heavy_count,
)
from keithlab.errors import BudgetExceeded, DomainError, EmptyInput
from keithlab.keith_engine import is_keith, search_fast, search_naive


def zero_heavy_brute(n, base, alpha):
    import itertools

    need = math.ceil(Fraction(alpha) * n)
    return sum(1 for s in itertools.product(range(base), repeat=n) if s.count(0) >= need)


class TestZeroHeavy:
    def test_example(self):
        r = zero_heavy_count(4, 10, Fraction(1, 2))
        assert r.count == 523  # 6*81 + 4*9 + 1
        assert r.majorant == 4 * 16 * 81

    @pytest.mark.parametrize("n, base, alpha", [(5, 3, "1/2"), (6, 2, "1/3"), (4, 5, "3/4"), (3, 10, "1/2")])
    def test_against_enumeration(self, n, base, alpha):
        assert zero_heavy_count(n, base, alpha).count == zero_heavy_brute(n, base, alpha)

    def test_alpha_near_one(self):
        assert zero_heavy_count(7, 10, Fraction(99, 100)).count == 1

    def test_float_alpha_is_decimal(self):
        assert zero_heavy_count(100, 10, 0.49).alpha == Fraction(49, 100)

    @settings(max_examples=200)
    @given(st.integers(1, 40), st.integers(2, 16), st.fractions(Fraction(1, 100), Fraction(99, 100)))
    def test_within_majorant(self, n, base, alpha):
        assert zero_heavy_count(n, base, alpha).within_majorant

    @pytest.mark.parametrize("alpha", [0, 1, Fraction(3, 2)])
    def test_domain(self, alpha):
        with pytest.raises(DomainError):
            zero_heavy_count(5, 10, alpha)


class TestFeasibleAlpha:
    def test_base3_empty(self):
        iv = feasible_alpha(3)
        assert iv.empty and 0.4 not in iv

    def test_base4(self):
        iv = feasible_alpha(4)
        assert 0.49 in iv
        assert float(iv.lower) == pytest.approx(1 - math.log(2) / math.log(3), abs=1e-5)
        assert float(iv.upper) == pytest.approx(0.5, abs=1e-5)

    def test_base10(self):
        iv = feasible_alpha(10)
        assert Fraction(1, 2) in iv
        assert float(iv.upper) == pytest.approx(1 - math.log10(2), abs=1e-5)

    @pytest.mark.parametrize("base", [4, 5, 10, 16])
    def test_endpoints_certified(self, base):
        iv = feasible_alpha(base)
        assert alpha_conditions_hold(base, iv.lower)
        assert alpha_conditions_hold(base, iv.upper)
        step = Fraction(1, 10**6)
        # the reported endpoints are tight at six decimals
        assert not alpha_conditions_hold(base, iv.lower - step)
        assert not alpha_conditions_hold(base, iv.upper + step)

    @pytest.mark.parametrize("base", [4, 7, 10, 13])
    def test_sampled_rationals(self, base):
        iv = feasible_alpha(base)
        lo, hi = float(iv.lower), float(iv.upper)
        for q in range(2, 60):
            for p in range(1, q):
                a = Fraction(p, q)
                if lo + 1e-5 < a < hi - 1e-5:
                    assert alpha_conditions_hold(base, a)
                elif a < lo - 1e-5 or a > hi + 1e-5:
                    assert not alpha_conditions_hold(base, a)

    def test_domain(self):
        with pytest.raises(DomainError):
            feasible_alpha(2)


class TestKappa:
    def test_values(self):
        assert kappa(2) == 2.0
        assert kappa(10) == pytest.approx(4.321928, abs=1e-6)

    def test_stat_on_census(self):
        ws = [w for n in range(3, 7) for w in search_fast(10, n)]
        s = kappa_stat(10, ws)
        assert s.count == len(ws)
        assert 2 < s.ratio_min <= s.ratio_mean <= s.ratio_max < 7
        assert s.max_abs_deviation >= abs(s.mean_deviation)

    def test_empty(self):
        with pytest.raises(EmptyInput):
            kappa_stat(10, [])

    def test_wrong_base(self):
        with pytest.raises(DomainError):
            kappa_stat(3, search_fast(10, 3))


class TestCensus:
    def test_rows_match_naive(self):
        rows = keith_census(10, 5)
        assert [r.n for r in rows] == [2, 3, 4, 5]
        for r in rows:
            assert r.values == tuple(w.value for w in search_naive(10, r.n))
            assert all(is_keith(v) == w for v, w in zip(r.values, r.witnesses))

    def test_counts(self):
        assert [r.keith_count for r in keith_census(10, 4)] == [6, 2, 9]

    def test_binary_powers(self):
        rows = keith_census(2, 10)
        for r in rows:
            assert 2 ** (r.n - 1) in r.values

    def test_cumulative(self):
        rows = keith_census(10, 4)
        assert cumulative_count(rows, 100) == 6
        assert cumulative_count(rows, 1000) == 8
        assert cumulative_count(rows, 4788) == 14

    def test_budget_and_domain(self):
        with pytest.raises(BudgetExceeded):
            keith_census(10, 12)
        with pytest.raises(DomainError):
            keith_census(10, 3, n_min=1)
