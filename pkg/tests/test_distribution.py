import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import norm

from zecklab.distribution import (
    DistributionTable,
    build_table,
    build_tables,
    double_factorial,
    fib_count_closed_form,
    fibonacci_gf_series,
    gaussian_metrics,
    gf_series,
    ks_distance,
    moments,
)
from zecklab.exceptions import VerificationError
from zecklab.plrs import PRESETS, PlrsSpec, build_sequence, summand_histogram

FIB = PRESETS["fibonacci"]
DEC = PRESETS["decimal"]
S231 = PlrsSpec((2, 3, 1))
SPECS = [FIB, DEC, S231, PlrsSpec((1, 1, 1)), PlrsSpec((3, 1))]
PHI = (1 + math.sqrt(5)) / 2


def digit_sum_histogram(n):
    """Digit sums of n-digit numbers by convolving independent digits."""
    dist = {d: 1 for d in range(1, 10)}
    for _ in range(n - 1):
        nxt = {}
        for s, c in dist.items():
            for d in range(10):
                nxt[s + d] = nxt.get(s + d, 0) + c
        dist = nxt
    return dict(sorted(dist.items()))


class TestClosedForm:
    def test_examples(self):
        assert fib_count_closed_form(5, 2) == 3
        assert fib_count_closed_form(5, 1) == 1
        assert sum(fib_count_closed_form(5, j) for j in range(1, 6)) == 5

    def test_out_of_range_is_zero(self):
        assert fib_count_closed_form(5, 4) == 0
        assert fib_count_closed_form(1, 3) == 0

    def test_enumeration_of_level_five(self):
        # [8, 13): 8 | 9=8+1, 10=8+2, 11=8+3 | 12=8+3+1
        assert summand_histogram(FIB, 5) == {1: 1, 2: 3, 3: 1}

    def test_binomial_sum_identity(self):
        F = build_sequence(FIB, 60).terms
        for n in range(2, 61):
            assert sum(math.comb(n - 1 - k, k) for k in range(0, (n - 1) // 2 + 1)) == F[n - 2]


class TestBuildTable:
    def test_fibonacci_level_five(self):
        assert build_table(FIB, 5).counts == {1: 1, 2: 3, 3: 1}

    def test_matches_closed_form(self):
        for t in build_tables(FIB, 30):
            expected = {j: fib_count_closed_form(t.level, j) for j in range(1, t.level + 1)}
            assert t.counts == {j: v for j, v in expected.items() if v}

    def test_decimal_matches_digit_convolution(self):
        for t in build_tables(DEC, 12):
            assert t.counts == digit_sum_histogram(t.level)

    @pytest.mark.parametrize("spec", SPECS, ids=lambda s: str(s.coeffs))
    def test_matches_enumeration(self, spec):
        seq = build_sequence(spec, 40)
        tables = build_tables(spec, 30)
        for t in tables:
            if seq.delta(t.level) > 100_000:
                break
            assert t.counts == summand_histogram(spec, t.level)

    def test_normalization_is_enforced(self):
        with pytest.raises(VerificationError):
            DistributionTable(FIB, 5, {1: 1, 2: 3}, 5)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=1, max_size=4).filter(
        lambda c: c[0] > 0 and c[-1] > 0 and c != [1]
    ))
    def test_normalization_random_specs(self, coeffs):
        spec = PlrsSpec(tuple(coeffs))
        seq = build_sequence(spec, 41)
        for t in build_tables(spec, 40):
            assert sum(t.counts.values()) == seq.delta(t.level)


class TestSeries:
    def test_fibonacci_closed_form_coefficients(self):
        a = fibonacci_gf_series(5)
        # y/(1 - y - x y^2) = y + y^2 + (1 + x) y^3 + (1 + 2x) y^4 + (1 + 3x + x^2) y^5 + ...
        assert a == [[], [1], [1], [1, 1], [1, 2], [1, 3, 1]]
        assert a[3][1] == 1  # one integer of [3, 5) with two summands: 4 = 3 + 1

    def test_fibonacci_closed_form_is_shifted_table(self):
        a = fibonacci_gf_series(25)
        for t in build_tables(FIB, 25):
            assert {k + 1: v for k, v in enumerate(a[t.level]) if v} == t.counts

    def test_general_form_fibonacci_low_terms(self):
        g = gf_series(FIB, 3)
        assert g[0] == {}
        assert g[2] == {1: 1}
        assert g[3] == {1: 1, 2: 1}

    @pytest.mark.parametrize("spec", SPECS, ids=lambda s: str(s.coeffs))
    def test_general_form_matches_table(self, spec):
        g = gf_series(spec, 25)
        assert g[0] == {}
        for t in build_tables(spec, 25):
            assert g[t.level] == t.counts


class TestMoments:
    def test_fibonacci_level_five_mean(self):
        s = moments(build_table(FIB, 5), 2)
        assert s.mean == 2
        assert s.variance == Fraction(2, 5)

    def test_decimal_mean_and_variance(self):
        # level n = n digits: leading digit uniform on 1..9, the rest on 0..9
        for t in build_tables(DEC, 15):
            s = moments(t, 2)
            assert s.mean == 5 + Fraction(9, 2) * (t.level - 1)
            assert s.variance == Fraction(20, 3) + Fraction(33, 4) * (t.level - 1)

    def test_degenerate(self):
        s = moments(DistributionTable(FIB, 3, {3: 7}, 7), 4)
        assert s.variance == 0
        assert s.standardized_moments == {3: None, 4: None}

    @pytest.mark.parametrize("spec", SPECS, ids=lambda s: str(s.coeffs))
    def test_two_paths_up_to_sixth(self, spec):
        # moments() raises if the operator path and direct sums disagree
        for t in build_tables(spec, 20):
            s = moments(t, 6)
            assert s.raw_moments[0] == 1
            direct = sum(Fraction(k**6 * v, t.delta) for k, v in t.counts.items())
            assert s.raw_moments[6] == direct

    def test_centered_moments_against_raw(self):
        s = moments(build_table(S231, 12), 4)
        m1, m2, m3, m4 = s.raw_moments[1:5]
        assert s.centered_moments[2] == m2 - m1**2
        assert s.centered_moments[3] == m3 - 3 * m1 * m2 + 2 * m1**3
        assert s.centered_moments[4] == m4 - 4 * m1 * m3 + 6 * m1**2 * m2 - 3 * m1**4

    def test_rejects_low_order(self):
        with pytest.raises(ValueError):
            moments(build_table(FIB, 5), 1)

    def test_fibonacci_mean_slope_converges(self):
        tables = build_tables(FIB, 100)
        slope = float(tables[99].mean - tables[98].mean)
        assert abs(slope - 1 / (PHI**2 + 1)) < 1e-6


@pytest.fixture(scope="module")
def fib1000():
    return build_table(FIB, 1000)


class TestGaussian:
    def test_fibonacci_thousand(self, fib1000):
        m = gaussian_metrics(fib1000)
        assert abs(m.skewness) < 0.05
        assert abs(m.excess_kurtosis) < 0.05
        assert m.ks_distance < 0.02

    def test_decimal_five_hundred(self):
        m = gaussian_metrics(build_table(DEC, 500))
        assert abs(m.skewness) < 0.05
        assert abs(m.excess_kurtosis) < 0.05
        assert m.ks_distance < 0.02

    def test_standardized_second_moment_is_one(self, fib1000):
        m = gaussian_metrics(fib1000, 6)
        assert m.standardized_even_moments[2] == (1.0, 1)
        assert m.standardized_even_moments[6][1] == 15

    def test_zero_variance_rejected(self):
        with pytest.raises(ValueError):
            gaussian_metrics(DistributionTable(FIB, 3, {3: 7}, 7))

    def test_ks_against_scipy(self):
        t = build_table(S231, 15)
        s = moments(t, 2)
        mu, sd = float(s.mean), math.sqrt(s.variance)
        ks = sorted(t.counts)
        cdf = 0
        expected = norm.cdf((ks[0] - 0.5 - mu) / sd)
        for k in ks:
            cdf += t.counts[k]
            expected = max(expected, abs(cdf / t.delta - norm.cdf((k + 0.5 - mu) / sd)))
        assert ks_distance(t.counts, t.delta, s.mean, s.variance) == pytest.approx(expected, abs=1e-12)

    def test_double_factorial(self):
        assert [double_factorial(n) for n in (1, 3, 5, 7)] == [1, 3, 15, 105]
