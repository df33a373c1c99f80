import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discapprox import (DecayError, DiscreteMeasure, approximate_infinite, bound_curve,
                        custom, double_exponential, generic_bound, geometric, h_function,
                        polynomial, tail_integral_check, total_variation,
                        truncation_index, tv_bruteforce)
from discapprox.tail import family_measure


def bisect_root(fn, lo, hi, iters=200):
    """Plain bisection for a decreasing ``fn`` crossing zero on ``[lo, hi]``."""
    for _ in range(iters):
        mid = (lo + hi) / 2
        if fn(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


class TestTruncationIndex:
    def test_geometric_half_exact_integer(self):
        assert truncation_index(geometric(0.5), 0.5, 8) == 3

    def test_geometric_matches_bisection(self):
        for r in (0.3, 0.5, 0.8):
            for alpha1 in (1 - r, 0.9):
                for N in (2, 7, 100, 12345):
                    y = 1.0 / (alpha1 * N)
                    s = bisect_root(lambda x: r ** x / (1 - r) - y, -50, 500)
                    want = max(1, math.ceil(s - 1e-9))
                    assert truncation_index(geometric(r), alpha1, N) == want

    def test_polynomial_is_ceiling(self):
        for alpha1 in (0.3, 6 / math.pi ** 2, 1.0):
            for N in (2, 3, 10, 101, 5000):
                assert truncation_index(polynomial(), alpha1, N) == max(1, math.ceil(alpha1 * N - 1e-9))

    def test_range_error(self):
        fam = custom(lambda s: 1.0 / s, 1.0)
        with pytest.raises(ValueError, match="must lie in"):
            # 1/(alpha1 N) = 2 lies above g(1)
            truncation_index(fam, 0.25, 2)

    @settings(max_examples=80, deadline=None)
    @given(st.sampled_from([0.3, 0.5, 0.8]), st.floats(0.2, 1.0), st.integers(2, 10**6))
    def test_monotone_in_N(self, r, alpha1, N):
        fam = geometric(r)
        assert truncation_index(fam, alpha1, N) <= truncation_index(fam, alpha1, N + 1 + N // 3)


class TestPipeline:
    def test_dyadic_geometric_half(self):
        fam = geometric(0.5)
        m = family_measure(fam, 1, "dyadic")
        assert m.alpha1 == 0.5
        ps, rep = approximate_infinite(m, fam, 8)
        assert rep.K_N == 3
        xs = sorted(ps.points[:, 0].tolist())
        # weights (4/7, 2/7, 1/7) give p = (4, 2, 1) and one leftover point at 0
        assert xs == [0.0, 0.125, 0.25, 0.25, 0.5, 0.5, 0.5, 0.5]
        # nu matches mu on 1/2, 1/4, 1/8 and puts its extra 1/8 at the origin
        assert rep.actual_tv == 0.125
        head = m.materialize(12)
        first = DiscreteMeasure(head.points, head.weights, check=False)
        assert tv_bruteforce(first, ps) == pytest.approx(0.125, abs=1e-15)
        assert rep.actual_dstar <= rep.actual_tv + 1e-12
        assert rep.ratio <= 1.0

    def test_single_atom_measure(self):
        fam = geometric(0.5)
        m = DiscreteMeasure([[0.4]], [1.0])
        ps, rep = approximate_infinite(m, fam, 6)
        assert rep.actual_tv == 0.0
        assert np.all(ps.points == 0.4)

    def test_decay_violation_raises_with_index(self):
        fam = geometric(0.5)
        # 0.3 > 0.5 * 0.4 at atom 2
        m = DiscreteMeasure([[0.1], [0.2], [0.3]], [0.4, 0.3, 0.3])
        with pytest.raises(DecayError) as exc:
            approximate_infinite(m, fam, 10)
        assert exc.value.index == 2

    @pytest.mark.parametrize("r", [0.3, 0.5, 0.8])
    @pytest.mark.parametrize("dim", [1, 2])
    def test_geometric_bound_holds(self, r, dim):
        fam = geometric(r)
        m = family_measure(fam, dim)
        for N in (2, 10, 97, 1000):
            _, rep = approximate_infinite(m, fam, N)
            assert rep.actual_tv <= rep.bound
            assert rep.actual_tv <= rep.closed_form
            assert rep.actual_dstar <= rep.actual_tv + rep.dstar_error + 1e-12

    def test_polynomial_trivial_bound(self):
        fam = polynomial()
        m = family_measure(fam, 1)
        _, rep = approximate_infinite(m, fam, 100)
        assert rep.K_N == math.ceil(m.alpha1 * 100)
        assert rep.bound == pytest.approx(9 * m.alpha1)
        assert rep.actual_tv <= 1.0 <= rep.bound

    def test_report_flags_K_below_N(self):
        fam = geometric(0.5)
        _, rep = approximate_infinite(family_measure(fam), fam, 50)
        assert rep.K_below_N and rep.row()[:2] == (50, rep.K_N)


class TestBoundFunctions:
    def test_h_geometric_example(self):
        fam = geometric(0.5)
        assert h_function(fam, 0.5, 8) == pytest.approx(3 / (2 * fam.c0 * 8), rel=1e-12)
        assert h_function(fam, 0.5, 8) == pytest.approx(0.1766, abs=1e-4)

    def test_h_polynomial(self):
        for a in (0.2, 0.6, 1.0):
            assert h_function(polynomial(), a, 50) == pytest.approx(a / 2)

    @pytest.mark.parametrize("fam", [geometric(0.3), geometric(0.8), double_exponential(0.4),
                                     polynomial()], ids=str)
    def test_h_at_most_half_and_eventually_nonincreasing(self, fam):
        # h rises while the inverse is small, then decreases: unimodal on the grid
        for alpha1 in (0.25, 0.6, 1.0):
            Ns = [int(N) for N in np.unique(np.logspace(np.log10(2), 6, 60).astype(int))
                  if alpha1 * N > 1]
            h = np.array([h_function(fam, alpha1, N) for N in Ns])
            # the gauge contract s g(s) <= c0 covers s >= 1 only
            inv = np.array([fam.gauge.inverse(1.0 / (alpha1 * N)) for N in Ns])
            assert h[inv >= 1].max() <= 0.5 + 1e-12
            peak = int(np.argmax(h))
            assert np.all(np.diff(h[peak:]) <= 1e-15)
            assert np.all(np.diff(h[:peak + 1]) >= -1e-15)

    @pytest.mark.parametrize("fam", [geometric(0.3), geometric(0.5), geometric(0.8),
                                     double_exponential(0.1), double_exponential(0.4)], ids=str)
    def test_generic_below_closed_form(self, fam):
        grid = np.unique(np.logspace(np.log10(2), 7, 80).astype(int))
        for alpha1 in (0.1, 0.5, 1.0):
            # the double-exponential inverse needs alpha1 N > 1
            Ns = [int(N) for N in grid if alpha1 * N > 1]
            for N, gen, cf in bound_curve(fam, alpha1, Ns):
                assert gen <= cf + 1e-12 * abs(cf) + 1e-15

    def test_closed_form_geometric_formula(self):
        r = 0.5
        fam = geometric(r)
        ct = (math.log(2) - math.log(1 - r)) / (-math.log(r) * math.log(2))
        cr = (6 * fam.c0 + 3) * ct
        assert fam.closed_form(1000) == pytest.approx(cr * math.log(1000) / 1000)

    def test_generic_bound_formula(self):
        fam = geometric(0.5)
        assert generic_bound(fam, 0.5, 8) == pytest.approx((6 * fam.c0 + 3) * 3 / 8)

    def test_bound_curve_rejects_small_N(self):
        with pytest.raises(ValueError):
            bound_curve(geometric(0.5), 0.5, [1])


def _tail_oracle(r, m):
    mpmath.mp.dps = 60
    r = mpmath.mpf(r)
    s = mpmath.nsum(lambda k: r ** mpmath.e ** k, [m + 1, mpmath.inf])
    a = -mpmath.log(r) * mpmath.e ** m
    return (s <= r ** (mpmath.e ** m)
            and mpmath.e1(a) < mpmath.exp(-a) * mpmath.log(1 + 1 / a)
            and 1 + 1 / a < mpmath.e)


@pytest.mark.parametrize("r,m", [(0.4, 1), (0.1, 3), (0.499, 1), (0.25, 2), (0.01, 1)])
def test_tail_integral_check_examples(r, m):
    assert tail_integral_check(r, m)
    assert _tail_oracle(r, m)


def test_tail_integral_check_grid():
    for r in np.linspace(0.01, 0.499, 25):
        for m in range(1, 11):
            assert tail_integral_check(float(r), m)


def test_tail_integral_check_rejects_bad_input():
    with pytest.raises(ValueError):
        tail_integral_check(0.6, 1)
    with pytest.raises(ValueError):
        tail_integral_check(0.3, 0)
