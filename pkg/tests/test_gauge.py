import math

import numpy as np
import pytest

from discapprox import custom, double_exponential, geometric, polynomial

FAMILIES = [geometric(0.3), geometric(0.5), geometric(0.8),
            double_exponential(0.1), double_exponential(0.4), double_exponential(0.499),
            polynomial()]


def brute_tail_beyond(profile, M, extra=20000):
    return math.fsum(profile.term(k) for k in range(M + 1, M + extra))


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f"{f.name}{f.params.get('r', '')}")
class TestBuiltinFamilies:
    def test_first_term_is_one(self, fam):
        assert fam.profile.term(1) == 1.0

    def test_gauge_times_s_below_c0(self, fam):
        s = np.logspace(0, 6, 1000)
        vals = np.array([fam.gauge(x) * x for x in s])
        assert np.all(vals <= fam.c0 * (1 + 1e-12))

    def test_gauge_dominates_tail_beyond_M(self, fam):
        for M in range(2, 201):
            assert fam.profile.tail_beyond(M) <= fam.gauge(M) * (1 + 1e-12)

    def test_tail_beyond_below_c0_over_M(self, fam):
        for M in range(2, 201):
            assert fam.profile.tail_beyond(M) <= fam.c0 / M

    def test_inverse_roundtrip(self, fam):
        for s in np.linspace(1.0, 6.0, 41):
            y = fam.gauge(s)
            if y > 0:
                assert fam.gauge.inverse(y) == pytest.approx(s, abs=1e-9)

    def test_strictly_decreasing(self, fam):
        s = np.linspace(1, 5, 200)
        vals = np.array([fam.gauge(x) for x in s])
        assert np.all(np.diff(vals) < 0)


@pytest.mark.parametrize("fam", FAMILIES[:3] + [polynomial()], ids=str)
def test_closed_form_tail_matches_summation(fam):
    for M in (1, 2, 5, 17):
        assert fam.profile.tail_beyond(M) == pytest.approx(
            brute_tail_beyond(fam.profile, M), rel=1e-3 if fam.name == "polynomial" else 1e-12)


def test_geometric_identity_counts_terms_strictly_beyond_K():
    # the identity r^K / (1 - r) is the tail from K+1; from K it is r^(K-1)/(1-r)
    fam = geometric(0.5)
    K = 4
    from_K = math.fsum(fam.profile.term(k) for k in range(K, 200))
    assert from_K == pytest.approx(0.5 ** (K - 1) / 0.5)
    assert from_K > fam.gauge(K)
    assert fam.profile.tail_beyond(K) == pytest.approx(fam.gauge(K), rel=1e-15)


def test_geometric_c0_value():
    # -1 / (e ln(1/2) (1/2)) = 2 / (e ln 2)
    assert geometric(0.5).c0 == pytest.approx(2 / (math.e * math.log(2)), rel=1e-15)
    assert geometric(0.5).c0 == pytest.approx(1.0615, abs=5e-5)


def test_geometric_constant_increasing_in_r():
    rs = np.linspace(0.05, 0.95, 91)
    cr = [geometric(r).bound_constant for r in rs]
    assert np.all(np.diff(cr) > 0)


def test_double_exponential_constant():
    for r in (0.1, 0.25, 0.4):
        assert double_exponential(r).bound_constant == pytest.approx(6 * r ** math.e + 3)


def test_custom_gauge_bisection_matches_closed_form():
    ref = geometric(0.5)
    fam = custom(ref.gauge.forward, ref.c0)
    for y in (0.9, 0.25, 1e-3, 1e-9):
        assert fam.gauge.inverse(y) == pytest.approx(ref.gauge.inverse(y), abs=1e-9)


def test_custom_gauge_out_of_range():
    fam = custom(lambda s: 1.0 / s, 1.0)
    with pytest.raises(ValueError, match="must lie in"):
        fam.gauge.inverse(2.0)


def test_custom_table_profile():
    fam = custom(lambda s: 1.0 / s, 1.0, terms=[1.0, 0.5, 0.25])
    assert fam.profile.term(2) == 0.5 and fam.profile.term(10) == 0.0
    assert fam.profile.tail_beyond(1) == 0.75


def test_family_parameter_ranges():
    with pytest.raises(ValueError):
        geometric(1.0)
    with pytest.raises(ValueError):
        double_exponential(0.5)
