"""Closed-form ergodic rate layer.

Heavy oracle agreement (10^6-trial Monte Carlo) lives in the acceptance
suite; here the same cross-checks run at reduced trial counts plus the
exact identities, degeneracy routing, and validation behavior.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anmimo import (
    DegenerateSpectrumError,
    DomainError,
    SystemConfig,
    average_rate_bounds,
    average_secrecy_rate,
    bob_capacity,
    build_spectrum,
    eve_leakage_upper_bound,
    exp_integral_e1,
    mc_average_secrecy_rate,
    mc_logdet_oracle,
    omega,
    rate_report,
    theta,
)


def cfg(n_a, n_b, n_e, alpha, beta, gamma):
    return SystemConfig(n_a=n_a, n_b=n_b, n_e=n_e, alpha=alpha, beta=beta, gamma=gamma)


class TestTheta:
    def test_zero_snr(self):
        assert theta(3, 6, 0.0) == 0.0

    def test_single_antenna_is_exponential_integral(self):
        # E[ln(1 + x|g|^2)] = e^(1/x) E1(1/x) for unit-mean |g|^2
        for x in (0.3, 1.0, 2.0, 7.5):
            expect = math.exp(1.0 / x) * exp_integral_e1(1.0 / x)
            assert theta(1, 1, x) == pytest.approx(expect, rel=1e-10)

    def test_against_mc_oracle_small(self):
        for m, n, x in ((1, 1, 2.0), (2, 3, 4.0)):
            est = mc_logdet_oracle(m, n, x, 100_000, seed=42)
            assert abs(theta(m, n, x) - est.mean) <= 3.0 * est.stderr

    def test_regression_values(self):
        # frozen against the 10^6-trial oracle runs
        assert theta(4, 6, 2.0) == pytest.approx(8.932187495166415, rel=1e-12)
        assert theta(3, 6, 1000.0) == pytest.approx(25.19261846768807, rel=1e-12)
        assert theta(3, 3, 1e6) == pytest.approx(42.21492489413397, rel=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            theta(3, 2, 1.0)  # m > n: caller must order the pair
        with pytest.raises(DomainError):
            theta(0, 2, 1.0)
        with pytest.raises(DomainError):
            theta(2, 17, 1.0)  # beyond the validated envelope
        with pytest.raises(DomainError):
            theta(2, 3, -0.5)

    def test_envelope_boundary_finite(self):
        # largest supported size, stressed both at tiny and large scale
        assert math.isfinite(theta(16, 16, 0.05))
        assert math.isfinite(theta(16, 16, 100.0))

    @given(
        st.integers(min_value=1, max_value=6),
        st.integers(min_value=0, max_value=6),
        st.sampled_from([0.25, 0.5, 1.0, 2.0, 4.0]),
    )
    @settings(max_examples=40, deadline=None)
    def test_monotone_in_m_n_x(self, m, extra, x):
        n = m + extra
        base = theta(m, n, x)
        assert theta(m, n, 1.5 * x) > base  # more SNR
        assert theta(m, n + 1, x) > base  # more transmit diversity
        if m + 1 <= n:
            assert theta(m + 1, n, x) > base  # more receive antennas


class TestBuildSpectrum:
    def test_noise_group_larger(self):
        s = build_spectrum(cfg(6, 3, 4, alpha=2.0, beta=0.5, gamma=1.0))
        # 1/alpha = 0.5, 1/(alpha*beta) = 1.0
        assert (s.mu1, s.mu2, s.m1, s.m2) == (1.0, 0.5, 3, 3)

    def test_data_group_larger(self):
        s = build_spectrum(cfg(4, 3, 2, alpha=1.0, beta=2.0, gamma=1.0))
        assert (s.mu1, s.mu2, s.m1, s.m2) == (1.0, 0.5, 3, 1)

    def test_multiplicities_cover_transmit_array(self):
        s = build_spectrum(cfg(9, 2, 3, alpha=0.7, beta=3.0, gamma=1.5))
        assert s.m1 + s.m2 == 9
        assert s.mu1 > s.mu2 > 0.0

    def test_equal_power_ratio_rejected(self):
        with pytest.raises(DegenerateSpectrumError):
            build_spectrum(cfg(6, 3, 4, alpha=2.0, beta=1.0, gamma=1.0))


class TestOmega:
    def test_equal_ratio_branch_reduces_to_theta(self):
        c = cfg(4, 2, 2, alpha=1.0, beta=1.0, gamma=1.0)
        assert omega(c) == theta(2, 4, 1.0)

    def test_against_two_level_oracle(self):
        c = cfg(6, 3, 4, alpha=2.0, beta=0.5, gamma=1.0)
        profile = [2.0, 2.0, 2.0, 1.0, 1.0, 1.0]
        est = mc_logdet_oracle(4, 6, profile, 200_000, seed=9)
        assert abs(omega(c) - est.mean) <= 3.0 * est.stderr

    def test_continuity_at_equal_ratio(self):
        c1 = cfg(6, 3, 4, alpha=2.0, beta=1.0, gamma=1.0)
        center = omega(c1)
        gaps = []
        for eps in (1e-2, 1e-3, 1e-4):
            lo = omega(cfg(6, 3, 4, alpha=2.0, beta=1.0 - eps, gamma=1.0))
            hi = omega(cfg(6, 3, 4, alpha=2.0, beta=1.0 + eps, gamma=1.0))
            gaps.append(max(abs(lo - center), abs(hi - center)))
        assert gaps[2] <= 1e-3
        assert gaps[0] > gaps[1] > gaps[2]

    def test_regression_values(self):
        assert omega(cfg(6, 3, 12, alpha=2.0, beta=0.5, gamma=1.0)) == pytest.approx(
            15.824114271741264, rel=1e-9
        )
        assert omega(cfg(6, 3, 3, alpha=1e3, beta=1e3, gamma=1.0)) == pytest.approx(
            42.26231413801759, rel=1e-9
        )

    def test_zero_snr(self):
        assert omega(cfg(6, 3, 4, alpha=0.0, beta=0.5, gamma=1.0)) == 0.0


class TestAverageSecrecyRate:
    def test_equal_ratio_identity(self):
        c = cfg(6, 3, 4, alpha=2.0, beta=1.0, gamma=3.0)
        expect = (
            theta(c.n_b, c.n_a, c.alpha * c.gamma)
            + theta(c.n_min, c.n_max, c.alpha)
            - theta(c.n_hat_min, c.n_hat_max, c.alpha)
        )
        assert average_secrecy_rate(c) == expect

    def test_matches_mc_unclamped(self):
        c = cfg(6, 3, 4, alpha=2.0, beta=0.5, gamma=2.0)
        est = mc_average_secrecy_rate(c, 100_000, seed=17, clamp=False)
        assert abs(average_secrecy_rate(c) - est.mean) <= 3.0 * est.stderr

    def test_nonincreasing_in_eavesdropper_size(self):
        vals = [
            average_secrecy_rate(cfg(6, 3, n_e, alpha=2.0, beta=0.5, gamma=2.0))
            for n_e in (1, 2, 4, 6, 8, 10, 12)
        ]
        assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))

    def test_zero_snr(self):
        assert average_secrecy_rate(cfg(6, 3, 4, alpha=0.0, beta=0.5, gamma=2.0)) == 0.0


class TestBounds:
    def test_sandwich_on_fig3_style_sweep(self):
        for n_e in range(1, 9):
            c = cfg(4, 3, n_e, alpha=2.0, beta=10 ** 0.1, gamma=10 ** 0.6)
            lower, upper = average_rate_bounds(c)
            exact = average_secrecy_rate(c)
            assert lower <= exact <= upper
            assert upper - lower >= 0.0

    def test_equal_ratio_collapse(self):
        c = cfg(5, 2, 3, alpha=1.5, beta=1.0, gamma=2.0)
        lower, upper = average_rate_bounds(c)
        exact = average_secrecy_rate(c)
        assert upper - lower <= 1e-9
        assert lower == pytest.approx(exact, abs=1e-9)

    def test_zero_snr(self):
        assert average_rate_bounds(cfg(4, 2, 2, alpha=0.0, beta=2.0, gamma=1.0)) == (
            0.0,
            0.0,
        )

    @given(
        st.integers(min_value=2, max_value=10),
        st.integers(min_value=1, max_value=9),
        st.integers(min_value=1, max_value=10),
        st.floats(min_value=0.5, max_value=8.0),
        st.floats(min_value=0.1, max_value=10.0),
        st.floats(min_value=0.5, max_value=8.0),
    )
    @settings(max_examples=25, deadline=None)
    def test_sandwich_random(self, n_a, n_b, n_e, alpha, beta, gamma):
        if n_b >= n_a:
            n_b = n_a - 1
        c = cfg(n_a, n_b, n_e, alpha, beta, gamma)
        lower, upper = average_rate_bounds(c)
        exact = average_secrecy_rate(c)
        tol = 1e-9 * max(1.0, abs(exact))
        assert lower <= exact + tol
        assert exact <= upper + tol


class TestBobCapacityAndLeakage:
    def test_bob_zero_snr(self):
        assert bob_capacity(cfg(6, 3, 4, alpha=0.0, beta=1.0, gamma=5.0)) == 0.0

    def test_bob_matches_oracle(self):
        c = cfg(6, 3, 4, alpha=2.0, beta=1.0, gamma=2.0)
        est = mc_logdet_oracle(3, 6, 4.0, 100_000, seed=23)
        assert abs(bob_capacity(c) - est.mean) <= 3.0 * est.stderr

    def test_bob_dominates_secrecy_rate(self):
        for beta in (0.4, 1.0, 2.5):
            c = cfg(6, 3, 5, alpha=3.0, beta=beta, gamma=1.7)
            assert bob_capacity(c) >= average_secrecy_rate(c)

    def test_leakage_zero_snr(self):
        assert eve_leakage_upper_bound(cfg(6, 3, 3, alpha=0.0, beta=2.0, gamma=1.0)) == 0.0

    def test_leakage_nonnegative_grid(self):
        for n_e in (1, 2, 3, 5, 8):
            for alpha in (0.3, 2.0, 30.0):
                for beta in (0.3, 1.0, 4.0):
                    c = cfg(6, 3, n_e, alpha=alpha, beta=beta, gamma=1.0)
                    assert eve_leakage_upper_bound(c) >= 0.0

    def test_leakage_vanishes_with_strong_noise(self):
        c = cfg(6, 3, 3, alpha=1e3, beta=1e3, gamma=1.0)
        assert eve_leakage_upper_bound(c) <= 0.05


class TestRateReport:
    def test_fields_consistent(self):
        c = cfg(6, 3, 4, alpha=2.0, beta=0.5, gamma=2.0)
        rep = rate_report(c)
        assert rep.lower <= rep.exact <= rep.upper
        assert rep.exact == average_secrecy_rate(c)
        assert rep.bob_capacity == bob_capacity(c)
        assert rep.bob_capacity >= rep.exact


class TestSystemConfigValidation:
    def test_accepts_valid(self):
        c = cfg(6, 3, 4, alpha=2.0, beta=0.5, gamma=2.0)
        assert c.p_u == pytest.approx(2.0 * 2.0 * 3)
        assert c.n_min == 3 and c.n_max == 4
        assert c.n_hat_min == 4 and c.n_hat_max == 6

    def test_rejects_bad_dimensions(self):
        with pytest.raises(ValueError):
            cfg(3, 3, 2, alpha=1.0, beta=1.0, gamma=1.0)  # needs n_b < n_a
        with pytest.raises(ValueError):
            cfg(3, 0, 2, alpha=1.0, beta=1.0, gamma=1.0)
        with pytest.raises(ValueError):
            cfg(3, 2, 0, alpha=1.0, beta=1.0, gamma=1.0)

    def test_rejects_bad_scalars(self):
        with pytest.raises(ValueError):
            cfg(4, 2, 2, alpha=-1.0, beta=1.0, gamma=1.0)
        with pytest.raises(ValueError):
            cfg(4, 2, 2, alpha=1.0, beta=0.0, gamma=1.0)
        with pytest.raises(ValueError):
            cfg(4, 2, 2, alpha=1.0, beta=1.0, gamma=math.inf)
