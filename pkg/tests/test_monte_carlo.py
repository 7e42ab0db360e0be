"""Simulation engine checks.

Distributional statistics get fixed seeds and 3-sigma gates; structural
facts (null space, unitarity, reproducibility across batching and worker
counts) are exact.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anmimo import (
    ChannelRealization,
    ConfigError,
    DomainError,
    SystemConfig,
    average_secrecy_rate,
    instantaneous_secrecy_rate,
    mc_average_secrecy_rate,
    mc_logdet_oracle,
    mc_normalized_rate_sample,
    sample_channel,
    theta,
)


def cfg(n_a, n_b, n_e, alpha, beta, gamma):
    return SystemConfig(n_a=n_a, n_b=n_b, n_e=n_e, alpha=alpha, beta=beta, gamma=gamma)


BASE = cfg(6, 3, 4, 2.0, 0.5, 2.0)


def channels(c, n, seed):
    return [sample_channel(c, k, seed) for k in range(n)]


class TestChannelStatistics:
    def test_entries_have_unit_second_moment(self):
        # |entry|^2 is Exp(1): mean 1, variance 1
        c = cfg(12, 6, 12, 1.0, 1.0, 1.0)
        sq = []
        for ch in channels(c, 500, seed=101):
            sq.append(np.abs(ch.h) ** 2)
            sq.append(np.abs(ch.g) ** 2)
        flat = np.concatenate([a.ravel() for a in sq])
        n = flat.size
        assert n == 500 * (72 + 144)
        assert abs(flat.mean() - 1.0) <= 3.0 / math.sqrt(n)

    def test_real_imag_balance(self):
        c = cfg(12, 6, 12, 1.0, 1.0, 1.0)
        parts = []
        for ch in channels(c, 300, seed=55):
            parts.append(ch.h.real.ravel())
            parts.append(ch.h.imag.ravel())
        flat = np.concatenate(parts)
        # each part is N(0, 1/2)
        assert abs(flat.mean()) <= 3.0 * math.sqrt(0.5 / flat.size)
        assert abs((flat**2).mean() - 0.5) <= 3.0 * math.sqrt(0.5 / flat.size)

    def test_noise_basis_annihilates_channel(self):
        for k, ch in enumerate(channels(BASE, 25, seed=7)):
            assert np.linalg.norm(ch.h @ ch.z) <= 1e-10, f"trial {k}"

    def test_precoding_basis_is_unitary(self):
        for ch in channels(BASE, 25, seed=7):
            v = np.concatenate((ch.v1, ch.z), axis=1)
            assert v.shape == (6, 6)
            assert np.linalg.norm(v.conj().T @ v - np.eye(6)) <= 1e-10

    def test_projected_channels_stay_white(self):
        # G times a unitary basis is again iid standard complex Gaussian,
        # so the data-side and noise-side projections are uncorrelated
        # with unit-power entries
        prods = []
        sq = []
        for ch in channels(BASE, 800, seed=13):
            g1 = ch.g @ ch.v1
            g2 = ch.g @ ch.z
            prods.append((g1 * g2.conj()).ravel())
            sq.append(np.abs(g1) ** 2)
            sq.append(np.abs(g2) ** 2)
        prods = np.concatenate(prods)
        power = np.concatenate([a.ravel() for a in sq])
        # Re/Im of each cross product have variance 1/2
        bound = 3.0 * math.sqrt(0.5 / prods.size)
        assert abs(prods.real.mean()) <= bound
        assert abs(prods.imag.mean()) <= bound
        assert abs(power.mean() - 1.0) <= 3.0 / math.sqrt(power.size)

    @given(st.integers(min_value=0, max_value=500), st.integers(min_value=0, max_value=2**64 - 1))
    @settings(max_examples=25, deadline=None)
    def test_sampling_is_deterministic(self, trial, seed):
        a = sample_channel(BASE, trial, seed)
        b = sample_channel(BASE, trial, seed)
        assert np.array_equal(a.h, b.h) and np.array_equal(a.g, b.g)
        assert np.array_equal(a.v1, b.v1) and np.array_equal(a.z, b.z)


class TestInstantaneousRate:
    def test_silent_eavesdropper_leaves_full_capacity(self):
        ch = sample_channel(BASE, 0, seed=2)
        mute = ChannelRealization(h=ch.h, g=np.zeros_like(ch.g), v1=ch.v1, z=ch.z)
        rate = instantaneous_secrecy_rate(mute, BASE)
        gram = BASE.alpha * BASE.gamma * (ch.h @ ch.h.conj().T)
        expect = float(np.linalg.slogdet(np.eye(3) + gram)[1])
        assert rate == pytest.approx(expect, rel=1e-12)

    def test_shape_mismatch_rejected(self):
        ch = sample_channel(BASE, 0, seed=2)
        other = cfg(6, 3, 5, 2.0, 0.5, 2.0)
        with pytest.raises(DomainError):
            instantaneous_secrecy_rate(ch, other)

    def test_matches_normalized_sample_across_chunk_boundary(self):
        # words/trial = 3072 puts the chunk boundary at 682 trials; the
        # counter-based stream must make trial 690 identical whether it is
        # drawn alone or inside the second chunk of a batch
        c = cfg(32, 16, 32, 1.5, 0.8, 1.2)
        sample = mc_normalized_rate_sample(c, 700, seed=5)
        for k in (0, 681, 682, 690, 699):
            alone = instantaneous_secrecy_rate(sample_channel(c, k, 5), c)
            assert alone / c.n_b == sample[k], f"trial {k}"

    def test_trial_index_validation(self):
        with pytest.raises(DomainError):
            sample_channel(BASE, -1, 0)
        with pytest.raises(DomainError):
            sample_channel(BASE, 1.5, 0)
        with pytest.raises(DomainError):
            sample_channel(BASE, 0, -3)
        with pytest.raises(DomainError):
            sample_channel(BASE, 0, 2**64)


class TestAverageEstimator:
    def test_matches_closed_form(self):
        est = mc_average_secrecy_rate(BASE, 100_000, seed=0, clamp=False)
        ref = average_secrecy_rate(BASE)
        assert abs(est.mean - ref) <= 3.0 * est.stderr
        assert est.trials == 100_000 and est.seed == 0 and est.clamped is False

    def test_zero_snr_collapses_exactly(self):
        c = cfg(6, 3, 4, 0.0, 0.5, 2.0)
        est = mc_average_secrecy_rate(c, 500, seed=4)
        assert est.mean == 0.0 and est.stderr == 0.0

    def test_clamping_never_lowers_the_mean(self):
        lossy = cfg(6, 3, 16, *(10**0.3, 10**-0.3, 10**0.3))
        for c in (BASE, lossy):
            up = mc_average_secrecy_rate(c, 4000, seed=1, clamp=True)
            raw = mc_average_secrecy_rate(c, 4000, seed=1, clamp=False)
            assert up.mean >= max(raw.mean, 0.0)
            assert up.clamped is True
        # the lossy point really exercises the floor
        assert mc_average_secrecy_rate(lossy, 4000, seed=1, clamp=False).mean < 0.0

    def test_positive_rate_config_is_clamp_insensitive(self):
        up = mc_average_secrecy_rate(BASE, 20_000, seed=1, clamp=True)
        raw = mc_average_secrecy_rate(BASE, 20_000, seed=1, clamp=False)
        assert abs(up.mean - raw.mean) <= raw.stderr

    def test_pinned_regression(self):
        # guards the word stream, Box-Muller convention, and fsum merge
        est = mc_average_secrecy_rate(BASE, 1000, seed=42, clamp=True)
        assert est.mean == pytest.approx(5.076872147424457, rel=1e-14)
        assert est.stderr == pytest.approx(0.032026509227696245, rel=1e-12)

    def test_worker_count_changes_nothing(self, monkeypatch):
        c = cfg(16, 8, 8, 2.0, 0.5, 2.0)
        results = []
        for w in ("1", "4", "7"):
            monkeypatch.setenv("ANMIMO_WORKERS", w)
            results.append(mc_average_secrecy_rate(c, 9000, seed=6))
        monkeypatch.delenv("ANMIMO_WORKERS")
        results.append(mc_average_secrecy_rate(c, 9000, seed=6))
        assert all(r.mean == results[0].mean for r in results)
        assert all(r.stderr == results[0].stderr for r in results)

    def test_worker_env_validation(self, monkeypatch):
        for bad in ("zero", "0", "-2", "1.5"):
            monkeypatch.setenv("ANMIMO_WORKERS", bad)
            with pytest.raises(ConfigError):
                mc_average_secrecy_rate(BASE, 10, seed=0)

    def test_trials_validation(self):
        with pytest.raises(DomainError):
            mc_average_secrecy_rate(BASE, 1)
        with pytest.raises(DomainError):
            mc_average_secrecy_rate(BASE, 100.0)


class TestLogdetOracle:
    def test_single_antenna_matches_theta(self):
        est = mc_logdet_oracle(1, 1, 4.0, 200_000, seed=3)
        assert abs(est.mean - theta(1, 1, 4.0)) <= 3.0 * est.stderr

    def test_uniform_profile_matches_theta(self):
        est = mc_logdet_oracle(2, 5, 1.5, 150_000, seed=8)
        assert abs(est.mean - theta(2, 5, 1.5)) <= 3.0 * est.stderr

    def test_scalar_and_sequence_profiles_agree(self):
        a = mc_logdet_oracle(2, 3, 2.0, 500, seed=1)
        b = mc_logdet_oracle(2, 3, [2.0, 2.0, 2.0], 500, seed=1)
        assert a.mean == b.mean and a.stderr == b.stderr

    def test_zero_profile_is_exactly_zero(self):
        est = mc_logdet_oracle(3, 4, [0.0, 0.0, 0.0, 0.0], 200, seed=0)
        assert est.mean == 0.0 and est.stderr == 0.0

    def test_profile_validation(self):
        with pytest.raises(DomainError):
            mc_logdet_oracle(2, 3, [1.0, 1.0], 100)
        with pytest.raises(DomainError):
            mc_logdet_oracle(2, 3, [1.0, -0.5, 1.0], 100)
        with pytest.raises(DomainError):
            mc_logdet_oracle(2, 3, [1.0, math.inf, 1.0], 100)
        with pytest.raises(DomainError):
            mc_logdet_oracle(0, 3, 1.0, 100)
        with pytest.raises(DomainError):
            mc_logdet_oracle(2, 3, 1.0, 1)


class TestNormalizedSample:
    def test_trial_order_and_length(self):
        vals = mc_normalized_rate_sample(BASE, 50, seed=12)
        assert len(vals) == 50
        direct = instantaneous_secrecy_rate(sample_channel(BASE, 17, 12), BASE)
        assert vals[17] == direct / BASE.n_b

    def test_larger_arrays_concentrate(self):
        small = mc_normalized_rate_sample(cfg(8, 4, 4, 2.0, 0.5, 2.0), 200, seed=9)
        big = mc_normalized_rate_sample(cfg(16, 8, 8, 2.0, 0.5, 2.0), 200, seed=9)
        assert np.std(big, ddof=1) < np.std(small, ddof=1)

    def test_realizations_validation(self):
        with pytest.raises(DomainError):
            mc_normalized_rate_sample(BASE, 0)
