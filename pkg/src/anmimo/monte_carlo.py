"""Ground-truth Monte Carlo engine with reproducible counter-based seeding.

Every trial owns a fixed span of raw 64-bit words from a counter-based
generator (Philox keyed by the seed, counter set to the trial's first
block), so trial t draws identical numbers whether it is sampled alone,
inside any batch, or on any worker. Reduction is likewise schedule-proof:
trials are grouped into chunks whose boundaries depend only on the trial
shape, each chunk is summed exactly (math.fsum), and chunk partials merge
in chunk order. The ANMIMO_WORKERS environment variable widens the thread
pool that evaluates chunks; it can never change a result, only the
schedule.

Gaussians come from a rejection-free polar construction on (0, 1]-safe
uniforms: each complex entry uses two words and has unit total variance
(real and imaginary parts each 1/2), matching the unit-variance channel
convention. A per-component variance of 1 here would silently double
every SNR, hence the explicit construction instead of library normals.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence, Union

import numpy as np

from .closed_form import SystemConfig
from .errors import ConfigError, DomainError, NumericError

_WORKERS_ENV = "ANMIMO_WORKERS"
_INV_2_53 = 1.0 / float(2**53)
_RANK_RTOL = 1e-8
_MAX_SEED = 2**64


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One sampled channel pair with its null-space precoding basis.

    h is the legitimate channel (n_b x n_a), g the eavesdropper channel
    (n_e x n_a); v1 (n_a x n_b) spans the data subspace and z
    (n_a x (n_a - n_b)) the null space of h, together unitary.
    """

    h: np.ndarray
    g: np.ndarray
    v1: np.ndarray
    z: np.ndarray


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo mean with its standard error and provenance."""

    mean: float
    stderr: float
    trials: int
    seed: int
    clamped: bool


def _check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed < _MAX_SEED:
        raise DomainError(f"seed must fit in 64 unsigned bits, got {seed}")
    return seed


def _worker_count() -> int:
    raw = os.environ.get(_WORKERS_ENV)
    if raw is None:
        return 1
    try:
        w = int(raw)
    except ValueError:
        raise ConfigError(f"{_WORKERS_ENV} must be an integer, got {raw!r}") from None
    if w < 1:
        raise ConfigError(f"{_WORKERS_ENV} must be >= 1, got {w}")
    return w


def _blocks_per_trial(n_words: int) -> int:
    # Philox emits 4 words per counter block
    return (n_words + 3) // 4


def _raw_words(seed: int, start_block: int, n_words: int) -> np.ndarray:
    bg = np.random.Philox(key=seed, counter=int(start_block))
    return bg.random_raw(n_words)


def _gaussians_from_words(words: np.ndarray) -> np.ndarray:
    """Map pairs of raw words to unit-variance circular complex Gaussians."""
    u = (words >> np.uint64(11)).astype(np.float64) * _INV_2_53
    u1 = 1.0 - u[..., 0::2]  # in (0, 1], keeps the log finite
    u2 = u[..., 1::2]
    radius = np.sqrt(-np.log(u1))
    angle = 2.0 * np.pi * u2
    return radius * (np.cos(angle) + 1j * np.sin(angle))


def _chunk_size(words_per_trial: int) -> int:
    # pure function of the trial shape, so chunk boundaries (and therefore
    # the reduction) never depend on trial count or worker count
    return max(1, min(65536, (1 << 21) // max(1, words_per_trial)))


def _chunk_spans(trials: int, words_per_trial: int):
    size = _chunk_size(words_per_trial)
    return [(t0, min(size, trials - t0)) for t0 in range(0, trials, size)]


def _map_chunks(spans, worker) -> list:
    n_workers = _worker_count()
    if n_workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            return list(pool.map(lambda span: worker(*span), spans))
    return [worker(*span) for span in spans]


def _logdet_eye_plus_gram(b: np.ndarray) -> np.ndarray:
    """ln det(I + B B^H) batched, via Cholesky on the smaller Gram side."""
    rows, cols = b.shape[-2], b.shape[-1]
    if cols < rows:
        gram = np.swapaxes(b, -2, -1).conj() @ b
        dim = cols
    else:
        gram = b @ np.swapaxes(b, -2, -1).conj()
        dim = rows
    gram = gram + np.eye(dim)
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"Gram factorization failed: {exc}") from exc
    diag = np.einsum("...ii->...i", chol).real
    return 2.0 * np.sum(np.log(diag), axis=-1)


def _sample_batch(cfg: SystemConfig, seed: int, t0: int, nt: int):
    """Channels for trials [t0, t0+nt) straight from their counter spans."""
    h_entries = cfg.n_b * cfg.n_a
    g_entries = cfg.n_e * cfg.n_a
    words = 2 * (h_entries + g_entries)
    bpt = _blocks_per_trial(words)
    raw = _raw_words(seed, t0 * bpt, nt * bpt * 4).reshape(nt, bpt * 4)
    entries = _gaussians_from_words(raw[:, :words])
    h = entries[:, :h_entries].reshape(nt, cfg.n_b, cfg.n_a)
    g = entries[:, h_entries:].reshape(nt, cfg.n_e, cfg.n_a)
    return h, g


def _precoding_basis(h: np.ndarray, n_b: int, t0: int):
    try:
        singvals, vh = np.linalg.svd(h)[1:]
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD failed near trial {t0}: {exc}") from exc
    bad = singvals[..., -1] <= _RANK_RTOL * singvals[..., 0]
    if np.any(bad):
        idx = t0 + int(np.argmax(bad))
        raise NumericError(f"rank-deficient legitimate channel at trial {idx}")
    v = np.swapaxes(vh, -2, -1).conj()
    return v[..., :n_b], v[..., n_b:]


def sample_channel(cfg: SystemConfig, trial_index: int, seed: int) -> ChannelRealization:
    """Channel pair for one trial, reproducible in isolation.

    The same (seed, trial_index) always yields the same realization, and
    it is bit-identical to the one any batched estimator uses internally
    for that trial index.
    """
    if isinstance(trial_index, bool) or not isinstance(trial_index, (int, np.integer)):
        raise DomainError(f"trial_index must be an integer, got {trial_index!r}")
    if trial_index < 0:
        raise DomainError(f"trial_index must be nonnegative, got {trial_index}")
    seed = _check_seed(seed)
    h, g = _sample_batch(cfg, seed, int(trial_index), 1)
    v1, z = _precoding_basis(h, cfg.n_b, int(trial_index))
    return ChannelRealization(h=h[0], g=g[0], v1=v1[0], z=z[0])


def _rates_from_channels(cfg: SystemConfig, h, g, v1, z) -> np.ndarray:
    sa = math.sqrt(cfg.alpha)
    sag = math.sqrt(cfg.alpha * cfg.gamma)
    sab = math.sqrt(cfg.alpha * cfg.beta)
    legit = _logdet_eye_plus_gram(sag * h)
    g1 = g @ v1
    g2 = g @ z
    eve_full = _logdet_eye_plus_gram(
        np.concatenate((sa * g1, sab * g2), axis=-1)
    )
    eve_noise = _logdet_eye_plus_gram(sab * g2)
    return legit - (eve_full - eve_noise)


def instantaneous_secrecy_rate(ch: ChannelRealization, cfg: SystemConfig) -> float:
    """Secrecy rate of one realization in nats, unclamped.

    Legitimate log-det minus the eavesdropper log-det gap, each computed
    by Cholesky on the smaller side of the Gram pairing (never from raw
    eigenvalues, which lose digits at high SNR).
    """
    if ch.h.shape != (cfg.n_b, cfg.n_a) or ch.g.shape != (cfg.n_e, cfg.n_a):
        raise DomainError(
            f"realization shaped h{ch.h.shape}, g{ch.g.shape} does not match "
            f"config ({cfg.n_b}x{cfg.n_a}, {cfg.n_e}x{cfg.n_a})"
        )
    rate = _rates_from_channels(
        cfg, ch.h[None, ...], ch.g[None, ...], ch.v1[None, ...], ch.z[None, ...]
    )[0]
    if not math.isfinite(rate):
        raise NumericError(f"non-finite rate {rate!r}")
    return float(rate)


def _rate_chunk_values(cfg: SystemConfig, seed: int, t0: int, nt: int, clamp: bool):
    h, g = _sample_batch(cfg, seed, t0, nt)
    v1, z = _precoding_basis(h, cfg.n_b, t0)
    vals = _rates_from_channels(cfg, h, g, v1, z)
    if not np.all(np.isfinite(vals)):
        idx = t0 + int(np.argmax(~np.isfinite(vals)))
        raise NumericError(f"non-finite rate at trial {idx}")
    if clamp:
        vals = np.maximum(vals, 0.0)
    return vals


def _merge_mean_stderr(partials, trials: int):
    total = math.fsum(s for s, _ in partials)
    total_sq = math.fsum(q for _, q in partials)
    mean = total / trials
    var = max(0.0, (total_sq - trials * mean * mean) / (trials - 1))
    return mean, math.sqrt(var / trials)


def mc_average_secrecy_rate(
    cfg: SystemConfig, trials: int, seed: int = 0, clamp: bool = True
) -> MCEstimate:
    """Sample mean of the per-realization secrecy rate with standard error.

    clamp=True floors each realization at zero before averaging (the
    operational nonnegative rate); clamp=False matches the unclamped
    closed-form expectation. Bitwise reproducible for fixed inputs at any
    worker count.
    """
    if isinstance(trials, bool) or not isinstance(trials, (int, np.integer)):
        raise DomainError(f"trials must be an integer, got {trials!r}")
    if trials < 2:
        raise DomainError(f"need trials >= 2 for a standard error, got {trials}")
    seed = _check_seed(seed)
    trials = int(trials)
    words = 2 * (cfg.n_b + cfg.n_e) * cfg.n_a

    def worker(t0, nt):
        vals = _rate_chunk_values(cfg, seed, t0, nt, clamp)
        return (math.fsum(vals.tolist()), math.fsum((vals * vals).tolist()))

    partials = _map_chunks(_chunk_spans(trials, words), worker)
    mean, stderr = _merge_mean_stderr(partials, trials)
    return MCEstimate(mean=mean, stderr=stderr, trials=trials, seed=seed, clamped=bool(clamp))


def mc_logdet_oracle(
    rows: int,
    cols: int,
    scale_profile: Union[float, Sequence[float]],
    trials: int,
    seed: int = 0,
) -> MCEstimate:
    """Brute-force E[ln det(I_rows + G diag(profile) G^H)], G rows x cols.

    The independent oracle for the closed forms: a uniform profile checks
    theta, a two-level profile checks omega. scale_profile may be a single
    scale (applied to every column) or a length-cols sequence of
    nonnegative scales.
    """
    for name, v in (("rows", rows), ("cols", cols)):
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
            raise DomainError(f"{name} must be a positive integer, got {v!r}")
    if isinstance(trials, bool) or not isinstance(trials, (int, np.integer)):
        raise DomainError(f"trials must be an integer, got {trials!r}")
    if trials < 2:
        raise DomainError(f"need trials >= 2 for a standard error, got {trials}")
    seed = _check_seed(seed)
    rows, cols, trials = int(rows), int(cols), int(trials)
    profile = np.asarray(scale_profile, dtype=np.float64)
    if profile.ndim == 0:
        profile = np.full(cols, float(profile))
    if profile.shape != (cols,):
        raise DomainError(
            f"scale_profile must be a scalar or have length cols={cols}, "
            f"got shape {profile.shape}"
        )
    if not np.all(np.isfinite(profile)) or np.any(profile < 0.0):
        raise DomainError("scale_profile entries must be finite and >= 0")
    sqrt_profile = np.sqrt(profile)
    words = 2 * rows * cols
    bpt = _blocks_per_trial(words)

    def worker(t0, nt):
        raw = _raw_words(seed, t0 * bpt, nt * bpt * 4).reshape(nt, bpt * 4)
        g = _gaussians_from_words(raw[:, :words]).reshape(nt, rows, cols)
        vals = _logdet_eye_plus_gram(g * sqrt_profile)
        return (math.fsum(vals.tolist()), math.fsum((vals * vals).tolist()))

    partials = _map_chunks(_chunk_spans(trials, words), worker)
    mean, stderr = _merge_mean_stderr(partials, trials)
    return MCEstimate(mean=mean, stderr=stderr, trials=trials, seed=seed, clamped=False)


def mc_normalized_rate_sample(
    cfg: SystemConfig, realizations: int, seed: int = 0
) -> List[float]:
    """Unclamped per-realization secrecy rates divided by n_b, in trial order.

    Raw material for concentration studies against the large-system limit.
    """
    if isinstance(realizations, bool) or not isinstance(realizations, (int, np.integer)):
        raise DomainError(f"realizations must be an integer, got {realizations!r}")
    if realizations < 1:
        raise DomainError(f"realizations must be positive, got {realizations}")
    seed = _check_seed(seed)
    realizations = int(realizations)
    words = 2 * (cfg.n_b + cfg.n_e) * cfg.n_a

    def worker(t0, nt):
        return _rate_chunk_values(cfg, seed, t0, nt, clamp=False)

    chunks = _map_chunks(_chunk_spans(realizations, words), worker)
    stacked = np.concatenate(chunks) / cfg.n_b
    return [float(v) for v in stacked]
