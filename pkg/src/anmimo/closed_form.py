"""Exact finite-antenna average rate formulas.

The central object is ``theta(m, n, x)``, the ergodic log-determinant

    theta(m, n, x) = E[ ln det(I_m + x W) ],   W = G G^H,  G m-by-n
                     standard complex Gaussian, m <= n,

evaluated by a finite sum over incomplete-gamma terms. From it the module
builds the average secrecy rate of null-space artificial-noise beamforming,
its two-sided bounds, the legitimate link's ergodic capacity, and an upper
bound on the eavesdropper leakage.

Numerical notes, since both closed forms are badly alternating:

* theta's coefficients are folded as exact rationals; the only floating
  step is one arbitrary-precision seed T0 = exp(b) E1(b), b = 1/x, at a
  working precision sized to the folded coefficient magnitude. Plain
  compensated double summation was measured losing all 16 digits already
  at m = n = 16, x = 0.05, hence the exact fold. Supported envelope is
  n <= 16 (hard error beyond).
* The exponential prefactor of the published theta sum appears with a
  negative exponent; the m = n = 1 reduction E[ln(1+x|g|^2)] =
  exp(1/x) E1(1/x) and Monte Carlo both fix the true sign as positive,
  and that is what is implemented.
* omega's determinant sum divides by (mu1 - mu2)^(m1 m2) and cancels
  catastrophically as the two eigenvalue groups merge, so it runs at
  adaptive arbitrary precision with an a-posteriori digit-loss audit (a
  Hadamard bound per determinant plus the cross-determinant cancellation),
  retrying at higher precision until the audit passes. Near-degenerate
  inputs (|beta - 1| < 1e-6) route to the single-group branch instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .errors import DegenerateSpectrumError, DomainError, NumericError

_THETA_MAX_N = 16
_BETA_DEGENERATE_TOL = 1e-6
_LOG10_2 = math.log10(2.0)


@dataclass(frozen=True)
class SystemConfig:
    """Antenna counts and channel/power parameters of the wiretap link.

    n_a transmit antennas, n_b legitimate receive antennas (n_b < n_a so
    a null space exists), n_e eavesdropper antennas. alpha is the
    eavesdropper-side SNR, beta the artificial-noise to data power ratio
    per dimension, gamma the eavesdropper-to-legitimate noise power
    ratio; all linear. alpha = 0 is the degenerate no-signal case and is
    accepted (every rate is exactly zero there).
    """

    n_a: int
    n_b: int
    n_e: int
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("n_a", "n_b", "n_e"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise DomainError(f"{name} must be an integer, got {v!r}")
            if v < 1:
                raise DomainError(f"{name} must be positive, got {v}")
        if self.n_b >= self.n_a:
            raise DomainError(
                f"need n_b < n_a for a transmit null space, "
                f"got n_b={self.n_b}, n_a={self.n_a}"
            )
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "gamma", float(self.gamma))
        if not math.isfinite(self.alpha) or self.alpha < 0.0:
            raise DomainError(f"alpha must be finite and >= 0, got {self.alpha!r}")
        for name in ("beta", "gamma"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0.0:
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")

    @property
    def snr_b(self) -> float:
        return self.alpha * self.gamma

    @property
    def p_u(self) -> float:
        return self.alpha * self.gamma * self.n_b

    @property
    def p_v(self) -> float:
        return self.alpha * self.beta * self.gamma * (self.n_a - self.n_b)

    @property
    def n_min(self) -> int:
        return min(self.n_e, self.n_a - self.n_b)

    @property
    def n_max(self) -> int:
        return max(self.n_e, self.n_a - self.n_b)

    @property
    def n_hat_min(self) -> int:
        return min(self.n_e, self.n_a)

    @property
    def n_hat_max(self) -> int:
        return max(self.n_e, self.n_a)


@dataclass(frozen=True)
class WishartSpectrum:
    """Two-level eigenvalue profile (mu1 > mu2, multiplicities m1, m2)."""

    mu1: float
    mu2: float
    m1: int
    m2: int

    def __post_init__(self):
        for name in ("m1", "m2"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise DomainError(f"{name} must be a positive integer, got {v!r}")
        if not (self.mu1 > self.mu2 > 0.0):
            raise DomainError(
                f"need mu1 > mu2 > 0, got mu1={self.mu1!r}, mu2={self.mu2!r}"
            )


@dataclass(frozen=True)
class RateReport:
    """Exact rate with its sandwich bounds and the legitimate capacity.

    All values in nats; lower <= exact <= upper, with equality of all
    three at beta = 1.
    """

    exact: float
    lower: float
    upper: float
    bob_capacity: float


@lru_cache(maxsize=None)
def _theta_coeffs(m: int, n: int):
    """Exact rational coefficients A_j of the theta ladder sum.

    theta(m, n, x) = sum_j A_j T_j(1/x) with T_j(b) = exp(b) E_{j+1}(b).
    The A_j alternate in sign and reach ~1e20 by (16, 16); they are kept
    as Fractions so the fold below is exact.
    """
    coeffs = {}
    for k in range(m):
        for ell in range(k + 1):
            for i in range(2 * ell + 1):
                num = (
                    (-1) ** i
                    * math.factorial(2 * ell)
                    * math.factorial(n - m + i)
                    * math.comb(2 * (k - ell), k - ell)
                    * math.comb(2 * (ell + n - m), 2 * ell - i)
                )
                den = (
                    2 ** (2 * k - i)
                    * math.factorial(ell)
                    * math.factorial(i)
                    * math.factorial(n - m + ell)
                )
                c = Fraction(num, den)
                for j in range(n - m + i + 1):
                    coeffs[j] = coeffs.get(j, Fraction(0)) + c
    return coeffs


def _fraction_digits(f: Fraction) -> int:
    if f == 0:
        return 0
    return max(0, int((f.numerator.bit_length() - f.denominator.bit_length()) * _LOG10_2))


def theta(m: int, n: int, x: float) -> float:
    """Ergodic E[ln det(I_m + x W)] for an m-by-n complex Wishart W, in nats.

    Requires 1 <= m <= n <= 16 (the coefficient magnitude makes larger n
    meaningless in double output) and x >= 0; theta(m, n, 0) = 0.

    The ladder T_j(b) = exp(b) E_{j+1}(b), b = 1/x, satisfies
    T_j = (1 - b T_{j-1}) / j, so T_j = P_j + Q_j T_0 with exact-rational
    P_j, Q_j. Folding the A_j against P and Q leaves
    theta = S_P + S_Q T_0 with a single transcendental evaluated at a
    precision covering the (huge, cancelling) magnitudes of S_P and S_Q.
    """
    for name, v in (("m", m), ("n", n)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise DomainError(f"{name} must be an integer, got {v!r}")
    if not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    if n > _THETA_MAX_N:
        raise DomainError(
            f"supported envelope is n <= {_THETA_MAX_N}, got n={n}"
        )
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"x must be finite and >= 0, got {x!r}")
    if x == 0.0:
        return 0.0

    coeffs = _theta_coeffs(m, n)
    b = 1 / Fraction(x)
    jmax = max(coeffs)
    p = [Fraction(0)] * (jmax + 1)
    q = [Fraction(0)] * (jmax + 1)
    q[0] = Fraction(1)
    for j in range(1, jmax + 1):
        p[j] = (1 - b * p[j - 1]) / j
        q[j] = -b * q[j - 1] / j
    s_p = sum(coeffs[j] * p[j] for j in coeffs)
    s_q = sum(coeffs[j] * q[j] for j in coeffs)
    if s_p == 0 and s_q == 0:
        return 0.0

    dps = 30 + max(_fraction_digits(s_p), _fraction_digits(s_q))
    with mp.workdps(dps):
        bm = mp.mpf(b.numerator) / mp.mpf(b.denominator)
        t0 = mp.exp(bm) * mp.e1(bm)
        val = (
            mp.mpf(s_p.numerator) / mp.mpf(s_p.denominator)
            + (mp.mpf(s_q.numerator) / mp.mpf(s_q.denominator)) * t0
        )
        return float(val)


def build_spectrum(cfg: SystemConfig) -> WishartSpectrum:
    """Two-level noise-whitened eigenvalue profile seen by the eavesdropper.

    The levels are 1/alpha (multiplicity n_b, data dimensions) and
    1/(alpha beta) (multiplicity n_a - n_b, noise dimensions), ordered
    so mu1 > mu2. beta = 1 collapses the two levels and raises
    DegenerateSpectrumError; the omega caller handles that branch itself.
    """
    if cfg.beta == 1.0:
        raise DegenerateSpectrumError(
            "beta = 1 collapses the spectrum to a single eigenvalue; "
            "use the single-group branch of omega"
        )
    if cfg.alpha == 0.0:
        raise DomainError("alpha = 0 carries no signal and has no spectrum")
    mu_data = 1.0 / cfg.alpha
    mu_noise = 1.0 / (cfg.alpha * cfg.beta)
    if mu_data > mu_noise:
        return WishartSpectrum(mu1=mu_data, mu2=mu_noise, m1=cfg.n_b, m2=cfg.n_a - cfg.n_b)
    return WishartSpectrum(mu1=mu_noise, mu2=mu_data, m1=cfg.n_a - cfg.n_b, m2=cfg.n_b)


def _exp_e1_ladder(mu, tmax):
    # T_t(mu) = exp(mu) E_{t+1}(mu) at current mpmath precision
    out = [mp.exp(mu) * mp.e1(mu)]
    for t in range(1, tmax + 1):
        out.append((1 - mu * out[-1]) / t)
    return out


def _omega_determinant_sum(n_a: int, n_e: int, spectrum: WishartSpectrum) -> float:
    """Alternating determinant expansion of the two-level ergodic log-det.

    Evaluated entirely in mpmath. The initial precision anticipates the
    (mu1 - mu2)^(m1 m2) blow-up; after evaluation the actual digit loss
    is audited (Hadamard row-norm bound inside each determinant, plus the
    cancellation across the k-sum) and the whole computation retries at
    the audited precision if the first guess was short.
    """
    p = min(n_e, n_a)
    mu1, mu2, m1, m2 = spectrum.mu1, spectrum.mu2, spectrum.m1, spectrum.m2
    relgap = (mu1 - mu2) / mu1
    dps = 30 + max(0, int(-m1 * m2 * math.log10(relgap)))
    sign_k = (-1) ** (n_e * (n_a - p))
    for _ in range(8):
        with mp.workdps(dps):
            big1, big2 = mp.mpf(mu1), mp.mpf(mu2)
            groups = [1 if i <= m1 else 2 for i in range(1, n_a + 1)]
            shifts = [
                (m1 if g == 1 else n_a) - i
                for g, i in zip(groups, range(1, n_a + 1))
            ]
            mus = [big1 if g == 1 else big2 for g in groups]
            phi_max = n_e - 1 + max(shifts)
            tail_sums = {}
            for mu in (big1, big2):
                ladder = _exp_e1_ladder(mu, phi_max)
                acc, cum = mp.mpf(0), []
                for t in range(phi_max + 1):
                    acc += ladder[t]
                    cum.append(acc)
                tail_sums[mu] = cum
            log_k = (
                m1 * n_e * mp.log(big1)
                + m2 * n_e * mp.log(big2)
                - sum(mp.loggamma(n_e - i + 1) for i in range(1, p + 1))
                - sum(mp.loggamma(m1 - i + 1) for i in range(1, m1 + 1))
                - sum(mp.loggamma(m2 - i + 1) for i in range(1, m2 + 1))
                - m1 * m2 * mp.log(big1 - big2)
            )
            dets = []
            worst_inner = 0.0
            for k in range(1, p + 1):
                r = mp.matrix(n_a, n_a)
                for i in range(1, n_a + 1):
                    mu, di = mus[i - 1], shifts[i - 1]
                    for j in range(1, n_a + 1):
                        if j > p:
                            ex = n_a - j - di
                            if ex < 0:
                                r[i - 1, j - 1] = mp.mpf(0)
                            else:
                                r[i - 1, j - 1] = (
                                    mu ** ex
                                    * mp.factorial(n_a - j)
                                    / mp.factorial(ex)
                                )
                        else:
                            phi = n_e - p + j - 1 + di
                            base = (
                                (-1) ** di
                                * mp.factorial(phi)
                                / mu ** (phi + 1)
                            )
                            if j == k:
                                base *= tail_sums[mu][phi]
                            r[i - 1, j - 1] = base
                det = mp.det(r)
                # digit loss hidden inside this determinant, by Hadamard
                log_bound = mp.mpf(0)
                for i in range(n_a):
                    rn = mp.sqrt(mp.fsum(r[i, j] ** 2 for j in range(n_a)))
                    if rn > 0:
                        log_bound += mp.log(rn, 10)
                inner = float(log_bound - mp.log(abs(det), 10)) if det != 0 else float(dps)
                worst_inner = max(worst_inner, inner)
                dets.append(det)
            total = mp.fsum(dets)
            if total == 0:
                cross = float(dps)
            else:
                cross = float(mp.log(max(abs(d) for d in dets) / abs(total), 10))
            needed = worst_inner + cross + 15.0
            if dps >= needed:
                if total == 0:
                    return 0.0
                return float(sign_k * mp.sign(total) * mp.exp(log_k + mp.log(abs(total))))
            dps = int(needed) + 10
    raise NumericError(
        "adaptive precision for the determinant sum did not settle "
        f"(n_a={n_a}, n_e={n_e}, mu1={mu1!r}, mu2={mu2!r})"
    )


def omega(cfg: SystemConfig) -> float:
    """Eavesdropper-side ergodic log-det E[ln det(I + alpha W1 + alpha beta W2)].

    Single-group branch theta(n_hat_min, n_hat_max, alpha) whenever
    |beta - 1| < 1e-6 (the general expansion divides by the eigenvalue
    gap and explodes there; continuity across the switch is a tested
    property), the audited determinant expansion otherwise.
    """
    if cfg.alpha == 0.0:
        return 0.0
    if abs(cfg.beta - 1.0) < _BETA_DEGENERATE_TOL:
        return theta(cfg.n_hat_min, cfg.n_hat_max, cfg.alpha)
    return _omega_determinant_sum(cfg.n_a, cfg.n_e, build_spectrum(cfg))


def average_secrecy_rate(cfg: SystemConfig) -> float:
    """Unclamped average secrecy rate in nats; may be negative.

    Legitimate-link term theta(n_b, n_a, alpha gamma) plus the
    artificial-noise-only term theta(n_min, n_max, alpha beta), minus the
    full eavesdropper term omega(cfg).
    """
    if cfg.alpha == 0.0:
        return 0.0
    return (
        theta(cfg.n_b, cfg.n_a, cfg.alpha * cfg.gamma)
        + theta(cfg.n_min, cfg.n_max, cfg.alpha * cfg.beta)
        - omega(cfg)
    )


def average_rate_bounds(cfg: SystemConfig) -> tuple[float, float]:
    """Two-sided bounds (lower, upper) on the average secrecy rate.

    Replaces omega with the single-group value at the larger (lower
    bound) or smaller (upper bound) of the two power scales alpha and
    alpha beta. The two coincide exactly at beta = 1.
    """
    if cfg.alpha == 0.0:
        return (0.0, 0.0)
    scale_min = min(cfg.alpha, cfg.alpha * cfg.beta)
    scale_max = max(cfg.alpha, cfg.alpha * cfg.beta)
    common = theta(cfg.n_b, cfg.n_a, cfg.alpha * cfg.gamma) + theta(
        cfg.n_min, cfg.n_max, cfg.alpha * cfg.beta
    )
    lower = common - theta(cfg.n_hat_min, cfg.n_hat_max, scale_max)
    upper = common - theta(cfg.n_hat_min, cfg.n_hat_max, scale_min)
    return (lower, upper)


def bob_capacity(cfg: SystemConfig) -> float:
    """Ergodic capacity of the legitimate link, theta(n_b, n_a, alpha gamma)."""
    return theta(cfg.n_b, cfg.n_a, cfg.alpha * cfg.gamma)


def eve_leakage_upper_bound(cfg: SystemConfig) -> float:
    """Upper bound on the information rate leaked to the eavesdropper.

    n_e ln(1 + alpha n_b) plus the drop in the artificial-noise term when
    its scale is divided by (1 + alpha n_b). Nonnegative; tends to zero
    as alpha and beta grow with n_e <= n_a - n_b.
    """
    if cfg.alpha == 0.0:
        return 0.0
    damp = 1.0 + cfg.alpha * cfg.n_b
    return (
        cfg.n_e * math.log(damp)
        + theta(cfg.n_min, cfg.n_max, cfg.alpha * cfg.beta / damp)
        - theta(cfg.n_min, cfg.n_max, cfg.alpha * cfg.beta)
    )


def rate_report(cfg: SystemConfig) -> RateReport:
    """Exact rate, both bounds, and the legitimate capacity in one record."""
    lower, upper = average_rate_bounds(cfg)
    return RateReport(
        exact=average_secrecy_rate(cfg),
        lower=lower,
        upper=upper,
        bob_capacity=bob_capacity(cfg),
    )
