"""Large-system limits of the artificial-noise secrecy rate.

Antenna counts are replaced by their ratios (transmit over eavesdropper,
transmit over legitimate, legitimate over eavesdropper) and the rate per
legitimate antenna converges to a deterministic value ``psi``. The
eavesdropper side of psi is driven by a scalar fixed point delta: the
classic eta-transform balance for a Gaussian matrix whose columns carry
one of two variance levels (data power and artificial-noise power). The
module also carries the high-SNR positivity margin ``delta_highsnr``,
whose sign at the extreme scale arguments gives a sufficient and a
necessary condition for the rate to stay positive, and a scanner that
turns those margins into critical eavesdropper antenna counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoRootError, UnboundedRangeError

_BISECT_LO = 1e-15
_BISECT_MAX_ITER = 100
_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class AsymptoticRatios:
    """Antenna ratios and power budget of the large-system limit.

    beta1 = n_a/n_e, beta2 = n_a/n_b, beta3 = n_b/n_e, so
    beta1 = beta2 beta3 and rho = beta1 - beta3 = (n_a - n_b)/n_e > 0.
    p_u and p_v are the total data and artificial-noise powers; gamma is
    the noise-power ratio. Zero powers are representable (they make the
    transforms degenerate but well defined); the fixed-point solver
    itself requires both positive.
    """

    beta1: float
    beta2: float
    beta3: float
    p_u: float
    p_v: float
    gamma: float

    def __post_init__(self):
        for name in ("beta1", "beta2", "beta3", "p_u", "p_v", "gamma"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        if self.beta1 <= 0.0 or self.beta3 <= 0.0 or self.gamma <= 0.0:
            raise DomainError("beta1, beta3 and gamma must be positive")
        if self.beta2 <= 1.0:
            raise DomainError(
                f"beta2 must exceed 1 (fewer legitimate than transmit antennas), "
                f"got {self.beta2!r}"
            )
        if abs(self.beta1 - self.beta2 * self.beta3) > 1e-12 * self.beta1:
            raise DomainError(
                f"inconsistent ratios: beta1={self.beta1!r} but "
                f"beta2*beta3={self.beta2 * self.beta3!r}"
            )
        if self.beta1 - self.beta3 <= 0.0:
            raise DomainError("need beta1 > beta3 (a nonempty null space)")
        if self.p_u < 0.0 or self.p_v < 0.0:
            raise DomainError("powers must be nonnegative")

    @property
    def rho(self) -> float:
        return self.beta1 - self.beta3

    @classmethod
    def from_config(cls, cfg) -> "AsymptoticRatios":
        return cls(
            beta1=cfg.n_a / cfg.n_e,
            beta2=cfg.n_a / cfg.n_b,
            beta3=cfg.n_b / cfg.n_e,
            p_u=cfg.p_u,
            p_v=cfg.p_v,
            gamma=cfg.gamma,
        )

    def _data_scale(self) -> float:
        return self.p_u / (self.gamma * self.beta3)

    def _noise_scale(self) -> float:
        return self.p_v / (self.gamma * self.rho)


@dataclass(frozen=True)
class DeltaSolution:
    """Fixed point of the two-level eta-transform balance."""

    delta: float
    residual: float
    iterations: int

    def __post_init__(self):
        if not 0.0 < self.delta <= 1.0:
            raise DomainError(f"delta must lie in (0, 1], got {self.delta!r}")
        if self.residual < 0.0:
            raise DomainError("residual must be nonnegative")


def f_func(x: float, y: float) -> float:
    """(sqrt(x(1+sqrt(y))^2 + 1) - sqrt(x(1-sqrt(y))^2 + 1))^2.

    Symmetric under (x, y) -> (xy, 1/y).
    """
    x = float(x)
    y = float(y)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"x must be finite and >= 0, got {x!r}")
    if not math.isfinite(y) or y <= 0.0:
        raise DomainError(f"y must be finite and > 0, got {y!r}")
    sy = math.sqrt(y)
    return (
        math.sqrt(x * (1.0 + sy) ** 2 + 1.0) - math.sqrt(x * (1.0 - sy) ** 2 + 1.0)
    ) ** 2


def phi_func(x: float, y: float) -> float:
    """Almost-sure limit of (1/rows) ln det(I + (x/rows) G G^H), y = cols/rows.

    phi_func(0, y) = 0 by continuous extension, and
    phi_func(x, y) = y phi_func(xy, 1/y) (the two Gram orderings).
    """
    x = float(x)
    y = float(y)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"x must be finite and >= 0, got {x!r}")
    if not math.isfinite(y) or y <= 0.0:
        raise DomainError(f"y must be finite and > 0, got {y!r}")
    if x == 0.0:
        return 0.0
    quarter_f = f_func(x, y) / 4.0
    return (
        y * math.log(1.0 + x - quarter_f)
        - quarter_f / x
        + math.log(1.0 + x * y - quarter_f)
    )


def _check_unit_interval(d: float) -> float:
    d = float(d)
    if not math.isfinite(d) or d < 0.0 or d > 1.0:
        raise DomainError(f"d must lie in [0, 1], got {d!r}")
    return d


def eta_of_delta(d: float, r: AsymptoticRatios) -> float:
    """Two-atom eta transform at depth d: weighted harmonic shrinkage.

    Weight 1/beta2 on the data scale, 1 - 1/beta2 on the noise scale;
    equals 1 at d = 0 and decreases in d.
    """
    d = _check_unit_interval(d)
    a = r._data_scale()
    b = r._noise_scale()
    w = 1.0 / r.beta2
    return w / (1.0 + d * a) + (1.0 - w) / (1.0 + d * b)


def v_of_delta(d: float, r: AsymptoticRatios) -> float:
    """Two-atom Shannon transform at depth d (same weights as eta)."""
    d = _check_unit_interval(d)
    a = r._data_scale()
    b = r._noise_scale()
    w = 1.0 / r.beta2
    return w * math.log1p(d * a) + (1.0 - w) * math.log1p(d * b)


def solve_delta(r: AsymptoticRatios) -> DeltaSolution:
    """Root of beta1 (1 - eta(delta)) = 1 - delta on (0, 1] by bisection.

    The balance function g(delta) = beta1 (1 - eta(delta)) - (1 - delta)
    has derivative >= 1 (eta is decreasing), so the residual bounds the
    delta error directly. Bisection rather than Newton: eta's derivative
    is easy to get wrong across the branch parameters and the bracket is
    guaranteed.
    """
    if r.p_u <= 0.0 or r.p_v <= 0.0:
        raise DomainError("fixed point requires p_u > 0 and p_v > 0")

    def g(d: float) -> float:
        eta = eta_of_delta(d, r)
        if not math.isfinite(eta):
            raise DomainError(f"eta transform not finite at d={d!r}")
        return r.beta1 * (1.0 - eta) - (1.0 - d)

    lo, hi = _BISECT_LO, 1.0
    g_lo, g_hi = g(lo), g(hi)
    if g_lo > 0.0 or g_hi < 0.0:
        raise NoRootError(
            f"no sign change on [{_BISECT_LO}, 1]: g(lo)={g_lo!r}, g(hi)={g_hi!r}"
        )
    mid = 0.5 * (lo + hi)
    g_mid = g(mid)
    iterations = 0
    for iterations in range(1, _BISECT_MAX_ITER + 1):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if abs(g_mid) <= _RESIDUAL_TOL:
            break
        if g_lo * g_mid <= 0.0:
            hi = mid
        else:
            lo, g_lo = mid, g_mid
    residual = abs(g_mid)
    if residual > _RESIDUAL_TOL:
        raise NoRootError(
            f"bisection stalled at residual {residual!r} after {iterations} iterations"
        )
    return DeltaSolution(delta=mid, residual=residual, iterations=iterations)


def delta_equal_scales(r: AsymptoticRatios) -> float:
    """Closed-form fixed point when the data and noise scales coincide.

    With a = p_u/(gamma beta3) = p_v/(gamma rho) the balance collapses to
    one atom and delta = 1 - f_func(a, beta1)/(4a). Cross-check path only;
    solve_delta is the production solver for every parameterization.
    """
    a = r._data_scale()
    b = r._noise_scale()
    if a <= 0.0:
        raise DomainError("requires positive power")
    if abs(a - b) > 1e-9 * max(a, b):
        raise DomainError(
            f"scales differ (data {a!r} vs noise {b!r}); "
            "closed form only valid when they coincide"
        )
    return 1.0 - f_func(a, r.beta1) / (4.0 * a)


def psi(r: AsymptoticRatios) -> float:
    """Limit of the secrecy rate per legitimate antenna, in nats.

    Legitimate term phi_func(p_u, beta2), minus the eavesdropper term
    expressed through the fixed point delta, plus the artificial-noise
    correction phi_func at the noise scale.
    """
    sol = solve_delta(r)
    d = sol.delta
    return (
        phi_func(r.p_u, r.beta2)
        - (r.beta1 * v_of_delta(d, r) - math.log(d) + d - 1.0) / r.beta3
        + phi_func(r._noise_scale(), r.rho) / r.beta3
    )


def asymptotic_average_rate(cfg) -> float:
    """n_b times psi at the ratios of cfg: the finite-size approximation."""
    if cfg.alpha == 0.0:
        return 0.0
    return cfg.n_b * psi(AsymptoticRatios.from_config(cfg))


def _entropy_gap(y: float) -> float:
    # ((1 - y)/y) ln(1 - y), continuously 0 at y = 1
    if y == 1.0:
        return 0.0
    return (1.0 - y) / y * math.log(1.0 - y)


def _high_snr_eve_term(x: float, r: AsymptoticRatios) -> float:
    # high-SNR expansion of the eavesdropper term at scale x; branch on
    # whether the eavesdropper outnumbers the transmitter (beta1 <= 1)
    b1 = r.beta1
    if b1 <= 1.0:
        return r.beta2 * (math.log(x) - _entropy_gap(b1) - 1.0)
    return (math.log(x * b1) - (b1 - 1.0) * math.log(1.0 - 1.0 / b1) - 1.0) / r.beta3


def _residual_noise_term(r: AsymptoticRatios) -> float:
    # high-SNR expansion of the artificial-noise correction; branch on
    # rho = (n_a - n_b)/n_e relative to 1
    rho = r.rho
    pv_g = r.p_v / r.gamma
    if pv_g <= 0.0:
        raise DomainError("requires p_v > 0")
    if rho <= 1.0:
        return (r.beta2 - 1.0) * (math.log(pv_g / rho) - _entropy_gap(rho) - 1.0)
    return (math.log(pv_g) - (rho - 1.0) * math.log(1.0 - 1.0 / rho) - 1.0) / r.beta3


def delta_highsnr(x: float, r: AsymptoticRatios) -> float:
    """High-SNR positivity margin of the per-antenna rate at scale x.

    Evaluated at the larger of the two power scales this is a lower bound
    on the limiting rate (sign > 0 sufficient for positivity); at the
    smaller scale an upper bound (sign > 0 necessary). The legitimate-link
    term is kept at finite power, phi_func(p_u, beta2), instead of its own
    high-SNR expansion ln(p_u beta2) - (beta2 - 1) ln(1 - 1/beta2) - 1;
    the expansion overshoots by O(1/p_u) and visibly shifts threshold
    antenna counts at moderate power, while the finite-power form
    reproduces direct evaluation of the limit exactly.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"x must be finite and > 0, got {x!r}")
    if r.p_u <= 0.0:
        raise DomainError("requires p_u > 0")
    return phi_func(r.p_u, r.beta2) - _high_snr_eve_term(x, r) + _residual_noise_term(r)


def a_min_max(r: AsymptoticRatios) -> tuple[float, float]:
    """The two per-dimension power scales, ordered (min, max).

    The scales are p_u/(gamma beta3) and p_v/(gamma rho); they coincide
    exactly when the artificial-noise power ratio is 1.
    """
    a = r._data_scale()
    b = r._noise_scale()
    return (min(a, b), max(a, b))


def applicability_guard(cfg) -> bool:
    """True when the high-SNR margins are inside their trust region.

    Requires both link SNRs at least 4 (roughly 6 dB) and every antenna
    count dimension above 2.
    """
    snr_floor = min(cfg.alpha * cfg.gamma, cfg.alpha * cfg.beta * cfg.gamma)
    size_floor = min(cfg.n_a, cfg.n_b, cfg.n_a - cfg.n_b, cfg.n_e)
    return snr_floor >= 4.0 and size_floor > 2


def positivity_conditions(cfg) -> tuple[bool, bool]:
    """(sufficient, necessary) signs for a positive limiting secrecy rate.

    sufficient = margin at the larger scale > 0; necessary = margin at
    the smaller scale > 0. Outside applicability_guard(cfg) the values
    are still computed; they are then advisory only.
    """
    if cfg.alpha == 0.0:
        return (False, False)
    r = AsymptoticRatios.from_config(cfg)
    lo, hi = a_min_max(r)
    return (delta_highsnr(hi, r) > 0.0, delta_highsnr(lo, r) > 0.0)


def critical_eve_antennas(
    n_a: int,
    n_b: int,
    alpha: float,
    beta: float,
    gamma: float,
    max_eve_antennas: int = 4096,
) -> tuple[int, int]:
    """Largest eavesdropper antenna counts keeping each margin positive.

    Returns (n_suff, n_nec): beyond n_suff positivity is no longer
    guaranteed by the sufficient condition, beyond n_nec it is ruled out
    by the necessary one. Linear scan; if a margin is still positive at
    max_eve_antennas the threshold is unresolved and the scan raises
    UnboundedRangeError. Either value may be 0 when no antenna count
    satisfies its condition.
    """
    for name, v in (("n_a", n_a), ("n_b", n_b)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise DomainError(f"{name} must be a positive integer, got {v!r}")
    if n_b >= n_a:
        raise DomainError(f"need n_b < n_a, got n_b={n_b}, n_a={n_a}")
    alpha, beta, gamma = float(alpha), float(beta), float(gamma)
    for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not math.isfinite(v) or v <= 0.0:
            raise DomainError(f"{name} must be finite and > 0, got {v!r}")
    if isinstance(max_eve_antennas, bool) or not isinstance(max_eve_antennas, int):
        raise DomainError("max_eve_antennas must be an integer")
    if max_eve_antennas < 1:
        raise DomainError("max_eve_antennas must be positive")

    p_u = alpha * gamma * n_b
    p_v = alpha * beta * gamma * (n_a - n_b)
    n_suff = n_nec = 0
    last_suff = last_nec = False
    for n_e in range(1, max_eve_antennas + 1):
        r = AsymptoticRatios(
            beta1=n_a / n_e,
            beta2=n_a / n_b,
            beta3=n_b / n_e,
            p_u=p_u,
            p_v=p_v,
            gamma=gamma,
        )
        lo, hi = a_min_max(r)
        last_suff = delta_highsnr(hi, r) > 0.0
        last_nec = delta_highsnr(lo, r) > 0.0
        if last_suff:
            n_suff = n_e
        if last_nec:
            n_nec = n_e
    if last_suff or last_nec:
        raise UnboundedRangeError(
            f"positivity margin still positive at the scan cap {max_eve_antennas}"
        )
    return (n_suff, n_nec)
