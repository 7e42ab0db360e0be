"""Scalar special functions used by the closed-form rate formulas.

The two nonstandard pieces are the exponential integral E1 (series /
continued fraction split) and the upper incomplete gamma function at
integer order, including nonpositive order, which almost no standard
library exposes. Nonpositive order is reached by the downward recurrence
seeded at Gamma(0, b) = E1(b):

    Gamma(a - 1, b) = (Gamma(a, b) - b**(a-1) * exp(-b)) / (a - 1)

Each step subtracts two nearly equal positive numbers once b exceeds
|a|, so the recurrence cancels away roughly |a| ln b - ln|a|! nats of
precision. Three regimes cover the whole (order-capped) domain: the
plain double recurrence while the predicted loss is small, the tail
expansion in inverse powers of b where it converges, and the same
recurrence in arbitrary precision (budgeted by the loss estimate) for
the middle zone neither reaches. Order is capped at |a| <= 64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import mpmath

from .errors import DomainError, NumericError, RangeOverflowError

_EULER_GAMMA = 0.5772156649015329

# ln(n!) for n <= 20, exact integer factorials under a single rounding
_LOG_FACT_TABLE = tuple(math.log(math.factorial(n)) for n in range(21))

_MAX_ORDER = 64


@dataclass(frozen=True)
class GammaValue:
    """Incomplete gamma result with an optional log-scaled twin.

    ``value`` is the plain double result (0.0 on underflow, inf on
    overflow). ``log_scaled`` is ``(log_magnitude, sign)``; Gamma(a, b)
    is positive for every real a and b > 0, so the sign is always +1.
    When both representations are finite and nonzero they must agree to
    1e-12 relative.
    """

    value: float
    log_scaled: Optional[Tuple[float, int]] = None

    def __post_init__(self):
        if self.log_scaled is None:
            return
        log_mag, sign = self.log_scaled
        if sign not in (-1, 1):
            raise DomainError("log_scaled sign must be -1 or +1")
        if self.value != 0.0 and math.isfinite(self.value) and math.isfinite(log_mag):
            recon = sign * math.exp(log_mag)
            if not math.isclose(recon, self.value, rel_tol=1e-12):
                raise DomainError(
                    "inconsistent GammaValue: value=%r, sign*exp(log)=%r"
                    % (self.value, recon)
                )


def _check_integer(name: str, v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise DomainError(f"{name} must be an integer, got {v!r}")
    return v


def _check_positive_real(name: str, v) -> float:
    v = float(v)
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be a finite positive real, got {v!r}")
    return v


def exp_integral_e1(b: float) -> float:
    """Exponential integral E1(b) = integral of exp(-t)/t from b to infinity.

    Power series for b <= 1, modified Lentz continued fraction for b > 1.
    Relative accuracy is about 1e-14 over the representable range; the
    result underflows gracefully to 0.0 once exp(-b) does (b around 745).
    """
    b = _check_positive_real("b", b)
    if b <= 1.0:
        # E1(b) = -gamma - ln b + sum_{k>=1} (-1)^(k+1) b^k / (k k!)
        acc = -_EULER_GAMMA - math.log(b)
        term = 1.0
        for k in range(1, 64):
            term *= -b / k
            add = -term / k
            acc += add
            if abs(add) < 1e-18 * abs(acc):
                break
        return acc
    # continued fraction E1(b) = exp(-b) / (b + 1 - 1/(b + 3 - 4/(b + 5 - ...)))
    tiny = 1e-300
    bb = b + 1.0
    c = 1.0 / tiny
    d = 1.0 / bb
    h = d
    for i in range(1, 200):
        a = -float(i) * float(i)
        bb += 2.0
        d = a * d + bb
        if abs(d) < tiny:
            d = tiny
        c = bb + a / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-b)


def _regularized_tail_sum(a: int, b: float) -> float:
    # exp(-b) * sum_{k=0}^{a-1} b^k / k!, computed scaled when exp(b) would
    # overflow the plain partial sum
    if b <= 600.0:
        term = 1.0
        s = 1.0
        for k in range(1, a):
            term *= b / k
            s += term
        return math.exp(-b) * s
    lb = math.log(b)
    return math.fsum(math.exp(k * lb - math.lgamma(k + 1) - b) for k in range(a))


_LADDER_LOSS_DIGITS = 5.0


def _ladder_loss_digits(a: int, b: float) -> float:
    # cancellation along the downward recurrence consumes about
    # |a| ln b - ln |a|! nats of working precision
    if a >= 0:
        return 0.0
    return max(0.0, ((-a) * math.log(b) - math.lgamma(1.0 - a)) / math.log(10.0))


def _double_ladder(a: int, b: float) -> float:
    g = exp_integral_e1(b)
    log_b = math.log(b)
    for j in range(0, a, -1):
        # Gamma(j-1, b) = (Gamma(j, b) - b^(j-1) e^(-b)) / (j - 1)
        p = math.exp((j - 1) * log_b - b)
        g = (g - p) / (j - 1)
    if g <= 0.0 or not math.isfinite(g):
        # the loss gate should make this unreachable
        raise NumericError(
            f"downward recurrence lost all significant digits at a={a}, b={b!r}"
        )
    return g


def _try_log_series_nonpositive(a: int, b: float) -> Optional[float]:
    """ln Gamma(a, b) from the alternating tail expansion, or None.

    Gamma(a, b) = b^(a-1) e^(-b) [1 + (a-1)/b + (a-1)(a-2)/b^2 + ...];
    for a <= 0 the bracket alternates and is usable only while its terms
    shrink, so give up the moment they turn before reaching full double
    precision.
    """
    total = 1.0
    term = 1.0
    prev = math.inf
    for k in range(1, 400):
        term *= (a - k) / b
        magnitude = abs(term)
        if magnitude >= prev:
            return None
        total += term
        prev = magnitude
        if magnitude <= 1e-17 * abs(total):
            return (a - 1) * math.log(b) - b + math.log(total)
    return None


def _mp_log_ladder(a: int, b: float) -> float:
    # same recurrence, run at enough extra digits to pay for the
    # cancellation; covers the zone where doubles fail and the tail
    # series has not converged yet. Scaling by e^b keeps intermediates
    # near unity.
    digits = 25 + int(_ladder_loss_digits(a, b))
    with mpmath.workdps(digits):
        bm = mpmath.mpf(b)
        g = mpmath.e1(bm) * mpmath.exp(bm)
        p = 1.0 / bm
        for j in range(0, a, -1):
            g = (g - p) / (j - 1)
            p = p / bm
        if g <= 0:
            raise NumericError(
                f"precision budget exhausted for Gamma({a}, {b!r})"
            )
        return float(mpmath.log(g) - bm)


def _nonpositive_order_log(a: int, b: float) -> float:
    """ln Gamma(a, b) for a <= 0 via whichever regime is trustworthy."""
    log_b = math.log(b)
    if _ladder_loss_digits(a, b) <= _LADDER_LOSS_DIGITS:
        edge1 = (a - 1) * log_b - b
        edge2 = -log_b - b
        if max(edge1, edge2) <= 700.0 and min(edge1, edge2) >= -700.0:
            return math.log(_double_ladder(a, b))
    log_mag = _try_log_series_nonpositive(a, b)
    if log_mag is None:
        log_mag = _mp_log_ladder(a, b)
    return log_mag


def upper_incomplete_gamma(a: int, b: float) -> float:
    """Gamma(a, b) = integral of t**(a-1) exp(-t) from b to infinity.

    Integer order only, |a| <= 64. Positive order uses the finite sum
    Gamma(a, b) = (a-1)! exp(-b) sum b^k/k!; order zero is E1(b);
    negative order combines the downward recurrence from E1 with the
    inverse-power tail expansion (see module docstring). Raises
    RangeOverflowError when the result exceeds double range (tiny b at
    very negative a) and NumericError when it underflows it (huge b);
    upper_incomplete_gamma_scaled serves both regimes.
    """
    a = _check_integer("a", a)
    b = _check_positive_real("b", b)
    if abs(a) > _MAX_ORDER:
        raise DomainError(f"order |a| <= {_MAX_ORDER} supported, got {a}")
    if a >= 1:
        return float(math.factorial(a - 1)) * _regularized_tail_sum(a, b)
    if a == 0:
        return exp_integral_e1(b)
    log_mag = _nonpositive_order_log(a, b)
    if log_mag > 709.0:
        raise RangeOverflowError(
            f"Gamma({a}, {b!r}) overflows double range; "
            "call upper_incomplete_gamma_scaled"
        )
    if log_mag < -708.0:
        raise NumericError(
            f"Gamma({a}, {b!r}) underflows double range; "
            "call upper_incomplete_gamma_scaled"
        )
    return math.exp(log_mag)


def _exact_bracket_log(a: int, b: float) -> float:
    # Gamma(a, b) = b^(a-1) e^(-b) [1 + (a-1)/b + ...]; the bracket
    # terminates after a terms for a >= 1, so this is exact at any b
    total = 1.0
    term = 1.0
    for k in range(1, a):
        term *= (a - k) / b
        total += term
    return (a - 1) * math.log(b) - b + math.log(total)


def upper_incomplete_gamma_scaled(a: int, b: float) -> GammaValue:
    """Log-scaled Gamma(a, b) for arguments outside plain double range.

    Same regime selection as upper_incomplete_gamma, but the result is
    carried as (log magnitude, sign), so b**(a-1)*exp(-b) may pass
    exp(+-709) freely. The plain value field saturates to inf (or 0.0)
    when out of range.
    """
    a = _check_integer("a", a)
    b = _check_positive_real("b", b)
    if abs(a) > _MAX_ORDER:
        raise DomainError(f"order |a| <= {_MAX_ORDER} supported, got {a}")
    if a >= 1:
        tail = _regularized_tail_sum(a, b)
        if tail > 0.0:
            log_mag = math.lgamma(a) + math.log(tail)
        else:
            # tail underflowed (huge b); the bracket form never does
            log_mag = _exact_bracket_log(a, b)
    else:
        log_mag = _nonpositive_order_log(a, b)
    try:
        value = math.exp(log_mag)
    except OverflowError:
        value = math.inf
    return GammaValue(value=value, log_scaled=(log_mag, 1))


def log_factorial(n: int) -> float:
    """ln(n!); table lookup for n <= 20, log-gamma beyond."""
    n = _check_integer("n", n)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if n <= 20:
        return _LOG_FACT_TABLE[n]
    return math.lgamma(n + 1)


def binomial(a: int, b: int) -> float:
    """Binomial coefficient C(a, b) as a float; 0.0 when b < 0 or b > a.

    Exact integer arithmetic for a <= 62 (single rounding on conversion),
    log-factorial exponentiation beyond.
    """
    a = _check_integer("a", a)
    b = _check_integer("b", b)
    if a < 0:
        raise DomainError(f"a must be nonnegative, got {a}")
    if b < 0 or b > a:
        return 0.0
    if a <= 62:
        return float(math.comb(a, b))
    return math.exp(log_factorial(a) - log_factorial(b) - log_factorial(a - b))


def gamma_product(k: int, n: int) -> float:
    """ln of the product (n-1)! (n-2)! ... (n-k)!; requires n >= k >= 1."""
    k = _check_integer("k", k)
    n = _check_integer("n", n)
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if n < k:
        raise DomainError(f"need n >= k, got n={n}, k={k}")
    return math.fsum(log_factorial(n - i) for i in range(1, k + 1))
