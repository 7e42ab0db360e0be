"""Secrecy-rate analysis for artificial-noise MIMO wiretap transmission.

Closed-form average secrecy rates, two-sided bounds, large-system
asymptotics with design thresholds, and a reproducible Monte Carlo
ground truth, plus a config/sweep harness and CLI.
"""

from .asymptotics import (
    AsymptoticRatios,
    DeltaSolution,
    a_min_max,
    applicability_guard,
    asymptotic_average_rate,
    critical_eve_antennas,
    delta_equal_scales,
    delta_highsnr,
    eta_of_delta,
    f_func,
    phi_func,
    positivity_conditions,
    psi,
    solve_delta,
    v_of_delta,
)
from .closed_form import (
    RateReport,
    SystemConfig,
    WishartSpectrum,
    average_rate_bounds,
    average_secrecy_rate,
    bob_capacity,
    build_spectrum,
    eve_leakage_upper_bound,
    omega,
    rate_report,
    theta,
)
from .errors import (
    ConfigError,
    DegenerateSpectrumError,
    DomainError,
    NoRootError,
    NumericError,
    RangeOverflowError,
    SweepError,
    UnboundedRangeError,
)
from .harness import (
    SweepSpec,
    config_from_mapping,
    design_report,
    format_config,
    parse_config,
    parse_config_text,
    parse_design_text,
    parse_sweep_text,
    point_row,
    rows_to_csv,
    rows_to_json,
    run_point,
    run_sweep,
)
from .monte_carlo import (
    ChannelRealization,
    MCEstimate,
    instantaneous_secrecy_rate,
    mc_average_secrecy_rate,
    mc_logdet_oracle,
    mc_normalized_rate_sample,
    sample_channel,
)
from .special_functions import (
    GammaValue,
    binomial,
    exp_integral_e1,
    gamma_product,
    log_factorial,
    upper_incomplete_gamma,
    upper_incomplete_gamma_scaled,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticRatios",
    "ChannelRealization",
    "ConfigError",
    "DegenerateSpectrumError",
    "DeltaSolution",
    "DomainError",
    "GammaValue",
    "MCEstimate",
    "NoRootError",
    "NumericError",
    "RangeOverflowError",
    "RateReport",
    "SweepError",
    "SweepSpec",
    "SystemConfig",
    "UnboundedRangeError",
    "WishartSpectrum",
    "a_min_max",
    "applicability_guard",
    "asymptotic_average_rate",
    "average_rate_bounds",
    "average_secrecy_rate",
    "binomial",
    "bob_capacity",
    "build_spectrum",
    "config_from_mapping",
    "critical_eve_antennas",
    "delta_equal_scales",
    "delta_highsnr",
    "design_report",
    "eta_of_delta",
    "eve_leakage_upper_bound",
    "exp_integral_e1",
    "f_func",
    "format_config",
    "gamma_product",
    "instantaneous_secrecy_rate",
    "log_factorial",
    "mc_average_secrecy_rate",
    "mc_logdet_oracle",
    "mc_normalized_rate_sample",
    "omega",
    "parse_config",
    "parse_config_text",
    "parse_design_text",
    "parse_sweep_text",
    "phi_func",
    "positivity_conditions",
    "psi",
    "rate_report",
    "rows_to_csv",
    "rows_to_json",
    "run_point",
    "run_sweep",
    "sample_channel",
    "solve_delta",
    "theta",
    "upper_incomplete_gamma",
    "upper_incomplete_gamma_scaled",
    "v_of_delta",
    "__version__",
]
