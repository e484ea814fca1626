"""Closed-form Dyson map and entropy evaluation."""

from .closed_form import (
    MetricSolution,
    alpha_beta,
    alpha_beta_rates,
    energy_spectrum,
    mu,
    mu_integral,
    mu_integral_limit,
    mu_printed,
    ode_rhs,
    sigma,
    tanh_2alpha_printed,
    zeta_printed,
)
from .entropy_curve import (
    CURVE_COLUMNS,
    EntropyPoint,
    asymptote,
    asymptote_xi,
    entropy,
    entropy_curve,
    half_life,
    lambda_pair,
    revival_times,
    sudden_death_time,
    unbroken_period,
)
from .params import ModelParams, Regime, RegimeTag, classify_regime

__all__ = [
    "CURVE_COLUMNS",
    "EntropyPoint",
    "MetricSolution",
    "ModelParams",
    "Regime",
    "RegimeTag",
    "alpha_beta",
    "alpha_beta_rates",
    "asymptote",
    "asymptote_xi",
    "classify_regime",
    "energy_spectrum",
    "entropy",
    "entropy_curve",
    "half_life",
    "lambda_pair",
    "mu",
    "mu_integral",
    "mu_integral_limit",
    "mu_printed",
    "ode_rhs",
    "revival_times",
    "sigma",
    "sudden_death_time",
    "tanh_2alpha_printed",
    "unbroken_period",
    "zeta_printed",
]
