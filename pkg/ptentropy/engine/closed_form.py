# Copyright 2026 ptentropy Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Closed-form Dyson map of the system-bath model.

The Dyson map is eta(t) = exp(beta A_y) exp(alpha N_AQ). With
T = t + c2 and Delta = g^2 - kappa^2 the solution reads

    sinh(2 beta) = sigma = c1 sin(2 sqrt(N) sqrt(Delta) T) / sqrt(Delta)
    exp(2 alpha) = zeta
    mu_I(t)      = 1/2 arctan(sqrt(c1^2 + Delta) tan(2 sqrt(N) sqrt(Delta) T) / sqrt(Delta))

Every expression is evaluated through the signed variable
y = 4 N Delta T^2, so the trigonometric (unbroken), linear (exceptional) and
hyperbolic (broken) branches share one manifestly real code path. Near y = 0
the ratio functions use their power series. All evaluators accept scalars or
numpy arrays of times.
"""

import logging
import math

import numpy as np

from ..config import LOG_DOMAIN_ROOT, SERIES_CUTOFF
from ..errors import InvalidParameters, RealityConditionViolated
from .params import ModelParams, RegimeTag, classify_regime

logger = logging.getLogger(__name__)

_LN2 = math.log(2.0)


def _as_output(value, t):
    """Return a float for scalar input times, an array otherwise."""
    if np.ndim(t) == 0:
        return float(value)
    return np.asarray(value, dtype=float)


def _sin_ratio(y):
    """sin(sqrt(y))/sqrt(y), continued to sinh(sqrt(-y))/sqrt(-y) for y < 0."""
    y = np.asarray(y, dtype=float)
    root = np.sqrt(np.abs(y))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        trig = np.sin(root) / root
        hyper = np.sinh(root) / root
    series = 1.0 - y / 6.0 + y ** 2 / 120.0 - y ** 3 / 5040.0
    return np.where(np.abs(y) < SERIES_CUTOFF, series, np.where(y > 0, trig, hyper))


def _cos_like(y):
    """cos(sqrt(y)), continued to cosh(sqrt(-y)) for y < 0."""
    y = np.asarray(y, dtype=float)
    root = np.sqrt(np.abs(y))
    with np.errstate(over="ignore"):
        return np.where(y >= 0, np.cos(root), np.cosh(root))


def _tanh_ratio(y):
    """tanh(sqrt(-y))/sqrt(-y) for y <= 0."""
    y = np.asarray(y, dtype=float)
    root = np.sqrt(np.abs(y))
    with np.errstate(divide="ignore", invalid="ignore"):
        hyper = np.tanh(root) / root
    series = 1.0 + y / 3.0 + 2.0 * y ** 2 / 15.0 + 17.0 * y ** 3 / 315.0
    return np.where(np.abs(y) < SERIES_CUTOFF, series, hyper)


def _phase(t, params: ModelParams):
    """Shifted time T = t + c2 and the branch variable y = 4 N Delta T^2."""
    shifted = np.asarray(t, dtype=float) + params.c2
    y = 4.0 * params.n_bath * params.delta * shifted ** 2
    return shifted, y


def sigma(t, params: ModelParams):
    """sigma(t) = sinh(2 beta(t)), real in every regime."""
    shifted, y = _phase(t, params)
    with np.errstate(over="ignore", invalid="ignore"):
        value = 2.0 * math.sqrt(params.n_bath) * params.c1 * shifted * _sin_ratio(y)
    return _as_output(value, t)


def ode_rhs(alpha, beta, params: ModelParams):
    """Right-hand sides (alpha_dot, beta_dot) of the coupled Dyson equations.

    Scalars go through ``math`` so the RK4 loop stays cheap; arrays go
    through numpy.
    """
    root_n = math.sqrt(params.n_bath)
    g, kappa = params.g, params.kappa
    if np.ndim(alpha) == 0 and np.ndim(beta) == 0:
        cosh_a, sinh_a = math.cosh(2.0 * alpha), math.sinh(2.0 * alpha)
        tanh_b = math.tanh(2.0 * beta)
    else:
        cosh_a, sinh_a = np.cosh(2.0 * alpha), np.sinh(2.0 * alpha)
        tanh_b = np.tanh(2.0 * beta)
    alpha_dot = -tanh_b * root_n * (g * cosh_a + kappa * sinh_a)
    beta_dot = root_n * (kappa * cosh_a + g * sinh_a)
    return alpha_dot, beta_dot


class MetricSolution:
    """Time-dependent Dyson map and Hermitian coupling for one parameter set.

    Constructing the solution checks the reality condition
    c1^2 + g^2 - kappa^2 > 0; every evaluator is a pure function of t.
    """

    def __init__(self, params: ModelParams):
        self.params = params
        self.regime = classify_regime(params)
        if not params.reality_condition:
            raise RealityConditionViolated(
                f"c1^2={params.c1 ** 2:.6g} <= kappa^2-g^2={-params.delta:.6g}"
            )
        self._root_n = math.sqrt(params.n_bath)
        # sqrt(c1^2 + g^2 - kappa^2)
        self._radius = math.sqrt(params.c1 ** 2 + params.delta)

    def sigma(self, t):
        return sigma(t, self.params)

    def _log_branch(self, t):
        """Logarithmic form of the broken-regime hyperbolic terms.

        Returns (large, sign, ln|sigma|, ln cosh r) with r = sqrt(-y); ``large``
        marks the times with r > LOG_DOMAIN_ROOT, where sinh r and cosh r
        overflow long before the quantities built from them do.
        """
        p = self.params
        shifted, y = _phase(t, p)
        root = np.sqrt(np.abs(y))
        large = (y < 0) & (root > LOG_DOMAIN_ROOT)
        # clipped so the discarded small-root entries stay finite
        root = np.maximum(root, LOG_DOMAIN_ROOT)
        decay = np.exp(-2.0 * root)
        log_sinh = root - _LN2 + np.log1p(-decay)
        log_cosh = root - _LN2 + np.log1p(decay)
        log_sigma = math.log(p.c1) - 0.5 * math.log(-p.delta) + log_sinh
        return large, np.sign(shifted), log_sigma, log_cosh

    def _log_cosh_2beta(self, log_sigma):
        # cosh(2 beta) = sqrt(1 + sigma^2)
        return log_sigma + 0.5 * np.log1p(np.exp(-2.0 * log_sigma))

    def cosh_2beta(self, t):
        return _as_output(np.hypot(1.0, self.sigma(t)), t)

    def beta(self, t):
        with np.errstate(invalid="ignore"):
            value = 0.5 * np.arcsinh(self.sigma(t))
        if self.regime.tag is RegimeTag.BROKEN:
            large, sign, log_sigma, _ = self._log_branch(t)
            # arcsinh x = ln x + ln(1 + sqrt(1 + x^-2))
            log_arcsinh = log_sigma + np.log1p(np.sqrt(1.0 + np.exp(-2.0 * log_sigma)))
            value = np.where(large, 0.5 * sign * log_arcsinh, value)
        return _as_output(value, t)

    def alpha(self, t):
        """alpha(t) from exp(2 alpha) = zeta, in the form without complex prefactors."""
        p = self.params
        _, y = _phase(t, p)
        cos_term = _cos_like(y)
        cosh_2b = np.hypot(1.0, self.sigma(t))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            zeta_direct = (p.c1 * cos_term + self._radius) / ((p.g + p.kappa) * cosh_2b)
            # same value, rationalised for cos < 0 where the direct sum cancels
            zeta_rational = (p.g - p.kappa) * cosh_2b / (self._radius - p.c1 * cos_term)
            zeta = np.where(cos_term >= 0, zeta_direct, zeta_rational)
            value = 0.5 * np.log(zeta)
        if self.regime.tag is RegimeTag.BROKEN:
            large, _, log_sigma, log_cosh = self._log_branch(t)
            log_numerator = math.log(p.c1) + log_cosh + np.log1p(self._radius / p.c1 * np.exp(-log_cosh))
            log_zeta = log_numerator - math.log(p.g + p.kappa) - self._log_cosh_2beta(log_sigma)
            value = np.where(large, 0.5 * log_zeta, value)
        return _as_output(value, t)

    def alpha_beta(self, t):
        return self.alpha(t), self.beta(t)

    def rates(self, t):
        """(alpha_dot, beta_dot) from the ODE right-hand sides at the closed form."""
        alpha, beta = self.alpha_beta(t)
        return ode_rhs(alpha, beta, self.params)

    def beta_dot(self, t):
        """beta_dot = sqrt(N) c1 cos(...) / cosh(2 beta), differentiated from sigma."""
        _, y = _phase(t, self.params)
        with np.errstate(invalid="ignore", over="ignore"):
            value = self._root_n * self.params.c1 * _cos_like(y) / np.hypot(1.0, self.sigma(t))
        if self.regime.tag is RegimeTag.BROKEN:
            large, _, log_sigma, log_cosh = self._log_branch(t)
            ratio = np.exp(math.log(self.params.c1) + log_cosh - self._log_cosh_2beta(log_sigma))
            value = np.where(large, self._root_n * ratio, value)
        return _as_output(value, t)

    def tanh_2alpha_printed(self, t):
        """The beta_dot-based tanh(2 alpha) expression, using
        sqrt(beta_dot^2 + N Delta) = sqrt(N) sqrt(c1^2 + Delta) / cosh(2 beta)."""
        p = self.params
        n = p.n_bath
        beta_dot = np.asarray(self.beta_dot(t))
        root = self._root_n * self._radius / np.hypot(1.0, self.sigma(t))
        value = (-n * p.g * p.kappa + beta_dot * root) / (n * p.g ** 2 + beta_dot ** 2)
        return _as_output(value, t)

    def zeta_printed(self, t):
        """The printed zeta; its prefactor is only real in the unbroken regime."""
        p = self.params
        if self.regime.tag is not RegimeTag.UNBROKEN:
            raise InvalidParameters("the printed zeta is only real in the unbroken regime")
        shifted, _ = _phase(t, p)
        phase = 2.0 * self._root_n * math.sqrt(p.delta) * shifted
        prefactor = math.sqrt(2.0) * math.sqrt((p.g - p.kappa) / (p.g + p.kappa))
        numerator = self._radius + p.c1 * np.cos(phase)
        denominator = np.sqrt(p.c1 ** 2 + 2.0 * p.delta - p.c1 ** 2 * np.cos(2.0 * phase))
        return _as_output(prefactor * numerator / denominator, t)

    def mu(self, t):
        """Coupling produced by the Dyson map:
        sqrt(N)(g cosh 2a + kappa sinh 2a)/cosh 2b = sqrt(N) sqrt(c1^2 + Delta)/(1 + sigma^2)."""
        with np.errstate(over="ignore"):
            value = self._root_n * self._radius / (1.0 + np.asarray(self.sigma(t)) ** 2)
        return _as_output(value, t)

    def mu_printed(self, t):
        """The stand-alone printed coupling; observed to be half of ``mu``."""
        p = self.params
        shifted, y = _phase(t, p)
        if self.regime.tag is RegimeTag.EXCEPTIONAL:
            # limit Delta -> 0 of the printed expression
            value = self._root_n * p.c1 / (2.0 * (1.0 + 4.0 * p.n_bath * p.c1 ** 2 * shifted ** 2))
        else:
            with np.errstate(over="ignore"):
                denominator = p.c1 ** 2 + 2.0 * p.delta - p.c1 ** 2 * _cos_like(4.0 * y)
                value = p.delta * self._root_n * self._radius / denominator
        return _as_output(value, t)

    def mu_integral(self, t):
        """mu_I(t), continuous and increasing.

        In the unbroken regime the arctan branch is unwrapped by counting
        half periods of 2 sqrt(N) sqrt(Delta) T, so mu_I gains pi/2 per
        half period.
        """
        p = self.params
        shifted, y = _phase(t, p)
        scale = self._radius * 2.0 * self._root_n * shifted
        if self.regime.tag is RegimeTag.UNBROKEN:
            phase = 2.0 * self._root_n * math.sqrt(p.delta) * shifted
            turns = np.floor(phase / math.pi + 0.5)
            parity = np.where(np.mod(turns, 2.0) == 0.0, 1.0, -1.0)
            angle = np.arctan2(parity * scale * _sin_ratio(y), parity * np.cos(phase)) + turns * math.pi
        else:
            angle = np.arctan(scale * _tanh_ratio(y))
        return _as_output(0.5 * angle, t)

    def mu_integral_limit(self) -> float:
        """Supremum of mu_I as t -> infinity."""
        p = self.params
        if self.regime.tag is RegimeTag.UNBROKEN:
            return math.inf
        if self.regime.tag is RegimeTag.EXCEPTIONAL:
            return math.pi / 4
        return 0.5 * math.atan(self._radius / math.sqrt(-p.delta))


def alpha_beta(t, params: ModelParams):
    """(alpha, beta) of the Dyson map at time t."""
    return MetricSolution(params).alpha_beta(t)


def mu(t, params: ModelParams):
    """Hermitian coupling mu(t) produced by the Dyson map."""
    return MetricSolution(params).mu(t)


def mu_printed(t, params: ModelParams):
    return MetricSolution(params).mu_printed(t)


def mu_integral(t, params: ModelParams):
    """Continuous antiderivative of mu with mu_I(-c2) = 0."""
    return MetricSolution(params).mu_integral(t)


def energy_spectrum(params: ModelParams, m: int):
    """Energy pair m (nu +/- sqrt(N) sqrt(g^2 - kappa^2)) of the m-th excitation level.

    Returns:
        Tuple (E_plus, E_minus) of complex numbers; a conjugate pair in the
        broken regime for m >= 1.
    """
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 0:
        raise InvalidParameters(f"m must be a non-negative integer, got {m!r}")
    if not params.bounded_below:
        logger.warning(
            f"nu={params.nu} <= sqrt(N) sqrt(g^2-kappa^2): spectrum is not bounded from below"
        )
    split = math.sqrt(params.n_bath) * complex(np.emath.sqrt(params.delta))
    return complex(m * (params.nu + split)), complex(m * (params.nu - split))


def alpha_beta_rates(t, params: ModelParams):
    """(alpha_dot, beta_dot) of the coupled Dyson equations along the closed form."""
    return MetricSolution(params).rates(t)


def tanh_2alpha_printed(t, params: ModelParams):
    return MetricSolution(params).tanh_2alpha_printed(t)


def zeta_printed(t, params: ModelParams):
    return MetricSolution(params).zeta_printed(t)


def mu_integral_limit(params: ModelParams) -> float:
    return MetricSolution(params).mu_integral_limit()
