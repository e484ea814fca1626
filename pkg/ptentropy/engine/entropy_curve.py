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
"""Entanglement entropy of the system mode.

The reduced density matrix of mode a has eigenvalues
cos^2(mu_I - gamma) and sin^2(mu_I - gamma), so every entropy quantity
follows from the integrated coupling mu_I.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd
from scipy.optimize import bisect
from scipy.special import entr

from ..config import HALF_LIFE_MIN_DROP, ROOT_XTOL
from ..errors import InvalidParameters, NotBrokenRegime, RealityConditionViolated
from .closed_form import MetricSolution
from .params import ModelParams, RegimeTag, classify_regime

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["t", "S", "lambda1", "lambda2", "mu_I"]

# Doubling stops here; beyond it the bracket no longer resolves in float64
_BRACKET_LIMIT = 1e300


@dataclass(frozen=True)
class EntropyPoint:
    t: float
    lambda1: float
    lambda2: float
    entropy: float


def _entropy_from_angle(angle):
    lambda1 = np.cos(angle) ** 2
    lambda2 = np.sin(angle) ** 2
    return lambda1, lambda2, entr(lambda1) + entr(lambda2)


def lambda_pair(t, params: ModelParams):
    """Eigenvalues (lambda1, lambda2) of the reduced density matrix of mode a."""
    angle = np.asarray(MetricSolution(params).mu_integral(t)) - params.gamma
    lambda1, lambda2, _ = _entropy_from_angle(angle)
    if np.ndim(t) == 0:
        return float(lambda1), float(lambda2)
    return lambda1, lambda2


def entropy(t: float, params: ModelParams) -> EntropyPoint:
    """Von Neumann entropy (nats) of mode a at a single time."""
    lambda1, lambda2 = lambda_pair(float(t), params)
    value = float(entr(lambda1) + entr(lambda2))
    return EntropyPoint(t=float(t), lambda1=lambda1, lambda2=lambda2, entropy=value)


def entropy_curve(times, params: ModelParams) -> pd.DataFrame:
    """Evaluate the entropy on a grid of times.

    Args:
        times: 1-D array-like of times
        params: Model parameters

    Returns:
        DataFrame with columns t, S, lambda1, lambda2, mu_I
    """
    times = np.asarray(times, dtype=float).ravel()
    mu_i = np.asarray(MetricSolution(params).mu_integral(times))
    lambda1, lambda2, values = _entropy_from_angle(mu_i - params.gamma)
    return pd.DataFrame(
        {"t": times, "S": values, "lambda1": lambda1, "lambda2": lambda2, "mu_I": mu_i},
        columns=CURVE_COLUMNS,
    )


def asymptote_xi(params: ModelParams) -> float:
    """xi = sqrt(c1^2 + g^2 - kappa^2) / c1, the long-time eigenvalue splitting."""
    if classify_regime(params).tag is not RegimeTag.BROKEN:
        raise NotBrokenRegime(f"g={params.g} >= kappa={params.kappa}: no nonzero asymptote")
    if not params.reality_condition:
        raise RealityConditionViolated(
            f"c1^2={params.c1 ** 2:.6g} <= kappa^2-g^2={-params.delta:.6g}"
        )
    return math.sqrt(params.c1 ** 2 + params.delta) / params.c1


def asymptote(params: ModelParams):
    """Long-time entropy floor of the broken regime.

    Returns:
        Tuple (S_inf, xi)
    """
    xi = asymptote_xi(params)
    if not math.isclose(params.gamma, math.pi / 4, abs_tol=1e-12):
        logger.warning(
            f"asymptote assumes gamma = pi/4 (got {params.gamma:.6g}); "
            "evaluate entropy at large t for other mixing angles"
        )
    value = float(entr(0.5 * (1.0 + xi)) + entr(0.5 * (1.0 - xi)))
    return value, xi


def _first_target(mu_start: float, gamma: float) -> float:
    """Smallest gamma + k pi/2 strictly above mu_start."""
    quarter = math.pi / 2
    k = math.floor((mu_start - gamma) / quarter) + 1
    target = gamma + k * quarter
    if target <= mu_start:
        target += quarter
    return target


def _solve_mu_integral(solution: MetricSolution, target: float, lower: float) -> Optional[float]:
    """Time t > lower with mu_I(t) = target, or None when the bracket cannot close."""
    params = solution.params

    def residual(t):
        return solution.mu_integral(t) - target

    step = 1.0 / math.sqrt(params.n_bath)
    low, high = lower, lower + step
    while residual(high) < 0:
        low, high = high, lower + 2.0 * (high - lower)
        if high > _BRACKET_LIMIT:
            logger.debug(f"No bracket for mu_I = {target:.6g} below t = {_BRACKET_LIMIT:g}")
            return None
    if residual(high) == 0:
        return high
    logger.debug(f"Bracket for mu_I = {target:.6g}: [{low:.6g}, {high:.6g}]")
    return bisect(residual, low, high, xtol=ROOT_XTOL)


def revival_times(params: ModelParams, count: int) -> List[float]:
    """First ``count`` times t > 0 at which the entropy vanishes.

    The unbroken regime revives indefinitely; the other regimes yield at most
    the crossings below sup mu_I, possibly none.
    """
    if count < 0:
        raise InvalidParameters(f"count must be non-negative, got {count}")
    solution = MetricSolution(params)
    limit = solution.mu_integral_limit()
    times: List[float] = []
    lower = 0.0
    target = _first_target(solution.mu_integral(0.0), params.gamma)
    while len(times) < count and target < limit:
        root = _solve_mu_integral(solution, target, lower)
        if root is None:
            break
        times.append(float(root))
        lower = root
        target += math.pi / 2
    return times


def sudden_death_time(params: ModelParams) -> Optional[float]:
    """Smallest t > 0 with S(t) = 0, or None when mu_I never reaches a zero of S."""
    times = revival_times(params, 1)
    if not times:
        logger.debug(f"No entropy sudden death for {params.describe()}")
        return None
    return times[0]


def unbroken_period(params: ModelParams) -> float:
    """Period pi / (2 sqrt(N) sqrt(g^2 - kappa^2)) of S(t); the eigenvalues repeat at twice this."""
    if classify_regime(params).tag is not RegimeTag.UNBROKEN:
        raise InvalidParameters("S(t) is only periodic in the unbroken regime")
    return math.pi / (2.0 * math.sqrt(params.n_bath) * math.sqrt(params.delta))


def _binary_entropy_inverse(value: float) -> float:
    """p in [1/2, 1] with entr(p) + entr(1 - p) = value."""
    if value >= math.log(2.0):
        return 0.5
    if value <= 0.0:
        return 1.0
    return bisect(lambda p: float(entr(p) + entr(1.0 - p)) - value, 0.5, 1.0, xtol=ROOT_XTOL)


def half_life(params: ModelParams) -> Optional[float]:
    """Smallest t > 0 at which S(t) - S_inf has covered half of S(0) - S_inf.

    S_inf is the entropy at sup mu_I: the floor of the broken regime, and 0
    at the exceptional point when gamma = pi/4. Since mu_I depends on t only
    through sqrt(N) t, the half-life scales as 1/sqrt(N).

    Returns:
        The half-life, or None when S(0) already sits at S_inf

    Raises:
        InvalidParameters: In the unbroken regime, where S oscillates without decay
    """
    solution = MetricSolution(params)
    if solution.regime.tag is RegimeTag.UNBROKEN:
        raise InvalidParameters("S(t) oscillates in the unbroken regime and has no half-life")
    mu_start = float(solution.mu_integral(0.0))
    limit = solution.mu_integral_limit()
    _, _, s_start = _entropy_from_angle(mu_start - params.gamma)
    _, _, s_inf = _entropy_from_angle(limit - params.gamma)
    if abs(s_start - s_inf) <= HALF_LIFE_MIN_DROP:
        logger.debug(f"S(0) = S_inf = {float(s_inf):.6g}: no decay to time")
        return None
    level = float(s_inf + 0.5 * (s_start - s_inf))

    # S = level on the angles gamma + k pi/2 +/- theta
    theta = math.acos(math.sqrt(_binary_entropy_inverse(level)))
    quarter = math.pi / 2
    k = math.floor((mu_start - params.gamma - theta) / quarter)
    candidates = [
        params.gamma + j * quarter + sign * theta for j in (k, k + 1, k + 2) for sign in (-1.0, 1.0)
    ]
    target = min(value for value in candidates if value > mu_start)
    if target >= limit:
        logger.debug(f"mu_I never reaches {target:.6g} (sup {limit:.6g})")
        return None
    return _solve_mu_integral(solution, target, 0.0)
