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
"""Time integration: the coupled Dyson-map equations and state propagation.

Both integrators are classical fixed-step RK4. Schrodinger steps use
k = -i dt h(t) psi with the stages evaluated at t, t + dt/2 and t + dt.
"""

import logging
import math
from typing import Callable, List

import numpy as np
import pandas as pd
from scipy.linalg import expm

from ..config import (
    DEFAULT_DT,
    ENERGY_DRIFT_LIMIT,
    METRIC_NORM_TOL,
    ODE_TOL,
    PROPAGATION_TOL,
    RICHARDSON_FLOOR,
)
from ..density.matrices import DensityMatrix, von_neumann_entropy
from ..density.partial_trace import BipartiteLabel, partial_trace
from ..engine.closed_form import MetricSolution, ode_rhs
from ..engine.params import ModelParams, classify_regime
from ..errors import InvalidParameters, StepSizeTooLarge
from .checks import CheckReport
from .fock import FockBasis, build_generators
from .hamiltonian import build_eta, build_H, build_metric, hermitian_matrix, require_matching_bath

logger = logging.getLogger(__name__)

GENERATOR_CHOICES = ("h_with_Ax", "rotation_Ay")
TRAJECTORY_COLUMNS = ["t", "S", "lambda1", "lambda2", "norm"]

# Beyond this cosh(2 beta) the first integral loses all digits to cancellation
_DRIFT_COSH_LIMIT = 1e4


def _rk4_alpha_beta(params: ModelParams, alpha: float, beta: float, n_steps: int, step: float):
    alphas = np.empty(n_steps + 1)
    betas = np.empty(n_steps + 1)
    alphas[0], betas[0] = alpha, beta
    for i in range(n_steps):
        k1 = ode_rhs(alpha, beta, params)
        k2 = ode_rhs(alpha + 0.5 * step * k1[0], beta + 0.5 * step * k1[1], params)
        k3 = ode_rhs(alpha + 0.5 * step * k2[0], beta + 0.5 * step * k2[1], params)
        k4 = ode_rhs(alpha + step * k3[0], beta + step * k3[1], params)
        alpha += step * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0
        beta += step * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0
        alphas[i + 1], betas[i + 1] = alpha, beta
    return alphas, betas


def first_integral(alpha, beta, params: ModelParams):
    """(beta_dot^2 + N Delta) cosh^2(2 beta) / N - Delta, conserved and equal to c1^2."""
    _, beta_dot = ode_rhs(alpha, beta, params)
    n = params.n_bath
    return (beta_dot ** 2 + n * params.delta) * np.cosh(2.0 * beta) ** 2 / n - params.delta


def integrate_alpha_beta(params: ModelParams, t_max: float, dt: float = DEFAULT_DT):
    """Integrate the coupled equations for alpha, beta from the closed-form start.

    Args:
        params: Model parameters
        t_max: Final time (> 0)
        dt: Upper bound on the RK4 step

    Returns:
        Tuple (trajectory DataFrame, CheckReport against the closed form)

    Raises:
        StepSizeTooLarge: If the first integral drifts by more than ENERGY_DRIFT_LIMIT
    """
    if not t_max > 0 or not dt > 0:
        raise InvalidParameters(f"t_max and dt must be positive, got t_max={t_max}, dt={dt}")
    solution = MetricSolution(params)
    n_steps = max(1, math.ceil(t_max / dt))
    step = t_max / n_steps
    alpha0, beta0 = solution.alpha_beta(0.0)

    alphas, betas = _rk4_alpha_beta(params, alpha0, beta0, n_steps, step)
    times = np.linspace(0.0, t_max, n_steps + 1)
    alpha_closed, beta_closed = solution.alpha_beta(times)

    cosh_2b = np.cosh(2.0 * betas)
    trusted = cosh_2b <= _DRIFT_COSH_LIMIT
    drift = float(
        np.max(np.abs(first_integral(alphas[trusted], betas[trusted], params) - params.c1 ** 2))
        / params.c1 ** 2
    )
    if not drift <= ENERGY_DRIFT_LIMIT:
        raise StepSizeTooLarge(f"first integral drifted by {drift:.3e} with dt={step:.3g}")

    deviation = float(max(np.max(np.abs(alphas - alpha_closed)), np.max(np.abs(betas - beta_closed))))
    half_alphas, half_betas = _rk4_alpha_beta(params, alpha0, beta0, 2 * n_steps, 0.5 * step)
    half_deviation = float(
        max(
            np.max(np.abs(half_alphas[::2] - alpha_closed)),
            np.max(np.abs(half_betas[::2] - beta_closed)),
        )
    )
    if deviation <= RICHARDSON_FLOOR:
        richardson = "Richardson ratio n/a, errors at round-off"
    else:
        ratio = deviation / half_deviation if half_deviation > 0 else math.inf
        richardson = f"Richardson ratio {ratio:.3g}"
    logger.debug(f"RK4 alpha/beta: deviation {deviation:.3e}, {richardson}")

    trajectory = pd.DataFrame(
        {
            "t": times,
            "alpha": alphas,
            "beta": betas,
            "alpha_closed": alpha_closed,
            "beta_closed": beta_closed,
        }
    )
    regime = classify_regime(params).tag.value
    report = CheckReport(
        f"rk4 alpha/beta [N={params.n_bath},{regime},t_max={t_max:g}]",
        deviation,
        ODE_TOL,
        f"dt={step:.3g}; {richardson}; first-integral drift {drift:.3e}",
    )
    return trajectory, report


def initial_state(basis: FockBasis, params: ModelParams, mu_start: float = 0.0) -> np.ndarray:
    """cos(mu_I - gamma) |1_a 0_q> + sin(gamma - mu_I) |sym bath> at mu_I = mu_start."""
    system, bath = basis.sector_vectors()
    return math.cos(mu_start - params.gamma) * system + math.sin(params.gamma - mu_start) * bath


def _rk4_schrodinger(state, start, step, hamiltonian_at):
    k1 = -1j * step * (hamiltonian_at(start) @ state)
    k2 = -1j * step * (hamiltonian_at(start + 0.5 * step) @ (state + 0.5 * k1))
    k3 = -1j * step * (hamiltonian_at(start + 0.5 * step) @ (state + 0.5 * k2))
    k4 = -1j * step * (hamiltonian_at(start + step) @ (state + k3))
    return state + (k1 / 6 + k2 / 3 + k3 / 3 + k4 / 6)


def evolve(state: np.ndarray, t_grid, hamiltonian_at: Callable, max_step: float = DEFAULT_DT) -> List[np.ndarray]:
    """States at every grid time, RK4 sub-stepped to at most ``max_step``."""
    t_grid = np.asarray(t_grid, dtype=float)
    states = [np.asarray(state, dtype=complex)]
    current = states[0]
    for start, stop in zip(t_grid[:-1], t_grid[1:]):
        n_sub = max(1, math.ceil((stop - start) / max_step))
        step = (stop - start) / n_sub
        for k in range(n_sub):
            current = _rk4_schrodinger(current, start + k * step, step, hamiltonian_at)
        states.append(current)
    return states


def _hermitian_evolution(basis, params, solution, coupling="A_x"):
    generators = build_generators(basis)
    base = hermitian_matrix(generators, params.nu, 0.0, coupling)
    generator = generators[coupling].matrix
    return lambda t: base + solution.mu(t) * generator


def reduced_populations(state: np.ndarray, basis: FockBasis):
    """Entropy and (lambda1, lambda2) of mode a for a pure state of the full space."""
    state = state / np.linalg.norm(state)
    label = BipartiteLabel.from_fock_basis(basis, keep=(0,))
    reduced = partial_trace(DensityMatrix(np.outer(state, state.conj())), label)
    levels = label.kept_levels
    lambda1 = float(reduced.matrix[levels.index((1,)), levels.index((1,))].real)
    lambda2 = float(reduced.matrix[levels.index((0,)), levels.index((0,))].real)
    return von_neumann_entropy(reduced), lambda1, lambda2


def _check_grid(t_grid) -> np.ndarray:
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if t_grid.size == 0 or np.any(np.diff(t_grid) <= 0):
        raise InvalidParameters("t_grid must be non-empty and strictly increasing")
    return t_grid


def propagate_state(t_grid, basis: FockBasis, params: ModelParams, generator_choice: str = "rotation_Ay") -> pd.DataFrame:
    """Evolve the first excited state and trace out the bath.

    ``rotation_Ay`` rotates the sector coefficients by mu_I(t) (the
    evolution generated by mu(t) A_y); ``h_with_Ax`` integrates the
    Schrodinger equation of h(t) = nu N_A + nu N_Q + mu(t) A_x.

    Returns:
        DataFrame with columns t, S, lambda1, lambda2, norm
    """
    if generator_choice not in GENERATOR_CHOICES:
        raise InvalidParameters(f"generator_choice must be one of {GENERATOR_CHOICES}, got {generator_choice!r}")
    require_matching_bath(basis, params)
    t_grid = _check_grid(t_grid)
    solution = MetricSolution(params)
    mu_start = solution.mu_integral(float(t_grid[0]))
    start = initial_state(basis, params, mu_start)

    if generator_choice == "rotation_Ay":
        a_y = build_generators(basis)["A_y"].matrix
        angles = np.asarray(solution.mu_integral(t_grid)) - mu_start
        states = [expm(-1j * angle * a_y) @ start for angle in angles]
    else:
        states = evolve(start, t_grid, _hermitian_evolution(basis, params, solution))

    rows = []
    for time, state in zip(t_grid, states):
        value, lambda1, lambda2 = reduced_populations(state, basis)
        rows.append((float(time), value, lambda1, lambda2, float(np.linalg.norm(state))))
    logger.debug(f"Propagated {len(rows)} states with {generator_choice}")
    return pd.DataFrame(rows, columns=TRAJECTORY_COLUMNS)


def evolve_non_hermitian(basis: FockBasis, params: ModelParams, t_grid):
    """psi(t) = exp(-i H (t - t0)) psi(t0) with psi(t0) = eta(t0)^-1 phi(t0)."""
    t_grid = _check_grid(t_grid)
    solution = MetricSolution(params)
    t0 = float(t_grid[0])
    phi0 = initial_state(basis, params, solution.mu_integral(t0))
    psi0 = np.linalg.solve(build_eta(t0, basis, params).matrix, phi0)
    hamiltonian = build_H(basis, params).matrix
    return [expm(-1j * hamiltonian * (t - t0)) @ psi0 for t in t_grid]


def frame_consistency_check(params: ModelParams, basis: FockBasis, t_grid) -> List[CheckReport]:
    """Map the non-Hermitian evolution through eta and compare with h.

    Returns two reports: |eta psi - phi_h| and the drift of the
    metric-weighted norm <psi|rho(t)|psi>.
    """
    require_matching_bath(basis, params)
    t_grid = _check_grid(t_grid)
    solution = MetricSolution(params)
    psis = evolve_non_hermitian(basis, params, t_grid)
    phi0 = initial_state(basis, params, solution.mu_integral(float(t_grid[0])))
    phis = evolve(phi0, t_grid, _hermitian_evolution(basis, params, solution))

    mapping = 0.0
    norm_drift = 0.0
    for time, psi, phi in zip(t_grid, psis, phis):
        mapped = build_eta(time, basis, params).matrix @ psi
        mapping = max(mapping, float(np.linalg.norm(mapped - phi)))
        weighted = np.vdot(psi, build_metric(time, basis, params).matrix @ psi).real
        norm_drift = max(norm_drift, abs(weighted - 1.0))

    tag = f"N={basis.n_bath},cap={basis.max_total},{classify_regime(params).tag.value}"
    return [
        CheckReport(f"eta psi(t) = phi(t) [{tag}]", mapping, PROPAGATION_TOL, "psi from expm(-iHt), phi from RK4 under h"),
        CheckReport(f"metric norm conserved [{tag}]", norm_drift, METRIC_NORM_TOL, "<psi|eta^+ eta|psi> = 1"),
    ]
