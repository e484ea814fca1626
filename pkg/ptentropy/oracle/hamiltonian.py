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
"""Hamiltonians and Dyson map as matrices on a truncated Fock basis."""

import logging
from typing import Dict

import numpy as np
from scipy.linalg import expm

from ..engine.closed_form import MetricSolution, ode_rhs
from ..engine.params import ModelParams
from ..errors import InvalidParameters
from .fock import FockBasis, FockOperator, bath_ladder, build_generators

logger = logging.getLogger(__name__)

COUPLINGS = ("A_x", "A_y")
MU_SOURCES = ("true", "printed")


def require_matching_bath(basis: FockBasis, params: ModelParams) -> None:
    """Raise InvalidParameters unless the basis was built for params.n_bath bath modes."""
    if basis.n_bath != params.n_bath:
        raise InvalidParameters(
            f"basis has N={basis.n_bath} bath modes but params have n_bath={params.n_bath}; "
            f"use params.with_bath({basis.n_bath})"
        )


def build_H(basis: FockBasis, params: ModelParams) -> FockOperator:
    """Non-Hermitian H = nu (N_A + N_Q) + (g + kappa) a^+ Q + (g - kappa) Q^+ a."""
    require_matching_bath(basis, params)
    generators = build_generators(basis)
    a = basis.ladder(0)
    q = bath_ladder(basis)
    matrix = (
        params.nu * (generators["N_A"].matrix + generators["N_Q"].matrix)
        + (params.g + params.kappa) * (a.conj().T @ q)
        + (params.g - params.kappa) * (q.conj().T @ a)
    )
    return FockOperator(basis, matrix, "H")


def coupling_value(t, params: ModelParams, mu_source: str = "true") -> float:
    solution = MetricSolution(params)
    if mu_source == "true":
        return solution.mu(t)
    if mu_source == "printed":
        return solution.mu_printed(t)
    raise InvalidParameters(f"mu_source must be one of {MU_SOURCES}, got {mu_source!r}")


def hermitian_matrix(generators: Dict[str, FockOperator], nu: float, mu_value: float, coupling: str = "A_x"):
    """nu (N_A + N_Q) + mu * coupling generator."""
    if coupling not in COUPLINGS:
        raise InvalidParameters(f"coupling must be one of {COUPLINGS}, got {coupling!r}")
    return nu * (generators["N_A"].matrix + generators["N_Q"].matrix) + mu_value * generators[coupling].matrix


def build_h(
    t: float,
    basis: FockBasis,
    params: ModelParams,
    coupling: str = "A_x",
    mu_scale: float = 1.0,
    mu_source: str = "true",
) -> FockOperator:
    """Hermitian h(t) = nu N_A + nu N_Q + mu(t) G with G = A_x or A_y."""
    require_matching_bath(basis, params)
    mu_value = mu_scale * coupling_value(t, params, mu_source)
    matrix = hermitian_matrix(build_generators(basis), params.nu, mu_value, coupling)
    return FockOperator(basis, matrix, f"h[{coupling}]")


def _eta_factors(t, basis, params):
    require_matching_bath(basis, params)
    generators = build_generators(basis)
    alpha, beta = MetricSolution(params).alpha_beta(t)
    left = expm(beta * generators["A_y"].matrix)
    right = expm(alpha * generators["N_AQ"].matrix)
    return generators, alpha, beta, left, right


def build_eta(t: float, basis: FockBasis, params: ModelParams) -> FockOperator:
    """eta(t) = exp(beta A_y) exp(alpha N_AQ)."""
    _, _, _, left, right = _eta_factors(t, basis, params)
    return FockOperator(basis, left @ right, "eta")


def build_eta_dot(t: float, basis: FockBasis, params: ModelParams) -> FockOperator:
    """Time derivative by the product rule, with alpha_dot and beta_dot
    taken from the right-hand sides of the coupled equations."""
    generators, alpha, beta, left, right = _eta_factors(t, basis, params)
    alpha_dot, beta_dot = ode_rhs(alpha, beta, params)
    a_y = generators["A_y"].matrix
    n_aq = generators["N_AQ"].matrix
    matrix = beta_dot * a_y @ left @ right + alpha_dot * left @ n_aq @ right
    return FockOperator(basis, matrix, "eta_dot")


def build_metric(t: float, basis: FockBasis, params: ModelParams) -> FockOperator:
    """rho(t) = eta^+ eta."""
    eta = build_eta(t, basis, params).matrix
    return FockOperator(basis, eta.conj().T @ eta, "rho")


def right_divide(matrix: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """matrix @ eta^-1 without forming the inverse."""
    return np.linalg.solve(eta.T, matrix.T).T


def dyson_rhs(t: float, basis: FockBasis, params: ModelParams) -> np.ndarray:
    """eta H eta^-1 + i eta_dot eta^-1."""
    eta = build_eta(t, basis, params).matrix
    eta_dot = build_eta_dot(t, basis, params).matrix
    hamiltonian = build_H(basis, params).matrix
    return right_divide(eta @ hamiltonian + 1j * eta_dot, eta)
