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
"""Density matrices in the Hermitian and the metric frame.

A density matrix without a metric is an ordinary Hermitian positive
semi-definite matrix of unit trace. A density matrix of the non-Hermitian
frame, varrho_H = sum p |psi><psi| rho, carries the positive-definite metric
rho and satisfies rho varrho_H = varrho_H^dagger rho instead of Hermiticity.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.special import entr

from ..config import (
    ETA_CONDITION_LIMIT,
    HERMITIAN_TOL,
    NEGATIVE_EIGENVALUE_TOL,
    NORM_TOL,
    TRACE_TOL,
)
from ..errors import InvalidWeights, NonNormalizedState, NotADensityMatrix, SingularEta

logger = logging.getLogger(__name__)


def _as_square(matrix, name="matrix") -> np.ndarray:
    array = np.asarray(matrix, dtype=complex)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise NotADensityMatrix(f"{name} must be square, got shape {array.shape}")
    return array


def _anti_hermitian_residual(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T))) / 2.0 if matrix.size else 0.0


def metric_hermiticity_residual(rho_h, metric) -> float:
    """max |rho varrho_H - varrho_H^dagger rho|, zero for a metric-Hermitian matrix."""
    rho_h = _as_square(rho_h, "rho_H")
    metric = _as_square(metric, "metric")
    return float(np.max(np.abs(metric @ rho_h - rho_h.conj().T @ metric)))


@dataclass
class DensityMatrix:
    """Unit-trace density matrix, optionally in the metric frame.

    Attributes:
        matrix: dim x dim complex matrix
        metric: Positive-definite metric for the non-Hermitian frame, or None
    """

    matrix: np.ndarray
    metric: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        self.matrix = _as_square(self.matrix)
        trace = np.trace(self.matrix)
        if abs(trace - 1.0) > TRACE_TOL:
            raise NotADensityMatrix(f"trace must be 1, got {trace:.12g}")
        if self.metric is None:
            residual = _anti_hermitian_residual(self.matrix)
            if residual > HERMITIAN_TOL:
                raise NotADensityMatrix(f"matrix is not Hermitian (residual {residual:.3e})")
            smallest = np.linalg.eigvalsh((self.matrix + self.matrix.conj().T) / 2.0)[0]
            if smallest < -NEGATIVE_EIGENVALUE_TOL:
                raise NotADensityMatrix(f"matrix has a negative eigenvalue {smallest:.3e}")
            return
        self.metric = _as_square(self.metric, "metric")
        if self.metric.shape != self.matrix.shape:
            raise NotADensityMatrix(
                f"metric shape {self.metric.shape} does not match matrix shape {self.matrix.shape}"
            )
        if _anti_hermitian_residual(self.metric) > HERMITIAN_TOL:
            raise NotADensityMatrix("metric is not Hermitian")
        if np.linalg.eigvalsh(self.metric)[0] <= 0:
            raise NotADensityMatrix("metric is not positive definite")
        residual = metric_hermiticity_residual(self.matrix, self.metric)
        if residual > HERMITIAN_TOL:
            raise NotADensityMatrix(f"matrix is not metric-Hermitian (residual {residual:.3e})")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def frame(self) -> str:
        return "hermitian" if self.metric is None else "metric"


@dataclass
class Ensemble:
    """Weighted collection of pure states."""

    weights: Sequence[float]
    states: Sequence[np.ndarray]

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float).ravel()
        self.states = [np.asarray(state, dtype=complex).ravel() for state in self.states]
        if len(self.weights) != len(self.states) or not len(self.states):
            raise InvalidWeights(
                f"need one weight per state, got {len(self.weights)} weights and {len(self.states)} states"
            )
        if np.any(self.weights < 0) or np.any(self.weights > 1):
            raise InvalidWeights(f"weights must lie in [0, 1], got {self.weights.tolist()}")
        if abs(self.weights.sum() - 1.0) > TRACE_TOL:
            raise InvalidWeights(f"weights must sum to 1, got {self.weights.sum():.12g}")
        if len({state.shape for state in self.states}) != 1:
            raise NonNormalizedState("all states must have the same dimension")


def density_from_ensemble(ensemble: Ensemble, metric=None) -> DensityMatrix:
    """sum p |psi><psi|, right-multiplied by the metric when one is given.

    Raises:
        NonNormalizedState: If a state has <psi|rho|psi> (or <psi|psi>) != 1
    """
    dim = ensemble.states[0].shape[0]
    weight_matrix = np.eye(dim, dtype=complex) if metric is None else _as_square(metric, "metric")
    accumulated = np.zeros((dim, dim), dtype=complex)
    for index, (weight, state) in enumerate(zip(ensemble.weights, ensemble.states)):
        norm = np.vdot(state, weight_matrix @ state).real
        if abs(norm - 1.0) > NORM_TOL:
            raise NonNormalizedState(f"state {index} has norm {norm:.12g}")
        accumulated += weight * np.outer(state, state.conj())
    if metric is not None:
        accumulated = accumulated @ weight_matrix
    return DensityMatrix(accumulated, None if metric is None else weight_matrix)


def similarity_map(rho_h, eta) -> DensityMatrix:
    """eta varrho_H eta^-1, mapping the metric frame to the Hermitian frame.

    Returns:
        Hermitian-frame DensityMatrix with the spectrum of ``rho_h``

    Raises:
        SingularEta: If cond(eta) exceeds ETA_CONDITION_LIMIT
        NotADensityMatrix: If the image is not a Hermitian, positive, unit-trace
            matrix, i.e. eta does not belong to the metric of ``rho_h``
    """
    matrix = rho_h.matrix if isinstance(rho_h, DensityMatrix) else _as_square(rho_h, "rho_H")
    eta = _as_square(eta, "eta")
    condition = np.linalg.cond(eta)
    if not np.isfinite(condition) or condition > ETA_CONDITION_LIMIT:
        raise SingularEta(f"cond(eta) = {condition:.3e}")
    # eta M eta^-1 without forming the inverse
    mapped = np.linalg.solve(eta.T, (eta @ matrix).T).T
    logger.debug(f"similarity map with cond(eta) = {condition:.3e}")
    return DensityMatrix(mapped)


def spectrum(rho) -> np.ndarray:
    """Sorted eigenvalues; real whenever the imaginary parts are negligible."""
    matrix = rho.matrix if isinstance(rho, DensityMatrix) else _as_square(rho)
    if _anti_hermitian_residual(matrix) <= HERMITIAN_TOL:
        return np.linalg.eigvalsh((matrix + matrix.conj().T) / 2.0)
    values = np.linalg.eigvals(matrix)
    if np.max(np.abs(values.imag)) <= HERMITIAN_TOL:
        return np.sort(values.real)
    return np.sort_complex(values)


def is_density_matrix(matrix, metric=None) -> bool:
    try:
        DensityMatrix(matrix, metric)
    except NotADensityMatrix:
        return False
    return True


def von_neumann_entropy(rho) -> float:
    """-sum lambda ln lambda over the spectrum, with 0 ln 0 = 0.

    A metric-frame density matrix is similar to a Hermitian one, so its
    (real) spectrum is used directly. A plain matrix is symmetrised when its
    anti-Hermitian residual is within tolerance.

    Raises:
        NotADensityMatrix: On a trace, Hermiticity or positivity violation
    """
    if isinstance(rho, DensityMatrix) and rho.metric is not None:
        values = np.linalg.eigvals(rho.matrix)
        if np.max(np.abs(values.imag)) > HERMITIAN_TOL:
            raise NotADensityMatrix("metric-frame matrix has a complex spectrum")
        values = values.real
    else:
        matrix = rho.matrix if isinstance(rho, DensityMatrix) else _as_square(rho)
        trace = np.trace(matrix)
        if abs(trace - 1.0) > TRACE_TOL:
            raise NotADensityMatrix(f"trace must be 1, got {trace:.12g}")
        residual = _anti_hermitian_residual(matrix)
        if residual > HERMITIAN_TOL:
            raise NotADensityMatrix(f"matrix is not Hermitian (residual {residual:.3e})")
        values = np.linalg.eigvalsh((matrix + matrix.conj().T) / 2.0)
    if np.any(values < -NEGATIVE_EIGENVALUE_TOL):
        raise NotADensityMatrix(f"negative eigenvalue {values.min():.3e}")
    values = np.clip(values, 0.0, None)
    return float(np.sum(entr(values)))
