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
"""Truncated Fock space of one system mode and N bath modes.

Occupation vectors are (n_a, n_q1, ..., n_qN) with total excitation at most
``max_total``. Operators are dense matrices on that basis; products that
conserve the total excitation are assembled lowering-first so no amplitude
leaves the truncated space.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
from scipy.special import comb

from ..config import GENERATOR_TOL
from ..errors import InvalidParameters, UnsupportedTruncation

logger = logging.getLogger(__name__)

SUPPORTED_CAPS = (1, 2)
GENERATOR_NAMES = ("N_A", "N_Q", "N_AQ", "A_x", "A_y")


@dataclass(frozen=True)
class FockBasis:
    """Occupation-number basis with sum(n) <= max_total, in lexicographic order."""

    n_bath: int
    max_total: int
    states: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.n_bath, bool) or int(self.n_bath) != self.n_bath or self.n_bath < 1:
            raise InvalidParameters(f"n_bath must be a positive integer, got {self.n_bath!r}")
        if self.max_total not in SUPPORTED_CAPS:
            raise UnsupportedTruncation(
                f"max_total must be one of {SUPPORTED_CAPS}, got {self.max_total!r}"
            )
        states = tuple(
            state
            for state in itertools.product(range(self.max_total + 1), repeat=self.n_bath + 1)
            if sum(state) <= self.max_total
        )
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def n_modes(self) -> int:
        return self.n_bath + 1

    def index(self, state) -> int:
        try:
            return self._lookup[tuple(state)]
        except KeyError:
            raise InvalidParameters(f"{tuple(state)} is not in the basis") from None

    @property
    def _lookup(self) -> Dict[Tuple[int, ...], int]:
        return {state: position for position, state in enumerate(self.states)}

    def ladder(self, mode: int) -> np.ndarray:
        """Annihilation operator of ``mode`` (0 is the system mode a)."""
        if not 0 <= mode < self.n_modes:
            raise InvalidParameters(f"mode must lie in [0, {self.n_modes}), got {mode}")
        lookup = self._lookup
        matrix = np.zeros((self.dim, self.dim), dtype=complex)
        for column, state in enumerate(self.states):
            occupation = state[mode]
            if occupation == 0:
                continue
            lowered = list(state)
            lowered[mode] -= 1
            matrix[lookup[tuple(lowered)], column] = math.sqrt(occupation)
        return matrix

    def number(self, mode: int) -> np.ndarray:
        return np.diag([float(state[mode]) for state in self.states]).astype(complex)

    def basis_vector(self, state) -> np.ndarray:
        vector = np.zeros(self.dim, dtype=complex)
        vector[self.index(state)] = 1.0
        return vector

    def sector_vectors(self) -> Tuple[np.ndarray, np.ndarray]:
        """|1_a 0_q> and the symmetric single bath excitation sum_i |0_a 1_i> / sqrt(N)."""
        system = self.basis_vector((1,) + (0,) * self.n_bath)
        bath = np.zeros(self.dim, dtype=complex)
        for i in range(self.n_bath):
            occupation = [0] * self.n_modes
            occupation[i + 1] = 1
            bath += self.basis_vector(occupation)
        return system, bath / math.sqrt(self.n_bath)

    def sector_embedding(self) -> np.ndarray:
        """dim x 2 isometry onto the two-dimensional dynamical sector."""
        return np.column_stack(self.sector_vectors())

    def parity(self) -> np.ndarray:
        """Diagonal of P = (-1)^(total occupation)."""
        return np.array([(-1.0) ** sum(state) for state in self.states])

    def shell_indices(self, total: int):
        return [i for i, state in enumerate(self.states) if sum(state) == total]


def build_basis(n_bath: int, max_total: int) -> FockBasis:
    basis = FockBasis(n_bath, max_total)
    expected = int(comb(n_bath + 1 + max_total, max_total, exact=True))
    assert basis.dim == expected, f"basis dimension {basis.dim} != {expected}"
    logger.debug(f"Fock basis N={n_bath} cap={max_total}: dim {basis.dim}")
    return basis


@dataclass
class FockOperator:
    """Dense operator on a FockBasis."""

    basis: FockBasis
    matrix: np.ndarray
    name: str = ""

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.shape != (self.basis.dim, self.basis.dim):
            raise InvalidParameters(
                f"operator shape {self.matrix.shape} does not fit basis dimension {self.basis.dim}"
            )

    def sector_block(self) -> np.ndarray:
        """2 x 2 matrix <e_i|M|e_j> on the dynamical sector."""
        embedding = self.basis.sector_embedding()
        return embedding.conj().T @ self.matrix @ embedding

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def is_hermitian(self, tol: float = GENERATOR_TOL) -> bool:
        return self.hermiticity_residual() <= tol

    def commutator(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(
            self.basis,
            self.matrix @ other.matrix - other.matrix @ self.matrix,
            f"[{self.name},{other.name}]",
        )


def bath_ladder(basis: FockBasis) -> np.ndarray:
    """Collective bath annihilator Q = sum_n q_n."""
    return sum(basis.ladder(mode) for mode in range(1, basis.n_modes))


def build_generators(basis: FockBasis) -> Dict[str, FockOperator]:
    """The five generators of the closed algebra.

    N_AQ = N_A - (N_Q + sum_{n != m} q_n^+ q_m) / N,
    A_x = (a^+ Q + Q^+ a) / sqrt(N),  A_y = i (a^+ Q - Q^+ a) / sqrt(N).
    """
    n = basis.n_bath
    a = basis.ladder(0)
    q = bath_ladder(basis)
    a_dag, q_dag = a.conj().T, q.conj().T

    n_a = a_dag @ a
    n_q = sum(basis.number(mode) for mode in range(1, basis.n_modes))
    # Q^+ Q = N_Q + sum_{n != m} q_n^+ q_m
    hopping = q_dag @ q - n_q
    n_aq = n_a - (n_q + hopping) / n
    a_x = (a_dag @ q + q_dag @ a) / math.sqrt(n)
    a_y = 1j * (a_dag @ q - q_dag @ a) / math.sqrt(n)

    matrices = {"N_A": n_a, "N_Q": n_q, "N_AQ": n_aq, "A_x": a_x, "A_y": a_y}
    return {name: FockOperator(basis, matrices[name], name) for name in GENERATOR_NAMES}
