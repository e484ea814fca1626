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
"""Partial trace over labelled bases.

Basis states are labelled by occupation vectors, so truncated Fock bases
(which are not tensor products) are traced as if zero-padded into the full
product space: only pairs of states that agree on the traced modes
contribute.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..errors import LabelMismatch, NotADensityMatrix
from .matrices import DensityMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BipartiteLabel:
    """Occupation vector per basis index plus the modes kept by the trace."""

    states: Tuple[Tuple[int, ...], ...]
    keep: Tuple[int, ...]

    def __post_init__(self):
        states = tuple(tuple(int(n) for n in state) for state in self.states)
        keep = tuple(int(mode) for mode in self.keep)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "keep", keep)
        if not states:
            raise LabelMismatch("label has no basis states")
        n_modes = len(states[0])
        if any(len(state) != n_modes for state in states):
            raise LabelMismatch("occupation vectors have different lengths")
        if len(set(states)) != len(states):
            raise LabelMismatch("occupation vectors are not unique")
        if len(set(keep)) != len(keep) or any(mode < 0 or mode >= n_modes for mode in keep):
            raise LabelMismatch(f"kept modes {keep} do not index {n_modes} modes")

    @property
    def n_modes(self) -> int:
        return len(self.states[0])

    @property
    def traced(self) -> Tuple[int, ...]:
        return tuple(mode for mode in range(self.n_modes) if mode not in self.keep)

    @property
    def kept_levels(self) -> Tuple[Tuple[int, ...], ...]:
        """Sorted kept-mode configurations; these label the reduced matrix."""
        return tuple(sorted({tuple(state[m] for m in self.keep) for state in self.states}))

    @classmethod
    def from_dims(cls, dims: Sequence[int], keep: Sequence[int]) -> "BipartiteLabel":
        """Label of a full tensor-product basis in row-major order."""
        if not dims or any(int(d) < 1 for d in dims):
            raise LabelMismatch(f"dimensions must be positive, got {list(dims)}")
        return cls(tuple(itertools.product(*(range(int(d)) for d in dims))), tuple(keep))

    @classmethod
    def from_fock_basis(cls, basis, keep: Sequence[int]) -> "BipartiteLabel":
        return cls(tuple(basis.states), tuple(keep))


def partial_trace(rho, label: BipartiteLabel):
    """Trace out the modes not in ``label.keep``.

    Rows and columns of the result follow ``label.kept_levels``, which is
    sorted by occupation: for the system mode that is (|0_a>, |1_a>), so the
    first excited state reduces to diag(lambda2, lambda1).

    Args:
        rho: Hermitian-frame DensityMatrix, or any square matrix on the labelled basis
        label: BipartiteLabel of the basis

    Returns:
        DensityMatrix when ``rho`` is one, otherwise the reduced ndarray

    Raises:
        LabelMismatch: If the matrix dimension differs from the label
        NotADensityMatrix: If ``rho`` is a metric-frame density matrix
    """
    if isinstance(rho, DensityMatrix) and rho.metric is not None:
        raise NotADensityMatrix("partial trace needs the Hermitian frame; apply similarity_map first")
    matrix = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if matrix.ndim != 2 or matrix.shape != (len(label.states), len(label.states)):
        raise LabelMismatch(
            f"matrix shape {matrix.shape} does not fit a label of {len(label.states)} states"
        )
    levels = {level: position for position, level in enumerate(label.kept_levels)}
    groups = defaultdict(list)
    for index, state in enumerate(label.states):
        traced_config = tuple(state[m] for m in label.traced)
        kept_config = tuple(state[m] for m in label.keep)
        groups[traced_config].append((index, levels[kept_config]))

    reduced = np.zeros((len(levels), len(levels)), dtype=complex)
    for members in groups.values():
        indices = [index for index, _ in members]
        positions = [position for _, position in members]
        reduced[np.ix_(positions, positions)] += matrix[np.ix_(indices, indices)]
    logger.debug(f"Traced {len(label.traced)} modes: {matrix.shape[0]} -> {reduced.shape[0]}")
    return DensityMatrix(reduced) if isinstance(rho, DensityMatrix) else reduced
