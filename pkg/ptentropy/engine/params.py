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
"""Model parameters and PT-regime classification.

The system-bath Hamiltonian is

    H = nu a^+ a + nu sum q_n^+ q_n + (g + kappa) a^+ sum q_n + (g - kappa) a sum q_n^+

with N bath modes. The integration constants c1, c2 of the Dyson map and the
initial mixing angle gamma travel with the physical parameters.
"""

import logging
import math
import numbers
from dataclasses import asdict, dataclass, replace
from enum import Enum

from ..config import EXCEPTIONAL_RTOL
from ..errors import InvalidParameters

logger = logging.getLogger(__name__)


class RegimeTag(str, Enum):
    UNBROKEN = "Unbroken"
    EXCEPTIONAL = "Exceptional"
    BROKEN = "Broken"


@dataclass(frozen=True)
class Regime:
    """Regime tag together with the discriminant g^2 - kappa^2 it came from."""

    tag: RegimeTag
    discriminant: float


@dataclass(frozen=True)
class ModelParams:
    """Physical and integration-constant parameters of the model.

    Attributes:
        nu: Mode frequency
        g: Hermitian part of the coupling
        kappa: Anti-Hermitian part of the coupling
        n_bath: Number of bath modes N
        c1: Integration constant (canonically positive)
        c2: Integration constant acting as a time offset
        gamma: Mixing angle of the initial first-excited state, in radians
    """

    nu: float = 1.0
    g: float = 0.7
    kappa: float = 0.3
    n_bath: int = 1
    c1: float = 1.0
    c2: float = 0.0
    gamma: float = math.pi / 4

    def __post_init__(self):
        for name in ("nu", "g", "kappa", "c1", "c2", "gamma"):
            value = getattr(self, name)
            if not isinstance(value, numbers.Real) or not math.isfinite(value):
                raise InvalidParameters(f"{name} must be a finite real number, got {value!r}")
        if isinstance(self.n_bath, bool) or not isinstance(self.n_bath, numbers.Integral):
            raise InvalidParameters(f"n_bath must be an integer, got {self.n_bath!r}")
        if self.n_bath < 1:
            raise InvalidParameters(f"n_bath must be >= 1, got {self.n_bath}")
        if self.c1 == 0:
            raise InvalidParameters("c1 must be nonzero")
        if self.c1 < 0:
            raise InvalidParameters(
                f"c1 must be positive (got {self.c1}); a sign flip is absorbed into c2 and the phase"
            )
        if self.g == 0 and self.kappa == 0:
            raise InvalidParameters("g = kappa = 0 decouples the system from the bath")
        if self.g + self.kappa <= 0:
            raise InvalidParameters(
                f"g + kappa must be positive (got {self.g + self.kappa}); "
                "the mode flip a -> -a maps (g, kappa) to (-g, -kappa)"
            )

    @property
    def raw_discriminant(self) -> float:
        return self.g ** 2 - self.kappa ** 2

    @property
    def is_exceptional(self) -> bool:
        scale = max(1.0, self.g ** 2 + self.kappa ** 2)
        return abs(self.raw_discriminant) <= EXCEPTIONAL_RTOL * scale

    @property
    def delta(self) -> float:
        """g^2 - kappa^2, snapped to zero at the exceptional point."""
        return 0.0 if self.is_exceptional else self.raw_discriminant

    @property
    def bounded_below(self) -> bool:
        """Whether nu > sqrt(N) sqrt(g^2 - kappa^2) (only restrictive when unbroken)."""
        return self.nu > math.sqrt(self.n_bath) * math.sqrt(max(self.delta, 0.0))

    @property
    def reality_condition(self) -> bool:
        """c1^2 + g^2 - kappa^2 > 0, required for a real metric."""
        return self.c1 ** 2 + self.delta > 0

    def with_bath(self, n_bath: int) -> "ModelParams":
        return replace(self, n_bath=int(n_bath))

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)

    def describe(self) -> str:
        """Compact, deterministic one-line representation."""
        return " ".join(f"{key}={value:.12g}" for key, value in self.to_dict().items())


def classify_regime(params: ModelParams) -> Regime:
    """Classify the PT regime from the sign of g^2 - kappa^2."""
    discriminant = params.raw_discriminant
    if params.is_exceptional:
        tag = RegimeTag.EXCEPTIONAL
    elif discriminant > 0:
        tag = RegimeTag.UNBROKEN
    else:
        tag = RegimeTag.BROKEN
    logger.debug(f"Regime for g={params.g}, kappa={params.kappa}: {tag.value} ({discriminant:.3e})")
    return Regime(tag=tag, discriminant=discriminant)
