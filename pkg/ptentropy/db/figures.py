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
"""Reference data for the published entropy figures.

Parameter sets of the three figures, the printed asymptote, the printed
commutation table and the regime statements made in the accompanying text.
"""

import math

# Shared by all figures; the second "kappa" of the first caption is read as nu
FIGURE_COMMON = {"nu": 1.0, "c1": 1.0, "c2": 0.0, "gamma": math.pi / 4}

FIGURES = {
    "unbroken": {"g": 0.7, "kappa": 0.3},
    "exceptional": {"g": 0.5, "kappa": 0.5},
    "broken": {"g": 0.3, "kappa": 0.7},
}

FIGURE_BATH_SIZES = (1, 2, 3, 4, 5)
FIGURE_T_START = 0.0
FIGURE_T_END = 10.0
FIGURE_SAMPLES = 2001

# Caption of the broken figure
PRINTED_ASYMPTOTE = 0.3521
PRINTED_ASYMPTOTE_TOL = 5e-4

# Condition on (g, kappa) stated in the text next to each figure
TEXT_CONDITIONS = {
    "unbroken": "kappa>g",
    "exceptional": "kappa=g",
    "broken": "g>kappa",
}

# (left, right, printed right-hand side as {generator: coefficient})
PRINTED_COMMUTATORS = [
    ("N_A", "N_Q", {}),
    ("N_A", "N_AQ", {}),
    ("N_A", "A_x", {"A_y": -1j}),
    ("N_A", "A_y", {"A_y": 1j}),
    ("N_Q", "A_x", {"A_y": 1j}),
    ("N_Q", "A_y", {"A_x": -1j}),
    ("N_AQ", "A_x", {"A_y": -2j}),
    ("N_AQ", "A_y", {"A_x": 2j}),
]


def condition_holds(condition: str, g: float, kappa: float) -> bool:
    """Evaluate a TEXT_CONDITIONS entry for the given couplings."""
    if condition == "kappa>g":
        return kappa > g
    if condition == "g>kappa":
        return g > kappa
    if condition == "kappa=g":
        return math.isclose(g, kappa)
    raise ValueError(f"Unknown condition: {condition}")


def figure_kwargs(name: str) -> dict:
    """Keyword arguments of ModelParams for one figure, without n_bath."""
    if name not in FIGURES:
        raise ValueError(f"Unknown figure: {name}. Available: {', '.join(FIGURES)}")
    return {**FIGURE_COMMON, **FIGURES[name]}
