"""Configuration settings for ptentropy."""

import math

# Model defaults (ν is entropy-irrelevant; γ = π/4 is the maximally entangled start)
DEFAULT_NU = 1.0
DEFAULT_G = 0.7
DEFAULT_KAPPA = 0.3
DEFAULT_C1 = 1.0
DEFAULT_C2 = 0.0
DEFAULT_GAMMA = math.pi / 4

# Curve and figure sampling
DEFAULT_BATH_SIZES = (1, 2, 3, 4, 5)
DEFAULT_T_START = 0.0
DEFAULT_T_END = 10.0
DEFAULT_SAMPLES = 2001
DEFAULT_FORMAT = "csv"
DEFAULT_SCOPE = "quick"
DEFAULT_MAX_LEVEL = 2

# Regime classification: |g^2 - kappa^2| <= EXCEPTIONAL_RTOL * max(1, g^2 + kappa^2)
EXCEPTIONAL_RTOL = 1e-12
# Branch formulas switch to power series in y = 4 N (g^2 - kappa^2) T^2 below this
SERIES_CUTOFF = 1e-4
# Broken-regime evaluators work with ln sinh and ln cosh once sqrt(-y) exceeds this
LOG_DOMAIN_ROOT = 40.0

# Density-matrix tolerances
TRACE_TOL = 1e-10
HERMITIAN_TOL = 1e-10
NEGATIVE_EIGENVALUE_TOL = 1e-10
NORM_TOL = 1e-8
ETA_CONDITION_LIMIT = 1e12

# Oracle tolerances
GENERATOR_TOL = 1e-12
DYSON_TOL = 1e-8
SPECTRUM_TOL = 1e-10
ODE_TOL = 1e-6
PROPAGATION_TOL = 1e-8
METRIC_NORM_TOL = 1e-6
MU_RATIO_TOL = 1e-9
PT_OVERLAP_LIMIT = 0.99
ENERGY_DRIFT_LIMIT = 1e-3
# Below this the RK4 deviation is round-off and its Richardson ratio is meaningless
RICHARDSON_FLOOR = 1e-12

# Integration
DEFAULT_DT = 1e-3
ROOT_XTOL = 1e-14
# half_life returns None when |S(0) - S_inf| is below this
HALF_LIFE_MIN_DROP = 1e-12

# Keys accepted in a flat key-value config file, with their parsers
CONFIG_KEYS = {
    "nu": float,
    "g": float,
    "kappa": float,
    "c1": float,
    "c2": float,
    "gamma": float,
    "t_start": float,
    "t_end": float,
    "samples": int,
    "bath_size": lambda value: [int(v) for v in str(value).replace(",", " ").split()],
    "format": str,
    "out": str,
    "scope": str,
    "max_level": int,
}

DEFAULTS = {
    "nu": DEFAULT_NU,
    "g": DEFAULT_G,
    "kappa": DEFAULT_KAPPA,
    "c1": DEFAULT_C1,
    "c2": DEFAULT_C2,
    "gamma": DEFAULT_GAMMA,
    "t_start": DEFAULT_T_START,
    "t_end": DEFAULT_T_END,
    "samples": DEFAULT_SAMPLES,
    "bath_size": list(DEFAULT_BATH_SIZES),
    "format": DEFAULT_FORMAT,
    "out": None,
    "scope": DEFAULT_SCOPE,
    "max_level": DEFAULT_MAX_LEVEL,
}


def resolve_run_settings(flags=None, file_values=None):
    """Merge settings with precedence flags > config file > defaults.

    Args:
        flags: Mapping of command-line values; ``None`` entries mean "not given"
        file_values: Mapping of already-parsed config-file values

    Returns:
        dict with one entry per key of ``DEFAULTS``
    """
    settings = dict(DEFAULTS)
    for source in (file_values or {}, flags or {}):
        for key, value in source.items():
            if key in settings and value is not None:
                settings[key] = value
    return settings
