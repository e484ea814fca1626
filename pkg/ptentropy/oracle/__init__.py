"""Truncated Fock-space verification of the closed-form solution."""

from .checks import (
    CheckReport,
    commutator_table_check,
    dyson_hermiticity,
    dyson_residual,
    metric_positivity,
    pt_check,
    spectrum_check,
)
from .dynamics import (
    GENERATOR_CHOICES,
    evolve_non_hermitian,
    frame_consistency_check,
    integrate_alpha_beta,
    propagate_state,
)
from .fock import GENERATOR_NAMES, FockBasis, FockOperator, build_basis, build_generators
from .hamiltonian import build_eta, build_eta_dot, build_H, build_h, build_metric, require_matching_bath
from .report import discrepancy_report

__all__ = [
    "CheckReport",
    "FockBasis",
    "FockOperator",
    "GENERATOR_CHOICES",
    "GENERATOR_NAMES",
    "build_H",
    "build_basis",
    "build_eta",
    "build_eta_dot",
    "build_generators",
    "build_h",
    "build_metric",
    "commutator_table_check",
    "discrepancy_report",
    "dyson_hermiticity",
    "dyson_residual",
    "evolve_non_hermitian",
    "frame_consistency_check",
    "integrate_alpha_beta",
    "metric_positivity",
    "propagate_state",
    "pt_check",
    "require_matching_bath",
    "spectrum_check",
]
