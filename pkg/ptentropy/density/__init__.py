"""Density matrices, partial traces and Von Neumann entropy."""

from .matrices import (
    DensityMatrix,
    Ensemble,
    density_from_ensemble,
    is_density_matrix,
    metric_hermiticity_residual,
    similarity_map,
    spectrum,
    von_neumann_entropy,
)
from .partial_trace import BipartiteLabel, partial_trace

__all__ = [
    "BipartiteLabel",
    "DensityMatrix",
    "Ensemble",
    "density_from_ensemble",
    "is_density_matrix",
    "metric_hermiticity_residual",
    "partial_trace",
    "similarity_map",
    "spectrum",
    "von_neumann_entropy",
]
