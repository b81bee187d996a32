from .builder import build_meshgrid, build_uniform_split, check_span_condition, uniform_cut_points
from .metrics import (
    ApproxMetrics,
    DistanceEstimate,
    compute_constraint_distance,
    compute_delta,
    compute_epsilon,
)
from .partition import Partition, StepProfile, TypeCell, psi_embed

__all__ = [
    "Partition",
    "TypeCell",
    "StepProfile",
    "psi_embed",
    "ApproxMetrics",
    "DistanceEstimate",
    "compute_delta",
    "compute_epsilon",
    "compute_constraint_distance",
    "build_uniform_split",
    "build_meshgrid",
    "check_span_condition",
    "uniform_cut_points",
]
