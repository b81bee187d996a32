from .bounds import TheoreticalBounds, omega, theoretical_bounds
from .constants import (
    BoundConstants,
    RhoEstimate,
    bound_constants,
    compute_Lf,
    estimate_rho,
)
from .monotonicity import EmpiricalMonotonicity, empirical_monotonicity, random_feasible_profiles
from .report import CSV_COLUMNS, ConvergenceRow, rows_to_frame, write_rows_csv

__all__ = [
    "BoundConstants",
    "RhoEstimate",
    "compute_Lf",
    "estimate_rho",
    "bound_constants",
    "TheoreticalBounds",
    "omega",
    "theoretical_bounds",
    "EmpiricalMonotonicity",
    "empirical_monotonicity",
    "random_feasible_profiles",
    "ConvergenceRow",
    "CSV_COLUMNS",
    "rows_to_frame",
    "write_rows_csv",
]
