from .base_exception import BaseException


class SolverException(BaseException):
    """Base class for exceptions in projections and equilibrium solvers."""


class ProjectionError(SolverException):
    """Exception raised when a projection does not converge."""

    @property
    def best_iterate(self):
        return self.context.get("best_iterate")


class ProjectionIterationError(ProjectionError):
    """Exception raised when the coupled projection exhausts its iteration cap."""

    @property
    def gap(self) -> float:
        return self.context.get("gap", float("nan"))


class NonMonotoneGameError(SolverException):
    """Exception raised when a game has no monotonicity certificate."""


class NonConvexGameError(SolverException):
    """Exception raised when a Nash problem has a non-convex player cost."""
