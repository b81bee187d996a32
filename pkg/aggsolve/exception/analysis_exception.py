from .base_exception import BaseException


class AnalysisException(BaseException):
    """Base class for exceptions in bound and monotonicity analysis."""


class DegenerateInteriorError(AnalysisException):
    """Exception raised when a set has no relative interior to estimate radii from."""


class DegenerateSampleError(AnalysisException):
    """Exception raised when every sampled pair is degenerate."""
