import math

from aggsolve.exception import FieldValidationError

MASS_NORMALIZATION_SLACK = 1e-6


def validate_dimension(v: int) -> int:
    if v < 1:
        raise FieldValidationError(f"T must be a positive integer: {v}")
    return v


def validate_masses(masses: list[float]) -> list[float]:
    if not masses:
        raise FieldValidationError("a game needs at least one type")
    if any(not m > 0 for m in masses):
        raise FieldValidationError(f"type masses must be positive: {masses}")
    if abs(math.fsum(masses) - 1.0) > MASS_NORMALIZATION_SLACK:
        raise FieldValidationError(f"type masses must sum to 1: {math.fsum(masses)!r}")
    return masses


def validate_breaks(v: list[float]) -> list[float]:
    if any(not 0 < b < 1 for b in v):
        raise FieldValidationError(f"breaks must lie in (0, 1): {v}")
    if any(b2 <= b1 for b1, b2 in zip(v, v[1:])):
        raise FieldValidationError(f"breaks must be strictly increasing: {v}")
    return v


def validate_positive(v: float, name: str) -> float:
    if not (math.isfinite(v) and v > 0):
        raise FieldValidationError(f"{name} must be positive: {v}")
    return v
