import math
from typing import Optional

from aggsolve.exception import FieldValidationError


def validate_vector(v: Optional[list[float]], name: str = "vector") -> Optional[list[float]]:
    if v is not None:
        if not all(math.isfinite(x) for x in v):
            raise FieldValidationError(f"{name} must hold finite numbers: {v}")
    return v


def validate_matrix(v: Optional[list[list[float]]], name: str = "matrix") -> Optional[list[list[float]]]:
    if v is not None:
        if len(v) == 0:
            return v
        width = len(v[0])
        for row in v:
            if len(row) != width:
                raise FieldValidationError(f"{name} must be rectangular: row lengths differ")
            validate_vector(row, name)
    return v


def validate_columns(v: Optional[list[list[float]]], T: int, name: str) -> None:
    if v:
        if len(v[0]) != T:
            raise FieldValidationError(f"{name} must have T={T} columns: got {len(v[0])}")


def validate_square(v: list[list[float]], T: int, name: str) -> None:
    if len(v) != T or any(len(row) != T for row in v):
        raise FieldValidationError(f"{name} must be {T}x{T}")


def validate_length(v: Optional[list[float]], size: int, name: str) -> None:
    if v is not None and len(v) != size:
        raise FieldValidationError(f"{name} must have length {size}: got {len(v)}")
