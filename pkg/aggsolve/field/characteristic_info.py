from typing import Optional, Union

from pydantic import BaseModel, field_validator, model_validator

from aggsolve.exception import FieldValidationError
from aggsolve.type import BuilderType, LipschitzModeType

from .base_field import BaseField
from .constraint_info import ConstraintInfo
from .validator.game_validator import validate_breaks, validate_dimension
from .validator.matrix_validator import (
    validate_columns,
    validate_length,
    validate_matrix,
    validate_square,
    validate_vector,
)

class AffinePieceInfo(BaseModel):
    intercept: list[float]
    slope: Optional[list[float]] = None

    @field_validator("intercept", "slope")
    def _check_vector(cls, v):
        return validate_vector(v, "affine piece")

    @model_validator(mode="after")
    def _check_lengths(self):
        if self.slope is not None:
            validate_length(self.slope, len(self.intercept), "slope")
        return self


class PiecewiseAffineInfo(BaseModel):
    """Map of theta, affine on each piece between consecutive ``breaks``."""

    breaks: list[float] = []
    pieces: list[AffinePieceInfo]

    @field_validator("breaks")
    def _check_breaks(cls, v):
        return validate_breaks(v)

    @model_validator(mode="after")
    def _check_pieces(self):
        if len(self.pieces) != len(self.breaks) + 1:
            raise FieldValidationError(
                f"{len(self.breaks)} breaks need {len(self.breaks) + 1} pieces: got {len(self.pieces)}"
            )
        sizes = {len(p.intercept) for p in self.pieces}
        if len(sizes) != 1:
            raise FieldValidationError("all pieces must have the same length")
        return self

    @property
    def size(self) -> int:
        return len(self.pieces[0].intercept)


VectorMap = Union[list[float], PiecewiseAffineInfo]
MatrixMap = Union[list[list[float]], PiecewiseAffineInfo]


def map_size(v) -> int:
    if isinstance(v, PiecewiseAffineInfo):
        return v.size
    if v and isinstance(v[0], list):
        return sum(len(row) for row in v)
    return len(v)


class CharacteristicInfo(BaseField):
    """Type characteristic over [0, 1] plus how to discretize it.

    ``S`` maps to the row-major flattening of the curvature matrix when given
    piecewise affine.
    """

    kind: str = "characteristic"
    T: int
    P: list[list[float]]
    Q: Optional[list[list[float]]] = None
    b: VectorMap
    e: Optional[VectorMap] = None
    S: Optional[MatrixMap] = None
    r: Optional[VectorMap] = None
    C: list[list[float]]
    d: list[float]
    A: Optional[ConstraintInfo] = None
    L3: Optional[float] = None
    builder: str = BuilderType.UNIFORM.value
    theta_samples: Optional[int] = None
    reference_nu: Optional[int] = None
    lipschitz_mode: str = "box"

    @field_validator("T")
    def _check_T(cls, v):
        return validate_dimension(v)

    @field_validator("P", "Q", "C")
    def _check_matrix(cls, v):
        return validate_matrix(v)

    @field_validator("d")
    def _check_d(cls, v):
        return validate_vector(v, "d")

    @field_validator("builder")
    def _check_builder(cls, v):
        if v not in list(BuilderType):
            raise FieldValidationError(f"builder must be one of {list(BuilderType)}: {v}")
        return str(BuilderType.from_str(v).value)

    @field_validator("lipschitz_mode")
    def _check_lipschitz_mode(cls, v):
        if v not in list(LipschitzModeType):
            raise FieldValidationError(f"lipschitz_mode must be one of {list(LipschitzModeType)}: {v}")
        return v

    @field_validator("theta_samples", "reference_nu")
    def _check_positive_int(cls, v):
        if v is not None and v < 1:
            raise FieldValidationError(f"must be a positive integer: {v}")
        return v

    @model_validator(mode="after")
    def _check_shapes(self):
        T = self.T
        validate_columns(self.P, T, "P")
        validate_columns(self.Q, T, "Q")
        validate_square(self.C, T, "C")
        validate_length(self.d, T, "d")
        if map_size(self.b) != len(self.P):
            raise FieldValidationError(f"b must have length {len(self.P)}")
        p = len(self.Q or [])
        if p and (self.e is None or map_size(self.e) != p):
            raise FieldValidationError(f"e must be given with length {p}")
        if self.S is not None:
            if isinstance(self.S, PiecewiseAffineInfo):
                if self.S.size != T * T:
                    raise FieldValidationError(f"S pieces must have length {T * T}")
            else:
                validate_square(self.S, T, "S")
        if self.r is not None and map_size(self.r) != T:
            raise FieldValidationError(f"r must have length {T}")
        if self.A is not None:
            validate_columns(self.A.P, T, "A.P")
        return self
