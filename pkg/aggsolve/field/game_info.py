from typing import Optional

from pydantic import BaseModel, field_validator, model_validator

from aggsolve.exception import FieldValidationError

from .base_field import BaseField
from .constraint_info import ConstraintInfo
from .validator.game_validator import validate_dimension, validate_masses
from .validator.matrix_validator import (
    validate_columns,
    validate_length,
    validate_matrix,
    validate_square,
    validate_vector,
)


class TypeInfo(BaseModel):
    mu: float
    b: list[float]
    e: Optional[list[float]] = None
    S: list[list[float]]
    r: list[float]

    @field_validator("b", "e", "r")
    def _check_vector(cls, v):
        return validate_vector(v, "type vector")

    @field_validator("S")
    def _check_matrix(cls, v):
        return validate_matrix(v, "S")


class GameInfo(BaseField):
    """Finite-type game: shared (P, Q), one (mu, b, e, S, r) per type, price map (C, d), optional A."""

    kind: str = "game"
    T: int
    P: list[list[float]]
    Q: Optional[list[list[float]]] = None
    types: list[TypeInfo]
    C: list[list[float]]
    d: list[float]
    A: Optional[ConstraintInfo] = None

    @field_validator("T")
    def _check_T(cls, v):
        return validate_dimension(v)

    @field_validator("P", "Q", "C")
    def _check_matrix(cls, v):
        return validate_matrix(v)

    @field_validator("d")
    def _check_d(cls, v):
        return validate_vector(v, "d")

    @model_validator(mode="after")
    def _check_shapes(self):
        T = self.T
        validate_columns(self.P, T, "P")
        validate_columns(self.Q, T, "Q")
        validate_square(self.C, T, "C")
        validate_length(self.d, T, "d")
        validate_masses([t.mu for t in self.types])
        q, p = len(self.P), len(self.Q or [])
        for i, t in enumerate(self.types):
            validate_length(t.b, q, f"types[{i}].b")
            if p:
                if t.e is None:
                    raise FieldValidationError(f"types[{i}].e is required when Q is given")
                validate_length(t.e, p, f"types[{i}].e")
            validate_square(t.S, T, f"types[{i}].S")
            validate_length(t.r, T, f"types[{i}].r")
        if self.A is not None:
            validate_columns(self.A.P, T, "A.P")
        return self
