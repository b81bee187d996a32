from typing import Optional

from pydantic import BaseModel, field_validator, model_validator

from aggsolve.exception import FieldValidationError

from .validator.matrix_validator import validate_length, validate_matrix, validate_vector


class ConstraintInfo(BaseModel):
    """Polytope ``{X : P X <= b, Q X = e}`` given row-major."""

    P: list[list[float]]
    b: list[float]
    Q: Optional[list[list[float]]] = None
    e: Optional[list[float]] = None

    @field_validator("P", "Q")
    def _check_matrix(cls, v):
        return validate_matrix(v, "constraint matrix")

    @field_validator("b", "e")
    def _check_vector(cls, v):
        return validate_vector(v, "constraint vector")

    @model_validator(mode="after")
    def _check_shapes(self):
        if not self.P:
            raise FieldValidationError("constraint P must have at least one row")
        validate_length(self.b, len(self.P), "constraint b")
        if self.Q:
            if self.e is None:
                raise FieldValidationError("constraint e must be given with Q")
            validate_length(self.e, len(self.Q), "constraint e")
            if len(self.Q[0]) != len(self.P[0]):
                raise FieldValidationError("constraint P and Q must have the same width")
        return self
