from pydantic import model_validator

from aggsolve.exception import FieldValidationError
from aggsolve.type import EndpointType

from .base_field import BaseField
from .validator.game_validator import validate_positive


class SmartGridInfo(BaseField):
    """Off-peak / peak energy scheduling with price slopes aO <= aP."""

    kind: str = "smartgrid"
    aO: float = 1.0
    aP: float = 2.0
    Emax: float = 20.0
    N: float = 3e7
    endpoint: str = "right"

    @model_validator(mode="after")
    def _check_values(self):
        for name in ("aO", "aP", "Emax", "N"):
            validate_positive(getattr(self, name), name)
        if self.aP < self.aO:
            raise FieldValidationError(f"aP must not be below aO: aO={self.aO}, aP={self.aP}")
        if self.endpoint not in list(EndpointType):
            raise FieldValidationError(f"endpoint must be one of {list(EndpointType)}")
        return self
