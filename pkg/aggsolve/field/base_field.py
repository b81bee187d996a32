import pydantic_core
from pydantic import BaseModel, field_validator

from aggsolve.exception import FieldException, FieldMissingError, FieldValidationError
from aggsolve.type import ConfigKindType


class BaseField(BaseModel):
    """Root of the JSON configuration schemas; ``kind`` selects the concrete schema."""

    kind: str

    def __init__(self, **kwargs):
        try:
            super().__init__(**kwargs)
        except pydantic_core.ValidationError as e:
            missing_keys = sorted(
                ".".join(str(part) for part in error["loc"])
                for error in e.errors()
                if error["type"] == "missing"
            )
            if missing_keys:
                msg = f"\nMissing required fields: {missing_keys}\n"
                msg += "Given fields:\n"
                for key in kwargs:
                    msg += f" - {key}\n"
                raise FieldMissingError(msg)
            raise FieldValidationError(str(e))

    @field_validator("kind")
    def _check_kind(cls, v):
        if v not in list(ConfigKindType):
            raise FieldValidationError(f"kind must be one of {list(ConfigKindType)}: {v}")
        return str(ConfigKindType.from_str(v).value)

    def __new__(cls, *args, **kwargs):
        if cls is BaseField:
            raise FieldException("BaseField cannot be instantiated")
        return super().__new__(cls)

    def to_dict(self) -> dict:
        """Convert to dict, dropping unset optional fields.

        Returns:
            dict: dict.
        """
        return self.model_dump(exclude_none=True)

    @classmethod
    def from_dict(cls, d: dict) -> "BaseField":
        """Create a field from a dict.

        Args:
            d (dict): dict.

        Returns:
            BaseField: field.
        """
        return cls(**dict(d))
