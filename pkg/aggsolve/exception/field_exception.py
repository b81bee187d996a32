from .base_exception import BaseException


class FieldException(BaseException):
    """Base class for exceptions in configuration schemas."""


class FieldMissingError(FieldException):
    """Exception raised when a required configuration field is missing."""


class FieldValidationError(FieldException):
    """Exception raised when a configuration field has an invalid value."""


class FieldParseError(FieldException):
    """Exception raised when a configuration file is not valid JSON."""

    @property
    def line(self) -> int:
        return self.context.get("line", 0)

    @property
    def column(self) -> int:
        return self.context.get("column", 0)
