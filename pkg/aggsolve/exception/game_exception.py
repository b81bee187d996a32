from .base_exception import BaseException


class GameException(BaseException):
    """Base class for exceptions in game and set construction."""


class ContractViolationError(GameException):
    """Exception raised when an argument breaks a documented precondition."""


class InfeasibleSetError(GameException):
    """Exception raised when a polytope or a coupled action set is empty."""


class UnboundedSetError(GameException):
    """Exception raised when a polytope is not bounded."""


class UnsupportedConfigurationError(GameException):
    """Exception raised when a game falls outside the supported family."""


class MeshgridTooFineError(GameException):
    """Exception raised when a meshgrid would exceed the cell cap."""
