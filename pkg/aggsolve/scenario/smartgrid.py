from dataclasses import dataclass

import numpy as np

from aggsolve.approximation import build_uniform_split
from aggsolve.exception import ContractViolationError
from aggsolve.game import FiniteTypeGame, PiecewiseAffineMap, TypeCharacteristic
from aggsolve.math import PolytopeSet
from aggsolve.type import EndpointType


@dataclass(frozen=True)
class SmartGridScenario:
    """Households split a flexible energy need between off-peak (O) and peak (P) slots.

    Household theta needs ``theta * N * Emax`` and prices are ``(aO X_O, aP X_P) / N``.
    """

    a_O: float = 1.0
    a_P: float = 2.0
    E_max: float = 20.0
    N: float = 3e7

    def __post_init__(self):
        if not (self.a_P >= self.a_O > 0 and self.E_max > 0 and self.N > 0):
            raise ContractViolationError(
                f"smart grid needs aP >= aO > 0, Emax > 0 and N > 0: {self}"
            )

    @property
    def E_tot(self) -> float:
        return self.N * self.E_max / 2

    @property
    def C(self) -> np.ndarray:
        return np.diag([self.a_O, self.a_P]) / self.N

    def characteristic(self) -> TypeCharacteristic:
        return TypeCharacteristic(
            P=-np.eye(2),
            b_map=PiecewiseAffineMap.constant([0.0, 0.0]),
            s_map=PiecewiseAffineMap.constant(np.zeros(6)),
            C=self.C,
            d=np.zeros(2),
            Q=np.ones((1, 2)),
            e_map=PiecewiseAffineMap(intercepts=[[0.0]], slopes=[[self.N * self.E_max]]),
        )

    def aggregate_set(self) -> PolytopeSet:
        """Aggregates reachable by the continuum population."""
        return PolytopeSet.simplex(2, self.E_tot)


def build_smartgrid(sc: SmartGridScenario, I: int) -> FiniteTypeGame:
    """I equal-mass types with budgets ``(i / I) N Emax`` and no aggregate constraint."""
    game, _ = build_uniform_split(
        sc.characteristic(), I, endpoint=EndpointType.RIGHT, compute_metrics=False
    )
    return game


def analytic_vwe(sc: SmartGridScenario) -> np.ndarray:
    """Aggregate equilibrium of the continuum game: prices equalize across slots."""
    return np.array([sc.a_P, sc.a_O]) * sc.E_tot / (sc.a_O + sc.a_P)


@dataclass(frozen=True)
class SmartGridError:
    X_hat: np.ndarray
    err: float
    bound: float

    def to_dict(self) -> dict:
        return {"X_hat": self.X_hat.tolist(), "err": self.err, "bound": self.bound}


def analytic_svwe_error(sc: SmartGridScenario, I: int) -> SmartGridError:
    """Closed-form equilibrium aggregate of the I-type game, its error and the convergence bound."""
    if I < 1:
        raise ContractViolationError(f"I must be a positive integer: {I}")
    X_star = analytic_vwe(sc)
    return SmartGridError(
        X_hat=(1.0 + 1.0 / I) * X_star,
        err=float(np.linalg.norm(X_star)) / I,
        bound=2.0 * sc.E_tot * np.sqrt(sc.a_P / sc.a_O) / np.sqrt(I),
    )
