from dataclasses import dataclass
from typing import Callable

import numpy as np

from aggsolve.exception import ContractViolationError

_PSD_TOLERANCE = 1e-10


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class CostParams:
    """Quadratic public-products cost ``<x, C X + d> - <r, x> + 1/2 x^T S x``.

    ``C`` and ``d`` define the price map shared by the population; ``S`` and
    ``r`` describe the private utility of one type.
    """

    C: np.ndarray
    d: np.ndarray
    S: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        C = np.atleast_2d(np.array(self.C, dtype=float))
        T = C.shape[0]
        d = np.array(self.d, dtype=float).reshape(-1)
        S = np.atleast_2d(np.array(self.S, dtype=float))
        r = np.array(self.r, dtype=float).reshape(-1)
        if C.shape != (T, T) or S.shape != (T, T) or d.shape != (T,) or r.shape != (T,):
            raise ContractViolationError(
                f"cost parameters must be C,S: TxT and d,r: T with T={T}: "
                f"got C{C.shape} d{d.shape} S{S.shape} r{r.shape}"
            )
        if not all(np.all(np.isfinite(v)) for v in (C, d, S, r)):
            raise ContractViolationError("cost parameters must be finite")
        scale = 1.0 + np.max(np.abs(S))
        if np.max(np.abs(S - S.T)) > _PSD_TOLERANCE * scale:
            raise ContractViolationError("S must be symmetric")
        S = (S + S.T) / 2
        if np.linalg.eigvalsh(S)[0] < -_PSD_TOLERANCE * scale:
            raise ContractViolationError("S must be positive semidefinite (concave utility)")

        object.__setattr__(self, "C", _frozen(C))
        object.__setattr__(self, "d", _frozen(d))
        object.__setattr__(self, "S", _frozen(S))
        object.__setattr__(self, "r", _frozen(r))

    @property
    def T(self) -> int:
        return self.C.shape[0]

    def price(self, X: np.ndarray) -> np.ndarray:
        return self.C @ X + self.d


def _check_dims(cp: CostParams, x: np.ndarray, X: np.ndarray):
    if x.shape != (cp.T,) or X.shape != (cp.T,):
        raise ContractViolationError(
            f"x and X must be vectors of length {cp.T}: got {x.shape} and {X.shape}"
        )


def eval_cost(cp: CostParams, x, X) -> float:
    x = np.asarray(x, dtype=float)
    X = np.asarray(X, dtype=float)
    _check_dims(cp, x, X)
    return float(x @ cp.price(X) - cp.r @ x + 0.5 * x @ cp.S @ x)


def eval_grad(cp: CostParams, x, X) -> np.ndarray:
    """Gradient in the own action: ``C X + d - r + S x``."""
    x = np.asarray(x, dtype=float)
    X = np.asarray(X, dtype=float)
    _check_dims(cp, x, X)
    return cp.price(X) - cp.r + cp.S @ x


@dataclass(frozen=True)
class GradientOracle:
    """Black-box own-action gradient ``(x, X) -> vector`` with declared Lipschitz bounds.

    ``lipschitz_x`` bounds the variation in the own action and ``lipschitz_X``
    the variation in the aggregate; ``bound`` is a sup-norm bound of the
    gradient over the action hypercube.
    """

    func: Callable[[np.ndarray, np.ndarray], np.ndarray]
    T: int
    lipschitz_x: float
    lipschitz_X: float
    bound: float = float("inf")

    def __call__(self, x: np.ndarray, X: np.ndarray) -> np.ndarray:
        g = np.asarray(self.func(x, X), dtype=float)
        if g.shape != (self.T,):
            raise ContractViolationError(f"gradient oracle returned shape {g.shape}")
        return g

    @classmethod
    def from_cost(cls, cp: CostParams) -> "GradientOracle":
        norm_C = float(np.linalg.norm(cp.C, 2))
        norm_S = float(np.linalg.norm(cp.S, 2))
        return cls(
            func=lambda x, X: eval_grad(cp, x, X), T=cp.T, lipschitz_x=norm_S, lipschitz_X=norm_C
        )
