from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from aggsolve.exception import ContractViolationError
from aggsolve.math import PolytopeSet

from .cost import CostParams


class PiecewiseAffineMap:
    """Map ``theta -> intercept_k + slope_k * theta`` on the k-th piece of [0, 1].

    Pieces are split at ``breaks``; a break point belongs to the piece on its right.
    """

    def __init__(
        self,
        intercepts: Sequence[Sequence[float]],
        slopes: Optional[Sequence[Sequence[float]]] = None,
        breaks: Sequence[float] = (),
    ):
        self.intercepts = np.atleast_2d(np.array(intercepts, dtype=float))
        if slopes is None:
            slopes = np.zeros_like(self.intercepts)
        self.slopes = np.atleast_2d(np.array(slopes, dtype=float))
        self.breaks = tuple(float(b) for b in breaks)

        if self.intercepts.shape != self.slopes.shape:
            raise ContractViolationError("intercepts and slopes must have the same shape")
        if self.intercepts.shape[0] != len(self.breaks) + 1:
            raise ContractViolationError(
                f"{len(self.breaks)} breaks need {len(self.breaks) + 1} pieces: "
                f"got {self.intercepts.shape[0]}"
            )
        if any(not 0 < b < 1 for b in self.breaks) or list(self.breaks) != sorted(set(self.breaks)):
            raise ContractViolationError(f"breaks must be increasing inside (0, 1): {self.breaks}")

    @classmethod
    def constant(cls, value: Sequence[float]) -> "PiecewiseAffineMap":
        return cls(intercepts=[np.array(value, dtype=float).reshape(-1)])

    @property
    def size(self) -> int:
        return self.intercepts.shape[1]

    @property
    def lipschitz(self) -> float:
        return float(np.max(np.linalg.norm(self.slopes, axis=1)))

    def __call__(self, theta: float) -> np.ndarray:
        k = int(np.searchsorted(self.breaks, theta, side="right"))
        return self.intercepts[k] + self.slopes[k] * theta


def pack_cost(S: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Pack (S, r) into one vector: S row-major followed by r."""
    return np.concatenate([np.asarray(S, dtype=float).reshape(-1), np.asarray(r, dtype=float)])


def theta_grid(samples: int, discontinuities: Sequence[float] = ()) -> np.ndarray:
    """Uniform grid over [0, 1] refined on both sides of each discontinuity."""
    grid = list(np.linspace(0.0, 1.0, max(2, samples)))
    for sigma in discontinuities:
        grid += [sigma, max(0.0, sigma - 1e-9), min(1.0, sigma + 1e-9)]
    return np.unique(np.array(grid))


@dataclass(frozen=True, eq=False)
class TypeCharacteristic:
    """Parametric description of a continuum of player types over [0, 1].

    Action sets are ``{x : P x <= b(theta), Q x = e(theta)}`` and costs share
    the price map ``C X + d`` while the private utility parameters come from
    ``s(theta)`` = (S row-major, r).
    """

    P: np.ndarray
    b_map: Callable[[float], np.ndarray]
    s_map: Callable[[float], np.ndarray]
    C: np.ndarray
    d: np.ndarray
    Q: Optional[np.ndarray] = None
    e_map: Optional[Callable[[float], np.ndarray]] = None
    discontinuities: tuple[float, ...] = field(default_factory=tuple)
    L3: Optional[float] = None
    range_samples: int = 257

    def __post_init__(self):
        P = np.atleast_2d(np.array(self.P, dtype=float))
        T = P.shape[1]
        Q = np.zeros((0, T)) if self.Q is None else np.atleast_2d(np.array(self.Q, dtype=float))
        if Q.size == 0:
            Q = np.zeros((0, T))
        C = np.atleast_2d(np.array(self.C, dtype=float))
        d = np.array(self.d, dtype=float).reshape(-1)
        if Q.shape[1] != T or C.shape != (T, T) or d.shape != (T,):
            raise ContractViolationError("P, Q, C and d must agree on the action dimension")
        if Q.shape[0] > 0 and self.e_map is None:
            raise ContractViolationError("an equality block needs an e_map")
        sigmas = tuple(sorted(float(s) for s in self.discontinuities))
        if any(not 0 < s < 1 for s in sigmas):
            raise ContractViolationError(f"discontinuities must lie in (0, 1): {sigmas}")

        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "discontinuities", sigmas)

        lower, upper = self.parameter_ranges
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ContractViolationError("characteristic maps must be bounded on [0, 1]")

    @property
    def T(self) -> int:
        return self.P.shape[1]

    @property
    def q(self) -> int:
        return self.P.shape[0]

    @property
    def p(self) -> int:
        return self.Q.shape[0]

    @property
    def l(self) -> int:
        return self.T * self.T + self.T

    def b(self, theta: float) -> np.ndarray:
        return np.asarray(self.b_map(theta), dtype=float).reshape(self.q)

    def e(self, theta: float) -> np.ndarray:
        if self.p == 0:
            return np.zeros(0)
        return np.asarray(self.e_map(theta), dtype=float).reshape(self.p)

    def s(self, theta: float) -> np.ndarray:
        return np.asarray(self.s_map(theta), dtype=float).reshape(self.l)

    def unpack(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        T = self.T
        return s[: T * T].reshape(T, T), s[T * T :]

    def params(self, theta: float) -> np.ndarray:
        """Stacked (b, e, s) at theta."""
        return np.concatenate([self.b(theta), self.e(theta), self.s(theta)])

    def split_params(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        q, p = self.q, self.p
        return v[:q], v[q : q + p], v[q + p :]

    def polytope(self, b: np.ndarray, e: np.ndarray) -> PolytopeSet:
        return PolytopeSet(P=self.P, b=b, Q=self.Q, e=e)

    def cost(self, s: np.ndarray) -> CostParams:
        S, r = self.unpack(s)
        return CostParams(C=self.C, d=self.d, S=S, r=r)

    def set_at(self, theta: float) -> PolytopeSet:
        return self.polytope(self.b(theta), self.e(theta))

    def cost_at(self, theta: float) -> CostParams:
        return self.cost(self.s(theta))

    @cached_property
    def sample_thetas(self) -> np.ndarray:
        return theta_grid(self.range_samples, self.discontinuities)

    @cached_property
    def parameter_ranges(self) -> tuple[np.ndarray, np.ndarray]:
        """Component-wise lower and upper envelopes of (b, e, s) over a theta grid."""
        values = np.array([self.params(theta) for theta in self.sample_thetas])
        return values.min(axis=0), values.max(axis=0)

    @cached_property
    def radius_bound(self) -> float:
        """Largest set radius over the sampled thetas."""
        return max(self.set_at(theta).check().radius_bound for theta in self.sample_thetas)

    def lipschitz_L3(self, radius: float = None) -> float:
        """Lipschitz constant of ``s -> C Y + d - r + S x`` over ``||x|| <= (R+1) sqrt(T)``."""
        if self.L3 is not None:
            return self.L3
        radius = self.radius_bound if radius is None else radius
        a = (radius + 1.0) * np.sqrt(self.T)
        return float(np.sqrt(a * a + 1.0))

    def is_constant(self) -> bool:
        lower, upper = self.parameter_ranges
        return bool(np.all(upper - lower == 0))
