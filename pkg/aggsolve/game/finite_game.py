import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np
from scipy.linalg import block_diag
from scipy.optimize import linprog

from aggsolve.exception import ContractViolationError, InfeasibleSetError
from aggsolve.math import PolytopeSet

from .cost import CostParams, GradientOracle

logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class FiniteTypeGame:
    """Nonatomic game with finitely many types ``((mu_i), (X_i), (f_i), A)``.

    Profiles are ``(I, T)`` arrays, one row per type; the aggregate is
    ``mu @ x``. Costs are quadratic unless ``oracles`` replaces the gradients.
    """

    mu: np.ndarray
    sets: tuple[PolytopeSet, ...]
    costs: tuple[CostParams, ...]
    A: Optional[PolytopeSet] = None
    oracles: Optional[tuple[GradientOracle, ...]] = None

    def __post_init__(self):
        mu = np.array(self.mu, dtype=float).reshape(-1)
        sets = tuple(self.sets)
        costs = tuple(self.costs)
        I = mu.shape[0]
        if I == 0:
            raise ContractViolationError("a game needs at least one type")
        if np.any(mu <= 0):
            raise ContractViolationError(f"type masses must be positive: {mu}")
        if abs(mu.sum() - 1.0) > MASS_TOLERANCE:
            raise ContractViolationError(f"type masses must sum to 1: {mu.sum()!r}")
        if len(sets) != I or len(costs) != I:
            raise ContractViolationError(
                f"expected {I} sets and costs: got {len(sets)} and {len(costs)}"
            )
        T = sets[0].T
        if any(s.T != T for s in sets) or any(c.T != T for c in costs):
            raise ContractViolationError("all sets and costs must share the action dimension")
        if self.A is not None and self.A.T != T:
            raise ContractViolationError(f"aggregate constraint must live in R^{T}")
        if self.oracles is not None:
            oracles = tuple(self.oracles)
            if len(oracles) != I or any(o.T != T for o in oracles):
                raise ContractViolationError("one gradient oracle per type is required")
            object.__setattr__(self, "oracles", oracles)

        mu.flags.writeable = False
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "costs", costs)

        for s in sets:
            s.check()
        if self.A is not None:
            self.A.check()
            self._check_coupled_feasibility()

    def _check_coupled_feasibility(self):
        I, T = self.I, self.T
        A_ub = [block_diag(*[s.P for s in self.sets]), np.kron(self.mu[None, :], self.A.P)]
        b_ub = [np.concatenate([s.b for s in self.sets]), self.A.b]
        eq_blocks = [s.Q for s in self.sets]
        A_eq = [block_diag(*eq_blocks)] if sum(q.shape[0] for q in eq_blocks) else []
        b_eq = [np.concatenate([s.e for s in self.sets])] if A_eq else []
        if self.A.p:
            A_eq.append(np.kron(self.mu[None, :], self.A.Q))
            b_eq.append(self.A.e)
        res = linprog(
            np.zeros(I * T),
            A_ub=np.vstack(A_ub),
            b_ub=np.concatenate(b_ub),
            A_eq=np.vstack(A_eq) if A_eq else None,
            b_eq=np.concatenate(b_eq) if b_eq else None,
            bounds=(None, None),
            method="highs",
        )
        if res.status != 0:
            raise InfeasibleSetError("the coupled action set is empty")

    @property
    def I(self) -> int:
        return self.mu.shape[0]

    @property
    def T(self) -> int:
        return self.sets[0].T

    @cached_property
    def R(self) -> float:
        return max(s.radius_bound for s in self.sets)

    @property
    def is_quadratic(self) -> bool:
        return self.oracles is None

    @cached_property
    def shared_price(self) -> Optional[tuple[np.ndarray, np.ndarray]]:
        """(C, d) when every type uses the same price map, else None."""
        C, d = self.costs[0].C, self.costs[0].d
        if all(np.array_equal(c.C, C) and np.array_equal(c.d, d) for c in self.costs):
            return C, d
        return None

    @cached_property
    def _stacked(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (
            np.stack([c.C for c in self.costs]),
            np.stack([c.d for c in self.costs]),
            np.stack([c.S for c in self.costs]),
            np.stack([c.r for c in self.costs]),
        )

    def as_profile(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.size != self.I * self.T:
            raise ContractViolationError(
                f"profile must hold {self.I}x{self.T} values: got shape {x.shape}"
            )
        return x.reshape(self.I, self.T)

    def aggregate(self, x) -> np.ndarray:
        return self.mu @ self.as_profile(x)

    def gradients(self, x) -> np.ndarray:
        """Own-action gradients ``g_i(x_i, X)`` stacked as an ``(I, T)`` array."""
        x = self.as_profile(x)
        X = self.mu @ x
        if self.oracles is not None:
            return np.stack([oracle(x[i], X) for i, oracle in enumerate(self.oracles)])
        C, d, S, r = self._stacked
        return np.einsum("itk,k->it", C, X) + d - r + np.einsum("itk,ik->it", S, x)

    def violation(self, x) -> float:
        """Euclidean norm of all constraint violations of a profile."""
        x = self.as_profile(x)
        parts = [s.violation(x[i]) for i, s in enumerate(self.sets)]
        if self.A is not None:
            parts.append(self.A.violation(self.mu @ x))
        return float(np.linalg.norm(parts))

    def is_feasible(self, x, tol: float = 1e-9) -> bool:
        return self.violation(x) <= tol
