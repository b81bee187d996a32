import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog

from aggsolve.config import Config
from aggsolve.exception import (
    ContractViolationError,
    InfeasibleSetError,
    UnboundedSetError,
    UnsupportedConfigurationError,
)
from aggsolve.type import SetKindType

logger = logging.getLogger(__name__)

_LP_INFEASIBLE = 2
_LP_UNBOUNDED = 3


def _as_matrix(a, n_cols: int, name: str) -> np.ndarray:
    if a is None:
        return np.zeros((0, n_cols))
    a = np.array(a, dtype=float)
    if a.size == 0:
        return np.zeros((0, n_cols))
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2 or a.shape[1] != n_cols:
        raise ContractViolationError(f"{name} must have {n_cols} columns: got shape {a.shape}")
    return a


def _as_vector(v, size: int, name: str) -> np.ndarray:
    if v is None:
        v = np.zeros(0)
    v = np.array(v, dtype=float).reshape(-1)
    if v.shape[0] != size:
        raise ContractViolationError(f"{name} must have length {size}: got {v.shape[0]}")
    return v


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PolytopeSet:
    """Bounded polytope ``{x : P x <= b, Q x = e}`` in ``R^T``.

    Construction only checks shapes. ``check()`` runs the feasibility and
    boundedness LPs once and caches the outcome.
    """

    P: np.ndarray
    b: np.ndarray
    Q: Optional[np.ndarray] = None
    e: Optional[np.ndarray] = None
    radius: Optional[float] = None

    def __post_init__(self):
        P = np.array(self.P, dtype=float)
        if P.ndim == 1:
            P = P.reshape(1, -1)
        if P.ndim != 2 or P.shape[1] == 0:
            raise ContractViolationError(f"P must be a non-empty matrix: got shape {P.shape}")
        T = P.shape[1]
        b = _as_vector(self.b, P.shape[0], "b")
        Q = _as_matrix(self.Q, T, "Q")
        e = _as_vector(self.e, Q.shape[0], "e")
        for name, v in (("P", P), ("b", b), ("Q", Q), ("e", e)):
            if not np.all(np.isfinite(v)):
                raise ContractViolationError(f"{name} must be finite")
        if self.radius is not None and not self.radius >= 0:
            raise ContractViolationError(f"radius must be non-negative: {self.radius}")

        object.__setattr__(self, "P", _frozen(P))
        object.__setattr__(self, "b", _frozen(b))
        object.__setattr__(self, "Q", _frozen(Q))
        object.__setattr__(self, "e", _frozen(e))

    # ------------------------------------------------------------------ #
    # factories
    @classmethod
    def box(cls, lower, upper) -> "PolytopeSet":
        """Axis-aligned box ``lower <= x <= upper``.

        Args:
            lower (array-like): lower corner.
            upper (array-like): upper corner.

        Returns:
            PolytopeSet: the box.
        """
        lower = np.array(lower, dtype=float).reshape(-1)
        upper = np.array(upper, dtype=float).reshape(-1)
        if lower.shape != upper.shape:
            raise ContractViolationError("lower and upper must have the same length")
        T = lower.shape[0]
        eye = np.eye(T)
        return cls(P=np.vstack([eye, -eye]), b=np.concatenate([upper, -lower]))

    @classmethod
    def simplex(cls, T: int, total: float) -> "PolytopeSet":
        """Scaled simplex ``{x >= 0, sum(x) = total}``.

        Args:
            T (int): dimension.
            total (float): common budget.

        Returns:
            PolytopeSet: the simplex.
        """
        return cls(P=-np.eye(T), b=np.zeros(T), Q=np.ones((1, T)), e=[total])

    # ------------------------------------------------------------------ #
    # shape
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
    def n_constraints(self) -> int:
        return self.q + self.p

    @cached_property
    def scale(self) -> float:
        return 1.0 + max(
            float(np.max(np.abs(self.b), initial=0.0)), float(np.max(np.abs(self.e), initial=0.0))
        )

    # ------------------------------------------------------------------ #
    # structure detection for fast projections
    @cached_property
    def kind(self) -> SetKindType:
        if self._simplex_total is not None:
            return SetKindType.SIMPLEX
        if self._box_bounds is not None:
            return SetKindType.BOX
        return SetKindType.GENERAL

    @cached_property
    def _simplex_total(self) -> Optional[float]:
        T = self.T
        if self.p != 1 or self.q != T:
            return None
        if not (np.array_equal(self.P, -np.eye(T)) and np.all(self.b == 0)):
            return None
        row = self.Q[0]
        if not (row[0] > 0 and np.all(row == row[0])):
            return None
        return float(self.e[0] / row[0])

    @cached_property
    def _box_bounds(self) -> Optional[tuple[np.ndarray, np.ndarray]]:
        if self.p != 0:
            return None
        nonzero = self.P != 0
        if not np.all(nonzero.sum(axis=1) == 1):
            return None
        lower = np.full(self.T, -np.inf)
        upper = np.full(self.T, np.inf)
        for row, rhs in zip(self.P, self.b):
            t = int(np.flatnonzero(row)[0])
            a = row[t]
            if a > 0:
                upper[t] = min(upper[t], rhs / a)
            else:
                lower[t] = max(lower[t], rhs / a)
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            return None
        return lower, upper

    @property
    def simplex_total(self) -> float:
        return self._simplex_total

    @property
    def box_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self._box_bounds

    # ------------------------------------------------------------------ #
    # LPs
    def _linprog(self, c: np.ndarray):
        return linprog(
            c,
            A_ub=self.P,
            b_ub=self.b,
            A_eq=self.Q if self.p else None,
            b_eq=self.e if self.p else None,
            bounds=(None, None),
            method="highs",
        )

    @cached_property
    def _checked(self) -> float:
        kind = self.kind
        if kind == SetKindType.SIMPLEX:
            total = self.simplex_total
            if total < 0:
                raise InfeasibleSetError(f"simplex budget must be non-negative: {total}")
            return total
        if kind == SetKindType.BOX:
            lower, upper = self.box_bounds
            if np.any(lower > upper):
                raise InfeasibleSetError("box lower corner exceeds upper corner")
            return float(np.linalg.norm(np.maximum(np.abs(lower), np.abs(upper))))

        if not is_feasible(self.P, self.b, self.Q, self.e):
            raise InfeasibleSetError("polytope is empty")
        extent = np.zeros(self.T)
        for t in range(self.T):
            for sign in (1.0, -1.0):
                c = np.zeros(self.T)
                c[t] = -sign
                res = self._linprog(c)
                if res.status == _LP_UNBOUNDED:
                    raise UnboundedSetError(f"polytope is unbounded along coordinate {t}")
                if res.status != 0:
                    raise InfeasibleSetError(f"radius LP failed: {res.message}")
                extent[t] = max(extent[t], abs(res.x[t]))
        return float(np.linalg.norm(extent))

    def check(self) -> "PolytopeSet":
        """Verify non-emptiness and boundedness, and that the declared radius holds.

        Returns:
            PolytopeSet: self, for chaining.
        """
        computed = self._checked
        if self.radius is not None and computed > self.radius * (1 + 1e-9) + 1e-12:
            raise ContractViolationError(
                f"declared radius {self.radius} is below the computed bound {computed}"
            )
        return self

    @property
    def radius_bound(self) -> float:
        """R with ``||x|| <= R`` for every feasible x."""
        return self.radius if self.radius is not None else self._checked

    # ------------------------------------------------------------------ #
    # membership
    def violation(self, x: np.ndarray) -> float:
        """Euclidean norm of the constraint violations at x."""
        x = np.asarray(x, dtype=float)
        ineq = np.maximum(self.P @ x - self.b, 0.0)
        eq = self.Q @ x - self.e
        return float(np.sqrt(ineq @ ineq + eq @ eq))

    def contains(self, x: np.ndarray, tol: float = None) -> bool:
        tol = Config.FEASIBILITY_TOLERANCE if tol is None else tol
        return self.violation(x) <= tol * self.scale

    # ------------------------------------------------------------------ #
    # geometry
    @cached_property
    def affine_basis(self) -> tuple[np.ndarray, np.ndarray]:
        """A point and an orthonormal basis of the affine hull of ``{Q x = e}``."""
        if self.p == 0:
            return np.zeros(self.T), np.eye(self.T)
        x0 = np.linalg.lstsq(self.Q, self.e, rcond=None)[0]
        return x0, null_space(self.Q)

    @cached_property
    def chebyshev(self) -> tuple[np.ndarray, float]:
        """Centre and radius of the largest ball inside the set within its equality hull."""
        x0, N = self.affine_basis
        if N.shape[1] == 0:
            return x0, 0.0
        A = self.P @ N
        rhs = self.b - self.P @ x0
        norms = np.linalg.norm(A, axis=1)
        k = N.shape[1]
        c = np.zeros(k + 1)
        c[-1] = -1.0
        bounds = [(None, None)] * k + [(0, None)]
        res = linprog(
            c, A_ub=np.hstack([A, norms[:, None]]), b_ub=rhs, bounds=bounds, method="highs"
        )
        if res.status == _LP_INFEASIBLE:
            raise InfeasibleSetError("polytope is empty")
        if res.status != 0:
            raise UnboundedSetError(f"chebyshev LP failed: {res.message}")
        return x0 + N @ res.x[:k], float(res.x[-1])

    @cached_property
    def feasible_point(self) -> np.ndarray:
        center, radius = self.chebyshev
        if radius > 0:
            return center
        res = self._linprog(np.zeros(self.T))
        if res.status != 0:
            raise InfeasibleSetError("polytope is empty")
        return res.x

    @cached_property
    def vertices(self) -> np.ndarray:
        """Vertices by enumeration of active constraint subsets. Only for small T."""
        if self.T > Config.EXACT_HAUSDORFF_MAX_DIM:
            raise UnsupportedConfigurationError(
                f"vertex enumeration is limited to T <= {Config.EXACT_HAUSDORFF_MAX_DIM}: T={self.T}"
            )
        if self.kind == SetKindType.BOX:
            lower, upper = self.box_bounds
            corners = itertools.product(*zip(lower, upper))
            return _unique_points(np.array(list(corners), dtype=float))
        if self.kind == SetKindType.SIMPLEX:
            return np.eye(self.T) * self.simplex_total

        rank_q = np.linalg.matrix_rank(self.Q) if self.p else 0
        k = self.T - rank_q
        tol = Config.FEASIBILITY_TOLERANCE
        points = []
        for rows in itertools.combinations(range(self.q), k):
            A = np.vstack([self.Q, self.P[list(rows)]])
            rhs = np.concatenate([self.e, self.b[list(rows)]])
            if np.linalg.matrix_rank(A) < self.T:
                continue
            x = np.linalg.lstsq(A, rhs, rcond=None)[0]
            if np.linalg.norm(A @ x - rhs) > tol * self.scale:
                continue
            if self.contains(x, tol):
                points.append(x)
        if not points:
            raise InfeasibleSetError("polytope has no vertices")
        return _unique_points(np.array(points))

    def hoffman_constant(self, samples: int = None, seed: int = 0) -> float:
        """Estimate of max ||B^+||_2 over the active constraint rows B at vertices.

        Vertices are enumerated for small T and sampled by random-direction LPs otherwise.
        """
        samples = Config.THETA_SAMPLES if samples is None else samples
        if self.T <= Config.EXACT_HAUSDORFF_MAX_DIM:
            points = self.vertices
        else:
            rng = np.random.default_rng(seed)
            points = []
            for _ in range(samples):
                res = self._linprog(rng.standard_normal(self.T))
                if res.status == 0:
                    points.append(res.x)
            points = np.array(points)

        tol = Config.FEASIBILITY_TOLERANCE * self.scale
        constant = 0.0
        for v in points:
            active = np.abs(self.P @ v - self.b) <= tol
            B = np.vstack([self.Q, self.P[active]])
            if B.shape[0] == 0:
                continue
            constant = max(constant, float(np.linalg.norm(np.linalg.pinv(B), 2)))
        return constant


def _unique_points(points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    unique = []
    for x in points:
        if all(np.linalg.norm(x - u) > tol * (1 + np.linalg.norm(u)) for u in unique):
            unique.append(x)
    return np.array(unique)


def is_feasible(P, b, Q=None, e=None) -> bool:
    """LP feasibility of ``{P x <= b, Q x = e}`` without requiring boundedness."""
    P = np.atleast_2d(np.array(P, dtype=float))
    Q = _as_matrix(Q, P.shape[1], "Q")
    res = linprog(
        np.zeros(P.shape[1]),
        A_ub=P,
        b_ub=np.asarray(b, dtype=float),
        A_eq=Q if Q.shape[0] else None,
        b_eq=np.asarray(e, dtype=float) if Q.shape[0] else None,
        bounds=(None, None),
        method="highs",
    )
    return res.status == 0
