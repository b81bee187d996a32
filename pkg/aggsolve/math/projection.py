import logging
from typing import Union

import numpy as np

from aggsolve.config import Config
from aggsolve.exception import ContractViolationError, ProjectionError
from aggsolve.type import ProjectionMethodType, SetKindType

from .polytope import PolytopeSet

logger = logging.getLogger(__name__)


def project_simplex(y: np.ndarray, total: float) -> np.ndarray:
    """Euclidean projection onto ``{x >= 0, sum(x) = total}`` by sorting."""
    if total <= 0:
        return np.zeros_like(y)
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - total
    idx = np.arange(1, y.shape[0] + 1)
    rho = np.count_nonzero(u - css / idx > 0)
    theta = css[rho - 1] / rho
    return np.maximum(y - theta, 0.0)


def project_simplex_batch(Y: np.ndarray, totals: np.ndarray) -> np.ndarray:
    """Row-wise simplex projection of a ``(I, T)`` array onto budgets ``totals``."""
    Y = np.asarray(Y, dtype=float)
    totals = np.asarray(totals, dtype=float)
    U = -np.sort(-Y, axis=1)
    css = np.cumsum(U, axis=1) - totals[:, None]
    idx = np.arange(1, Y.shape[1] + 1)
    rho = np.count_nonzero(U - css / idx > 0, axis=1)
    rho = np.maximum(rho, 1)
    theta = css[np.arange(Y.shape[0]), rho - 1] / rho
    X = np.maximum(Y - theta[:, None], 0.0)
    X[totals <= 0] = 0.0
    return X


def _project_active_set(
    y: np.ndarray, polytope: PolytopeSet, tol: float, max_iter: int
) -> np.ndarray:
    # primal active set for min 1/2 ||x - y||^2, started from a feasible point
    P, b, Q = polytope.P, polytope.b, polytope.Q
    n_eq = Q.shape[0]
    x = polytope.feasible_point.copy()
    working: list[int] = []
    step_tol = tol * (1.0 + np.linalg.norm(y))

    for _ in range(max_iter):
        A = np.vstack([Q, P[working]]) if working else Q
        g = y - x
        if A.shape[0]:
            lam = np.linalg.lstsq(A @ A.T, A @ g, rcond=None)[0]
            step = g - A.T @ lam
        else:
            step = g

        if np.linalg.norm(step) <= step_tol:
            if not working:
                return x
            lam = np.linalg.lstsq(A.T, g, rcond=None)[0][n_eq:]
            j = int(np.argmin(lam))
            if lam[j] >= -step_tol:
                return x
            working.pop(j)
            continue

        Pstep = P @ step
        slack = np.maximum(b - P @ x, 0.0)
        alpha, blocking = 1.0, None
        for i in np.flatnonzero(Pstep > 1e-15 * (1.0 + np.linalg.norm(step))):
            if i in working:
                continue
            ratio = slack[i] / Pstep[i]
            if ratio < alpha:
                alpha, blocking = ratio, int(i)
        x = x + alpha * step
        if blocking is not None:
            working.append(blocking)

    raise ProjectionError("active-set projection did not converge", best_iterate=x)


def _project_dykstra(
    y: np.ndarray, polytope: PolytopeSet, tol: float, max_iter: int
) -> np.ndarray:
    # cyclic Dykstra over the halfspaces and the equality hull
    P, b, Q, e = polytope.P, polytope.b, polytope.Q, polytope.e
    norms_sq = np.einsum("ij,ij->i", P, P)
    Q_pinv = np.linalg.pinv(Q) if Q.shape[0] else None
    n_sets = P.shape[0] + (1 if Q_pinv is not None else 0)
    increments = np.zeros((n_sets, y.shape[0]))
    x = y.astype(float).copy()
    scale = 1.0 + np.linalg.norm(y)

    for _ in range(max_iter):
        x_prev = x.copy()
        for k in range(P.shape[0]):
            z = x + increments[k]
            excess = P[k] @ z - b[k]
            x = z - (max(excess, 0.0) / norms_sq[k]) * P[k] if norms_sq[k] > 0 else z
            increments[k] = z - x
        if Q_pinv is not None:
            z = x + increments[-1]
            x = z - Q_pinv @ (Q @ z - e)
            increments[-1] = z - x
        if np.linalg.norm(x - x_prev) <= tol * scale:
            return x

    raise ProjectionError("Dykstra projection did not converge", best_iterate=x)


def project_polytope(
    y: np.ndarray,
    polytope: PolytopeSet,
    tol: float = None,
    max_iter: int = None,
    method: Union[str, ProjectionMethodType] = None,
) -> np.ndarray:
    """Euclidean projection of y onto a polytope.

    Args:
        y (np.ndarray): point in R^T.
        polytope (PolytopeSet): target set.
        tol (float, optional): relative stopping tolerance. Defaults to Config.PROJECTION_TOLERANCE.
        max_iter (int, optional): iteration cap. Defaults to Config.PROJECTION_MAX_ITER.
        method (Union[str, ProjectionMethodType], optional): force a method. Chosen from the
            set structure when omitted.

    Raises:
        ContractViolationError: if y has the wrong dimension.
        ProjectionError: if the iterative method hits its cap.

    Returns:
        np.ndarray: the projection.
    """
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape[0] != polytope.T:
        raise ContractViolationError(f"point has dimension {y.shape[0]}, set has {polytope.T}")
    tol = Config.PROJECTION_TOLERANCE if tol is None else tol
    max_iter = Config.PROJECTION_MAX_ITER if max_iter is None else max_iter

    if method is None:
        kind = polytope.kind
        if kind == SetKindType.BOX:
            method = ProjectionMethodType.BOX
        elif kind == SetKindType.SIMPLEX:
            method = ProjectionMethodType.SIMPLEX
        elif polytope.n_constraints <= Config.ACTIVE_SET_MAX_CONSTRAINTS:
            method = ProjectionMethodType.ACTIVE_SET
        else:
            method = ProjectionMethodType.DYKSTRA
    method = ProjectionMethodType.from_str(method)

    if method == ProjectionMethodType.BOX:
        lower, upper = polytope.box_bounds
        return np.clip(y, lower, upper)
    if method == ProjectionMethodType.SIMPLEX:
        return project_simplex(y, polytope.simplex_total)
    if method == ProjectionMethodType.ACTIVE_SET:
        try:
            return _project_active_set(y, polytope, tol, max_iter)
        except ProjectionError:
            logger.warning("active set stalled, falling back to Dykstra")
    return _project_dykstra(y, polytope, tol, max_iter)


def distance_to_set(x: np.ndarray, polytope: PolytopeSet) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.linalg.norm(x - project_polytope(x, polytope)))


def hausdorff_distance(X: PolytopeSet, Y: PolytopeSet) -> float:
    """Exact Hausdorff distance between two polytopes of small dimension.

    The distance to a convex set is convex, so each one-sided excess is
    attained at a vertex.
    """
    if X.T != Y.T:
        raise ContractViolationError(f"dimension mismatch: {X.T} != {Y.T}")
    forward = max(distance_to_set(v, Y) for v in X.vertices)
    backward = max(distance_to_set(v, X) for v in Y.vertices)
    return max(forward, backward)
