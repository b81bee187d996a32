import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from aggsolve.config import Config
from aggsolve.exception import ProjectionIterationError
from aggsolve.game import FiniteTypeGame
from aggsolve.math import project_polytope, project_simplex_batch
from aggsolve.type import SetKindType

logger = logging.getLogger(__name__)

# per-type loops below this size are not worth a thread pool
_PARALLEL_MIN_TYPES = 64


def _stacked_bounds(game: FiniteTypeGame):
    lower = np.stack([s.box_bounds[0] for s in game.sets])
    upper = np.stack([s.box_bounds[1] for s in game.sets])
    return lower, upper


def project_product(y: np.ndarray, game: FiniteTypeGame, workers: int = None) -> np.ndarray:
    """Type-by-type projection onto ``X_1 x ... x X_I`` of an ``(I, T)`` profile."""
    kinds = {s.kind for s in game.sets}
    if kinds == {SetKindType.SIMPLEX}:
        return project_simplex_batch(y, np.array([s.simplex_total for s in game.sets]))
    if kinds == {SetKindType.BOX}:
        lower, upper = _stacked_bounds(game)
        return np.clip(y, lower, upper)

    workers = Config.THREADS if workers is None else workers
    if workers > 1 and game.I >= _PARALLEL_MIN_TYPES:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda i: project_polytope(y[i], game.sets[i]), range(game.I)))
        return np.stack(rows)
    return np.stack([project_polytope(y[i], s) for i, s in enumerate(game.sets)])


def project_coupling(y: np.ndarray, game: FiniteTypeGame) -> np.ndarray:
    """Closed-form projection onto ``{x : sum_i mu_i x_i in A}``."""
    mu = game.mu
    Y = mu @ y
    Z = project_polytope(Y, game.A)
    return y + np.outer(mu, Z - Y) / (mu @ mu)


def project_coupled(
    y, game: FiniteTypeGame, tol: float = None, max_iter: int = None, workers: int = None
) -> np.ndarray:
    """Euclidean projection onto ``{x in X_1 x ... x X_I : sum_i mu_i x_i in A}``.

    Dykstra alternation between the coupling set and the product set, the
    product set last so every row is feasible for its own type. Stops when
    successive iterates move less than ``tol * (1 + ||y||)`` and the
    aggregate constraint holds.

    Args:
        y: stacked profile, ``(I, T)`` or flat.
        game (FiniteTypeGame): game defining the coupled set.
        tol (float, optional): relative tolerance. Defaults to Config.PROJECTION_TOLERANCE.
        max_iter (int, optional): sweep cap. Defaults to Config.PROJECTION_MAX_ITER.
        workers (int, optional): threads for the per-type projections.

    Raises:
        ProjectionIterationError: if the cap is reached; carries the gap and the last iterate.

    Returns:
        np.ndarray: the projection, shaped like ``y``.
    """
    shape = np.shape(y)
    y = game.as_profile(np.array(y, dtype=float))
    tol = Config.PROJECTION_TOLERANCE if tol is None else tol
    max_iter = Config.PROJECTION_MAX_ITER if max_iter is None else max_iter

    x = project_product(y, game, workers)
    if game.A is None or game.A.contains(game.mu @ x, tol):
        return x.reshape(shape)

    scale = 1.0 + np.linalg.norm(y)
    feasibility = Config.FEASIBILITY_TOLERANCE / 10
    x = y.copy()
    p = np.zeros_like(y)
    q = np.zeros_like(y)
    gap = np.inf
    for _ in range(max_iter):
        u = project_coupling(x + p, game)
        p = x + p - u
        x_new = project_product(u + q, game, workers)
        q = u + q - x_new
        change = np.linalg.norm(x_new - x)
        x = x_new
        gap = game.A.violation(game.mu @ x)
        if change <= tol * scale and gap <= feasibility * game.A.scale:
            return x.reshape(shape)

    raise ProjectionIterationError(
        f"coupled projection did not converge in {max_iter} sweeps (gap {gap:.3e})",
        gap=gap,
        best_iterate=x.reshape(shape),
    )
