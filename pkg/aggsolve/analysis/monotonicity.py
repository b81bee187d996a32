from dataclasses import asdict, dataclass

import numpy as np

from aggsolve.exception import ContractViolationError, DegenerateSampleError
from aggsolve.game import FiniteTypeGame
from aggsolve.solver import project_coupled


@dataclass(frozen=True)
class EmpiricalMonotonicity:
    alpha_hat: float
    beta_hat: float
    pairs_used: int

    def to_dict(self) -> dict:
        return asdict(self)


def random_feasible_profiles(game: FiniteTypeGame, n: int, seed: int = 0) -> np.ndarray:
    """``n`` coupled-feasible profiles, obtained by projecting uniform draws from ``[-R-1, R+1]``."""
    rng = np.random.default_rng(seed)
    reach = game.R + 1.0
    draws = rng.uniform(-reach, reach, size=(n, game.I, game.T))
    return np.stack([project_coupled(y, game) for y in draws])


def empirical_monotonicity(game: FiniteTypeGame, samples: int = 500, seed: int = 0) -> EmpiricalMonotonicity:
    """Smallest observed monotonicity ratios over random pairs of feasible profiles.

    ``alpha_hat`` divides ``sum_i mu_i <g_i(x) - g_i(y), x_i - y_i>`` by
    ``sum_i mu_i ||x_i - y_i||^2`` and ``beta_hat`` by ``||X_x - X_y||^2``.
    """
    if samples < 2:
        raise ContractViolationError(f"at least 2 samples are needed: {samples}")
    points = random_feasible_profiles(game, 2 * samples, seed)
    mu = game.mu

    alpha_hat, beta_hat, used = np.inf, np.inf, 0
    for x, y in zip(points[:samples], points[samples:]):
        dx = x - y
        num = float(mu @ np.einsum("it,it->i", game.gradients(x) - game.gradients(y), dx))
        profile_sq = float(mu @ np.einsum("it,it->i", dx, dx))
        dX = mu @ dx
        aggregate_sq = float(dX @ dX)
        if profile_sq <= 1e-24 * (1.0 + game.R) ** 2:
            continue
        used += 1
        alpha_hat = min(alpha_hat, num / profile_sq)
        if aggregate_sq > 1e-6 * profile_sq:
            beta_hat = min(beta_hat, num / aggregate_sq)

    if used == 0:
        raise DegenerateSampleError("every sampled pair coincides")
    return EmpiricalMonotonicity(alpha_hat=float(alpha_hat), beta_hat=float(beta_hat), pairs_used=used)
