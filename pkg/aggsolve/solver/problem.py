import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from aggsolve.exception import NonConvexGameError, UnsupportedConfigurationError
from aggsolve.game import FiniteTypeGame, MonotonicityCertificate, monotonicity_certificate
from aggsolve.type import EquilibriumType

logger = logging.getLogger(__name__)

_CONVEXITY_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class VIProblem:
    """Variational inequality ``<F(x), y - x> >= 0`` over the coupled action set of ``game``."""

    game: FiniteTypeGame
    operator: Callable[[np.ndarray], np.ndarray]
    lipschitz: float
    modulus: float
    equilibrium: EquilibriumType
    certificate: Optional[MonotonicityCertificate] = None

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.operator(self.game.as_profile(x))


def _norm2(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, 2))


def svwe_lipschitz(game: FiniteTypeGame) -> float:
    """Bound on the Lipschitz constant of ``x -> (mu_i g_i(x_i, X))_i``."""
    mu = game.mu
    if game.is_quadratic:
        norm_C = max(_norm2(c.C) for c in game.costs)
        return float(mu @ mu * norm_C + max(m * _norm2(c.S) for m, c in zip(mu, game.costs)))
    return float(
        mu @ mu * max(o.lipschitz_X for o in game.oracles)
        + max(m * o.lipschitz_x for m, o in zip(mu, game.oracles))
    )


def svwe_problem(
    game: FiniteTypeGame, certificate: Optional[MonotonicityCertificate] = None
) -> VIProblem:
    """VI whose solutions are the symmetric variational Wardrop equilibria of ``game``."""
    mu = game.mu[:, None]
    if certificate is None and game.is_quadratic:
        certificate = monotonicity_certificate(game)
    modulus = 0.0 if certificate is None else max(certificate.alpha, 0.0) * float(game.mu.min())
    return VIProblem(
        game=game,
        operator=lambda x: mu * game.gradients(x),
        lipschitz=svwe_lipschitz(game),
        modulus=modulus,
        equilibrium=EquilibriumType.SVWE,
        certificate=certificate,
    )


def check_player_convexity(game: FiniteTypeGame):
    """Each atomic player's cost must be convex in its own action.

    Player i owns mass mu_i, so its own action moves the aggregate and the
    Hessian of its cost is ``S_i + mu_i (C + C^T)``.
    """
    for i, (m, c) in enumerate(zip(game.mu, game.costs)):
        H = c.S + m * (c.C + c.C.T)
        smallest = float(np.linalg.eigvalsh((H + H.T) / 2)[0])
        if smallest < -_CONVEXITY_TOLERANCE * (1.0 + np.max(np.abs(H))):
            raise NonConvexGameError(
                f"player {i} has a non-convex cost (smallest Hessian eigenvalue {smallest:.3e})"
            )


def vne_problem(game: FiniteTypeGame) -> VIProblem:
    """VI whose solutions are the variational Nash equilibria when each type is one atomic player."""
    if not game.is_quadratic:
        raise UnsupportedConfigurationError("Nash equilibria need quadratic costs")
    check_player_convexity(game)

    mu = game.mu
    Ct = np.stack([c.C.T for c in game.costs])

    def operator(x: np.ndarray) -> np.ndarray:
        own = np.einsum("itk,ik->it", Ct, x) * mu[:, None]
        return mu[:, None] * (game.gradients(x) + own)

    norm_C = [_norm2(c.C) for c in game.costs]
    lipschitz = float(
        mu @ mu * max(norm_C)
        + max(m * (_norm2(c.S) + m * nc) for m, c, nc in zip(mu, game.costs, norm_C))
    )
    return VIProblem(
        game=game,
        operator=operator,
        lipschitz=lipschitz,
        modulus=0.0,
        equilibrium=EquilibriumType.VNE,
        certificate=None,
    )


def own_impact(game: FiniteTypeGame) -> np.ndarray:
    """Per-player bound ``mu_i ||C|| (R+1) sqrt(T)`` on the aggregate term a Nash player internalizes."""
    reach = (game.R + 1.0) * np.sqrt(game.T)
    return np.array([m * _norm2(c.C) * reach for m, c in zip(game.mu, game.costs)])
