from dataclasses import dataclass
from typing import Union

import numpy as np

from aggsolve.exception import UnsupportedConfigurationError
from aggsolve.type import MonotonicityType

from .characteristic import TypeCharacteristic
from .finite_game import FiniteTypeGame


@dataclass(frozen=True)
class MonotonicityCertificate:
    monotonicity: MonotonicityType
    alpha: float
    beta: float

    def to_dict(self) -> dict:
        return {"class": str(self.monotonicity.value), "alpha": self.alpha, "beta": self.beta}


def classify(alpha: float, beta: float, tol: float = 1e-12) -> MonotonicityType:
    alpha_ok, beta_ok = alpha >= -tol, beta >= -tol
    if alpha > tol and beta_ok:
        return MonotonicityType.STRONGLY
    if beta > tol and alpha_ok:
        return MonotonicityType.AGGREGATIVELY_STRONGLY
    if alpha_ok and beta_ok:
        return MonotonicityType.MONOTONE
    return MonotonicityType.NONE


def _sym_min_eig(M: np.ndarray) -> float:
    return float(np.linalg.eigvalsh((M + M.T) / 2)[0])


def _certificate(C: np.ndarray, S_list) -> MonotonicityCertificate:
    alpha = min(_sym_min_eig(S) for S in S_list)
    beta = _sym_min_eig(C)
    scale = max(1.0, float(np.max(np.abs(C))), max(float(np.max(np.abs(S))) for S in S_list))
    # round off eigenvalues of exactly singular forms
    alpha = 0.0 if abs(alpha) <= 1e-13 * scale else alpha
    beta = 0.0 if abs(beta) <= 1e-13 * scale else beta
    return MonotonicityCertificate(classify(alpha, beta), alpha, beta)


def monotonicity_certificate(
    game: Union[FiniteTypeGame, TypeCharacteristic]
) -> MonotonicityCertificate:
    """Analytic monotonicity class of a quadratic public-products game.

    ``alpha`` is the smallest utility curvature over types and ``beta`` the
    smallest eigenvalue of the symmetric part of the price slope. For a type
    characteristic the curvature is taken over its theta grid.
    """
    if isinstance(game, TypeCharacteristic):
        S_list = [game.unpack(game.s(theta))[0] for theta in game.sample_thetas]
        return _certificate(game.C, S_list)

    if not game.is_quadratic:
        raise UnsupportedConfigurationError("certificates need quadratic costs")
    shared = game.shared_price
    if shared is None:
        raise UnsupportedConfigurationError("certificates need a price map shared by all types")
    return _certificate(shared[0], [c.S for c in game.costs])
