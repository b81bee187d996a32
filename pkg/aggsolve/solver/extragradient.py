import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from waffle_utils.hook import BaseHook

from aggsolve.config import Config
from aggsolve.exception import NonMonotoneGameError
from aggsolve.game import FiniteTypeGame, MonotonicityCertificate
from aggsolve.type import EquilibriumType, MonotonicityType

from .problem import VIProblem, svwe_problem, vne_problem
from .projection import project_coupled

logger = logging.getLogger(__name__)

# adaptive step: shrink while tau * ||F(y) - F(x)|| exceeds this share of ||y - x||
_ADAPTIVE_RATIO = 0.95


@dataclass(frozen=True, eq=False)
class SolveReport:
    x_hat: np.ndarray
    X_hat: np.ndarray
    residual: float
    iterations: int
    converged: bool
    wall_time: float
    equilibrium: EquilibriumType = EquilibriumType.SVWE
    unique: bool = False
    tau: float = float("nan")

    def to_dict(self) -> dict:
        return {
            "equilibrium": str(self.equilibrium.value),
            "x_hat": self.x_hat.tolist(),
            "X_hat": self.X_hat.tolist(),
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "unique": self.unique,
            "tau": self.tau,
            "wall_time": self.wall_time,
        }


def default_step(problem: VIProblem) -> float:
    return Config.STEP_FACTOR / problem.lipschitz if problem.lipschitz > 0 else 1.0


def vi_residual(x, problem: VIProblem, tau: float = None) -> float:
    """Natural-map residual ``||x - proj(x - tau F(x))|| / tau``; zero exactly at VI solutions."""
    tau = default_step(problem) if tau is None else tau
    x = problem.game.as_profile(x)
    y = project_coupled(x - tau * problem(x), problem.game)
    return float(np.linalg.norm(x - y) / tau)


class ExtragradientSolver(BaseHook):
    """Extragradient iterations ``y = P(x - tau F(x))``, ``x+ = P(x - tau F(y))`` on the coupled set.

    Callbacks receive ``on_loop_start(max_iter)``, ``on_step_end(k, residual)``
    after every iteration and ``on_loop_end()``.
    """

    def __init__(
        self,
        tol: float = None,
        max_iter: int = None,
        adaptive: bool = False,
        callbacks: list[callable] = None,
    ):
        super().__init__(callbacks=callbacks or [])
        self.tol = Config.TOLERANCE if tol is None else tol
        self.max_iter = Config.MAX_ITER if max_iter is None else max_iter
        self.adaptive = adaptive

    def on_loop_start(self, total_steps: int):
        pass

    def on_loop_end(self):
        pass

    def on_step_start(self):
        pass

    def on_step_end(self, current_step: int = None, residual: Optional[float] = None):
        pass

    def solve(self, problem: VIProblem, x0=None) -> SolveReport:
        game = problem.game
        start = time.time()
        tau = default_step(problem)
        x0 = np.zeros((game.I, game.T)) if x0 is None else game.as_profile(x0)
        x = project_coupled(x0, game)

        self.run_callback_hooks("on_loop_start", self.max_iter)
        residual, iterations, converged = np.inf, 0, False
        while True:
            Fx = problem(x)
            y = project_coupled(x - tau * Fx, game)
            residual = float(np.linalg.norm(x - y) / tau)
            if residual <= self.tol:
                converged = True
                break
            if iterations >= self.max_iter:
                break

            Fy = problem(y)
            if self.adaptive:
                while tau * np.linalg.norm(Fy - Fx) > _ADAPTIVE_RATIO * np.linalg.norm(y - x):
                    tau /= 2
                    y = project_coupled(x - tau * Fx, game)
                    Fy = problem(y)
            x = project_coupled(x - tau * Fy, game)
            iterations += 1
            self.run_callback_hooks("on_step_end", iterations, residual)
        self.run_callback_hooks("on_loop_end")

        certificate = problem.certificate
        unique = problem.equilibrium == EquilibriumType.SVWE and (
            certificate is not None and certificate.monotonicity == MonotonicityType.STRONGLY
        )
        report = SolveReport(
            x_hat=x,
            X_hat=game.mu @ x,
            residual=residual,
            iterations=iterations,
            converged=converged,
            wall_time=time.time() - start,
            equilibrium=problem.equilibrium,
            unique=unique,
            tau=tau,
        )
        if converged:
            logger.debug(
                f"{problem.equilibrium} converged in {iterations} iterations (residual {residual:.3e})"
            )
        else:
            logger.warning(
                f"{problem.equilibrium} stopped after {iterations} iterations "
                f"with residual {residual:.3e} > {self.tol:.1e}"
            )
        return report


def solve_svwe(
    game: FiniteTypeGame,
    tol: float = None,
    max_iter: int = None,
    x0=None,
    adaptive: bool = False,
    certificate: MonotonicityCertificate = None,
    callbacks: list[callable] = None,
) -> SolveReport:
    """Symmetric variational Wardrop equilibrium of a finite-type game.

    Args:
        game (FiniteTypeGame): the game.
        tol (float, optional): residual tolerance. Defaults to Config.TOLERANCE.
        max_iter (int, optional): iteration cap. Defaults to Config.MAX_ITER.
        x0 (optional): starting profile, projected onto the coupled set first.
        adaptive (bool, optional): halve the step when it is too long for the local Lipschitz behaviour.
        certificate (MonotonicityCertificate, optional): declared class for games with gradient oracles.
        callbacks (list[callable], optional): loop callbacks.

    Raises:
        NonMonotoneGameError: if the game is not certified monotone.

    Returns:
        SolveReport: the solution report; ``converged`` is False when the cap was hit.
    """
    problem = svwe_problem(game, certificate)
    if problem.certificate is None or problem.certificate.monotonicity == MonotonicityType.NONE:
        raise NonMonotoneGameError(
            "the game has no monotonicity certificate; extragradient convergence is not guaranteed"
        )
    solver = ExtragradientSolver(tol=tol, max_iter=max_iter, adaptive=adaptive, callbacks=callbacks)
    return solver.solve(problem, x0)


def solve_vne(
    game: FiniteTypeGame,
    tol: float = None,
    max_iter: int = None,
    x0=None,
    adaptive: bool = False,
    callbacks: list[callable] = None,
) -> SolveReport:
    """Variational Nash equilibrium with every type played by one atomic player of weight mu_i."""
    problem = vne_problem(game)
    solver = ExtragradientSolver(tol=tol, max_iter=max_iter, adaptive=adaptive, callbacks=callbacks)
    return solver.solve(problem, x0)
