import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
from waffle_utils.hook import BaseHook

from aggsolve.analysis import (
    BoundConstants,
    ConvergenceRow,
    bound_constants,
    theoretical_bounds,
    write_rows_csv,
)
from aggsolve.approximation import (
    ApproxMetrics,
    StepProfile,
    build_meshgrid,
    build_uniform_split,
    check_span_condition,
)
from aggsolve.config import Config
from aggsolve.exception import SolverException, UnsupportedConfigurationError
from aggsolve.game import FiniteTypeGame
from aggsolve.solver import SolveReport, own_impact, solve_svwe, solve_vne
from aggsolve.type import BuilderType, ConfigKindType, EndpointType, LipschitzModeType

from .loader import LoadedConfig, load_config
from .smartgrid import analytic_vwe

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Reference:
    X: np.ndarray
    profile: Optional[StepProfile] = None


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[ConvergenceRow, ...]
    vne_rows: tuple[ConvergenceRow, ...]
    all_converged: bool
    out_path: Optional[Path] = None
    vne_path: Optional[Path] = None


def vne_output_path(out_path: Union[str, Path]) -> Path:
    out_path = Path(out_path)
    return out_path.with_name(f"{out_path.stem}_vne{out_path.suffix or '.csv'}")


def parse_nu_list(text: str) -> list[int]:
    """``"1,2,4"`` or ranges such as ``"1-64"``."""
    nus = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            nus.extend(range(int(lo), int(hi) + 1))
        else:
            nus.append(int(part))
    return nus


class SweepRunner(BaseHook):
    """Builds, solves and bounds the approximating game of a characteristic for each nu.

    Rows are computed in a worker pool and returned sorted by nu. Callbacks
    receive ``on_loop_start(len(nu_list))`` and ``on_step_end(k)`` each time a
    row completes.
    """

    def __init__(
        self,
        config: LoadedConfig,
        tol: float = None,
        max_iter: int = None,
        endpoint: Union[str, EndpointType] = None,
        seed: int = 42,
        vne: bool = False,
        workers: int = None,
        callbacks: list[callable] = None,
    ):
        super().__init__(callbacks=callbacks or [])
        if config.kind == ConfigKindType.GAME:
            raise UnsupportedConfigurationError(
                "a finite-type game has nothing to discretize; sweep a characteristic or smart grid config"
            )
        self.config = config
        self.tc = config.characteristic
        self.tol = Config.TOLERANCE if tol is None else tol
        self.max_iter = max_iter
        if endpoint is None:
            endpoint = config.info.endpoint if config.scenario is not None else EndpointType.MID
        self.endpoint = EndpointType.from_str(endpoint)
        self.seed = seed
        self.vne = vne
        self.workers = Config.THREADS if workers is None else max(1, workers)

        if config.scenario is not None:
            self.mode = LipschitzModeType.AGGREGATE
            self.aggregate_set = config.scenario.aggregate_set()
        else:
            self.mode = LipschitzModeType.from_str(config.info.lipschitz_mode)
            self.aggregate_set = config.A
            if self.mode == LipschitzModeType.AGGREGATE and self.aggregate_set is None:
                raise UnsupportedConfigurationError(
                    "lipschitz_mode 'aggregate' needs an aggregate constraint A"
                )

    def on_loop_start(self, total_steps: int):
        pass

    def on_loop_end(self):
        pass

    def on_step_start(self):
        pass

    def on_step_end(self, current_step: int = None):
        pass

    @property
    def builder(self) -> str:
        if self.config.scenario is not None:
            return BuilderType.UNIFORM
        return BuilderType.from_str(self.config.info.builder)

    def build(self, nu: int) -> tuple[FiniteTypeGame, ApproxMetrics]:
        if self.builder == BuilderType.MESHGRID:
            return build_meshgrid(
                self.tc,
                theta_samples=self.config.info.theta_samples,
                nu=nu,
                A=self.config.A,
                workers=1,
            )
        return build_uniform_split(self.tc, nu, A=self.config.A, endpoint=self.endpoint, workers=1)

    def _x0(self, game: FiniteTypeGame, nu: int) -> np.ndarray:
        rng = np.random.default_rng([self.seed, nu])
        return rng.uniform(0.0, 1.0, size=(game.I, game.T)) * game.R

    def reference(self, nu_list: Sequence[int]) -> Reference:
        """Continuum equilibrium, analytic when known, otherwise a fine discretization."""
        if self.config.scenario is not None:
            return Reference(X=analytic_vwe(self.config.scenario))
        reference_nu = self.config.info.reference_nu or 2 * max(nu_list)
        game, metrics = self.build(reference_nu)
        report = solve_svwe(game, tol=self.tol, max_iter=self.max_iter, x0=self._x0(game, 0))
        if not report.converged:
            logger.warning(f"reference solve at nu={reference_nu} did not converge")
        logger.info(f"reference solution at nu={reference_nu}: X={report.X_hat.tolist()}")
        return Reference(X=report.X_hat, profile=StepProfile(metrics.partition, report.x_hat))

    def _row(
        self,
        metrics: ApproxMetrics,
        constants: BoundConstants,
        report: SolveReport,
        reference: Reference,
        lambda_bar: float,
        span_ok: bool = True,
    ) -> ConvergenceRow:
        bounds = theoretical_bounds(metrics, constants, lambda_bar=lambda_bar)
        applicable = bounds.applicable and span_ok
        err_profile = None
        if constants.alpha > 0 and reference.profile is not None:
            err_profile = StepProfile(metrics.partition, report.x_hat).l2_distance(reference.profile)
        return ConvergenceRow(
            nu=metrics.nu,
            I=metrics.I,
            delta_bar=metrics.delta_bar,
            eps_bar=metrics.eps_bar,
            D=metrics.D,
            lambda_bar=lambda_bar,
            L_f=constants.L_f,
            K_A=constants.K_A,
            alpha=constants.alpha,
            beta=constants.beta,
            Omega=bounds.Omega,
            err_agg=float(np.linalg.norm(report.X_hat - reference.X)),
            bound_agg=bounds.bound_agg if applicable else None,
            err_profile=err_profile,
            bound_profile=bounds.bound_profile if applicable else None,
            iterations=report.iterations,
            residual=report.residual,
            applicable=applicable,
        )

    def run_one(self, nu: int, reference: Reference) -> tuple[ConvergenceRow, Optional[ConvergenceRow], bool]:
        game, metrics = self.build(nu)
        span_ok = check_span_condition(game, self.tc)
        if not span_ok:
            logger.warning(f"nu={nu}: type sets leave the characteristic's affine span, bounds dropped")
        constants = bound_constants(
            self.tc, self.config.A, self.mode, self.aggregate_set, radius=metrics.radius
        )
        x0 = self._x0(game, nu)
        report = solve_svwe(game, tol=self.tol, max_iter=self.max_iter, x0=x0)
        row = self._row(metrics, constants, report, reference, lambda_bar=0.0, span_ok=span_ok)
        converged = report.converged

        vne_row = None
        if self.vne:
            lambda_bar = float(np.max(own_impact(game)))
            vne_report = solve_vne(game, tol=self.tol, max_iter=self.max_iter, x0=x0)
            # an atomic profile is not a continuum profile; only the aggregate is compared
            vne_row = self._row(
                metrics,
                constants,
                vne_report,
                Reference(X=reference.X),
                lambda_bar=lambda_bar,
                span_ok=span_ok,
            )
            converged = converged and vne_report.converged
        logger.info(
            f"nu={nu} I={game.I}: err_agg={row.err_agg:.6g} bound_agg={row.bound_agg} "
            f"({report.iterations} iterations)"
        )
        return row, vne_row, converged

    def run(self, nu_list: Sequence[int]) -> tuple[list, list, bool, Optional[Exception]]:
        nu_list = sorted(set(nu_list))
        reference = self.reference(nu_list)

        results, error = {}, None
        self.run_callback_hooks("on_loop_start", len(nu_list))
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = {executor.submit(self.run_one, nu, reference): nu for nu in nu_list}
            for k, future in enumerate(as_completed(futures), start=1):
                nu = futures[future]
                try:
                    results[nu] = future.result()
                except SolverException as e:
                    logger.error(f"nu={nu} failed: {e}")
                    error = error or e
                self.run_callback_hooks("on_step_end", k)
        self.run_callback_hooks("on_loop_end")

        ordered = [results[nu] for nu in nu_list if nu in results]
        rows = [r for r, _, _ in ordered]
        vne_rows = [v for _, v, _ in ordered if v is not None]
        all_converged = error is None and all(c for _, _, c in ordered)
        return rows, vne_rows, all_converged, error


def run_sweep(
    config_path: Union[str, Path],
    nu_list: Sequence[int],
    tol: float = None,
    out_path: Union[str, Path] = None,
    endpoint: Union[str, EndpointType] = None,
    seed: int = 42,
    vne: bool = False,
    workers: int = None,
    max_iter: int = None,
    callbacks: list[callable] = None,
) -> SweepResult:
    """Run an approximation sweep over ``nu_list`` and write one CSV row per nu.

    Rows finished before a solver failure are still written; the failure is
    raised afterwards.

    Raises:
        FieldException: if the configuration does not parse.
        SolverException: if a solve fails outright.
    """
    config = load_config(config_path)
    runner = SweepRunner(
        config,
        tol=tol,
        max_iter=max_iter,
        endpoint=endpoint,
        seed=seed,
        vne=vne,
        workers=workers,
        callbacks=callbacks,
    )
    rows, vne_rows, all_converged, error = runner.run(nu_list)

    vne_path = None
    if out_path is not None:
        out_path = write_rows_csv(rows, out_path)
        if vne:
            vne_path = write_rows_csv(vne_rows, vne_output_path(out_path))
    if error is not None:
        raise error
    return SweepResult(
        rows=tuple(rows),
        vne_rows=tuple(vne_rows),
        all_converged=all_converged,
        out_path=out_path,
        vne_path=vne_path,
    )
