import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from waffle_utils.file import io
from waffle_utils.logger import initialize_logger

from aggsolve import __version__
from aggsolve.approximation import build_meshgrid, build_uniform_split
from aggsolve.callback import FileProgressCallback, TqdmProgressCallback
from aggsolve.config import Config
from aggsolve.exception import (
    AnalysisException,
    FieldException,
    GameException,
    SolverException,
)
from aggsolve.game import FiniteTypeGame, monotonicity_certificate
from aggsolve.scenario import (
    LoadedConfig,
    SmartGridScenario,
    analytic_svwe_error,
    analytic_vwe,
    build_smartgrid,
    load_config,
    parse_nu_list,
    run_sweep,
)
from aggsolve.solver import solve_svwe, solve_vne
from aggsolve.type import BuilderType, get_endpoint_types

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_SOLVER_FAILURE = 3


def _initialize_logger(verbose: bool = False):
    initialize_logger(
        file_path=Path(Config.LOG_DIR) / Config.LOG_FILE_NAME,
        log_format="%(asctime)s [%(levelname)s] %(name)s:%(lineno)d: %(message)s",
        console_level="DEBUG" if verbose else Config.CONSOLE_LOG_LEVEL,
        file_level=Config.FILE_LOG_LEVEL,
        root_level=logging.DEBUG if verbose else logging.INFO,
    )


def _emit(payload: dict, out: Optional[str]):
    if out:
        io.make_directory(Path(out).absolute().parent)
        io.save_json(payload, out)
        logger.info(f"report written to {out}")
    else:
        print(json.dumps(payload, indent=2))


def _game_for(config: LoadedConfig, nu: int, endpoint: Optional[str]) -> FiniteTypeGame:
    if config.game is not None:
        return config.game
    if config.scenario is not None:
        return build_smartgrid(config.scenario, nu)
    if config.info.builder == BuilderType.MESHGRID:
        game, _ = build_meshgrid(
            config.characteristic,
            theta_samples=config.info.theta_samples,
            nu=nu,
            A=config.A,
            compute_metrics=False,
        )
        return game
    game, _ = build_uniform_split(
        config.characteristic, nu, A=config.A, endpoint=endpoint or "mid", compute_metrics=False
    )
    return game


def _callbacks(args, desc: str) -> list:
    callbacks = [TqdmProgressCallback(desc=desc)] if args.progress else []
    if args.progress_file:
        callbacks.append(FileProgressCallback(args.progress_file, interval=args.progress_interval))
    return callbacks


def _feasibility_tol(x: np.ndarray) -> float:
    return 1e-6 * (1.0 + float(np.max(np.abs(x))))


def cmd_solve(args) -> int:
    config = load_config(args.config)
    game = _game_for(config, args.nu, args.endpoint)
    kwargs = dict(
        tol=args.tol,
        max_iter=args.max_iter,
        adaptive=args.adaptive,
        callbacks=_callbacks(args, "vne" if args.vne else "svwe"),
    )
    report = solve_vne(game, **kwargs) if args.vne else solve_svwe(game, **kwargs)

    payload = report.to_dict()
    payload["feasible"] = game.is_feasible(report.x_hat, tol=_feasibility_tol(report.x_hat))
    if not payload["feasible"]:
        logger.warning(f"solution violates the constraints by {game.violation(report.x_hat):.3g}")
    if game.is_quadratic and game.shared_price is not None:
        payload["certificate"] = monotonicity_certificate(game).to_dict()
    _emit(payload, args.out)
    return EXIT_OK if report.converged else EXIT_SOLVER_FAILURE


def cmd_sweep(args) -> int:
    result = run_sweep(
        args.config,
        parse_nu_list(args.nu),
        tol=args.tol,
        out_path=args.out,
        endpoint=args.endpoint,
        seed=args.seed,
        vne=args.vne,
        workers=args.workers,
        max_iter=args.max_iter,
        callbacks=_callbacks(args, "sweep"),
    )
    logger.info(f"{len(result.rows)} rows written to {result.out_path}")
    if result.vne_path is not None:
        logger.info(f"atomic rows written to {result.vne_path}")
    return EXIT_OK if result.all_converged else EXIT_SOLVER_FAILURE


def cmd_smartgrid(args) -> int:
    sc = SmartGridScenario(a_O=args.aO, a_P=args.aP, E_max=args.Emax, N=args.N)
    analytic = analytic_svwe_error(sc, args.I)
    payload = {"I": args.I, "E_tot": sc.E_tot, "X_star": analytic_vwe(sc).tolist()}
    payload.update(analytic.to_dict())

    converged = True
    if args.solve:
        report = solve_svwe(
            build_smartgrid(sc, args.I),
            tol=args.tol,
            max_iter=args.max_iter,
            callbacks=_callbacks(args, "svwe"),
        )
        payload["solved"] = report.to_dict()
        payload["solved_relative_gap"] = float(
            np.linalg.norm(report.X_hat - analytic.X_hat) / np.linalg.norm(analytic.X_hat)
        )
        converged = report.converged
    _emit(payload, args.out)
    return EXIT_OK if converged else EXIT_SOLVER_FAILURE


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aggsolve",
        description="Equilibria of aggregative population games and their finite-type approximations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="log at debug level")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_solver_args(p):
        p.add_argument("--tol", type=float, default=None, help="residual tolerance")
        p.add_argument("--max-iter", type=int, default=None)
        p.add_argument("--progress", action="store_true", help="show a progress bar")
        p.add_argument("--progress-file", type=str, default=None, help="mirror progress into a JSON file")
        p.add_argument("--progress-interval", type=int, default=1, help="steps between progress file writes")
        p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("solve", help="solve one game or one discretization of a characteristic")
    p.add_argument("--config", required=True, help="JSON file or shipped configuration name")
    p.add_argument("--nu", type=int, default=10, help="discretization level for characteristics")
    p.add_argument("--endpoint", choices=get_endpoint_types(), default=None)
    p.add_argument("--vne", action="store_true", help="atomic Nash equilibrium instead of Wardrop")
    p.add_argument("--adaptive", action="store_true", help="backtrack the extragradient step")
    add_solver_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="convergence sweep over discretization levels")
    p.add_argument("--config", required=True, help="JSON file or shipped configuration name")
    p.add_argument("--nu", type=str, default="1,2,4,8,16,32,64", help="e.g. 1,2,4 or 1-64")
    p.add_argument("--endpoint", choices=get_endpoint_types(), default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--vne", action="store_true", help="also write <out>_vne.csv")
    p.add_argument("--workers", type=int, default=None)
    add_solver_args(p)
    p.set_defaults(func=cmd_sweep, out="results.csv")

    p = sub.add_parser("smartgrid", help="closed-form smart grid equilibrium and error")
    p.add_argument("--aO", type=float, default=1.0)
    p.add_argument("--aP", type=float, default=2.0)
    p.add_argument("--Emax", type=float, default=20.0)
    p.add_argument("--N", type=float, default=3e7)
    p.add_argument("--I", type=int, default=10)
    p.add_argument("--solve", action="store_true", help="also solve the I-type game numerically")
    add_solver_args(p)
    p.set_defaults(func=cmd_smartgrid)
    return parser


def main(argv: Sequence[str] = None) -> int:
    args = get_parser().parse_args(argv)
    _initialize_logger(args.verbose)
    try:
        return args.func(args)
    except (FieldException, GameException, AnalysisException) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except SolverException as e:
        print(f"solver failure: {e}", file=sys.stderr)
        return EXIT_SOLVER_FAILURE


if __name__ == "__main__":
    sys.exit(main())
