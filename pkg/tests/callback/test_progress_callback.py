import json

import pytest

from aggsolve.callback import (
    FileProgressCallback,
    ProgressCallback,
    TqdmProgressCallback,
)
from aggsolve.solver import ExtragradientSolver, solve_svwe


def _read_json(file):
    with open(file) as f:
        return json.load(f)


def test_progress_callback():
    callback = ProgressCallback()
    solver = ExtragradientSolver(callbacks=[callback])

    assert callback.current_step is None
    assert callback.total_steps is None
    assert callback.start_time is None

    solver.run_callback_hooks("on_loop_start", 10)
    assert callback.current_step == 0
    assert callback.total_steps == 10
    assert callback.start_time is not None

    solver.run_callback_hooks("on_step_end", 1, 0.5)
    assert callback.current_step == 1
    assert callback.residual == 0.5

    solver.run_callback_hooks("on_step_end", 2)
    assert callback.current_step == 2
    assert callback.residual == 0.5

    solver.run_callback_hooks("on_step_end", 3, 0.75)
    assert callback.residual == 0.75
    assert callback.best_residual == 0.5
    assert callback.get_progress_info().to_dict()["best_residual"] == 0.5

    with pytest.raises(ValueError):
        solver.run_callback_hooks("on_step_end", 0)

    with pytest.raises(ValueError):
        solver.run_callback_hooks("on_step_end", 11)

    with pytest.raises(ValueError):
        solver.run_callback_hooks("on_loop_start", 20)

    solver.run_callback_hooks("on_loop_end")
    assert callback.current_step == 3
    assert callback.total_steps == 10


def test_tqdm_progress_callback():
    callback = TqdmProgressCallback(desc="test")
    solver = ExtragradientSolver(callbacks=[callback])

    assert callback.tqdm_bar is None

    solver.run_callback_hooks("on_loop_start", 10)
    assert callback.tqdm_bar is not None

    solver.run_callback_hooks("on_step_end", 1, 1e-3)
    assert callback.tqdm_bar.n == 1

    solver.run_callback_hooks("on_loop_end")
    assert callback.tqdm_bar is None


def test_file_progress_callback(tmpdir):
    file = tmpdir.join("progress.json").strpath
    callback = FileProgressCallback(file)
    solver = ExtragradientSolver(callbacks=[callback])

    solver.run_callback_hooks("on_loop_start", 10)
    assert _read_json(file)["total_steps"] == 10

    solver.run_callback_hooks("on_step_end", 1, 0.25)
    assert _read_json(file)["current_step"] == 1
    assert _read_json(file)["residual"] == 0.25

    solver.run_callback_hooks("on_step_end", 2)
    assert _read_json(file)["current_step"] == 2

    solver.run_callback_hooks("on_loop_end")
    assert _read_json(file)["current_stage"] == "on_loop_end"


def test_progress_callback_during_solve(tmpdir, unit_interval_game):
    callback1 = FileProgressCallback(tmpdir.join("progress.json").strpath, interval=5)
    callback2 = ProgressCallback()
    report = solve_svwe(
        unit_interval_game(), tol=1e-10, max_iter=500, x0=[[1.0]], callbacks=[callback1, callback2]
    )

    assert report.converged
    assert report.iterations > 0
    assert callback1.current_step == callback2.current_step == report.iterations
    assert callback2.total_steps == 500
    assert _read_json(callback1.file)["current_step"] == report.iterations
