import numpy as np
import pytest

from aggsolve.approximation import (
    build_meshgrid,
    build_uniform_split,
    check_span_condition,
    uniform_cut_points,
)
from aggsolve.exception import ContractViolationError, MeshgridTooFineError
from aggsolve.game import PiecewiseAffineMap, TypeCharacteristic
from aggsolve.scenario import SmartGridScenario, load_config


def _step_budget_characteristic():
    """T=1, X_theta = [0, 1] below 0.5 and [0, 2] above."""
    return TypeCharacteristic(
        P=np.array([[1.0], [-1.0]]),
        b_map=PiecewiseAffineMap(intercepts=[[1.0, 0.0], [2.0, 0.0]], breaks=[0.5]),
        s_map=PiecewiseAffineMap.constant([1.0, 0.0]),
        C=np.eye(1),
        d=np.zeros(1),
        discontinuities=(0.5,),
    )


@pytest.mark.parametrize(
    "nu, discontinuities, expected_output",
    [
        (4, (), [0.0, 0.25, 0.5, 0.75, 1.0]),
        (2, (0.5,), [0.0, 0.5, 1.0]),
        (2, (0.3,), [0.0, 0.3, 0.5, 1.0]),
        (1, (), [0.0, 1.0]),
    ],
)
def test_uniform_cut_points(nu, discontinuities, expected_output):
    assert np.allclose(uniform_cut_points(nu, discontinuities), expected_output)


@pytest.mark.parametrize("nu", [0, -1, 2.5])
def test_uniform_cut_points_errors(nu):
    with pytest.raises(ContractViolationError):
        uniform_cut_points(nu)


@pytest.mark.parametrize(
    "endpoint, expected_output",
    [
        ("mid", [0.125, 0.375, 0.625, 0.875]),
        ("left", [0.0, 0.25, 0.5, 0.75]),
        ("right", [0.25, 0.5, 0.75, 1.0]),
    ],
)
def test_build_uniform_split(linear_budget_characteristic, endpoint, expected_output):
    game, metrics = build_uniform_split(
        linear_budget_characteristic, 4, endpoint=endpoint, compute_metrics=False
    )
    assert metrics is None
    assert game.I == 4
    assert np.allclose(game.mu, 0.25)
    assert np.allclose([s.box_bounds[1][0] for s in game.sets], expected_output)


def test_build_uniform_split_merges_discontinuity():
    game, metrics = build_uniform_split(_step_budget_characteristic(), 2)
    assert game.I == 2
    assert np.allclose([s.box_bounds[1][0] for s in game.sets], [1.0, 2.0])
    assert metrics.delta_bar == 0.0
    assert metrics.eps_bar == 0.0


def test_build_uniform_split_right_endpoint_at_jump():
    game, metrics = build_uniform_split(_step_budget_characteristic(), 2, endpoint="right")
    assert np.allclose([s.box_bounds[1][0] for s in game.sets], [1.0, 2.0])
    assert metrics.delta_bar == pytest.approx(0.0, abs=1e-12)


def test_right_endpoint_delta_vanishes_on_piecewise_budget():
    config = load_config("piecewise_budget")
    deltas = []
    for nu in (2, 4, 8, 16, 32):
        game, metrics = build_uniform_split(config.characteristic, nu, A=config.A, endpoint="right")
        budgets = [s.e[0] for s, lo in zip(game.sets, metrics.partition.breakpoints()) if lo < 0.5]
        assert max(budgets) == pytest.approx(1.5, abs=1e-6)
        assert metrics.delta_bar == pytest.approx(1 / nu, abs=1e-6)
        deltas.append(metrics.delta_bar)
    assert all(d1 > d2 for d1, d2 in zip(deltas, deltas[1:]))


def test_build_uniform_split_smartgrid_right_endpoint():
    sc = SmartGridScenario(a_O=1.0, a_P=2.0, E_max=20.0, N=3e7)
    I = 10
    game, _ = build_uniform_split(sc.characteristic(), I, endpoint="right", compute_metrics=False)
    budgets = np.array([s.simplex_total for s in game.sets])
    assert np.allclose(budgets, np.arange(1, I + 1) / I * sc.N * sc.E_max)
    assert game.mu @ budgets == pytest.approx(sc.E_tot * (1 + 1 / I))


def test_build_meshgrid_constant(constant_characteristic):
    for nu in (1, 3, 8):
        game, metrics = build_meshgrid(constant_characteristic, theta_samples=32, nu=nu)
        assert game.I == 1
        assert np.allclose(game.mu, [1.0])
        assert np.allclose(game.costs[0].S, 2 * np.eye(2))
        assert np.allclose(game.sets[0].b, [1.0, 1.0, 0.0, 0.0])
        assert metrics.delta_bar == 0.0 and metrics.eps_bar == 0.0


def test_build_meshgrid_linear_budget(linear_budget_characteristic):
    game, metrics = build_meshgrid(linear_budget_characteristic, theta_samples=1000, nu=2)
    assert game.I == 2
    assert np.allclose(game.mu, [0.5, 0.5])
    assert np.allclose(sorted(s.box_bounds[1][0] for s in game.sets), [0.25, 0.75])
    assert metrics.partition.I == 2


def test_build_meshgrid_two_varying_parameters():
    # b = theta and r = frac(3 theta) vary independently, so all 9 cells are hit
    tc = TypeCharacteristic(
        P=np.array([[1.0], [-1.0]]),
        b_map=PiecewiseAffineMap(intercepts=[[0.0, 0.0]], slopes=[[1.0, 0.0]]),
        s_map=PiecewiseAffineMap(
            intercepts=[[1.0, 0.0], [1.0, -1.0], [1.0, -2.0]],
            slopes=[[0.0, 3.0]] * 3,
            breaks=[1 / 3, 2 / 3],
        ),
        C=np.eye(1),
        d=np.zeros(1),
    )
    game, metrics = build_meshgrid(tc, theta_samples=900, nu=3, compute_metrics=False)
    assert game.I <= 9
    assert game.mu.sum() == pytest.approx(1.0)

    nodes = (np.arange(100_000) + 0.5) / 100_000
    b, r = nodes, np.mod(3 * nodes, 1.0)
    cells = np.minimum(np.floor(b * 3), 2) * 3 + np.minimum(np.floor(r * 3), 2)
    analytic = np.bincount(cells.astype(int), minlength=9) / nodes.size
    assert np.allclose(sorted(game.mu), sorted(analytic[analytic > 0]), atol=0.01)


def test_build_meshgrid_errors(linear_budget_characteristic):
    tc = TypeCharacteristic(
        P=np.array([[1.0], [-1.0]]),
        b_map=PiecewiseAffineMap(intercepts=[[0.0, 0.0]], slopes=[[1.0, 0.0]]),
        s_map=PiecewiseAffineMap(intercepts=[[1.0, 0.0]], slopes=[[0.0, 1.0]]),
        C=np.eye(1),
        d=np.zeros(1),
    )
    with pytest.raises(MeshgridTooFineError):
        build_meshgrid(tc, theta_samples=100, nu=3, cell_cap=4)
    with pytest.raises(ContractViolationError):
        build_meshgrid(linear_budget_characteristic, theta_samples=0, nu=2)
    with pytest.raises(ContractViolationError):
        build_meshgrid(linear_budget_characteristic, theta_samples=10, nu=0)


def test_check_span_condition(constant_characteristic):
    game, _ = build_uniform_split(constant_characteristic, 3, compute_metrics=False)
    assert check_span_condition(game, constant_characteristic)
    sc = SmartGridScenario(a_O=1.0, a_P=2.0, E_max=20.0, N=1.0)
    grid_game, _ = build_uniform_split(sc.characteristic(), 3, endpoint="right", compute_metrics=False)
    assert not check_span_condition(grid_game, constant_characteristic)
