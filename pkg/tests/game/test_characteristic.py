import numpy as np
import pytest

from aggsolve.exception import ContractViolationError
from aggsolve.game import PiecewiseAffineMap, TypeCharacteristic, pack_cost, theta_grid


@pytest.mark.parametrize(
    "theta, expected_output",
    [(0.0, [1.0]), (0.25, [1.25]), (0.5, [3.0]), (0.75, [3.0]), (1.0, [3.0])],
)
def test_piecewise_affine_map(theta, expected_output):
    f = PiecewiseAffineMap(intercepts=[[1.0], [3.0]], slopes=[[1.0], [0.0]], breaks=[0.5])
    assert np.allclose(f(theta), expected_output)


def test_piecewise_affine_map_lipschitz():
    f = PiecewiseAffineMap(intercepts=[[0, 0], [1, 1]], slopes=[[3, 4], [1, 0]], breaks=[0.3])
    assert f.lipschitz == pytest.approx(5.0)
    assert f.size == 2
    assert PiecewiseAffineMap.constant([1.0, 2.0]).lipschitz == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"intercepts": [[0.0], [1.0]]},
        {"intercepts": [[0.0], [1.0]], "breaks": [1.2]},
        {"intercepts": [[0.0], [1.0], [2.0]], "breaks": [0.6, 0.4]},
        {"intercepts": [[0.0, 1.0]], "slopes": [[1.0]]},
    ],
)
def test_piecewise_affine_map_errors(kwargs):
    with pytest.raises(ContractViolationError):
        PiecewiseAffineMap(**kwargs)


def test_theta_grid_refines_discontinuities():
    grid = theta_grid(5, [0.3])
    assert grid[0] == 0.0 and grid[-1] == 1.0
    assert 0.3 in grid
    assert np.any(np.isclose(grid, 0.3 - 1e-9, rtol=0, atol=1e-12))
    assert np.all(np.diff(grid) > 0)


def test_characteristic_evaluation(constant_characteristic):
    tc = constant_characteristic
    assert (tc.T, tc.q, tc.p, tc.l) == (2, 4, 0, 6)
    S, r = tc.unpack(tc.s(0.3))
    assert np.allclose(S, 2 * np.eye(2))
    assert np.allclose(r, [1.0, 0.5])
    assert np.allclose(tc.params(0.7), np.concatenate([[1, 1, 0, 0], pack_cost(S, r)]))
    assert tc.is_constant()
    assert tc.radius_bound == pytest.approx(np.sqrt(2))
    assert tc.set_at(0.2).contains([1.0, 1.0])
    assert np.allclose(tc.cost_at(0.9).S, 2 * np.eye(2))


def test_characteristic_lipschitz_L3(constant_characteristic, linear_budget_characteristic):
    tc = constant_characteristic
    a = (np.sqrt(2) + 1.0) * np.sqrt(2)
    assert tc.lipschitz_L3() == pytest.approx(np.sqrt(a * a + 1))
    assert not linear_budget_characteristic.is_constant()
    lower, upper = linear_budget_characteristic.parameter_ranges
    assert np.allclose(lower[:2], [0.0, 0.0])
    assert np.allclose(upper[:2], [1.0, 0.0])


def test_characteristic_errors():
    P = np.vstack([np.eye(2), -np.eye(2)])
    b_map = PiecewiseAffineMap.constant([1, 1, 0, 0])
    s_map = PiecewiseAffineMap.constant(np.zeros(6))
    with pytest.raises(ContractViolationError):
        TypeCharacteristic(P=P, b_map=b_map, s_map=s_map, C=np.eye(3), d=np.zeros(3))
    with pytest.raises(ContractViolationError):
        TypeCharacteristic(P=P, b_map=b_map, s_map=s_map, C=np.eye(2), d=np.zeros(2), Q=[[1, 1]])
    with pytest.raises(ContractViolationError):
        TypeCharacteristic(
            P=P, b_map=b_map, s_map=s_map, C=np.eye(2), d=np.zeros(2), discontinuities=(1.0,)
        )
    with pytest.raises(ContractViolationError):
        TypeCharacteristic(
            P=P,
            b_map=lambda theta: np.array([1 / theta if theta else np.inf, 1, 0, 0]),
            s_map=s_map,
            C=np.eye(2),
            d=np.zeros(2),
        )
