import numpy as np
import pytest

from aggsolve.analysis import bound_constants, compute_Lf, estimate_rho
from aggsolve.exception import ContractViolationError, DegenerateInteriorError
from aggsolve.game import CostParams, FiniteTypeGame
from aggsolve.math import PolytopeSet
from aggsolve.scenario import SmartGridScenario, load_config
from aggsolve.type import LipschitzModeType


def _box_game(C, S=None, r=None, upper=1.0, I=1, T=2, A=None):
    S = np.zeros((T, T)) if S is None else S
    r = np.zeros(T) if r is None else r
    return FiniteTypeGame(
        mu=np.full(I, 1 / I),
        sets=tuple(PolytopeSet.box(np.zeros(T), np.full(T, upper)) for _ in range(I)),
        costs=tuple(CostParams(C=C, d=np.zeros(T), S=S, r=r) for _ in range(I)),
        A=A,
    )


def test_compute_Lf_zero_operator():
    assert compute_Lf(_box_game(np.zeros((2, 2)))) == 0.0


def test_compute_Lf_box_mode():
    game = _box_game(np.diag([1.0, 2.0]))
    # R + 1 = 1
    assert compute_Lf(game, radius=0.0) == pytest.approx(2 * np.sqrt(2))
    S, r = np.eye(2), np.array([3.0, 4.0])
    game = _box_game(np.zeros((2, 2)), S=S, r=r)
    reach = (np.sqrt(2) + 1.0) * np.sqrt(2)
    assert compute_Lf(game) == pytest.approx(5.0 + reach)


def test_compute_Lf_aggregate_mode_smartgrid():
    sc = SmartGridScenario(a_O=1.0, a_P=2.0, E_max=20.0, N=3e7)
    L_f = compute_Lf(sc.characteristic(), LipschitzModeType.AGGREGATE, sc.aggregate_set())
    assert L_f == pytest.approx(sc.a_P / sc.N * sc.E_tot)
    with pytest.raises(ContractViolationError):
        compute_Lf(sc.characteristic(), "aggregate")


def test_estimate_rho_unit_interval():
    rho = estimate_rho(_box_game(np.eye(1), T=1, I=2))
    assert rho.rho0 == pytest.approx(1 / 6)
    assert rho.rho_min == pytest.approx(1 / 6)
    assert rho.K_A == 0.5
    assert not rho.constrained
    assert rho.rhoY == np.inf


def test_estimate_rho_simplex_segment():
    E = 2.0
    game = FiniteTypeGame(
        mu=[1.0],
        sets=(PolytopeSet.simplex(2, E),),
        costs=(CostParams(C=np.eye(2), d=[0, 0], S=np.zeros((2, 2)), r=[0, 0]),),
    )
    rho = estimate_rho(game)
    # the segment from (E, 0) to (0, E) has half-length E / sqrt(2)
    assert rho.rho0 == pytest.approx(E / (3 * np.sqrt(2)))


def test_estimate_rho_with_aggregate_constraint():
    A = PolytopeSet(P=[[1.0, 1.0], [-1.0, 0.0], [0.0, -1.0]], b=[1.0, 0.0, 0.0])
    game = _box_game(np.eye(2), I=2, A=A)
    rho = estimate_rho(game)
    assert rho.constrained
    assert 0 < rho.rhoY < np.inf
    assert rho.rho_min == min(rho.rho0, rho.rhoY)
    assert rho.K_A == pytest.approx((np.sqrt(2) + 1.0) / rho.rho_min)


def test_estimate_rho_degenerate_interior():
    game = FiniteTypeGame(
        mu=[1.0],
        sets=(PolytopeSet.box([0.0, 0.0], [0.0, 1.0]),),
        costs=(CostParams(C=np.eye(2), d=[0, 0], S=np.zeros((2, 2)), r=[0, 0]),),
    )
    with pytest.raises(DegenerateInteriorError):
        estimate_rho(game)
    constants = bound_constants(game)
    assert constants.K_A == 0.5
    assert constants.rho0 == 0.0


def test_bound_constants_smartgrid():
    sc = SmartGridScenario(a_O=1.0, a_P=2.0, E_max=20.0, N=3e7)
    constants = bound_constants(
        sc.characteristic(), None, LipschitzModeType.AGGREGATE, sc.aggregate_set()
    )
    assert constants.alpha == 0.0
    assert constants.beta == pytest.approx(sc.a_O / sc.N)
    assert constants.K_A == 0.5
    assert constants.L_f == pytest.approx(sc.a_P * sc.E_tot / sc.N)
    assert constants.lipschitz_mode == LipschitzModeType.AGGREGATE
    assert constants.to_dict()["lipschitz_mode"] == "aggregate"


def test_bound_constants_shipped_game():
    config = load_config("two_type_box")
    constants = bound_constants(config.game)
    assert constants.constrained
    assert constants.alpha > 0 and constants.beta > 0
    assert constants.M_scalar == pytest.approx(config.game.R + 1.0)
