import itertools

import numpy as np
import pytest

from aggsolve.game import CostParams, FiniteTypeGame, PiecewiseAffineMap, TypeCharacteristic
from aggsolve.math import PolytopeSet


def make_random_game(seed: int, I: int, T: int, with_A: bool = False) -> FiniteTypeGame:
    """Strongly monotone box game with a symmetric price slope, so its SVWE solves a convex QP."""
    rng = np.random.default_rng(seed)
    mu = rng.dirichlet(np.ones(I) * 5.0)
    D = rng.standard_normal((T, T))
    C = D @ D.T / T + 0.5 * np.eye(T)
    d = rng.uniform(-0.5, 0.5, T)
    sets, costs = [], []
    for _ in range(I):
        upper = rng.uniform(0.5, 2.0, T)
        sets.append(PolytopeSet.box(np.zeros(T), upper))
        B = rng.standard_normal((T, T))
        S = B @ B.T / T + 0.5 * np.eye(T)
        costs.append(CostParams(C=C, d=d, S=S, r=rng.uniform(2.0, 4.0, T)))
    A = None
    if with_A:
        A = PolytopeSet(P=np.vstack([np.ones((1, T)), -np.eye(T)]), b=np.r_[0.3 * T, np.zeros(T)])
    return FiniteTypeGame(mu=mu, sets=tuple(sets), costs=tuple(costs), A=A)


def kkt_oracle(game: FiniteTypeGame) -> np.ndarray:
    """Brute-force SVWE of a small box game with symmetric C.

    The SVWE minimizes ``sum_i mu_i (x_i^T S_i x_i / 2 + (d - r_i)^T x_i) + X^T C X / 2``.
    Every choice of active bounds and active aggregate rows gives an
    equality-constrained candidate; the feasible candidate with the lowest
    objective is the optimum.
    """
    I, T = game.I, game.T
    n = I * T
    mu = game.mu
    M = np.kron(mu[None, :], np.eye(T))
    C = game.costs[0].C
    H = np.zeros((n, n))
    g = np.zeros(n)
    lower, upper = np.zeros(n), np.zeros(n)
    for i, (s, c) in enumerate(zip(game.sets, game.costs)):
        sl = slice(i * T, (i + 1) * T)
        H[sl, sl] = mu[i] * c.S
        g[sl] = mu[i] * (c.d - c.r)
        lower[sl], upper[sl] = s.box_bounds
    H += M.T @ C @ M

    A_rows = np.zeros((0, n)) if game.A is None else game.A.P @ M
    A_rhs = np.zeros(0) if game.A is None else game.A.b

    best, best_value = None, np.inf
    for status in itertools.product((0, 1, 2), repeat=n):
        status = np.array(status)
        fixed = status > 0
        z_fixed = np.where(status == 1, lower, upper)
        free = np.flatnonzero(~fixed)
        for k in range(A_rows.shape[0] + 1):
            for active in itertools.combinations(range(A_rows.shape[0]), k):
                E = A_rows[list(active)]
                e = A_rhs[list(active)]
                z = np.where(fixed, z_fixed, 0.0)
                if free.size:
                    rhs_e = e - E[:, fixed] @ z[fixed]
                    K = np.block(
                        [
                            [H[np.ix_(free, free)], E[:, free].T],
                            [E[:, free], np.zeros((len(active), len(active)))],
                        ]
                    )
                    rhs = np.concatenate([-(g[free] + H[np.ix_(free, fixed)] @ z[fixed]), rhs_e])
                    sol = np.linalg.lstsq(K, rhs, rcond=None)[0]
                    if np.linalg.norm(K @ sol - rhs) > 1e-9:
                        continue
                    z[free] = sol[: free.size]
                elif E.shape[0] and np.linalg.norm(E @ z - e) > 1e-9:
                    continue
                if np.any(z < lower - 1e-9) or np.any(z > upper + 1e-9):
                    continue
                if A_rows.shape[0] and np.any(A_rows @ z > A_rhs + 1e-9):
                    continue
                value = 0.5 * z @ H @ z + g @ z
                if value < best_value:
                    best, best_value = z, value
    return best.reshape(I, T)


@pytest.fixture
def random_game():
    return make_random_game


@pytest.fixture
def unit_interval_game():
    """I=1, T=1, X=[0,1], c(X)=X and no private utility."""

    def _make(d: float = 0.0) -> FiniteTypeGame:
        return FiniteTypeGame(
            mu=[1.0],
            sets=(PolytopeSet.box([0.0], [1.0]),),
            costs=(CostParams(C=[[1.0]], d=[d], S=[[0.0]], r=[0.0]),),
        )

    return _make


@pytest.fixture
def constant_characteristic() -> TypeCharacteristic:
    return TypeCharacteristic(
        P=np.vstack([np.eye(2), -np.eye(2)]),
        b_map=PiecewiseAffineMap.constant([1.0, 1.0, 0.0, 0.0]),
        s_map=PiecewiseAffineMap.constant([2.0, 0.0, 0.0, 2.0, 1.0, 0.5]),
        C=np.eye(2),
        d=np.zeros(2),
    )


@pytest.fixture
def linear_budget_characteristic() -> TypeCharacteristic:
    """T=1, X_theta = [0, theta]."""
    return TypeCharacteristic(
        P=np.array([[1.0], [-1.0]]),
        b_map=PiecewiseAffineMap(intercepts=[[0.0, 0.0]], slopes=[[1.0, 0.0]]),
        s_map=PiecewiseAffineMap.constant([1.0, 0.0]),
        C=np.eye(1),
        d=np.zeros(1),
    )


@pytest.fixture
def kkt_solution():
    return kkt_oracle
