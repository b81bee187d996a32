import logging
from typing import Optional, Union

import numpy as np

from aggsolve.config import Config
from aggsolve.exception import ContractViolationError, MeshgridTooFineError
from aggsolve.game import FiniteTypeGame, TypeCharacteristic
from aggsolve.math import PolytopeSet
from aggsolve.type import EndpointType, RepresentativeType

from .metrics import (
    ApproxMetrics,
    compute_constraint_distance,
    compute_delta,
    compute_epsilon,
)
from .partition import Partition, TypeCell, left_limit_point

logger = logging.getLogger(__name__)

_CUT_MERGE_TOLERANCE = 1e-12


def _check_nu(nu: int):
    if not isinstance(nu, (int, np.integer)) or nu < 1:
        raise ContractViolationError(f"nu must be a positive integer: {nu!r}")


def _is_jump(theta: float, discontinuities) -> bool:
    return any(abs(theta - sigma) <= _CUT_MERGE_TOLERANCE for sigma in discontinuities)


def uniform_cut_points(nu: int, discontinuities=()) -> list[float]:
    """Sorted cuts ``{k / nu} U {sigma_k}`` with near-duplicates merged."""
    _check_nu(nu)
    candidates = sorted([k / nu for k in range(nu + 1)] + list(discontinuities))
    cuts = [candidates[0]]
    for c in candidates[1:]:
        if c - cuts[-1] > _CUT_MERGE_TOLERANCE:
            cuts.append(c)
    cuts[-1] = 1.0
    return cuts


def _metrics(
    game: FiniteTypeGame,
    tc: TypeCharacteristic,
    partition: Partition,
    nu: int,
    A: Optional[PolytopeSet],
    samples: Optional[int],
    workers: Optional[int],
) -> ApproxMetrics:
    radius = max(game.R, tc.radius_bound)
    delta = compute_delta(game, tc, partition, samples=samples, workers=workers)
    eps = compute_epsilon(game, tc, partition, samples=samples, radius=radius, workers=workers)
    metrics = ApproxMetrics(
        nu=nu,
        I=game.I,
        delta_bar=delta.value,
        eps_bar=eps.value,
        D=compute_constraint_distance(game.A, A),
        partition=partition,
        delta_provenance=delta.provenance,
        eps_provenance=eps.provenance,
        radius=radius,
    )
    logger.debug(
        f"nu={nu} I={game.I} delta={metrics.delta_bar:.6g} ({delta.provenance}) "
        f"eps={metrics.eps_bar:.6g} ({eps.provenance})"
    )
    return metrics


def build_uniform_split(
    tc: TypeCharacteristic,
    nu: int,
    A: Optional[PolytopeSet] = None,
    endpoint: Union[str, EndpointType] = EndpointType.MID,
    compute_metrics: bool = True,
    samples: int = None,
    workers: int = None,
) -> tuple[FiniteTypeGame, Optional[ApproxMetrics]]:
    """Approximate a characteristic by splitting [0, 1] into ``nu`` equal intervals.

    Discontinuities of the characteristic are added as extra cuts. Each type
    copies the characteristic at one point of its interval.

    Args:
        tc (TypeCharacteristic): characteristic to approximate.
        nu (int): number of uniform intervals.
        A (PolytopeSet, optional): aggregate constraint, kept as is.
        endpoint (Union[str, EndpointType], optional): representative point of each interval.
        compute_metrics (bool, optional): compute delta and epsilon. Defaults to True.
        samples (int, optional): thetas per interval for the metric sups.
        workers (int, optional): worker threads for the metrics.

    Returns:
        tuple[FiniteTypeGame, Optional[ApproxMetrics]]: the game and its metrics.
    """
    cuts = uniform_cut_points(nu, tc.discontinuities)
    endpoint = EndpointType.from_str(endpoint)
    lows, highs = np.array(cuts[:-1]), np.array(cuts[1:])
    if endpoint == EndpointType.MID:
        thetas = (lows + highs) / 2
    elif endpoint == EndpointType.RIGHT:
        # a cell ending on a jump takes the limit from inside the cell
        thetas = np.array(
            [
                left_limit_point(lo, hi) if _is_jump(hi, tc.discontinuities) else hi
                for lo, hi in zip(lows, highs)
            ]
        )
    else:
        thetas = lows

    masses = highs - lows
    game = FiniteTypeGame(
        mu=masses / masses.sum(),
        sets=tuple(tc.set_at(theta) for theta in thetas),
        costs=tuple(tc.cost_at(theta) for theta in thetas),
        A=A,
    )
    if not compute_metrics:
        return game, None
    partition = Partition.from_cut_points(cuts)
    return game, _metrics(game, tc, partition, nu, A, samples, workers)


def _node_runs(indices: np.ndarray, n: int) -> tuple[tuple[float, float], ...]:
    # node k stands for [k/n, (k+1)/n); merge consecutive nodes into intervals
    runs = []
    start = prev = int(indices[0])
    for k in indices[1:]:
        k = int(k)
        if k != prev + 1:
            runs.append((start / n, (prev + 1) / n))
            start = k
        prev = k
    runs.append((start / n, (prev + 1) / n))
    return tuple(runs)


def build_meshgrid(
    tc: TypeCharacteristic,
    theta_samples: int = None,
    nu: int = 1,
    A: Optional[PolytopeSet] = None,
    representative: Union[str, RepresentativeType] = RepresentativeType.MEAN,
    cell_cap: int = None,
    compute_metrics: bool = True,
    workers: int = None,
) -> tuple[FiniteTypeGame, Optional[ApproxMetrics]]:
    """Approximate a characteristic by gridding its parameter box into ``nu`` slices per component.

    Types are the occupied cells; a cell's mass is the share of quadrature
    nodes ``(k + 1/2) / theta_samples`` that fall in it and its parameters are
    the node average (or the first node when ``representative="sample"``).
    Components that do not vary are not split.

    Raises:
        ContractViolationError: if nu or theta_samples is not positive.
        MeshgridTooFineError: if the grid would have more than ``cell_cap`` cells.
    """
    _check_nu(nu)
    theta_samples = Config.MESHGRID_QUADRATURE if theta_samples is None else theta_samples
    if theta_samples < 1:
        raise ContractViolationError(f"theta_samples must be positive: {theta_samples}")
    cell_cap = Config.MESHGRID_CELL_CAP if cell_cap is None else cell_cap
    representative = RepresentativeType.from_str(representative)

    nodes = (np.arange(theta_samples) + 0.5) / theta_samples
    values = np.array([tc.params(theta) for theta in nodes])
    lower, upper = values.min(axis=0), values.max(axis=0)
    width = upper - lower
    active = width > 1e-12 * (1.0 + np.abs(upper))
    n_active = int(active.sum())
    if n_active and nu**n_active > cell_cap:
        raise MeshgridTooFineError(
            f"meshgrid with nu={nu} over {n_active} varying parameters has "
            f"{nu}^{n_active} cells, above the cap {cell_cap}"
        )

    owner = np.zeros(theta_samples, dtype=int)
    if n_active:
        scaled = (values[:, active] - lower[active]) / width[active]
        index = np.clip(np.floor(scaled * nu).astype(int), 0, nu - 1)
        _, owner = np.unique(index, axis=0, return_inverse=True)
        owner = owner.reshape(-1)

    cells, sets, costs = [], [], []
    for c in range(owner.max() + 1):
        members = np.flatnonzero(owner == c)
        if representative == RepresentativeType.MEAN:
            v = values[members].mean(axis=0)
        else:
            v = values[members[0]]
        b, e, s = tc.split_params(v)
        cells.append(
            TypeCell(
                intervals=_node_runs(members, theta_samples),
                mass=members.size / theta_samples,
                nodes=nodes[members],
            )
        )
        sets.append(tc.polytope(b, e))
        costs.append(tc.cost(s))

    partition = Partition(cells=tuple(cells))
    masses = partition.masses
    game = FiniteTypeGame(mu=masses / masses.sum(), sets=tuple(sets), costs=tuple(costs), A=A)
    logger.debug(f"meshgrid nu={nu}: {game.I} occupied cells out of {nu**n_active}")
    if not compute_metrics:
        return game, None
    return game, _metrics(game, tc, partition, nu, A, None, workers)


def check_span_condition(game: FiniteTypeGame, tc: TypeCharacteristic) -> bool:
    """True when every type set has the characteristic's equality block, so all spans agree."""
    rank = np.linalg.matrix_rank(tc.Q) if tc.p else 0
    for s in game.sets:
        if s.Q.shape != tc.Q.shape or not np.array_equal(s.Q, tc.Q):
            return False
        if (np.linalg.matrix_rank(s.Q) if s.p else 0) != rank:
            return False
    return True
