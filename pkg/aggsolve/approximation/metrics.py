import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from aggsolve.config import Config
from aggsolve.exception import UnsupportedConfigurationError
from aggsolve.game import FiniteTypeGame, TypeCharacteristic
from aggsolve.math import PolytopeSet, hausdorff_distance
from aggsolve.type import ProvenanceType

from .partition import Partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceEstimate:
    """A sup-distance over types with the way it was obtained."""

    value: float
    provenance: ProvenanceType
    per_type: np.ndarray

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True, eq=False)
class ApproxMetrics:
    nu: int
    I: int
    delta_bar: float
    eps_bar: float
    D: float
    partition: Partition
    delta_provenance: ProvenanceType = ProvenanceType.SAMPLED
    eps_provenance: ProvenanceType = ProvenanceType.SAMPLED
    radius: float = 0.0

    def to_dict(self) -> dict:
        return {
            "nu": self.nu,
            "I": self.I,
            "delta_bar": self.delta_bar,
            "eps_bar": self.eps_bar,
            "D": self.D,
            "delta_provenance": str(self.delta_provenance.value),
            "eps_provenance": str(self.eps_provenance.value),
            "partition": self.partition.to_list(),
        }


def _map_types(func, n: int, workers: Optional[int]) -> list:
    workers = Config.THREADS if workers is None else workers
    if workers <= 1 or n <= 1:
        return [func(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=min(workers, n)) as pool:
        return list(pool.map(func, range(n)))


def _check_shared_shape(game: FiniteTypeGame, tc: TypeCharacteristic):
    for s in game.sets:
        if s.P.shape != tc.P.shape or not np.array_equal(s.P, tc.P):
            raise UnsupportedConfigurationError("type sets must share the characteristic's P")
        if s.Q.shape != tc.Q.shape or not np.array_equal(s.Q, tc.Q):
            raise UnsupportedConfigurationError("type sets must share the characteristic's Q")


def _combine(per_type: list[tuple[float, ProvenanceType]], fallback: ProvenanceType) -> DistanceEstimate:
    values = np.array([v for v, _ in per_type])
    flags = {flag for _, flag in per_type}
    if ProvenanceType.UPPER_BOUND in flags:
        provenance = ProvenanceType.UPPER_BOUND
    elif ProvenanceType.SAMPLED in flags:
        provenance = ProvenanceType.SAMPLED
    else:
        provenance = fallback
    return DistanceEstimate(value=float(values.max()), provenance=provenance, per_type=values)


def compute_delta(
    game: FiniteTypeGame,
    tc: TypeCharacteristic,
    partition: Partition,
    samples: int = None,
    workers: int = None,
) -> DistanceEstimate:
    """Largest Hausdorff distance between a type's set and the sets of the types it stands for.

    Exact per sampled theta when T is small (vertex enumeration); otherwise a
    Hoffman-type upper bound ``C0 * ||(b, e)(theta) - (b_i, e_i)||``.
    """
    _check_shared_shape(game, tc)
    samples = Config.THETA_SAMPLES if samples is None else samples
    exact = tc.T <= Config.EXACT_HAUSDORFF_MAX_DIM
    hoffman = 0.0 if exact else max(s.hoffman_constant() for s in game.sets)

    def per_type(i: int) -> tuple[float, ProvenanceType]:
        X_i = game.sets[i]
        worst, all_equal = 0.0, True
        for theta in partition.cells[i].samples(samples):
            b, e = tc.b(theta), tc.e(theta)
            if np.array_equal(b, X_i.b) and np.array_equal(e, X_i.e):
                continue
            all_equal = False
            if exact:
                dist = hausdorff_distance(tc.polytope(b, e), X_i)
            else:
                dist = hoffman * float(np.linalg.norm(np.concatenate([b - X_i.b, e - X_i.e])))
            worst = max(worst, dist)
        if all_equal:
            return 0.0, ProvenanceType.EXACT
        return worst, ProvenanceType.SAMPLED if exact else ProvenanceType.UPPER_BOUND

    return _combine(_map_types(per_type, game.I, workers), ProvenanceType.EXACT)


def compute_epsilon(
    game: FiniteTypeGame,
    tc: TypeCharacteristic,
    partition: Partition,
    samples: int = None,
    radius: float = None,
    workers: int = None,
) -> DistanceEstimate:
    """Largest sup-distance between type gradients and the gradients they stand for.

    For quadratic costs with a shared price map the distance over the action
    hypercube is ``||S_theta - S_i||_2 (R+1) sqrt(T) + ||r_theta - r_i||``.
    """
    if not game.is_quadratic:
        raise UnsupportedConfigurationError("gradient distances need quadratic costs")
    samples = Config.THETA_SAMPLES if samples is None else samples
    radius = max(game.R, tc.radius_bound) if radius is None else radius
    reach = (radius + 1.0) * np.sqrt(tc.T)

    def per_type(i: int) -> tuple[float, ProvenanceType]:
        cost = game.costs[i]
        worst, all_equal = 0.0, True
        for theta in partition.cells[i].samples(samples):
            S, r = tc.unpack(tc.s(theta))
            dS, dr = S - cost.S, r - cost.r
            if not (np.any(dS) or np.any(dr)):
                continue
            all_equal = False
            worst = max(worst, float(np.linalg.norm(dS, 2)) * reach + float(np.linalg.norm(dr)))
        return worst, ProvenanceType.EXACT if all_equal else ProvenanceType.SAMPLED

    return _combine(_map_types(per_type, game.I, workers), ProvenanceType.EXACT)


def compute_constraint_distance(A_nu: Optional[PolytopeSet], A: Optional[PolytopeSet]) -> float:
    """Hausdorff distance between approximating and limit aggregate constraints."""
    if A_nu is None and A is None:
        return 0.0
    if A_nu is None or A is None:
        raise UnsupportedConfigurationError("both games must have an aggregate constraint or neither")
    if A_nu is A:
        return 0.0
    return hausdorff_distance(A_nu, A)
