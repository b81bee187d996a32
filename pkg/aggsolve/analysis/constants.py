import logging
from dataclasses import asdict, dataclass
from typing import Optional, Union

import numpy as np
from scipy.linalg import null_space, orth
from scipy.optimize import linprog

from aggsolve.config import Config
from aggsolve.exception import (
    ContractViolationError,
    DegenerateInteriorError,
    InfeasibleSetError,
    UnsupportedConfigurationError,
)
from aggsolve.game import FiniteTypeGame, TypeCharacteristic, monotonicity_certificate
from aggsolve.math import PolytopeSet
from aggsolve.type import LipschitzModeType

logger = logging.getLogger(__name__)

# margins at or below this share of the set scale count as empty interiors
_INTERIOR_TOLERANCE = 1e-12

Source = Union[FiniteTypeGame, TypeCharacteristic]


@dataclass(frozen=True)
class RhoEstimate:
    rho0: float
    rhoY: float
    rho_min: float
    K_A: float
    constrained: bool

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class BoundConstants:
    L_f: float
    M_scalar: float
    rho0: float
    rhoY: float
    rho_min: float
    K_A: float
    alpha: float
    beta: float
    constrained: bool = False
    lipschitz_mode: LipschitzModeType = LipschitzModeType.BOX

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lipschitz_mode"] = str(self.lipschitz_mode.value)
        return d


def _cost_samples(source: Source) -> tuple[np.ndarray, np.ndarray, list[tuple[np.ndarray, np.ndarray]]]:
    if isinstance(source, TypeCharacteristic):
        pairs = [source.unpack(source.s(theta)) for theta in source.sample_thetas]
        return source.C, source.d, pairs
    if not source.is_quadratic:
        raise UnsupportedConfigurationError("gradient bounds need quadratic costs")
    C = max((c.C for c in source.costs), key=lambda M: np.linalg.norm(M, 2))
    d = max((c.d for c in source.costs), key=np.linalg.norm)
    return C, d, [(c.S, c.r) for c in source.costs]


def _sets(source: Source) -> list[PolytopeSet]:
    if isinstance(source, TypeCharacteristic):
        return [source.set_at(theta) for theta in source.sample_thetas]
    return list(source.sets)


def compute_Lf(
    source: Source,
    mode: Union[str, LipschitzModeType] = LipschitzModeType.BOX,
    aggregate_set: Optional[PolytopeSet] = None,
    radius: float = None,
) -> float:
    """Uniform bound on ``||C Y + d - r + S x||``.

    ``box`` bounds both points by the hypercube ``[0, R+1]^T``. ``aggregate``
    maximizes the price part over the vertices of ``aggregate_set`` and the
    utility part over the vertices of the type sets; both parts are convex so
    their maxima sit at vertices.
    """
    mode = LipschitzModeType.from_str(mode)
    C, d, pairs = _cost_samples(source)
    T = C.shape[0]

    if mode == LipschitzModeType.BOX:
        R = source.radius_bound if isinstance(source, TypeCharacteristic) else source.R
        R = R if radius is None else radius
        reach = (R + 1.0) * np.sqrt(T)
        price = float(np.linalg.norm(C, 2)) * reach + float(np.linalg.norm(d))
        utility = max(float(np.linalg.norm(r)) + float(np.linalg.norm(S, 2)) * reach for S, r in pairs)
        return price + utility

    if aggregate_set is None:
        raise ContractViolationError("aggregate Lipschitz mode needs the aggregate set")
    price = max(float(np.linalg.norm(C @ v + d)) for v in aggregate_set.vertices)
    if isinstance(source, TypeCharacteristic):
        set_pairs = [
            (source.set_at(theta), source.unpack(source.s(theta))) for theta in source.sample_thetas
        ]
    else:
        set_pairs = [(s, (c.S, c.r)) for s, c in zip(source.sets, source.costs)]
    utility = max(
        float(np.linalg.norm(S @ v - r)) for s, (S, r) in set_pairs for v in s.vertices
    )
    return price + utility


def _witness_sets(source: Source) -> tuple[np.ndarray, list[PolytopeSet]]:
    if isinstance(source, FiniteTypeGame):
        return source.mu, list(source.sets)
    n = Config.THETA_SAMPLES
    thetas = (np.arange(n) + 0.5) / n
    return np.full(n, 1.0 / n), [source.set_at(theta) for theta in thetas]


def _row_norms(P: np.ndarray, basis: np.ndarray) -> np.ndarray:
    return np.linalg.norm(P @ basis, axis=1) if basis.shape[1] else np.zeros(P.shape[0])


def _joint_margin(mu: np.ndarray, sets: list[PolytopeSet], A: PolytopeSet) -> float:
    """Largest r with z_i + rB in X_i and sum_i mu_i z_i + rB in A, balls taken in the relative hulls."""
    I, T = len(sets), sets[0].T
    n = I * T + 1
    rows, rhs, eq_rows, eq_rhs = [], [], [], []
    for i, s in enumerate(sets):
        norms = _row_norms(s.P, s.affine_basis[1])
        block = np.zeros((s.q, n))
        block[:, i * T : (i + 1) * T] = s.P
        block[:, -1] = norms
        rows.append(block)
        rhs.append(s.b)
        if s.p:
            eq = np.zeros((s.p, n))
            eq[:, i * T : (i + 1) * T] = s.Q
            eq_rows.append(eq)
            eq_rhs.append(s.e)

    spans = orth(np.hstack([s.affine_basis[1] for s in sets]))
    directions = spans
    if A.p and spans.shape[1]:
        directions = spans @ null_space(A.Q @ spans)
    block = np.zeros((A.q, n))
    block[:, :-1] = np.kron(mu[None, :], A.P)
    block[:, -1] = _row_norms(A.P, directions)
    rows.append(block)
    rhs.append(A.b)
    if A.p:
        eq = np.zeros((A.p, n))
        eq[:, :-1] = np.kron(mu[None, :], A.Q)
        eq_rows.append(eq)
        eq_rhs.append(A.e)

    c = np.zeros(n)
    c[-1] = -1.0
    res = linprog(
        c,
        A_ub=np.vstack(rows),
        b_ub=np.concatenate(rhs),
        A_eq=np.vstack(eq_rows) if eq_rows else None,
        b_eq=np.concatenate(eq_rhs) if eq_rhs else None,
        bounds=[(None, None)] * (n - 1) + [(0, None)],
        method="highs",
    )
    if res.status != 0:
        raise InfeasibleSetError(f"interior margin LP failed: {res.message}")
    return float(res.x[-1])


def estimate_rho(source: Source, A: Optional[PolytopeSet] = None) -> RhoEstimate:
    """Interior margins of the feasible geometry and the constant ``K_A = (R+1)/rho``.

    ``rho0`` is a third of the smallest Chebyshev radius of the type sets
    within their equality hulls. With an aggregate constraint, ``rhoY`` is a
    third of the largest common radius r such that some profile z has
    ``z_i + rB`` inside every ``X_i`` and ``sum_i mu_i z_i + rB`` inside A.
    Without one, ``K_A`` is 1/2.

    Raises:
        DegenerateInteriorError: if some set or the coupled set has no relative interior.
    """
    if isinstance(source, FiniteTypeGame) and A is None:
        A = source.A
    mu, sets = _witness_sets(source)
    radii = np.array([s.chebyshev[1] for s in sets])
    scale = max(s.scale for s in sets)
    if radii.min() <= _INTERIOR_TOLERANCE * scale:
        raise DegenerateInteriorError(
            f"a type set has no relative interior (Chebyshev radius {radii.min():.3e})"
        )
    rho0 = float(radii.min()) / 3

    if A is None:
        return RhoEstimate(rho0=rho0, rhoY=np.inf, rho_min=rho0, K_A=0.5, constrained=False)

    margin = _joint_margin(mu, sets, A)
    if margin <= _INTERIOR_TOLERANCE * max(scale, A.scale):
        raise DegenerateInteriorError("the aggregate constraint leaves no interior margin")
    rhoY = margin / 3
    rho_min = min(rho0, rhoY)
    R = max(s.radius_bound for s in sets)
    return RhoEstimate(
        rho0=rho0, rhoY=rhoY, rho_min=rho_min, K_A=(R + 1.0) / rho_min, constrained=True
    )


def bound_constants(
    source: Source,
    A: Optional[PolytopeSet] = None,
    mode: Union[str, LipschitzModeType] = LipschitzModeType.BOX,
    aggregate_set: Optional[PolytopeSet] = None,
    radius: float = None,
) -> BoundConstants:
    """Collect every constant the convergence bounds need."""
    mode = LipschitzModeType.from_str(mode)
    if isinstance(source, FiniteTypeGame) and A is None:
        A = source.A
    if radius is None:
        radius = source.radius_bound if isinstance(source, TypeCharacteristic) else source.R
    certificate = monotonicity_certificate(source)

    try:
        rho = estimate_rho(source, A)
    except DegenerateInteriorError:
        if A is not None:
            raise
        # without a coupling constraint the margins do not enter the bound
        logger.debug("type sets without interior; K_A = 1/2 still applies")
        rho = RhoEstimate(rho0=0.0, rhoY=np.inf, rho_min=0.0, K_A=0.5, constrained=False)

    return BoundConstants(
        L_f=compute_Lf(source, mode, aggregate_set, radius),
        M_scalar=radius + 1.0,
        rho0=rho.rho0,
        rhoY=rho.rhoY,
        rho_min=rho.rho_min,
        K_A=rho.K_A,
        alpha=certificate.alpha,
        beta=certificate.beta,
        constrained=rho.constrained,
        lipschitz_mode=mode,
    )
