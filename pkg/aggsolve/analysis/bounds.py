import logging
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from aggsolve.approximation import ApproxMetrics
from aggsolve.type import BoundVariantType

from .constants import BoundConstants

logger = logging.getLogger(__name__)

NOT_AGGREGATIVELY_STRONGLY = "not aggregatively strongly monotone"
NOT_STRONGLY = "not strongly monotone"
OUTSIDE_VALIDITY = "discretization distance not below the interior margin"


@dataclass(frozen=True)
class TheoreticalBounds:
    Omega: float
    bound_agg: Optional[float]
    bound_profile: Optional[float]
    applicable: bool
    variant: BoundVariantType
    reasons: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "Omega": self.Omega,
            "bound_agg": self.bound_agg,
            "bound_profile": self.bound_profile,
            "applicable": self.applicable,
            "variant": str(self.variant.value),
            "reasons": dict(self.reasons),
        }


def omega(
    delta_bar: float,
    eps_bar: float,
    D: float,
    constants: BoundConstants,
    variant: Union[str, BoundVariantType] = BoundVariantType.FULL,
) -> float:
    """Discretization budget entering the squared error bounds.

    ``full``: ``(4 L_f + 1) K_A max(D, delta) + (2 M + 1) eps``, which holds
    while ``delta <= 1`` and ``eps <= 1``. Past that range the unreduced
    ``(4 L_f + 2 eps) K_A max(D, delta) + (2 M + delta) eps`` is taken when larger.
    ``reduced`` drops the terms that vanish when ``D = eps = 0``: ``4 L_f K_A delta``.
    """
    variant = BoundVariantType.from_str(variant)
    spread = max(D, delta_bar)
    if variant == BoundVariantType.REDUCED:
        return 4.0 * constants.L_f * constants.K_A * spread
    value = (4.0 * constants.L_f + 1.0) * constants.K_A * spread + (
        2.0 * constants.M_scalar + 1.0
    ) * eps_bar
    if delta_bar > 1.0 or eps_bar > 1.0:
        unreduced = (4.0 * constants.L_f + 2.0 * eps_bar) * constants.K_A * spread + (
            2.0 * constants.M_scalar + delta_bar
        ) * eps_bar
        value = max(value, unreduced)
    return value


def theoretical_bounds(
    metrics: ApproxMetrics,
    constants: BoundConstants,
    lambda_bar: float = 0.0,
    variant: Union[str, BoundVariantType] = None,
) -> TheoreticalBounds:
    """Error bounds ``sqrt(Omega / beta)`` on the aggregate and ``sqrt(Omega / alpha)`` on the profile.

    ``lambda_bar`` adds the own-impact term of atomic players to the gradient
    distance. The reduced variant is picked automatically when ``D`` and the
    gradient distance are both zero.
    """
    D = 0.0 if not constants.constrained else metrics.D
    eps = metrics.eps_bar + lambda_bar
    if variant is None:
        variant = BoundVariantType.REDUCED if D == 0 and eps == 0 else BoundVariantType.FULL
    variant = BoundVariantType.from_str(variant)

    value = omega(metrics.delta_bar, eps, D, constants, variant)
    logger.debug(
        f"nu={metrics.nu}: Omega={value:.6g} ({variant}); "
        f"with (2M + delta) eps: {(2 * constants.M_scalar + metrics.delta_bar) * eps:.6g}"
    )

    reasons = {}
    applicable = True
    if constants.constrained and not max(metrics.delta_bar, D) < constants.rho_min:
        applicable = False
        reasons["applicable"] = OUTSIDE_VALIDITY

    bound_agg = bound_profile = None
    if applicable:
        if constants.beta > 0:
            bound_agg = float(np.sqrt(value / constants.beta))
        else:
            reasons["bound_agg"] = NOT_AGGREGATIVELY_STRONGLY
        if constants.alpha > 0:
            bound_profile = float(np.sqrt(value / constants.alpha))
        else:
            reasons["bound_profile"] = NOT_STRONGLY

    return TheoreticalBounds(
        Omega=value,
        bound_agg=bound_agg,
        bound_profile=bound_profile,
        applicable=applicable,
        variant=variant,
        reasons=reasons,
    )
