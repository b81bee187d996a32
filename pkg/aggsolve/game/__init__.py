from .characteristic import PiecewiseAffineMap, TypeCharacteristic, pack_cost, theta_grid
from .cost import CostParams, GradientOracle, eval_cost, eval_grad
from .finite_game import FiniteTypeGame
from .monotonicity import MonotonicityCertificate, classify, monotonicity_certificate

__all__ = [
    "CostParams",
    "GradientOracle",
    "eval_cost",
    "eval_grad",
    "PiecewiseAffineMap",
    "TypeCharacteristic",
    "pack_cost",
    "theta_grid",
    "FiniteTypeGame",
    "MonotonicityCertificate",
    "classify",
    "monotonicity_certificate",
]
