from .base_field import BaseField
from .characteristic_info import AffinePieceInfo, CharacteristicInfo, PiecewiseAffineInfo
from .constraint_info import ConstraintInfo
from .game_info import GameInfo, TypeInfo
from .smartgrid_info import SmartGridInfo

__all__ = [
    "BaseField",
    "ConstraintInfo",
    "TypeInfo",
    "GameInfo",
    "AffinePieceInfo",
    "PiecewiseAffineInfo",
    "CharacteristicInfo",
    "SmartGridInfo",
]
