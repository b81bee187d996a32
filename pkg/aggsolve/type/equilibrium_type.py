from waffle_utils.enum import StrEnum as BaseType


class EquilibriumType(BaseType):
    SVWE = "svwe"
    VNE = "vne"


class RepresentativeType(BaseType):
    MEAN = "mean"
    SAMPLE = "sample"


class ConfigKindType(BaseType):
    GAME = "game"
    CHARACTERISTIC = "characteristic"
    SMARTGRID = "smartgrid"
