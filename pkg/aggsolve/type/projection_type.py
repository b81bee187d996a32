from waffle_utils.enum import StrEnum as BaseType


class ProjectionMethodType(BaseType):
    ACTIVE_SET = "active_set"
    DYKSTRA = "dykstra"
    SIMPLEX = "simplex"
    BOX = "box"


class SetKindType(BaseType):
    GENERAL = "general"
    SIMPLEX = "simplex"
    BOX = "box"
