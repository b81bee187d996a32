from waffle_utils.enum import StrEnum as BaseType


class BuilderType(BaseType):
    UNIFORM = "uniform"
    MESHGRID = "meshgrid"
