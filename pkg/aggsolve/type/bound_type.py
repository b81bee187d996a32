from waffle_utils.enum import StrEnum as BaseType


class BoundVariantType(BaseType):
    FULL = "full"
    REDUCED = "reduced"


class LipschitzModeType(BaseType):
    BOX = "box"
    AGGREGATE = "aggregate"
