from waffle_utils.enum import StrEnum as BaseType


class EndpointType(BaseType):
    MID = "mid"
    RIGHT = "right"
    LEFT = "left"
