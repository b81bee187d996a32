from waffle_utils.enum import StrEnum as BaseType


class MonotonicityType(BaseType):
    NONE = "none"
    MONOTONE = "monotone"
    AGGREGATIVELY_STRONGLY = "aggregatively_strongly"
    STRONGLY = "strongly"


# weakest first
MONOTONICITY_ORDER = [
    MonotonicityType.NONE,
    MonotonicityType.MONOTONE,
    MonotonicityType.AGGREGATIVELY_STRONGLY,
    MonotonicityType.STRONGLY,
]


def monotonicity_rank(v: MonotonicityType) -> int:
    return MONOTONICITY_ORDER.index(MonotonicityType.from_str(str(v)))
