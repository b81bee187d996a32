from waffle_utils.enum import StrEnum as BaseType


class ProvenanceType(BaseType):
    EXACT = "exact"
    SAMPLED = "sampled"
    UPPER_BOUND = "upper_bound"
