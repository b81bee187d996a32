"""
Set of types for aggsolve
"""
from .bound_type import BoundVariantType, LipschitzModeType
from .builder_type import BuilderType
from .endpoint_type import EndpointType
from .equilibrium_type import ConfigKindType, EquilibriumType, RepresentativeType
from .monotonicity_type import MONOTONICITY_ORDER, MonotonicityType, monotonicity_rank
from .projection_type import ProjectionMethodType, SetKindType
from .provenance_type import ProvenanceType


def get_monotonicity_types():
    return list(map(lambda x: x.value, MONOTONICITY_ORDER))


def get_endpoint_types():
    return list(map(lambda x: x.value, list(EndpointType)))


def get_builder_types():
    return list(map(lambda x: x.value, list(BuilderType)))


def get_provenance_types():
    return list(map(lambda x: x.value, list(ProvenanceType)))


def get_bound_variant_types():
    return list(map(lambda x: x.value, list(BoundVariantType)))


def get_lipschitz_mode_types():
    return list(map(lambda x: x.value, list(LipschitzModeType)))


def get_projection_method_types():
    return list(map(lambda x: x.value, list(ProjectionMethodType)))


def get_equilibrium_types():
    return list(map(lambda x: x.value, list(EquilibriumType)))


def get_config_kind_types():
    return list(map(lambda x: x.value, list(ConfigKindType)))


__all__ = [
    "MonotonicityType",
    "EndpointType",
    "BuilderType",
    "ProvenanceType",
    "BoundVariantType",
    "LipschitzModeType",
    "ProjectionMethodType",
    "SetKindType",
    "EquilibriumType",
    "RepresentativeType",
    "ConfigKindType",
    "MONOTONICITY_ORDER",
    "monotonicity_rank",
    "get_monotonicity_types",
    "get_endpoint_types",
    "get_builder_types",
    "get_provenance_types",
    "get_bound_variant_types",
    "get_lipschitz_mode_types",
    "get_projection_method_types",
    "get_equilibrium_types",
    "get_config_kind_types",
]
