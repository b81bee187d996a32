import pytest

from aggsolve.type import (
    BoundVariantType,
    BuilderType,
    ConfigKindType,
    EndpointType,
    EquilibriumType,
    LipschitzModeType,
    MonotonicityType,
    ProvenanceType,
    RepresentativeType,
    get_monotonicity_types,
    monotonicity_rank,
)


def _type_check(type_member, test_value):
    assert type_member == test_value
    assert type_member == test_value.upper()
    assert type_member == test_value.lower()
    assert type_member.lower() == test_value.lower()
    assert type_member.upper() != test_value.lower()
    assert type_member.upper() == test_value.upper()
    assert type_member.lower() != test_value.upper()

    assert type_member != "something not member"


def _member_check(type_class, test_value):
    assert test_value.lower() in list(type_class)
    assert test_value.upper() in list(type_class)


@pytest.mark.parametrize(
    "monotonicity_type, test_value",
    [
        [MonotonicityType.NONE, "none"],
        [MonotonicityType.MONOTONE, "monotone"],
        [MonotonicityType.AGGREGATIVELY_STRONGLY, "aggregatively_strongly"],
        [MonotonicityType.STRONGLY, "strongly"],
    ],
)
def test_monotonicity_type(monotonicity_type, test_value):
    _type_check(monotonicity_type, test_value)
    _member_check(MonotonicityType, test_value)


@pytest.mark.parametrize(
    "endpoint_type, test_value",
    [[EndpointType.MID, "mid"], [EndpointType.RIGHT, "right"], [EndpointType.LEFT, "left"]],
)
def test_endpoint_type(endpoint_type, test_value):
    _type_check(endpoint_type, test_value)
    _member_check(EndpointType, test_value)


@pytest.mark.parametrize(
    "type_class, member, test_value",
    [
        [ProvenanceType, ProvenanceType.EXACT, "exact"],
        [ProvenanceType, ProvenanceType.SAMPLED, "sampled"],
        [ProvenanceType, ProvenanceType.UPPER_BOUND, "upper_bound"],
        [BoundVariantType, BoundVariantType.FULL, "full"],
        [BoundVariantType, BoundVariantType.REDUCED, "reduced"],
        [LipschitzModeType, LipschitzModeType.BOX, "box"],
        [LipschitzModeType, LipschitzModeType.AGGREGATE, "aggregate"],
        [EquilibriumType, EquilibriumType.SVWE, "svwe"],
        [EquilibriumType, EquilibriumType.VNE, "vne"],
        [RepresentativeType, RepresentativeType.MEAN, "mean"],
        [RepresentativeType, RepresentativeType.SAMPLE, "sample"],
        [ConfigKindType, ConfigKindType.GAME, "game"],
        [ConfigKindType, ConfigKindType.CHARACTERISTIC, "characteristic"],
        [ConfigKindType, ConfigKindType.SMARTGRID, "smartgrid"],
        [BuilderType, BuilderType.UNIFORM, "uniform"],
        [BuilderType, BuilderType.MESHGRID, "meshgrid"],
    ],
)
def test_other_types(type_class, member, test_value):
    _type_check(member, test_value)
    _member_check(type_class, test_value)


def test_monotonicity_order():
    ranks = [monotonicity_rank(v) for v in get_monotonicity_types()]
    assert ranks == sorted(ranks)
    assert monotonicity_rank(MonotonicityType.STRONGLY) > monotonicity_rank(
        MonotonicityType.AGGREGATIVELY_STRONGLY
    )
    assert monotonicity_rank("none") == 0
