import numpy as np
import pytest

from aggsolve.analysis import BoundConstants, bound_constants, omega, theoretical_bounds
from aggsolve.analysis.bounds import NOT_AGGREGATIVELY_STRONGLY, NOT_STRONGLY, OUTSIDE_VALIDITY
from aggsolve.approximation import ApproxMetrics, Partition, build_uniform_split
from aggsolve.scenario import SmartGridScenario, analytic_svwe_error
from aggsolve.type import BoundVariantType, LipschitzModeType


def _constants(alpha=1.0, beta=1.0, constrained=False, rho_min=1.0):
    return BoundConstants(
        L_f=2.0,
        M_scalar=3.0,
        rho0=rho_min,
        rhoY=rho_min if constrained else np.inf,
        rho_min=rho_min,
        K_A=5.0 if constrained else 0.5,
        alpha=alpha,
        beta=beta,
        constrained=constrained,
    )


def _metrics(delta=0.0, eps=0.0, D=0.0):
    return ApproxMetrics(
        nu=4,
        I=4,
        delta_bar=delta,
        eps_bar=eps,
        D=D,
        partition=Partition.from_cut_points([0.0, 0.25, 0.5, 0.75, 1.0]),
    )


def test_exact_discretization_has_zero_bounds():
    bounds = theoretical_bounds(_metrics(), _constants())
    assert bounds.Omega == 0.0
    assert bounds.bound_agg == 0.0
    assert bounds.bound_profile == 0.0
    assert bounds.applicable
    assert bounds.variant == BoundVariantType.REDUCED


@pytest.mark.parametrize(
    "variant, expected_output",
    [
        ("full", (4 * 2.0 + 1) * 0.5 * 0.2 + (2 * 3.0 + 1) * 0.1),
        ("reduced", 4 * 2.0 * 0.5 * 0.2),
        (BoundVariantType.FULL, (4 * 2.0 + 1) * 0.5 * 0.2 + (2 * 3.0 + 1) * 0.1),
    ],
)
def test_omega(variant, expected_output):
    assert omega(0.2, 0.1, 0.0, _constants(), variant) == pytest.approx(expected_output)


def test_omega_unreduced_past_unit_distances():
    # delta=2, eps=3: reduced form 30, unreduced 38
    expected = (4 * 2.0 + 2 * 3.0) * 0.5 * 2.0 + (2 * 3.0 + 2.0) * 3.0
    assert omega(2.0, 3.0, 0.0, _constants(), "full") == pytest.approx(expected)
    assert omega(0.2, 3.0, 0.0, _constants(), "full") == pytest.approx(0.9 + 21.0)

    for delta in (0.5, 2.0):
        values = [omega(delta, eps, 0.0, _constants(), "full") for eps in (0.5, 1.0, 1.5, 3.0, 6.0)]
        assert all(b > a for a, b in zip(values, values[1:]))


def test_omega_uses_the_larger_set_distance():
    assert omega(0.1, 0.0, 0.3, _constants(), "reduced") == pytest.approx(4 * 2.0 * 0.5 * 0.3)


def test_bounds_need_strong_monotonicity():
    bounds = theoretical_bounds(_metrics(delta=0.1), _constants(alpha=0.0, beta=0.0))
    assert bounds.bound_agg is None
    assert bounds.bound_profile is None
    assert bounds.reasons["bound_agg"] == NOT_AGGREGATIVELY_STRONGLY
    assert bounds.reasons["bound_profile"] == NOT_STRONGLY
    assert bounds.to_dict()["reasons"]["bound_agg"] == NOT_AGGREGATIVELY_STRONGLY


def test_bounds_formula():
    bounds = theoretical_bounds(_metrics(delta=0.1, eps=0.05), _constants(alpha=4.0, beta=2.0))
    assert bounds.variant == BoundVariantType.FULL
    assert bounds.bound_agg == pytest.approx(np.sqrt(bounds.Omega / 2.0))
    assert bounds.bound_profile == pytest.approx(np.sqrt(bounds.Omega / 4.0))


def test_bounds_own_impact_term():
    without = theoretical_bounds(_metrics(delta=0.1), _constants())
    with_lambda = theoretical_bounds(_metrics(delta=0.1), _constants(), lambda_bar=0.2)
    assert with_lambda.variant == BoundVariantType.FULL
    assert with_lambda.Omega > without.Omega
    assert with_lambda.Omega == pytest.approx(omega(0.1, 0.2, 0.0, _constants(), "full"))


def test_bounds_outside_interior_margin():
    constants = _constants(constrained=True, rho_min=0.05)
    bounds = theoretical_bounds(_metrics(delta=0.1, D=0.01), constants)
    assert not bounds.applicable
    assert bounds.bound_agg is None and bounds.bound_profile is None
    assert bounds.reasons["applicable"] == OUTSIDE_VALIDITY

    inside = theoretical_bounds(_metrics(delta=0.01, D=0.01), constants)
    assert inside.applicable
    assert inside.variant == BoundVariantType.FULL


@pytest.mark.parametrize("I", [1, 2, 5, 10, 50, 100])
def test_smartgrid_bound_matches_closed_form(I):
    sc = SmartGridScenario(a_O=1.0, a_P=2.0, E_max=20.0, N=3e7)
    tc = sc.characteristic()
    _, metrics = build_uniform_split(tc, I, endpoint="right")
    constants = bound_constants(
        tc, None, LipschitzModeType.AGGREGATE, sc.aggregate_set(), radius=metrics.radius
    )
    bounds = theoretical_bounds(metrics, constants)
    expected = analytic_svwe_error(sc, I)
    assert metrics.delta_bar == pytest.approx(sc.N * sc.E_max / I)
    assert bounds.variant == BoundVariantType.REDUCED
    assert bounds.bound_agg == pytest.approx(expected.bound, rel=1e-9)
    assert bounds.bound_profile is None
    assert expected.err <= bounds.bound_agg
