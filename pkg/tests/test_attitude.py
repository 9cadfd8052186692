import numpy as np
import pytest

from probprem.attitude import (
    _richardson,
    classify,
    classify_grid,
    critical_m,
    kink_slope,
    prefers_contraction,
)
from probprem.exceptions import KinkError
from probprem.lottery import SpreadSpec
from probprem.models import AttitudeOrder
from probprem.preferences import (
    AVaRKinkWeighting,
    CRRAUtility,
    IdentityWeighting,
    LinearUtility,
    PiecewiseLinearWeighting,
    PowerWeighting,
    PrelecWeighting,
    QuadraticWeighting,
    WeightingModel,
)


def test_classify_grid_halves() -> None:
    assert classify_grid(0.5, 3) == [0.125, 0.0625, 0.03125, 0.015625]
    assert classify_grid(0.8, 0)[0] == pytest.approx(0.05)


def test_richardson_removes_linear_and_quadratic_terms() -> None:
    values = [1.0 + 2.0 * e + 3.0 * e * e for e in (1.0, 0.5, 0.25)]
    assert _richardson(values) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        _richardson([1.0, 2.0])


def test_concave_weighting_is_second_order_averse() -> None:
    result = classify(10.0, 0.5, 1.0, LinearUtility(), QuadraticWeighting())
    assert result.order is AttitudeOrder.SECOND_ORDER_AVERSE
    assert result.second_coeff == pytest.approx(1.0, abs=1e-4)
    assert abs(result.first_coeff) <= 1e-6
    assert len(result.diagnostics) == 11


def test_convex_weighting_is_second_order_seeking() -> None:
    result = classify(0.0, 0.5, 1.0, LinearUtility(), PowerWeighting(theta=2.0))
    assert result.order is AttitudeOrder.SECOND_ORDER_SEEKING
    assert result.second_coeff == pytest.approx(-1.0, abs=1e-4)


def test_concave_utility_is_first_order_averse() -> None:
    result = classify(10.0, 0.5, 1.0, CRRAUtility(gamma=2.0), IdentityWeighting())
    assert result.order is AttitudeOrder.FIRST_ORDER_AVERSE
    assert result.order.order == 1
    assert result.first_coeff == pytest.approx(0.1, abs=1e-6)


def test_neutral_decision_maker() -> None:
    result = classify(0.0, 0.5, 1.0, LinearUtility(), IdentityWeighting(), levels=6)
    assert result.order is AttitudeOrder.NEUTRAL_OR_HIGHER
    assert result.order.order is None


def test_kinked_weighting_is_first_order() -> None:
    h = AVaRKinkWeighting(p0=0.5)
    result = classify(0.0, h.kink, 1.0, LinearUtility(), h)
    assert result.order is AttitudeOrder.FIRST_ORDER_AVERSE
    assert result.first_coeff == pytest.approx(kink_slope(h, h.kink), abs=1e-4)


def test_kink_slope() -> None:
    assert kink_slope(AVaRKinkWeighting(p0=0.5), 0.5) == 0.5
    assert kink_slope(PrelecWeighting(alpha=0.65), 0.3) == 0.0
    pwl = PiecewiseLinearWeighting(knots=((0.0, 0.0), (0.5, 0.8), (1.0, 1.0)))
    assert kink_slope(pwl, 0.5) == pytest.approx(0.375)


def test_kink_slope_needs_positive_left_derivative() -> None:
    flat_then_steep = PiecewiseLinearWeighting(knots=((0.0, 0.0), (0.5, 0.0), (1.0, 1.0)))
    with pytest.raises(KinkError):
        kink_slope(flat_then_steep, 0.5)


def test_critical_m_separates_preferences() -> None:
    spec = SpreadSpec(w0=10.0, p0=0.5, eps1=0.25, eps2=1.0)
    u, h = CRRAUtility(gamma=1.0), IdentityWeighting()
    m_star = critical_m(spec, u, h)
    assert m_star == pytest.approx(0.0125208 / 0.25, abs=1e-5)
    assert prefers_contraction(spec, 0.5 * m_star, u, h)
    assert not prefers_contraction(spec, 2.0 * m_star, u, h)


SMOOTH_WEIGHTINGS = [
    QuadraticWeighting(),
    PrelecWeighting(alpha=0.65),
    PowerWeighting(theta=0.5),
    PowerWeighting(theta=2.0),
]


@pytest.mark.parametrize("h", SMOOTH_WEIGHTINGS, ids=lambda h: h.label())
def test_dual_theory_is_second_order_at_random_points(h: WeightingModel) -> None:
    rng = np.random.default_rng(11)
    for _ in range(10):
        # away from the Prelec inflection at 1/e, where the dual index vanishes
        p0 = float(rng.uniform(0.45, 0.9))
        w0 = float(rng.uniform(-5.0, 5.0))
        result = classify(w0, p0, 1.0, LinearUtility(), h)
        expected = 0.5 * h.dara(p0)
        if expected > 0.0:
            assert result.order is AttitudeOrder.SECOND_ORDER_AVERSE
        else:
            assert result.order is AttitudeOrder.SECOND_ORDER_SEEKING
        assert result.second_coeff == pytest.approx(expected, rel=1e-3)


@pytest.mark.parametrize("h", [IdentityWeighting(), PrelecWeighting(alpha=0.65)], ids=lambda h: h.label())
def test_concave_utility_is_first_order_at_random_points(h: WeightingModel) -> None:
    rng = np.random.default_rng(12)
    u = CRRAUtility(gamma=2.0)
    for _ in range(10):
        p0 = float(rng.uniform(0.2, 0.8))
        w0 = float(rng.uniform(2.0, 10.0))
        votes = [
            classify(w0, p0, float(eps2), u, h, levels=6).order is AttitudeOrder.FIRST_ORDER_AVERSE
            for eps2 in rng.uniform(0.1, 1.0, size=5)
        ]
        assert sum(votes) >= 4


def test_random_piecewise_linear_kink_matches_kink_slope() -> None:
    rng = np.random.default_rng(13)
    for _ in range(5):
        k = float(rng.uniform(0.2, 0.8))
        y = k + float(rng.uniform(0.2, 0.8)) * (1.0 - k)
        h = PiecewiseLinearWeighting(knots=((0.0, 0.0), (k, y), (1.0, 1.0)))
        result = classify(0.0, k, 1.0, LinearUtility(), h, levels=6)
        assert result.order is AttitudeOrder.FIRST_ORDER_AVERSE
        assert result.first_coeff == pytest.approx(kink_slope(h, k), abs=1e-6)


def test_second_order_aversion_takes_the_unfair_contraction_as_eps1_shrinks() -> None:
    u, h = LinearUtility(), QuadraticWeighting()
    decisions = [
        prefers_contraction(SpreadSpec(w0=0.0, p0=0.5, eps1=eps1, eps2=1.0), 0.05, u, h)
        for eps1 in (0.2, 0.1, 0.02, 0.01, 1e-3, 1e-4)
    ]
    assert decisions == [True, True, False, False, False, False]


def test_first_order_aversion_keeps_the_contraction_as_eps1_shrinks() -> None:
    u = CRRAUtility(gamma=2.0)
    for eps1 in (0.2, 0.1, 0.02, 1e-3, 1e-4):
        spec = SpreadSpec(w0=10.0, p0=0.5, eps1=eps1, eps2=1.0)
        assert critical_m(spec, u, IdentityWeighting()) == pytest.approx(0.1, abs=1e-8)
        assert prefers_contraction(spec, 0.05, u, IdentityWeighting())
