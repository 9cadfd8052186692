import math

import pytest
from hypothesis import given, strategies as st

from probprem.lottery import Lottery, SpreadSpec, make_C, make_D
from probprem.preferences import (
    AffineUtility,
    CRRAUtility,
    IdentityWeighting,
    LinearUtility,
    PrelecWeighting,
    QuadraticWeighting,
    WeightingModel,
)
from probprem.rdu import (
    certainty_equivalent,
    decision_weights,
    evaluate,
    evaluate_dual,
    evaluate_relative,
)

LOG = CRRAUtility(gamma=1.0)
WEIGHTINGS: list[WeightingModel] = [IdentityWeighting(), QuadraticWeighting(), PrelecWeighting(alpha=0.65)]


@st.composite
def positive_lotteries(draw: st.DrawFn) -> Lottery:
    n = draw(st.integers(min_value=1, max_value=6))
    xs = draw(st.lists(st.floats(0.5, 50.0), min_size=n, max_size=n))
    ws = draw(st.lists(st.floats(0.01, 1.0), min_size=n, max_size=n))
    total = math.fsum(ws)
    return Lottery.from_atoms(zip(xs, (w / total for w in ws)))


@given(positive_lotteries(), st.sampled_from(WEIGHTINGS))
def test_cumulative_and_decumulative_forms_agree(lottery: Lottery, h: WeightingModel) -> None:
    assert evaluate(lottery, LOG, h) == pytest.approx(evaluate_dual(lottery, LOG, h), abs=1e-12)


@given(positive_lotteries(), st.sampled_from(WEIGHTINGS))
def test_decision_weights_sum_to_one(lottery: Lottery, h: WeightingModel) -> None:
    weights = decision_weights(lottery, h)
    assert math.fsum(weights) == pytest.approx(1.0, abs=1e-14)
    assert all(w >= 0.0 for w in weights)


@given(positive_lotteries())
def test_identity_weighting_is_expected_utility(lottery: Lottery) -> None:
    eu = math.fsum(p * LOG.value(x) for x, p in lottery.atoms)
    assert evaluate(lottery, LOG, IdentityWeighting()) == pytest.approx(eu, abs=1e-12)


@given(positive_lotteries(), st.floats(0.5, 50.0))
def test_relative_value_is_shifted_value(lottery: Lottery, reference: float) -> None:
    h = PrelecWeighting(alpha=0.65)
    shifted = evaluate(lottery, LOG, h) - LOG.value(reference)
    assert evaluate_relative(lottery, LOG, h, reference) == pytest.approx(shifted, abs=1e-12)


def test_concave_weighting_overweights_bad_outcomes() -> None:
    lottery = Lottery.from_atoms([(-1.0, 0.5), (1.0, 0.5)])
    assert evaluate(lottery, LinearUtility(), QuadraticWeighting()) == pytest.approx(-0.5)
    assert decision_weights(lottery, QuadraticWeighting()) == pytest.approx([0.75, 0.25])


def test_value_increases_with_payoffs() -> None:
    lottery = Lottery.from_atoms([(1.0, 0.2), (2.0, 0.3), (4.0, 0.5)])
    h = PrelecWeighting(alpha=0.65)
    assert evaluate(lottery.shift(0.1), LOG, h) > evaluate(lottery, LOG, h)


def test_certainty_equivalent() -> None:
    lottery = Lottery.from_atoms([(-1.0, 0.5), (1.0, 0.5)])
    assert certainty_equivalent(lottery, LinearUtility(), IdentityWeighting()) == pytest.approx(0.0, abs=1e-12)
    assert certainty_equivalent(lottery, LinearUtility(), QuadraticWeighting()) == pytest.approx(-0.5, abs=1e-12)
    log_lottery = Lottery.from_atoms([(1.0, 0.5), (4.0, 0.5)])
    assert certainty_equivalent(log_lottery, LOG, IdentityWeighting()) == pytest.approx(2.0, abs=1e-10)
    assert certainty_equivalent(Lottery.degenerate(3.0), LOG, QuadraticWeighting()) == 3.0


@given(
    st.floats(0.1, 0.9),
    st.floats(0.05, 1.0),
    st.floats(0.1, 3.0),
    st.sampled_from([IdentityWeighting(), QuadraticWeighting()]),
)
def test_strong_aversion_prefers_the_contraction(p0: float, share: float, eps2: float, h: WeightingModel) -> None:
    spec = SpreadSpec(w0=10.0, p0=p0, eps1=share * min(p0, 1.0 - p0), eps2=eps2)
    u = CRRAUtility(gamma=5.0)
    assert evaluate(make_D(spec), u, h) >= evaluate(make_C(spec), u, h)


@given(positive_lotteries(), st.sampled_from(WEIGHTINGS))
def test_value_follows_affine_rescaling(lottery: Lottery, h: WeightingModel) -> None:
    rescaled = AffineUtility(base=LOG, scale=3.0, shift=1.0)
    assert evaluate(lottery, rescaled, h) == pytest.approx(3.0 * evaluate(lottery, LOG, h) + 1.0, abs=1e-11)
