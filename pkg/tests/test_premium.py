import math

import numpy as np
import pytest

from probprem.lottery import NStateSpread, SpreadSpec
from probprem.premium import (
    approx_link_residual,
    contraction_gap,
    nstate_premium_exact,
    premium_link_residual,
    probability_premium_approx,
    probability_premium_dt_exact,
    probability_premium_exact,
    probability_premium_moment_form,
    risk_premium_approx,
    risk_premium_exact,
)
from probprem.preferences import (
    AffineUtility,
    AVaRKinkWeighting,
    CARAUtility,
    CRRAUtility,
    IdentityWeighting,
    LinearUtility,
    PowerWeighting,
    PrelecWeighting,
    QuadraticWeighting,
    UtilityModel,
    WeightingModel,
)
from probprem.utils import to_json

LOG = CRRAUtility(gamma=1.0)
PRELEC = PrelecWeighting(alpha=0.65)


def eu_log_premium(w0: float, eps1: float, eps2: float) -> float:
    u_lo, u_0, u_hi = math.log(w0 - eps2), math.log(w0), math.log(w0 + eps2)
    return eps1 * (2.0 * u_0 - u_lo - u_hi) / (u_hi - u_lo)


def test_log_utility_premium_matches_closed_form() -> None:
    spec = SpreadSpec(w0=10.0, p0=0.5, eps1=0.25, eps2=1.0)
    report = probability_premium_exact(spec, LOG, IdentityWeighting())
    assert report.mu_exact == pytest.approx(eu_log_premium(10.0, 0.25, 1.0), abs=1e-10)
    assert report.mu_exact == pytest.approx(0.0125208, abs=1e-6)
    assert abs(report.residual) < 1e-12
    lo, hi = report.bracket
    assert lo <= report.mu_exact <= hi


@pytest.mark.parametrize("p0", [0.3, 0.5, 0.7])
def test_dual_theory_quadratic_premium(p0: float) -> None:
    eps1 = 0.1
    expected = math.sqrt((1.0 - p0) ** 2 + eps1**2) - (1.0 - p0)
    report = probability_premium_dt_exact(p0, eps1, QuadraticWeighting())
    assert report.mu_exact == pytest.approx(expected, abs=1e-10)
    assert report.mu_approx_total == pytest.approx(0.5 * eps1**2 / (1.0 - p0))


def test_neutral_premium_vanishes() -> None:
    spec = SpreadSpec(w0=0.0, p0=0.4, eps1=0.1, eps2=1.0)
    report = probability_premium_exact(spec, LinearUtility(), IdentityWeighting())
    assert abs(report.mu_exact) < 1e-12
    assert report.mu_approx_total == 0.0


def test_kinked_weighting_has_no_approximation() -> None:
    spec = SpreadSpec(w0=0.0, p0=0.5, eps1=0.1, eps2=1.0)
    report = probability_premium_exact(spec, LinearUtility(), AVaRKinkWeighting(p0=0.5))
    assert report.mu_exact == pytest.approx(0.05, abs=1e-12)
    assert report.mu_approx_eu_term is None
    assert report.mu_approx_total is None


def test_contraction_gap_sign_around_the_premium() -> None:
    spec = SpreadSpec(w0=10.0, p0=0.5, eps1=0.25, eps2=1.0)
    mu = probability_premium_exact(spec, LOG, IdentityWeighting()).mu_exact
    assert contraction_gap(spec, mu + 1e-3, LOG, IdentityWeighting()) > 0.0
    assert contraction_gap(spec, mu - 1e-3, LOG, IdentityWeighting()) < 0.0


def test_approximation_terms() -> None:
    spec = SpreadSpec(w0=2.0, p0=0.5, eps1=0.1, eps2=0.5)
    terms = probability_premium_approx(spec, LOG, QuadraticWeighting())
    assert terms.eu_term == pytest.approx(0.5 * 0.1 * 0.5 * 0.5)
    assert terms.dt_term == pytest.approx(0.5 * 0.01 * 2.0)
    assert terms.total == pytest.approx(terms.eu_term + terms.dt_term)


def test_approximation_error_shrinks_quadratically() -> None:
    errors = []
    for k in range(6):
        spec = SpreadSpec(w0=1.0, p0=0.5, eps1=0.2 * 2.0**-k, eps2=0.5 * 2.0**-k)
        mu = probability_premium_exact(spec, LOG, PRELEC).mu_exact
        errors.append(abs(mu - probability_premium_approx(spec, LOG, PRELEC).total) / abs(mu))
    ratios = [a / b for a, b in zip(errors, errors[1:])]
    assert all(2.68 <= r <= 6.0 for r in ratios[-3:])


def test_absolute_approximation_error_is_fourth_order() -> None:
    # mu is second order in the joint scale, so halving it divides the
    # absolute error by about 16 and the relative error by about 4.
    errors = []
    for k in range(6):
        spec = SpreadSpec(w0=1.0, p0=0.5, eps1=0.2 * 2.0**-k, eps2=0.5 * 2.0**-k)
        mu = probability_premium_exact(spec, LOG, PRELEC).mu_exact
        errors.append(abs(mu - probability_premium_approx(spec, LOG, PRELEC).total))
    ratios = [a / b for a, b in zip(errors, errors[1:])]
    assert all(10.0 <= r <= 24.5 for r in ratios[-3:])


@pytest.mark.parametrize(
    ("u", "h", "sign"),
    [
        (LOG, IdentityWeighting(), 1.0),
        (CARAUtility(a=-0.5), IdentityWeighting(), -1.0),
        (LinearUtility(), QuadraticWeighting(), 1.0),
        (LinearUtility(), PowerWeighting(theta=2.0), -1.0),
        (LOG, QuadraticWeighting(), 1.0),
    ],
)
@pytest.mark.parametrize("p0", [0.3, 0.5, 0.7])
def test_premium_sign_follows_concavity(u: UtilityModel, h: WeightingModel, sign: float, p0: float) -> None:
    spec = SpreadSpec(w0=10.0, p0=p0, eps1=0.1, eps2=1.0)
    assert sign * probability_premium_exact(spec, u, h).mu_exact > 0.0


def test_premium_ignores_affine_rescaling() -> None:
    spec = SpreadSpec(w0=10.0, p0=0.4, eps1=0.15, eps2=2.0)
    rescaled = AffineUtility(base=LOG, scale=3.0, shift=-7.0)
    expected = probability_premium_exact(spec, LOG, PRELEC).mu_exact
    assert probability_premium_exact(spec, rescaled, PRELEC).mu_exact == pytest.approx(expected, abs=1e-12)


def test_report_serialization_is_reproducible() -> None:
    spec = SpreadSpec(w0=10.0, p0=0.5, eps1=0.25, eps2=1.0)
    first = to_json(probability_premium_exact(spec, LOG, PRELEC))
    second = to_json(probability_premium_exact(spec, LOG, PRELEC))
    assert first.encode("utf-8") == second.encode("utf-8")


def test_moment_form_matches_approximation() -> None:
    rng = np.random.default_rng(7)
    for _ in range(1000):
        p0 = float(rng.uniform(0.1, 0.9))
        spec = SpreadSpec(
            w0=float(rng.uniform(2.0, 10.0)),
            p0=p0,
            eps1=float(rng.uniform(0.01, 1.0)) * min(p0, 1.0 - p0),
            eps2=float(rng.uniform(0.01, 1.0)),
        )
        total = probability_premium_approx(spec, LOG, PRELEC).total
        assert probability_premium_moment_form(spec, LOG, PRELEC) == pytest.approx(total, rel=1e-14, abs=1e-16)


def test_two_state_premium_equals_binary_premium() -> None:
    spec = SpreadSpec(w0=10.0, p0=0.4, eps1=0.1, eps2=1.0)
    binary = probability_premium_exact(spec, LOG, PRELEC).mu_exact
    nstate = nstate_premium_exact(NStateSpread.from_spread(spec), LOG, PRELEC).mu_exact
    assert nstate == pytest.approx(binary, abs=1e-12)


def test_four_state_premium() -> None:
    neutral = NStateSpread(payoffs=(-1.0, -0.5, 0.5, 1.0), eps1=0.1, p0=0.5, w0=10.0)
    assert abs(nstate_premium_exact(neutral, LinearUtility(), IdentityWeighting()).mu_exact) < 1e-12

    small = NStateSpread(payoffs=(-0.1, -0.05, 0.05, 0.1), eps1=0.1, p0=0.5, w0=10.0)
    report = nstate_premium_exact(small, LOG, IdentityWeighting())
    assert report.mu_exact > 0.0
    assert report.mu_exact == pytest.approx(report.mu_approx_total, rel=0.05)
    assert report.mu_approx_dt_term == 0.0


def test_asymmetric_state_counts() -> None:
    spread = NStateSpread(payoffs=(-0.2, -0.1, 0.3), eps1=0.05, p0=0.5, w0=5.0)
    assert nstate_premium_exact(spread, LOG, IdentityWeighting()).mu_exact > 0.0
    report = nstate_premium_exact(spread, LOG, PRELEC)
    assert abs(report.residual) < 1e-12


def test_log_risk_premium_closed_form() -> None:
    spec = SpreadSpec(w0=10.0, p0=0.5, eps1=0.1, eps2=1.0)
    report = risk_premium_exact(spec, LOG, IdentityWeighting())
    assert report.lambda_exact == pytest.approx(10.0 - math.sqrt(99.0), abs=1e-10)
    assert report.lambda_approx_total == pytest.approx(0.05)
    assert risk_premium_approx(spec, LOG, IdentityWeighting()) == pytest.approx(0.05)


def test_risk_lover_has_negative_risk_premium() -> None:
    a = -0.5
    spec = SpreadSpec(w0=0.0, p0=0.5, eps1=0.1, eps2=1.0)
    report = risk_premium_exact(spec, CARAUtility(a=a), IdentityWeighting())
    assert report.lambda_exact < 0.0
    assert report.lambda_exact == pytest.approx(math.log(math.cosh(a)) / a, abs=1e-10)


def test_approximate_premia_are_linked_exactly() -> None:
    spec = SpreadSpec(w0=10.0, p0=0.5, eps1=0.1, eps2=1.0)
    assert abs(approx_link_residual(spec, LOG, PRELEC)) <= 1e-15


def test_exact_link_residual_vanishes_with_the_risk() -> None:
    normalized = []
    for k in range(6):
        spec = SpreadSpec(w0=10.0, p0=0.5, eps1=0.1 * 2.0**-k, eps2=2.0**-k)
        normalized.append(abs(premium_link_residual(spec, LOG, IdentityWeighting())) / (spec.eps1 * spec.eps2))
    assert all(b < a for a, b in zip(normalized, normalized[1:]))
    # third order in eps2: about a factor 8 per halving
    assert normalized[-2] / normalized[-1] == pytest.approx(8.0, rel=0.1)


def test_solver_options_are_forwarded() -> None:
    spec = SpreadSpec(w0=10.0, p0=0.5, eps1=0.25, eps2=1.0)
    coarse = probability_premium_exact(spec, LOG, IdentityWeighting(), tol=1e-4, scan_points=8)
    fine = probability_premium_exact(spec, LOG, IdentityWeighting())
    assert coarse.iterations < fine.iterations
    assert coarse.mu_exact == pytest.approx(fine.mu_exact, abs=1e-4)
