"""Exact probability and risk premia and their local approximations.

The indifference equations are solved by :func:`~probprem.solver.solve_scalar`.
Residuals are written relative to the no-risk level, i.e. as
sum of weight * (U(w0 + x) - U(w0)); this equals the equations stated in
terms of U(w0) because the weights of the spread region telescope to
h(p0 + eps1) - h(p0 - eps1).
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .exceptions import DomainViolation, KinkError, NoBracket, SolverError
from .lottery import NStateSpread, SpreadSpec, make_C, make_D_lambda, spread_moments
from .models import PremiumReport, RiskPremiumReport
from .preferences import LinearUtility, UtilityModel, WeightingModel
from .rdu import evaluate_relative
from .solver import RootResult, solve_scalar


class ApproxTerms(NamedTuple):
    eu_term: float
    dt_term: float
    total: float


def _binary_residual(spec: SpreadSpec, u: UtilityModel, h: WeightingModel) -> Callable[[float], float]:
    """RDU(C(mu)) - RDU(D); increasing in mu."""
    w0, p0, e1, e2 = spec.w0, spec.p0, spec.eps1, spec.eps2
    base = u.value(w0)
    u_lo = u.value(w0 - e2) - base
    u_hi = u.value(w0 + e2) - base
    h_lo = h.value(p0 - e1)
    h_hi = h.value(p0 + e1)

    def residual(mu: float) -> float:
        h_mu = h.value(p0 - mu)
        return (h_mu - h_lo) * u_lo + (h_hi - h_mu) * u_hi

    return residual


def contraction_gap(spec: SpreadSpec, mu: float, u: UtilityModel, h: WeightingModel) -> float:
    """RDU(C(mu)) - RDU(D); positive when C(mu) is strictly preferred."""
    return _binary_residual(spec, u, h)(mu)


def _approx_or_none(fn: Callable[[], ApproxTerms]) -> ApproxTerms | None:
    try:
        return fn()
    except (KinkError, DomainViolation):
        return None


def _report(result: RootResult, residual: Callable[[float], float], approx: ApproxTerms | None) -> PremiumReport:
    return PremiumReport(
        mu_exact=result.root,
        mu_approx_eu_term=approx.eu_term if approx else None,
        mu_approx_dt_term=approx.dt_term if approx else None,
        mu_approx_total=approx.total if approx else None,
        residual=residual(result.root),
        iterations=result.iterations,
        bracket=result.bracket,
        multiple_roots=result.multiple_roots,
    )


def probability_premium_exact(
    spec: SpreadSpec,
    u: UtilityModel,
    h: WeightingModel,
    *,
    tol: float | None = None,
    scan_points: int | None = None,
    max_iter: int | None = None,
) -> PremiumReport:
    """Probability premium mu making C(mu) indifferent to D.

    Searched on [-(1 - p0), p0], the range keeping p0 - mu a probability.

    Example:
        >>> from probprem.preferences import CRRAUtility, IdentityWeighting
        >>> spec = SpreadSpec(w0=10, p0=0.5, eps1=0.25, eps2=1)
        >>> round(probability_premium_exact(spec, CRRAUtility(gamma=1), IdentityWeighting()).mu_exact, 7)
        0.0125208
    """
    residual = _binary_residual(spec, u, h)
    result = solve_scalar(
        residual,
        spec.p0 - 1.0,
        spec.p0,
        tol=tol,
        scan_points=scan_points,
        max_iter=max_iter,
        label="probability premium",
    )
    return _report(result, residual, _approx_or_none(lambda: probability_premium_approx(spec, u, h)))


def probability_premium_dt_exact(
    p0: float,
    eps1: float,
    h: WeightingModel,
    *,
    tol: float | None = None,
    scan_points: int | None = None,
    max_iter: int | None = None,
) -> PremiumReport:
    """Dual-theory premium: h(p0 - eps1) - 2 h(p0 - mu) + h(p0 + eps1) = 0."""
    spec = SpreadSpec(w0=0.0, p0=p0, eps1=eps1, eps2=1.0)
    return probability_premium_exact(
        spec, LinearUtility(), h, tol=tol, scan_points=scan_points, max_iter=max_iter
    )


def probability_premium_approx(spec: SpreadSpec, u: UtilityModel, h: WeightingModel) -> ApproxTerms:
    """Local approximation -1/2 eps1 eps2 U''/U' - 1/2 eps1^2 h''/h'.

    Raises:
        KinkError: ``h`` is kinked at p0.
    """
    eu = 0.5 * spec.eps1 * spec.eps2 * u.ara(spec.w0)
    dt = 0.5 * spec.eps1 * spec.eps1 * h.dara(spec.p0)
    return ApproxTerms(eu, dt, eu + dt)


def _moment_terms(spec: SpreadSpec | NStateSpread, u: UtilityModel, h: WeightingModel) -> ApproxTerms:
    moments = spread_moments(spec)
    denom = 2.0 * moments.py_star
    eu = moments.m2 / denom * u.ara(spec.w0)
    dt = moments.mbar2 / denom * h.dara(spec.p0)
    return ApproxTerms(eu, dt, eu + dt)


def probability_premium_moment_form(
    spec: SpreadSpec | NStateSpread, u: UtilityModel, h: WeightingModel
) -> float:
    """m2 / (2 Py*) * ara + mbar2 / (2 Py*) * dara, using the spread moments.

    For binary spreads Py* = Py and the value equals the approximation total.
    """
    return _moment_terms(spec, u, h).total


def _nstate_slopes(spec: NStateSpread) -> list[float]:
    """Coefficient of mu in each cumulative bound c_0..c_n."""
    n, n1, n2 = spec.n, spec.n1, spec.n2
    slopes = []
    for i in range(n + 1):
        if i <= n1:
            slopes.append(-float(i))
        else:
            slopes.append(-n1 + (n1 / n2) * (i - n1))
    return slopes


def _nstate_bracket(spec: NStateSpread) -> tuple[float, float]:
    """Range of mu keeping every shifted cumulative bound inside [0, 1]."""
    start = spec.p0 - spec.eps1
    step = 2.0 * spec.eps1 / spec.n
    lo, hi = -math.inf, math.inf
    for i, k in enumerate(_nstate_slopes(spec)):
        if k == 0.0:
            continue
        base = start + step * i
        a, b = (0.0 - base) / k, (1.0 - base) / k
        lo, hi = max(lo, min(a, b)), min(hi, max(a, b))
    if not lo <= hi:
        raise SolverError("no premium keeps the shifted probabilities inside [0, 1]")
    return lo, hi


def _nstate_residual(spec: NStateSpread, u: UtilityModel, h: WeightingModel) -> Callable[[float], float]:
    start = spec.p0 - spec.eps1
    step = 2.0 * spec.eps1 / spec.n
    slopes = _nstate_slopes(spec)
    base = u.value(spec.w0)
    gains = [u.value(spec.w0 + x) - base for x in spec.payoffs]

    def residual(mu: float) -> float:
        bounds = [h.value(start + step * i + mu * k) for i, k in enumerate(slopes)]
        return math.fsum((bounds[i + 1] - bounds[i]) * g for i, g in enumerate(gains))

    return residual


def nstate_premium_exact(
    spec: NStateSpread,
    u: UtilityModel,
    h: WeightingModel,
    *,
    tol: float | None = None,
    scan_points: int | None = None,
    max_iter: int | None = None,
) -> PremiumReport:
    """Uniform premium on the unfavorable states of an n-state spread.

    Unfavorable cumulative bounds shift by -mu * i and favorable ones by
    -mu * n1 + mu * (n1 / n2) * (i - n1), so the total mass stays 2 eps1.
    The approximation terms are the moment-form terms.
    """
    residual = _nstate_residual(spec, u, h)
    lo, hi = _nstate_bracket(spec)
    result = solve_scalar(
        residual, lo, hi, tol=tol, scan_points=scan_points, max_iter=max_iter, label="n-state premium"
    )
    return _report(result, residual, _approx_or_none(lambda: _moment_terms(spec, u, h)))


def risk_premium_exact(
    spec: SpreadSpec,
    u: UtilityModel,
    h: WeightingModel,
    *,
    tol: float | None = None,
    scan_points: int | None = None,
    max_iter: int | None = None,
) -> RiskPremiumReport:
    """Risk premium lambda making D(lambda) indifferent to C.

    D(lambda) lowers the middle payoff of D to w0 - lambda. The search runs
    on [0, eps2] and falls back to [-eps2, 0] for risk seekers.
    """
    target = evaluate_relative(make_C(spec), u, h, spec.w0)

    def residual(lam: float) -> float:
        return evaluate_relative(make_D_lambda(spec, lam), u, h, spec.w0) - target

    kwargs = dict(tol=tol, scan_points=scan_points, max_iter=max_iter, label="risk premium")
    try:
        result = solve_scalar(residual, 0.0, spec.eps2, **kwargs)  # type: ignore[arg-type]
    except NoBracket:
        result = solve_scalar(residual, -spec.eps2, 0.0, **kwargs)  # type: ignore[arg-type]
    approx = _approx_or_none(lambda: ApproxTerms(0.0, 0.0, risk_premium_approx(spec, u, h)))
    return RiskPremiumReport(
        lambda_exact=result.root,
        lambda_approx_total=approx.total if approx else None,
        residual=residual(result.root),
        iterations=result.iterations,
        bracket=result.bracket,
        multiple_roots=result.multiple_roots,
    )


def risk_premium_approx(spec: SpreadSpec, u: UtilityModel, h: WeightingModel) -> float:
    """-1/2 eps2^2 U''/U' - 1/2 eps1 eps2 h''/h' = m2/(2 Pr) ara + mbar2/(2 Pr) dara."""
    return 0.5 * spec.eps2 * spec.eps2 * u.ara(spec.w0) + 0.5 * spec.eps1 * spec.eps2 * h.dara(spec.p0)


def premium_link_residual(spec: SpreadSpec, u: UtilityModel, h: WeightingModel) -> float:
    """mu * Py - lambda * Pr for the exact premia.

    Vanishes identically for the approximated premia and only in the
    small-risk limit for the exact ones.
    """
    moments = spread_moments(spec)
    mu = probability_premium_exact(spec, u, h).mu_exact
    lam = risk_premium_exact(spec, u, h).lambda_exact
    return mu * moments.py - lam * moments.pr


def approx_link_residual(spec: SpreadSpec, u: UtilityModel, h: WeightingModel) -> float:
    """mu_approx * Py - lambda_approx * Pr, zero up to round-off."""
    moments = spread_moments(spec)
    mu = probability_premium_moment_form(spec, u, h)
    lam = risk_premium_approx(spec, u, h)
    return mu * moments.py - lam * moments.pr


__all__ = [
    "ApproxTerms",
    "probability_premium_exact",
    "probability_premium_dt_exact",
    "probability_premium_approx",
    "probability_premium_moment_form",
    "nstate_premium_exact",
    "risk_premium_exact",
    "risk_premium_approx",
    "premium_link_residual",
    "approx_link_residual",
    "contraction_gap",
]
