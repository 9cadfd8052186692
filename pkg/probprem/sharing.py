"""Risk sharing between individuals facing the same small loss.

Each individual loses ``loss`` with probability eps1. Bearing the risk alone
at an unfair price is the risk A*; sharing it equally in a pool of n
mutually exclusive losses is B(n). Risks with outcomes {w0 - loss,
w0 - loss/2, w0} are points (q, p) of a triangle, q being the probability of
losing half and p the probability of losing all.
"""

from __future__ import annotations

from typing import Sequence

import logfire
import numpy as np

from .config import resolve, settings
from .exceptions import NoBracket, SpecError
from .lottery import Lottery, make_A_star, make_B_n
from .models import CurveTrace, PoolDecision, Preference, TrianglePoint
from .preferences import UtilityModel, WeightingModel
from .rdu import evaluate, evaluate_relative
from .solver import bisect_monotone, solve_scalar

# Values closer than this (relative to |U(w0 - loss) - U(w0)|) are ties
INDIFFERENCE_TOL = 1e-12


def triangle_lottery(pt: TrianglePoint, loss: float, w0: float) -> Lottery:
    return Lottery.from_atoms(
        [
            (w0 - loss, pt.p),
            (w0 - loss / 2.0, pt.q),
            (w0, max(1.0 - pt.p - pt.q, 0.0)),
        ]
    )


def triangle_value(pt: TrianglePoint, loss: float, w0: float, u: UtilityModel, h: WeightingModel) -> float:
    """Preference value of the risk at point (q, p).

    Example:
        >>> from probprem.preferences import IdentityWeighting, LinearUtility
        >>> pt = TrianglePoint(q=0.2, p=0.1)
        >>> round(triangle_value(pt, 1.0, 0.0, LinearUtility(), IdentityWeighting()), 12)
        -0.2
    """
    return evaluate(triangle_lottery(pt, loss, w0), u, h)


def _scale(loss: float, w0: float, u: UtilityModel) -> float:
    return abs(u.value(w0 - loss) - u.value(w0))


def _pool_gap(n: int, m: float, eps1: float, loss: float, w0: float, u: UtilityModel, h: WeightingModel) -> float:
    """V(B(n)) - V(A*), measured from U(w0)."""
    pool = evaluate_relative(make_B_n(n, eps1, loss, w0), u, h, w0)
    alone = evaluate_relative(make_A_star(eps1, m, loss, w0), u, h, w0)
    return pool - alone


def prefers_pool(
    n: int, m: float, eps1: float, loss: float, w0: float, u: UtilityModel, h: WeightingModel
) -> PoolDecision:
    """Compare sharing in a pool of ``n`` with bearing A* alone at unfairness ``m``."""
    gap = _pool_gap(n, m, eps1, loss, w0, u, h)
    if abs(gap) <= INDIFFERENCE_TOL * _scale(loss, w0, u):
        preference = Preference.INDIFFERENT
    else:
        preference = Preference.POOL if gap > 0.0 else Preference.ALONE
    return PoolDecision(
        preference=preference,
        value_pool=evaluate(make_B_n(n, eps1, loss, w0), u, h),
        value_alone=evaluate(make_A_star(eps1, m, loss, w0), u, h),
    )


def critical_m_pool(
    n: int,
    eps1: float,
    loss: float,
    w0: float,
    u: UtilityModel,
    h: WeightingModel,
    *,
    tol: float | None = None,
    max_iter: int | None = None,
) -> float:
    """Unfairness m* in [0, 1) at which B(n) and A* are indifferent.

    V(A*) grows with m, so the gap V(B(n)) - V(A*) is decreasing.

    Raises:
        NoBracket: The pool is not weakly preferred at m = 0.
    """
    if n * eps1 >= 1.0:
        raise SpecError(f"pooled loss probability n*eps1={n * eps1} must stay below 1")

    def gap(m: float) -> float:
        return _pool_gap(n, m, eps1, loss, w0, u, h)

    at_zero = gap(0.0)
    if abs(at_zero) <= INDIFFERENCE_TOL * _scale(loss, w0, u):
        return 0.0
    if at_zero < 0.0:
        raise NoBracket(f"A is preferred to B({n}) even at fair terms", [0.0], [at_zero])
    hi = float(np.nextafter(1.0, 0.0))
    return bisect_monotone(gap, 0.0, hi, tol=tol, max_iter=max_iter, label="critical pool unfairness")


def default_q_grid(p0: float, points: int | None = None) -> np.ndarray:
    """``points`` values of q from 0 to min(0.5, 1 - p0)."""
    return np.linspace(0.0, min(0.5, 1.0 - p0), int(resolve(points, settings.triangle_grid)))


def _extrapolate_slope(points: Sequence[TrianglePoint], p0: float) -> float | None:
    """dp/dq at q = 0 from the two smallest positive q.

    The secant slope (p(q) - p0) / q is extrapolated linearly to q = 0.
    """
    positive = [pt for pt in points if pt.q > 0.0][:2]
    if len(positive) < 2:
        return None
    (q1, d1), (q2, d2) = [(pt.q, (pt.p - p0) / pt.q) for pt in positive]
    return d1 - q1 * (d2 - d1) / (q2 - q1)


def trace_indifference(
    p0: float,
    loss: float,
    w0: float,
    u: UtilityModel,
    h: WeightingModel,
    q_grid: Sequence[float] | None = None,
    *,
    tol: float | None = None,
    scan_points: int | None = None,
    max_iter: int | None = None,
) -> CurveTrace:
    """Indifference curve through the no-sharing point (0, p0).

    For each q the offset delta = p(q) - p0 + q/2 from the budget line
    p + q/2 = p0 is solved so that (q, p0 + delta - q/2) is indifferent to
    (0, p0). Grid points without a sign change are skipped and reported.
    """
    if not 0.0 < p0 < 1.0:
        raise SpecError(f"p0 must lie in (0, 1), got {p0}")
    qs = default_q_grid(p0) if q_grid is None else [float(q) for q in q_grid]
    base = TrianglePoint(q=0.0, p=p0)
    base_value = triangle_value(base, loss, w0, u, h)
    base_relative = evaluate_relative(triangle_lottery(base, loss, w0), u, h, w0)

    points: list[TrianglePoint] = []
    residuals: list[float] = []
    skipped: list[float] = []
    with logfire.span("trace indifference curve p0={p0} loss={loss}", p0=p0, loss=loss):
        for q in qs:
            if not 0.0 <= q <= 1.0 - p0 + 1e-12:
                raise SpecError(f"q={q} leaves the triangle for p0={p0}")
            if q == 0.0:
                points.append(base)
                residuals.append(0.0)
                continue

            def residual(delta: float, q: float = q) -> float:
                p = max(p0 + delta - 0.5 * q, 0.0)
                pt = TrianglePoint(q=q, p=min(p, 1.0 - q))
                return evaluate_relative(triangle_lottery(pt, loss, w0), u, h, w0) - base_relative

            try:
                result = solve_scalar(
                    residual,
                    0.5 * q - p0,
                    1.0 - 0.5 * q - p0,
                    tol=tol,
                    scan_points=scan_points,
                    max_iter=max_iter,
                    label=f"indifference at q={q}",
                )
            except NoBracket:
                logfire.debug("no indifferent point at q={q}", q=q)
                skipped.append(q)
                continue
            p = min(max(p0 + result.root - 0.5 * q, 0.0), 1.0 - q)
            pt = TrianglePoint(q=q, p=p)
            points.append(pt)
            residuals.append(triangle_value(pt, loss, w0, u, h) - base_value)

    return CurveTrace(
        points=points,
        residuals=residuals,
        base=base,
        slope_at_origin=_extrapolate_slope(points, p0),
        skipped=skipped,
    )


def best_budget_point(
    p0: float,
    m: float,
    eps1: float,
    loss: float,
    w0: float,
    u: UtilityModel,
    h: WeightingModel,
    points: int | None = None,
) -> tuple[TrianglePoint, float]:
    """Best point of the segment from A* = (0, p0 - m eps1) to B = (2 eps1, p0 - eps1).

    The segment is sampled on ``points`` equally spaced points and the
    preference value is maximized over them.
    """
    if not 0.0 <= m < 1.0:
        raise SpecError(f"m must lie in [0, 1), got {m}")
    if not 0.0 < eps1 <= p0 or p0 + eps1 > 1.0:
        raise SpecError(f"eps1={eps1} incompatible with p0={p0}")
    n = int(resolve(points, settings.triangle_grid))
    if n < 2:
        raise SpecError(f"the budget segment needs at least 2 points, got {n}")
    start = np.array([0.0, p0 - m * eps1])
    end = np.array([2.0 * eps1, p0 - eps1])
    candidates = [
        TrianglePoint(q=float(q), p=max(float(p), 0.0))
        for q, p in (start + t * (end - start) for t in np.linspace(0.0, 1.0, n))
    ]
    values = np.array([triangle_value(pt, loss, w0, u, h) for pt in candidates])
    i = int(np.argmax(values))
    return candidates[i], float(values[i])


__all__ = [
    "INDIFFERENCE_TOL",
    "triangle_lottery",
    "triangle_value",
    "prefers_pool",
    "critical_m_pool",
    "default_q_grid",
    "trace_indifference",
    "best_budget_point",
]
