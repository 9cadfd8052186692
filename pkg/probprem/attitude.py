"""Order of the attitude towards probability at a point (w0, p0).

The premium mu(eps1) of a first-order attitude scales linearly in the shifted
mass eps1, that of a second-order attitude quadratically. :func:`classify`
solves the premium on a geometric grid of eps1 and extrapolates mu / eps1 and
mu / eps1^2 to eps1 = 0.
"""

from __future__ import annotations

from typing import Sequence

import logfire

from .config import resolve, settings
from .exceptions import KinkError, NoBracket, SolverError
from .lottery import SpreadSpec
from .models import AttitudeClassification, AttitudeOrder, GridPoint
from .premium import contraction_gap, probability_premium_exact
from .preferences import UtilityModel, WeightingModel, one_sided_h


def _richardson(values: Sequence[float]) -> float:
    """Two-level Richardson limit of a sequence on a halving grid.

    The first level removes an O(eps) error term, the second an O(eps^2) one.
    """
    if len(values) < 3:
        raise ValueError("Richardson extrapolation needs at least three levels")
    first = [2.0 * b - a for a, b in zip(values, values[1:])]
    second = [(4.0 * b - a) / 3.0 for a, b in zip(first, first[1:])]
    return second[-1]


def classify_grid(p0: float, levels: int | None = None) -> list[float]:
    """eps1 values eps0 * 2^-k for k = 0..levels with eps0 = min(p0, 1 - p0) / 4."""
    levels = int(resolve(levels, settings.classify_levels))
    eps0 = min(p0, 1.0 - p0) / 4.0
    return [eps0 * 2.0**-k for k in range(levels + 1)]


def _order(first: float, second: float, threshold: float) -> AttitudeOrder:
    if first > threshold:
        return AttitudeOrder.FIRST_ORDER_AVERSE
    if first < -threshold:
        return AttitudeOrder.FIRST_ORDER_SEEKING
    if second > threshold:
        return AttitudeOrder.SECOND_ORDER_AVERSE
    if second < -threshold:
        return AttitudeOrder.SECOND_ORDER_SEEKING
    return AttitudeOrder.NEUTRAL_OR_HIGHER


def classify(
    w0: float,
    p0: float,
    eps2: float,
    u: UtilityModel,
    h: WeightingModel,
    *,
    levels: int | None = None,
    threshold: float | None = None,
    tol: float | None = None,
) -> AttitudeClassification:
    """Classify the attitude towards probability at (w0, p0) for spreads of size eps2.

    ``second_coeff`` is only meaningful when ``first_coeff`` vanishes; for a
    first-order attitude mu / eps1^2 diverges and the extrapolate is reported
    as is.

    Raises:
        SolverError: A premium solve failed; the message names the eps1.
    """
    threshold = float(resolve(threshold, settings.coeff_threshold))
    base_tol = float(resolve(tol, settings.tol))
    grid = classify_grid(p0, levels)
    eps0 = grid[0]

    diagnostics: list[GridPoint] = []
    with logfire.span("classify attitude at w0={w0} p0={p0}", w0=w0, p0=p0):
        for eps1 in grid:
            spec = SpreadSpec(w0=w0, p0=p0, eps1=eps1, eps2=eps2)
            try:
                # mu shrinks like eps1^2 so the absolute tolerance must follow
                report = probability_premium_exact(spec, u, h, tol=base_tol * (eps1 / eps0) ** 2)
            except NoBracket as exc:
                raise NoBracket(f"eps1={eps1!r}: {exc}", exc.points, exc.values) from exc
            except SolverError as exc:
                raise SolverError(f"eps1={eps1!r}: {exc}") from exc
            diagnostics.append(GridPoint(eps1=eps1, mu=report.mu_exact))

    first = _richardson([g.mu / g.eps1 for g in diagnostics])
    second = _richardson([g.mu / (g.eps1 * g.eps1) for g in diagnostics])
    return AttitudeClassification(
        order=_order(first, second, threshold),
        first_coeff=first + 0.0,
        second_coeff=second + 0.0,
        diagnostics=diagnostics,
    )


def kink_slope(h: WeightingModel, p0: float) -> float:
    """Limit of mu / eps1 at a kink of ``h``: 1/2 (1 - h'+(p0) / h'-(p0)).

    Positive iff the weighting flattens at p0, which is first-order
    probability aversion.

    Example:
        >>> from probprem.preferences import AVaRKinkWeighting
        >>> kink_slope(AVaRKinkWeighting(p0=0.5), 0.5)
        0.5
    """
    left, right = one_sided_h(h, p0)
    if left == 0.0:
        raise KinkError(f"{h.label()} has a vanishing left derivative at p={p0}")
    return 0.5 * (1.0 - right / left)


def critical_m(
    spec: SpreadSpec,
    u: UtilityModel,
    h: WeightingModel,
    *,
    tol: float | None = None,
    scan_points: int | None = None,
    max_iter: int | None = None,
) -> float:
    """Unfairness rate m* = mu / eps1 at which C(m* eps1) and D are indifferent.

    D is preferred for m < m* and C(m eps1) for m > m*.
    """
    report = probability_premium_exact(spec, u, h, tol=tol, scan_points=scan_points, max_iter=max_iter)
    return report.mu_exact / spec.eps1


def prefers_contraction(spec: SpreadSpec, m: float, u: UtilityModel, h: WeightingModel) -> bool:
    """True iff D is strictly preferred to C(m eps1)."""
    return contraction_gap(spec, m * spec.eps1, u, h) < 0.0


__all__ = ["classify", "classify_grid", "kink_slope", "critical_m", "prefers_contraction"]
