"""Rank-dependent utility of finite lotteries.

EU is the special case of an identity weighting and DT the special case of a
linear utility. Ties are merged by :class:`~probprem.lottery.Lottery`, so the
rank of every atom is unambiguous.
"""

from __future__ import annotations

import math

from .config import settings
from .lottery import Lottery
from .preferences import UtilityModel, WeightingModel
from .solver import bisect_monotone


def decision_weights(lottery: Lottery, h: WeightingModel) -> list[float]:
    """Weights h(F_i) - h(F_{i-1}) of the ascending atoms."""
    weights = []
    prev = 0.0
    for f in lottery.cdf():
        hf = h.value(f)
        weights.append(hf - prev)
        prev = hf
    return weights


def evaluate(lottery: Lottery, u: UtilityModel, h: WeightingModel) -> float:
    """Preference value sum_i (h(F_i) - h(F_{i-1})) U(x_i).

    Example:
        >>> from probprem.preferences import LinearUtility, QuadraticWeighting
        >>> evaluate(Lottery.from_atoms([(-1, 0.5), (1, 0.5)]), LinearUtility(), QuadraticWeighting())
        -0.5
    """
    weights = decision_weights(lottery, h)
    return math.fsum(w * u.value(x) for w, x in zip(weights, lottery.payoffs))


def evaluate_relative(lottery: Lottery, u: UtilityModel, h: WeightingModel, reference: float) -> float:
    """``evaluate(lottery, u, h) - U(reference)`` without cancellation.

    Decision weights sum to one, so the utilities can be measured from
    U(reference) before weighting.
    """
    weights = decision_weights(lottery, h)
    base = u.value(reference)
    return math.fsum(w * (u.value(x) - base) for w, x in zip(weights, lottery.payoffs))


def evaluate_dual(lottery: Lottery, u: UtilityModel, h: WeightingModel) -> float:
    """Same value as :func:`evaluate` via the decumulative (Choquet) form.

    U(x_1) + sum_{i>=2} (U(x_i) - U(x_{i-1})) * hbar(P(X >= x_i)) with
    hbar(p) = 1 - h(1 - p). Decumulative probabilities are accumulated from
    the top so the computation shares no partial sums with :func:`evaluate`.
    """
    xs = lottery.payoffs
    ps = lottery.probabilities
    n = len(xs)
    survival = [0.0] * n
    acc = 0.0
    for i in range(n - 1, 0, -1):
        acc += ps[i]
        survival[i] = min(acc, 1.0)
    utilities = [u.value(x) for x in xs]
    terms = [utilities[0]]
    for i in range(1, n):
        terms.append((utilities[i] - utilities[i - 1]) * h.dual(survival[i]))
    return math.fsum(terms)


def certainty_equivalent(lottery: Lottery, u: UtilityModel, h: WeightingModel) -> float:
    """Sure payoff c with U(c) equal to the lottery's value.

    The root lies in the support hull, where U is inverted by bisection.
    """
    lo, hi = lottery.payoffs[0], lottery.payoffs[-1]
    if lo == hi:
        return lo
    target = evaluate(lottery, u, h)
    tol = settings.tol * max(1.0, abs(lo), abs(hi))
    return bisect_monotone(lambda c: u.value(c) - target, lo, hi, tol=tol, label="certainty equivalent")


__all__ = ["decision_weights", "evaluate", "evaluate_relative", "evaluate_dual", "certainty_equivalent"]
