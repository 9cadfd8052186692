"""Comparative probability aversion.

A second decision-maker (u2, h2) has a premium at least as large as a first
one (u1, h1) on every binary spread exactly when both local indexes of
absolute risk aversion dominate pointwise, equivalently when u2 and h2 are
concave transformations of u1 and h1. Everything here is numerical evidence
on grids and random samples.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import logfire
import numpy as np

from .config import resolve, settings
from .exceptions import SolverError
from .lottery import SpreadSpec
from .models import DominanceVerdict, Witness
from .premium import probability_premium_exact
from .preferences import UtilityModel, WeightingModel
from .solver import bisect_monotone

DOMINANCE_TOL = 1e-10
P_GRID_BOUNDS = (0.01, 0.99)
UNBOUNDED_SPAN = 10.0


def _common_domain(u1: UtilityModel, u2: UtilityModel) -> tuple[float, float]:
    lower, upper = max(u1.lower, u2.lower), min(u1.upper, u2.upper)
    lo = lower if math.isfinite(lower) else -UNBOUNDED_SPAN
    hi = upper if math.isfinite(upper) else UNBOUNDED_SPAN
    if math.isfinite(upper) and not math.isfinite(lower):
        lo = hi - 2.0 * UNBOUNDED_SPAN
    if math.isfinite(lower) and not math.isfinite(upper):
        hi = lo + 2.0 * UNBOUNDED_SPAN
    if not lo < hi:
        raise ValueError(f"utility domains do not overlap: [{lo}, {hi}]")
    pad = (hi - lo) * 1e-3
    return lo + pad, hi - pad


def default_x_grid(u1: UtilityModel, u2: UtilityModel, points: int | None = None) -> np.ndarray:
    """Equally spaced points on the interior of the common utility domain."""
    lo, hi = _common_domain(u1, u2)
    return np.linspace(lo, hi, int(resolve(points, settings.compare_grid)))


def default_p_grid(points: int | None = None) -> np.ndarray:
    return np.linspace(*P_GRID_BOUNDS, int(resolve(points, settings.compare_grid)))


def _worst(kind: str, grid: Sequence[float], gaps: np.ndarray) -> Witness:
    i = int(np.argmin(gaps))
    return Witness(kind=kind, point=float(grid[i]), gap=float(gaps[i]))


def check_index_dominance(
    u1: UtilityModel,
    u2: UtilityModel,
    h1: WeightingModel,
    h2: WeightingModel,
    x_grid: Sequence[float] | None = None,
    p_grid: Sequence[float] | None = None,
) -> DominanceVerdict:
    """Check ara2 >= ara1 on ``x_grid`` and dara2 >= dara1 on ``p_grid``.

    The verdict carries the most violating grid point when dominance fails.

    Raises:
        KinkError: A grid point sits on a kink of one of the models.
    """
    xs = default_x_grid(u1, u2) if x_grid is None else list(x_grid)
    ps = default_p_grid() if p_grid is None else list(p_grid)
    u_gaps = np.array([u2.ara(float(x)) - u1.ara(float(x)) for x in xs])
    h_gaps = np.array([h2.dara(float(p)) - h1.dara(float(p)) for p in ps])

    candidates = []
    if len(xs):
        candidates.append(_worst("utility", xs, u_gaps))
    if len(ps):
        candidates.append(_worst("weighting", ps, h_gaps))
    worst = min(candidates, key=lambda w: w.gap, default=None)
    holds = worst is None or worst.gap >= -DOMINANCE_TOL
    return DominanceVerdict(holds=holds, checked=len(xs) + len(ps), worst=None if holds else worst)


def _spec_from_draws(
    rng: np.random.Generator, lo: float, hi: float, w0: float | None = None
) -> SpreadSpec:
    w0 = float(rng.uniform(lo, hi)) if w0 is None else w0
    room = min(w0 - lo, hi - w0)
    eps2 = float(rng.uniform(0.05, 1.0)) * room
    p0 = float(rng.uniform(0.05, 0.95))
    eps1 = float(rng.uniform(0.05, 1.0)) * min(p0, 1.0 - p0)
    return SpreadSpec(w0=w0, p0=p0, eps1=eps1, eps2=eps2)


def sample_specs(
    u1: UtilityModel,
    u2: UtilityModel,
    count: int | None = None,
    seed: int | None = None,
) -> list[SpreadSpec]:
    """Random binary spreads whose payoffs stay inside both utility domains.

    Deterministic for a given ``seed``.
    """
    count = int(resolve(count, settings.premium_samples))
    rng = np.random.default_rng(int(resolve(seed, settings.seed)))
    lo, hi = _common_domain(u1, u2)
    return [_spec_from_draws(rng, lo, hi) for _ in range(count)]


def _premium_gap(
    spec: SpreadSpec, u1: UtilityModel, u2: UtilityModel, h1: WeightingModel, h2: WeightingModel
) -> float:
    mu1 = probability_premium_exact(spec, u1, h1).mu_exact
    mu2 = probability_premium_exact(spec, u2, h2).mu_exact
    return mu2 - mu1


def _premium_witness(spec: SpreadSpec, gap: float) -> Witness:
    return Witness(kind="premium", gap=gap, w0=spec.w0, p0=spec.p0, eps1=spec.eps1, eps2=spec.eps2)


def check_premium_dominance(
    u1: UtilityModel,
    u2: UtilityModel,
    h1: WeightingModel,
    h2: WeightingModel,
    sample: Sequence[SpreadSpec] | None = None,
) -> DominanceVerdict:
    """Check mu2 >= mu1 - 1e-10 on every spec of ``sample``.

    Defaults to :func:`sample_specs` with the configured sample size and seed.
    """
    specs = sample_specs(u1, u2) if sample is None else list(sample)
    worst: Witness | None = None
    with logfire.span("premium dominance on {count} specs", count=len(specs)):
        for spec in specs:
            try:
                gap = _premium_gap(spec, u1, u2, h1, h2)
            except SolverError as exc:
                raise SolverError(f"premium dominance at {spec!r}: {exc}") from exc
            if worst is None or gap < worst.gap:
                worst = _premium_witness(spec, gap)
    holds = worst is None or worst.gap >= -DOMINANCE_TOL
    return DominanceVerdict(holds=holds, checked=len(specs), worst=None if holds else worst)


def concavification_check(
    f1: Callable[[float], float],
    f2: Callable[[float], float],
    grid: Sequence[float],
    *,
    rel_tol: float = 1e-10,
) -> bool:
    """True iff f2 o f1^-1 passes midpoint-concavity tests on the image of ``grid``.

    Pairs (i, i + 2^k) of grid points are tested; the midpoint of their
    images is pulled back through ``f1`` by bisection.

    Example:
        >>> concavification_check(lambda x: x, math.log, [0.5, 1.0, 2.0, 4.0])
        True
    """
    xs = sorted(float(x) for x in grid)
    t = [f1(x) for x in xs]
    if any(b < a for a, b in zip(t, t[1:])):
        raise ValueError("f1 must be non-decreasing on the grid")
    values = [f2(x) for x in xs]
    scale = max(1.0, max(abs(v) for v in values))
    tol = rel_tol * scale

    gap = 1
    while gap < len(xs):
        for i in range(len(xs) - gap):
            j = i + gap
            if t[j] == t[i]:
                continue
            mid = 0.5 * (t[i] + t[j])
            x_mid = bisect_monotone(lambda x: f1(x) - mid, xs[i], xs[j], label="concavification inverse")
            if f2(x_mid) < 0.5 * (values[i] + values[j]) - tol:
                return False
        gap *= 2
    return True


def _localized_specs(
    witness: Witness,
    u1: UtilityModel,
    u2: UtilityModel,
    count: int,
    rng: np.random.Generator,
) -> list[SpreadSpec]:
    """Specs concentrated where the index comparison fails.

    A utility violation at x is isolated with payoffs around x and a tiny
    eps1, a weighting violation at p with p0 around p and a tiny eps2.
    """
    lo, hi = _common_domain(u1, u2)
    x_step = (hi - lo) / max(settings.compare_grid - 1, 1)
    p_step = (P_GRID_BOUNDS[1] - P_GRID_BOUNDS[0]) / max(settings.compare_grid - 1, 1)
    specs = []
    for _ in range(count):
        if witness.kind == "utility":
            w0 = min(max(witness.point + float(rng.uniform(-1.0, 1.0)) * x_step, lo + x_step), hi - x_step)
            eps2 = float(rng.uniform(0.1, 1.0)) * min(x_step, w0 - lo, hi - w0)
            p0 = float(rng.uniform(0.2, 0.8))
            eps1 = float(rng.uniform(1e-4, 1e-3)) * min(p0, 1.0 - p0)
        else:
            p0 = min(max(witness.point + float(rng.uniform(-1.0, 1.0)) * p_step, P_GRID_BOUNDS[0]), P_GRID_BOUNDS[1])
            eps1 = float(rng.uniform(0.1, 1.0)) * min(p_step, p0, 1.0 - p0)
            w0 = 0.5 * (lo + hi)
            eps2 = float(rng.uniform(1e-6, 1e-5)) * (hi - lo)
        specs.append(SpreadSpec(w0=w0, p0=p0, eps1=eps1, eps2=eps2))
    return specs


def find_premium_counterexample(
    u1: UtilityModel,
    u2: UtilityModel,
    h1: WeightingModel,
    h2: WeightingModel,
    *,
    samples: int | None = None,
    seed: int | None = None,
    x_grid: Sequence[float] | None = None,
    p_grid: Sequence[float] | None = None,
) -> Witness | None:
    """Spec with mu2 < mu1 near the worst index violation, or None.

    Returns None when the indexes dominate on the grids or when no sampled
    spec violates the premium ordering.
    """
    verdict = check_index_dominance(u1, u2, h1, h2, x_grid, p_grid)
    if verdict.holds or verdict.worst is None:
        return None
    count = int(resolve(samples, settings.counterexample_samples))
    rng = np.random.default_rng(int(resolve(seed, settings.seed)))
    for spec in _localized_specs(verdict.worst, u1, u2, count, rng):
        gap = _premium_gap(spec, u1, u2, h1, h2)
        if gap < -DOMINANCE_TOL:
            return _premium_witness(spec, gap)
    logfire.info("no premium counterexample in {count} localized samples", count=count)
    return None


__all__ = [
    "DOMINANCE_TOL",
    "default_x_grid",
    "default_p_grid",
    "check_index_dominance",
    "check_premium_dominance",
    "concavification_check",
    "sample_specs",
    "find_premium_counterexample",
]
