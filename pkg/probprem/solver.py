"""Scan-then-bisect root finding shared by every indifference solver.

Bisection is used throughout: weighting functions may have unbounded second
derivatives near the endpoints and kinked families have no derivative at all.
A coarse scan first locates the sign changes; the one closest to zero is
refined with :func:`scipy.optimize.bisect`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import logfire
import numpy as np
from scipy import optimize

from .config import resolve, settings
from .exceptions import NoBracket, SolverError


@dataclass(frozen=True)
class RootResult:
    """Outcome of :func:`solve_scalar`."""

    root: float
    iterations: int
    bracket: tuple[float, float]
    multiple_roots: bool


def _distance_to_zero(lo: float, hi: float) -> float:
    if lo <= 0.0 <= hi:
        return 0.0
    return min(abs(lo), abs(hi))


def solve_scalar(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    tol: float | None = None,
    scan_points: int | None = None,
    max_iter: int | None = None,
    label: str = "root",
) -> RootResult:
    """Find the root of ``fn`` on ``[lo, hi]`` closest to zero.

    ``fn`` is sampled on ``scan_points`` equally spaced abscissae; every sign
    change (or exact zero) is a candidate and the candidate nearest to zero
    wins. The winning sub-bracket is bisected to absolute tolerance ``tol``.

    Raises:
        NoBracket: No sign change on the scan.
        SolverError: ``lo > hi`` or bisection did not converge.

    Example:
        >>> round(solve_scalar(lambda x: x - 0.25, -1.0, 1.0).root, 12)
        0.25
    """
    tol = float(resolve(tol, settings.tol))
    n = int(resolve(scan_points, settings.scan_points))
    max_iter = int(resolve(max_iter, settings.max_iter))
    if not lo <= hi:
        raise SolverError(f"{label}: empty bracket [{lo}, {hi}]")
    if lo == hi:
        value = fn(lo)
        if value == 0.0:
            return RootResult(lo, 0, (lo, hi), False)
        raise NoBracket(f"{label}: degenerate bracket with nonzero residual", [lo], [value])

    xs = np.linspace(lo, hi, max(n, 2))
    values = [fn(float(x)) for x in xs]

    candidates: list[tuple[float, float, float]] = []
    for i, value in enumerate(values):
        if value == 0.0:
            x = float(xs[i])
            candidates.append((abs(x), x, x))
    for i in range(len(xs) - 1):
        if values[i] * values[i + 1] < 0.0:
            a, b = float(xs[i]), float(xs[i + 1])
            candidates.append((_distance_to_zero(a, b), a, b))

    if not candidates:
        raise NoBracket(
            f"{label}: no sign change on [{lo:.6g}, {hi:.6g}] over {len(xs)} points",
            [float(x) for x in xs],
            values,
        )

    candidates.sort(key=lambda c: (c[0], c[1]))
    multiple = len({(c[1], c[2]) for c in candidates}) > 1
    if multiple:
        logfire.warn(
            "{label}: {count} sign changes found, keeping the one closest to zero",
            label=label,
            count=len(candidates),
        )
    _, a, b = candidates[0]
    if a == b:
        return RootResult(a, 0, (a, b), multiple)

    try:
        root, info = optimize.bisect(
            fn, a, b, xtol=tol, maxiter=max_iter, full_output=True, disp=False
        )
    except (ValueError, RuntimeError) as exc:
        raise SolverError(f"{label}: bisection failed on [{a}, {b}]: {exc}") from exc
    if not info.converged:
        raise SolverError(f"{label}: bisection did not converge in {max_iter} iterations")
    return RootResult(float(root), int(info.iterations), (a, b), multiple)


def bisect_monotone(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    tol: float | None = None,
    max_iter: int | None = None,
    label: str = "inverse",
) -> float:
    """Bisect a monotone ``fn`` that changes sign (or vanishes) on ``[lo, hi]``.

    Used for inverting increasing functions where a scan would be wasted.
    """
    tol = float(resolve(tol, settings.tol))
    max_iter = int(resolve(max_iter, settings.max_iter))
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise NoBracket(f"{label}: no sign change on [{lo}, {hi}]", [lo, hi], [f_lo, f_hi])
    root, info = optimize.bisect(
        fn, lo, hi, xtol=tol, maxiter=max_iter, full_output=True, disp=False
    )
    if not info.converged:
        raise SolverError(f"{label}: bisection did not converge in {max_iter} iterations")
    return float(root)


__all__ = ["RootResult", "solve_scalar", "bisect_monotone"]
