"""Parametric utility and probability-weighting families.

Every family is a frozen pydantic model exposing ``value``, ``d1`` and ``d2``
plus one-sided first derivatives for the kinked families. Two-sided
derivatives requested at a kink raise :class:`KinkError`.

Textual specifiers follow ``family(:key=value(,key=value)*)?``, e.g.
``crra:gamma=2`` or ``prelec:alpha=0.65,beta=1``.
"""

from __future__ import annotations

import functools
import math
from typing import Callable, ClassVar, Literal, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exceptions import DomainViolation, KinkError
from .solver import bisect_monotone

# Derivative queries closer than this to 0 or 1 are rejected for families
# whose derivatives diverge at the endpoints.
ENDPOINT_GUARD = 1e-9
KNOT_TOL = 1e-12
GRID_POINTS = 1000


# ========== Utility families ==========


class UtilityModel(BaseModel):
    """Strictly increasing utility U with domain ``(lower, upper)``."""

    model_config = ConfigDict(frozen=True)

    family: str

    @model_validator(mode="after")
    def _check_increasing(self) -> "UtilityModel":
        self._validate_params()
        for x in self.sample_domain():
            try:
                left, right = self.one_sided_d1(float(x))
            except OverflowError:
                continue
            if not (left > 0.0 and right > 0.0):
                raise ValueError(
                    f"{self.label()} is not strictly increasing: U'={min(left, right)!r} at x={float(x)!r}"
                )
        return self

    def _validate_params(self) -> None:
        """Family-specific parameter checks run before the derivative grid."""

    @property
    def lower(self) -> float:
        return -math.inf

    @property
    def upper(self) -> float:
        return math.inf

    @property
    def lower_closed(self) -> bool:
        return False

    @property
    def upper_closed(self) -> bool:
        return False

    def in_domain(self, x: float) -> bool:
        if not math.isfinite(x):
            return False
        lo_ok = x >= self.lower if self.lower_closed else x > self.lower
        hi_ok = x <= self.upper if self.upper_closed else x < self.upper
        return lo_ok and hi_ok

    def check_domain(self, x: float) -> None:
        if not self.in_domain(x):
            raise DomainViolation(
                f"x={x} outside the domain of {self.label()} "
                f"({self.lower}, {self.upper})"
            )

    def kinks(self) -> tuple[float, ...]:
        return ()

    def value(self, x: float) -> float:
        self.check_domain(x)
        return self._value(x)

    def d1(self, x: float) -> float:
        self.check_domain(x)
        self._check_smooth(x)
        return self._d1(x)

    def d2(self, x: float) -> float:
        self.check_domain(x)
        self._check_smooth(x)
        return self._d2(x)

    def one_sided_d1(self, x: float) -> tuple[float, float]:
        self.check_domain(x)
        d = self._d1(x)
        return d, d

    def ara(self, x: float) -> float:
        """Local index of absolute risk aversion -U''/U'."""
        return -self.d2(x) / self.d1(x) + 0.0

    def _check_smooth(self, x: float) -> None:
        for k in self.kinks():
            if abs(x - k) <= KNOT_TOL:
                raise KinkError(f"{self.label()} has a kink at x={k}; use one-sided derivatives")

    def label(self) -> str:
        return self.family

    def _value(self, x: float) -> float:
        raise NotImplementedError

    def _d1(self, x: float) -> float:
        raise NotImplementedError

    def _d2(self, x: float) -> float:
        raise NotImplementedError

    def sample_domain(self, points: int = GRID_POINTS, span: float = 10.0) -> np.ndarray:
        """Interior grid of the domain, clipped to ``[-span, span]`` when unbounded."""
        lo = self.lower if math.isfinite(self.lower) else -span
        hi = self.upper if math.isfinite(self.upper) else span
        if math.isfinite(self.upper) and not math.isfinite(self.lower):
            lo = hi - 2.0 * span
        if math.isfinite(self.lower) and not math.isfinite(self.upper):
            hi = lo + 2.0 * span
        pad = (hi - lo) * 1e-3
        return np.linspace(lo + pad, hi - pad, points)


class LinearUtility(UtilityModel):
    family: Literal["linear"] = "linear"

    def _value(self, x: float) -> float:
        return x

    def _d1(self, x: float) -> float:
        return 1.0

    def _d2(self, x: float) -> float:
        return 0.0


class QuadraticUtility(UtilityModel):
    """U(x) = x - b x^2 / 2 on x < 1/b, below the bliss point."""

    family: Literal["quadratic"] = "quadratic"
    b: float = Field(gt=0.0)

    @property
    def upper(self) -> float:
        return 1.0 / self.b

    def label(self) -> str:
        return f"quadratic(b={self.b})"

    def _value(self, x: float) -> float:
        return x - 0.5 * self.b * x * x

    def _d1(self, x: float) -> float:
        return 1.0 - self.b * x

    def _d2(self, x: float) -> float:
        return -self.b


class CARAUtility(UtilityModel):
    """U(x) = (1 - exp(-a x)) / a; ``a < 0`` gives a risk lover."""

    family: Literal["cara"] = "cara"
    a: float

    def _validate_params(self) -> None:
        if self.a == 0.0:
            raise ValueError("cara needs a != 0; use linear for risk neutrality")

    def label(self) -> str:
        return f"cara(a={self.a})"

    def _value(self, x: float) -> float:
        return -math.expm1(-self.a * x) / self.a

    def _d1(self, x: float) -> float:
        return math.exp(-self.a * x)

    def _d2(self, x: float) -> float:
        return -self.a * math.exp(-self.a * x)


class CRRAUtility(UtilityModel):
    """U(x) = x^(1-gamma) / (1-gamma), log utility at gamma = 1, on x > 0."""

    family: Literal["crra"] = "crra"
    gamma: float

    @property
    def lower(self) -> float:
        return 0.0

    def label(self) -> str:
        return f"crra(gamma={self.gamma})"

    def _value(self, x: float) -> float:
        if self.gamma == 1.0:
            return math.log(x)
        return x ** (1.0 - self.gamma) / (1.0 - self.gamma)

    def _d1(self, x: float) -> float:
        return x ** (-self.gamma)

    def _d2(self, x: float) -> float:
        return -self.gamma * x ** (-self.gamma - 1.0)


def _check_knots(knots: Sequence[tuple[float, float]], strict_values: bool) -> None:
    if len(knots) < 2:
        raise ValueError("piecewise-linear interpolation needs at least two knots")
    for (x0, y0), (x1, y1) in zip(knots, knots[1:]):
        if not x1 > x0:
            raise ValueError(f"knots must be strictly increasing, got {x0} then {x1}")
        if strict_values and not y1 > y0:
            raise ValueError(f"values must be strictly increasing, got {y0} then {y1}")
        if not strict_values and y1 < y0:
            raise ValueError(f"values must be non-decreasing, got {y0} then {y1}")


class _Interpolant:
    """Shared lookups for the piecewise-linear families (expects ``self.knots``)."""

    def _segment(self, x: float) -> int:
        xs = [k[0] for k in self.knots]
        i = int(np.searchsorted(xs, x, side="right")) - 1
        return min(max(i, 0), len(xs) - 2)

    def _slope(self, i: int) -> float:
        (x0, y0), (x1, y1) = self.knots[i], self.knots[i + 1]
        return (y1 - y0) / (x1 - x0)

    def _interp(self, x: float) -> float:
        i = self._segment(x)
        x0, y0 = self.knots[i]
        return y0 + self._slope(i) * (x - x0)

    def _one_sided(self, x: float) -> tuple[float, float]:
        for j, (xk, _) in enumerate(self.knots):
            if abs(x - xk) <= KNOT_TOL:
                left = self._slope(j - 1) if j > 0 else self._slope(0)
                right = self._slope(j) if j < len(self.knots) - 1 else self._slope(j - 1)
                return left, right
        s = self._slope(self._segment(x))
        return s, s

    def _knot_kinks(self) -> tuple[float, ...]:
        out = []
        for j in range(1, len(self.knots) - 1):
            if self._slope(j - 1) != self._slope(j):
                out.append(self.knots[j][0])
        return tuple(out)


class PiecewiseLinearUtility(_Interpolant, UtilityModel):
    """Linear interpolation through strictly increasing knots; closed domain."""

    family: Literal["pwl"] = "pwl"
    knots: tuple[tuple[float, float], ...]

    def _validate_params(self) -> None:
        _check_knots(self.knots, strict_values=True)

    @property
    def lower(self) -> float:
        return self.knots[0][0]

    @property
    def upper(self) -> float:
        return self.knots[-1][0]

    @property
    def lower_closed(self) -> bool:
        return True

    @property
    def upper_closed(self) -> bool:
        return True

    def kinks(self) -> tuple[float, ...]:
        return self._knot_kinks()

    def one_sided_d1(self, x: float) -> tuple[float, float]:
        self.check_domain(x)
        return self._one_sided(x)

    def _value(self, x: float) -> float:
        return self._interp(x)

    def _d1(self, x: float) -> float:
        return self._slope(self._segment(x))

    def _d2(self, x: float) -> float:
        return 0.0


class ComposedUtility(UtilityModel):
    """U(x) = outer(inner(x)): a concave increasing ``outer`` makes it more averse."""

    family: Literal["composed"] = "composed"
    inner: UtilityModel
    outer: UtilityModel

    def _validate_params(self) -> None:
        for x in self.inner.sample_domain():
            t = self.inner.value(float(x))
            if not self.outer.in_domain(t):
                raise ValueError(
                    f"{self.inner.label()}({float(x)!r})={t!r} lies outside the domain of {self.outer.label()}"
                )

    @property
    def lower(self) -> float:
        return self.inner.lower

    @property
    def upper(self) -> float:
        return self.inner.upper

    def label(self) -> str:
        return f"{self.outer.label()}o{self.inner.label()}"

    def kinks(self) -> tuple[float, ...]:
        return self.inner.kinks()

    def _value(self, x: float) -> float:
        return self.outer.value(self.inner.value(x))

    def one_sided_d1(self, x: float) -> tuple[float, float]:
        self.check_domain(x)
        outer_left, outer_right = self.outer.one_sided_d1(self.inner.value(x))
        inner_left, inner_right = self.inner.one_sided_d1(x)
        return outer_left * inner_left, outer_right * inner_right

    def _d1(self, x: float) -> float:
        return self.outer.d1(self.inner.value(x)) * self.inner.d1(x)

    def _d2(self, x: float) -> float:
        t = self.inner.value(x)
        g1 = self.inner.d1(x)
        return self.outer.d2(t) * g1 * g1 + self.outer.d1(t) * self.inner.d2(x)


class AffineUtility(UtilityModel):
    """U(x) = scale * base(x) + shift; represents the same preferences as ``base``."""

    family: Literal["affine"] = "affine"
    base: UtilityModel
    scale: float = Field(gt=0.0)
    shift: float = 0.0

    @property
    def lower(self) -> float:
        return self.base.lower

    @property
    def upper(self) -> float:
        return self.base.upper

    @property
    def lower_closed(self) -> bool:
        return self.base.lower_closed

    @property
    def upper_closed(self) -> bool:
        return self.base.upper_closed

    def label(self) -> str:
        return f"{self.scale}*{self.base.label()}+{self.shift}"

    def kinks(self) -> tuple[float, ...]:
        return self.base.kinks()

    def one_sided_d1(self, x: float) -> tuple[float, float]:
        left, right = self.base.one_sided_d1(x)
        return self.scale * left, self.scale * right

    def _value(self, x: float) -> float:
        return self.scale * self.base.value(x) + self.shift

    def _d1(self, x: float) -> float:
        return self.scale * self.base.d1(x)

    def _d2(self, x: float) -> float:
        return self.scale * self.base.d2(x)


# ========== Weighting families ==========


class WeightingModel(BaseModel):
    """Non-decreasing probability weighting h with h(0) = 0 and h(1) = 1."""

    model_config = ConfigDict(frozen=True)

    family: str
    endpoint_guard: ClassVar[bool] = False

    @model_validator(mode="after")
    def _check_non_decreasing(self) -> "WeightingModel":
        self._validate_params()
        _check_monotone_grid(self.value, self.label())
        return self

    def _validate_params(self) -> None:
        """Family-specific parameter checks run before the monotonicity grid."""

    def label(self) -> str:
        return self.family

    def kinks(self) -> tuple[float, ...]:
        return ()

    def _check_p(self, p: float) -> None:
        if not 0.0 <= p <= 1.0:
            raise DomainViolation(f"p={p} outside [0, 1] for {self.label()}")

    def _check_derivative(self, p: float) -> None:
        self._check_p(p)
        if self.endpoint_guard and (p < ENDPOINT_GUARD or p > 1.0 - ENDPOINT_GUARD):
            raise DomainViolation(
                f"{self.label()} derivatives are not evaluated within {ENDPOINT_GUARD} of 0 or 1"
            )
        for k in self.kinks():
            if abs(p - k) <= KNOT_TOL:
                raise KinkError(f"{self.label()} has a kink at p={k}; use one-sided derivatives")

    def value(self, p: float) -> float:
        # Round-off from shifted cumulative bounds is clamped back into [0, 1]
        if -KNOT_TOL <= p < 0.0:
            p = 0.0
        elif 1.0 < p <= 1.0 + KNOT_TOL:
            p = 1.0
        self._check_p(p)
        if p <= 0.0:
            return 0.0
        if p >= 1.0:
            return 1.0
        return self._value(p)

    def d1(self, p: float) -> float:
        self._check_derivative(p)
        return self._d1(p)

    def d2(self, p: float) -> float:
        self._check_derivative(p)
        return self._d2(p)

    def one_sided_d1(self, p: float) -> tuple[float, float]:
        self._check_p(p)
        d = self.d1(p)
        return d, d

    def dara(self, p: float) -> float:
        """Dual local index of absolute risk aversion -h''/h'."""
        slope = self.d1(p)
        if slope == 0.0:
            raise DomainViolation(f"{self.label()} is flat at p={p}; the dual index is undefined")
        return -self.d2(p) / slope + 0.0

    def dual(self, p: float) -> float:
        """Dual weighting 1 - h(1 - p) applied to decumulative probabilities."""
        return 1.0 - self.value(1.0 - p)

    def _value(self, p: float) -> float:
        raise NotImplementedError

    def _d1(self, p: float) -> float:
        raise NotImplementedError

    def _d2(self, p: float) -> float:
        raise NotImplementedError


def _check_monotone_grid(h: Callable[[float], float], label: str) -> None:
    grid = np.linspace(0.0, 1.0, GRID_POINTS)
    values = np.array([h(float(p)) for p in grid])
    if np.any(np.diff(values) < -KNOT_TOL):
        raise ValueError(f"{label} is not non-decreasing on [0, 1]")


class IdentityWeighting(WeightingModel):
    family: Literal["identity"] = "identity"

    def _value(self, p: float) -> float:
        return p

    def _d1(self, p: float) -> float:
        return 1.0

    def _d2(self, p: float) -> float:
        return 0.0


class PowerWeighting(WeightingModel):
    """h(p) = p^theta."""

    family: Literal["power"] = "power"
    theta: float = Field(gt=0.0)
    endpoint_guard: ClassVar[bool] = True

    def label(self) -> str:
        return f"power(theta={self.theta})"

    def _value(self, p: float) -> float:
        return p**self.theta

    def _d1(self, p: float) -> float:
        return self.theta * p ** (self.theta - 1.0)

    def _d2(self, p: float) -> float:
        return self.theta * (self.theta - 1.0) * p ** (self.theta - 2.0)


class QuadraticWeighting(WeightingModel):
    """h(p) = 2p - p^2, concave."""

    family: Literal["quadw"] = "quadw"

    def _value(self, p: float) -> float:
        return 2.0 * p - p * p

    def _d1(self, p: float) -> float:
        return 2.0 - 2.0 * p

    def _d2(self, p: float) -> float:
        return -2.0


class PrelecWeighting(WeightingModel):
    """h(p) = exp(-beta (-ln p)^alpha), extended by continuity at 0 and 1."""

    family: Literal["prelec"] = "prelec"
    alpha: float = Field(gt=0.0)
    beta: float = Field(default=1.0, gt=0.0)
    endpoint_guard: ClassVar[bool] = True

    def label(self) -> str:
        return f"prelec(alpha={self.alpha},beta={self.beta})"

    def _value(self, p: float) -> float:
        return math.exp(-self.beta * (-math.log(p)) ** self.alpha)

    def _g(self, p: float) -> tuple[float, float]:
        t = -math.log(p)
        return t, self.beta * self.alpha * t ** (self.alpha - 1.0) / p

    def _d1(self, p: float) -> float:
        _, g = self._g(p)
        return self._value(p) * g

    def _d2(self, p: float) -> float:
        t, g = self._g(p)
        dg = -self.beta * self.alpha * t ** (self.alpha - 2.0) * (self.alpha - 1.0 + t) / (p * p)
        return self._value(p) * (g * g + dg)


class TverskyKahnemanWeighting(WeightingModel):
    """h(p) = p^g / (p^g + (1-p)^g)^(1/g)."""

    family: Literal["tk"] = "tk"
    gamma: float = Field(gt=0.0)
    endpoint_guard: ClassVar[bool] = True

    def label(self) -> str:
        return f"tk(gamma={self.gamma})"

    def _parts(self, p: float) -> tuple[float, float, float]:
        g = self.gamma
        den = p**g + (1.0 - p) ** g
        num = p ** (g - 1.0) - (1.0 - p) ** (g - 1.0)
        return den, num, g / p - num / den

    def _value(self, p: float) -> float:
        den, _, _ = self._parts(p)
        return p**self.gamma / den ** (1.0 / self.gamma)

    def _d1(self, p: float) -> float:
        _, _, lg = self._parts(p)
        return self._value(p) * lg

    def _d2(self, p: float) -> float:
        g = self.gamma
        den, num, lg = self._parts(p)
        dnum = (g - 1.0) * (p ** (g - 2.0) + (1.0 - p) ** (g - 2.0))
        dlg = -g / (p * p) - (dnum * den - g * num * num) / (den * den)
        return self._value(p) * (lg * lg + dlg)


class AVaRKinkWeighting(WeightingModel):
    """h(p) = p / (1 - p0) up to 1 - p0, then flat at 1.

    Under linear utility the functional is the average of the worst
    (1 - p0) tail.
    """

    family: Literal["avar"] = "avar"
    p0: float = Field(gt=0.0, lt=1.0)

    def label(self) -> str:
        return f"avar(p0={self.p0})"

    @property
    def kink(self) -> float:
        return 1.0 - self.p0

    def kinks(self) -> tuple[float, ...]:
        return (self.kink,)

    def _value(self, p: float) -> float:
        return min(p / self.kink, 1.0)

    def _d1(self, p: float) -> float:
        return 1.0 / self.kink if p < self.kink else 0.0

    def _d2(self, p: float) -> float:
        return 0.0

    def one_sided_d1(self, p: float) -> tuple[float, float]:
        self._check_p(p)
        if abs(p - self.kink) <= KNOT_TOL:
            return 1.0 / self.kink, 0.0
        d = self._d1(p)
        return d, d


class PiecewiseLinearWeighting(_Interpolant, WeightingModel):
    """Linear interpolation through knots from (0, 0) to (1, 1)."""

    family: Literal["pwl"] = "pwl"
    knots: tuple[tuple[float, float], ...]

    def _validate_params(self) -> None:
        _check_knots(self.knots, strict_values=False)
        if self.knots[0] != (0.0, 0.0) or self.knots[-1] != (1.0, 1.0):
            raise ValueError("weighting knots must start at (0, 0) and end at (1, 1)")

    def kinks(self) -> tuple[float, ...]:
        return self._knot_kinks()

    def one_sided_d1(self, p: float) -> tuple[float, float]:
        self._check_p(p)
        return self._one_sided(p)

    def _value(self, p: float) -> float:
        return self._interp(p)

    def _d1(self, p: float) -> float:
        return self._slope(self._segment(p))

    def _d2(self, p: float) -> float:
        return 0.0


@functools.lru_cache(maxsize=256)
def _pullback_kinks(inner: WeightingModel, kinks: tuple[float, ...]) -> tuple[float, ...]:
    """Points p with inner(p) at one of ``kinks``; inner is non-decreasing on [0, 1]."""
    out = []
    for k in kinks:

        def gap(p: float, level: float = k) -> float:
            return inner.value(p) - level

        out.append(bisect_monotone(gap, 0.0, 1.0, label=f"kink {k} of the outer weighting"))
    return tuple(out)


class ComposedWeighting(WeightingModel):
    """h(p) = outer(inner(p)); a concave ``outer`` raises dual risk aversion."""

    family: Literal["composed"] = "composed"
    inner: WeightingModel
    outer: WeightingModel

    def label(self) -> str:
        return f"{self.outer.label()}o{self.inner.label()}"

    def kinks(self) -> tuple[float, ...]:
        pulled_back = _pullback_kinks(self.inner, self.outer.kinks())
        return tuple(sorted(set(self.inner.kinks()) | set(pulled_back)))

    def one_sided_d1(self, p: float) -> tuple[float, float]:
        self._check_p(p)
        outer_left, outer_right = self.outer.one_sided_d1(self.inner.value(p))
        inner_left, inner_right = self.inner.one_sided_d1(p)
        return outer_left * inner_left, outer_right * inner_right

    def _value(self, p: float) -> float:
        return self.outer.value(self.inner.value(p))

    def _d1(self, p: float) -> float:
        return self.outer.d1(self.inner.value(p)) * self.inner.d1(p)

    def _d2(self, p: float) -> float:
        t = self.inner.value(p)
        g1 = self.inner.d1(p)
        return self.outer.d2(t) * g1 * g1 + self.outer.d1(t) * self.inner.d2(p)


# ========== Module-level operations ==========


def u_value(m: UtilityModel, x: float) -> float:
    return m.value(x)


def u_d1(m: UtilityModel, x: float) -> float:
    return m.d1(x)


def u_d2(m: UtilityModel, x: float) -> float:
    return m.d2(x)


def h_value(m: WeightingModel, p: float) -> float:
    return m.value(p)


def h_d1(m: WeightingModel, p: float) -> float:
    return m.d1(p)


def h_d2(m: WeightingModel, p: float) -> float:
    return m.d2(p)


def one_sided_h(m: WeightingModel, p: float) -> tuple[float, float]:
    """Left and right derivatives of ``m`` at ``p``; equal for smooth families."""
    if not 0.0 < p < 1.0:
        raise DomainViolation(f"one-sided derivatives need p in (0, 1), got {p}")
    return m.one_sided_d1(p)


def one_sided_u(m: UtilityModel, x: float) -> tuple[float, float]:
    return m.one_sided_d1(x)


def local_indexes(u: UtilityModel, h: WeightingModel, w0: float, p0: float) -> tuple[float, float]:
    """Primal and dual local indexes of absolute risk aversion at (w0, p0).

    Example:
        >>> local_indexes(LinearUtility(), QuadraticWeighting(), 0.0, 0.5)
        (0.0, 2.0)
    """
    return u.ara(w0), h.dara(p0)


# ========== Specifier parsing ==========


def _parse_spec(text: str) -> tuple[str, dict[str, str]]:
    family, _, rest = text.strip().partition(":")
    family = family.strip().lower()
    if not family:
        raise ValueError(f"empty model specifier {text!r}")
    params: dict[str, str] = {}
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep or not key.strip() or not value.strip():
                raise ValueError(f"malformed parameter {item!r} in {text!r}")
            params[key.strip().lower()] = value.strip()
    return family, params


def _floats(params: dict[str, str], required: Sequence[str], optional: dict[str, float]) -> dict[str, float]:
    unknown = set(params) - set(required) - set(optional)
    if unknown:
        raise ValueError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    out: dict[str, float] = dict(optional)
    for key in required:
        if key not in params:
            raise ValueError(f"missing parameter {key!r}")
    for key, value in params.items():
        if key == "knots":
            continue
        try:
            out[key] = float(value)
        except ValueError as exc:
            raise ValueError(f"parameter {key}={value!r} is not a number") from exc
    return out


def _parse_knots(value: str) -> tuple[tuple[float, float], ...]:
    """Parse ``x0/y0|x1/y1|...``."""
    knots = []
    for pair in value.split("|"):
        x, sep, y = pair.partition("/")
        if not sep:
            raise ValueError(f"knot {pair!r} is not of the form x/y")
        knots.append((float(x), float(y)))
    return tuple(knots)


def parse_utility(text: str) -> UtilityModel:
    """Build a utility model from ``crra:gamma=2``, ``cara:a=0.5``, ``linear`` ...

    Example:
        >>> parse_utility("crra:gamma=1").label()
        'crra(gamma=1.0)'
    """
    family, params = _parse_spec(text)
    if family == "linear":
        _floats(params, [], {})
        return LinearUtility()
    if family == "quadratic":
        return QuadraticUtility(b=_floats(params, ["b"], {})["b"])
    if family == "cara":
        return CARAUtility(a=_floats(params, ["a"], {})["a"])
    if family == "crra":
        return CRRAUtility(gamma=_floats(params, ["gamma"], {})["gamma"])
    if family == "pwl":
        _floats(params, ["knots"], {})
        return PiecewiseLinearUtility(knots=_parse_knots(params["knots"]))
    raise ValueError(f"unknown utility family {family!r}")


def parse_weighting(text: str) -> WeightingModel:
    """Build a weighting model from ``prelec:alpha=0.65,beta=1``, ``quadw`` ...

    Example:
        >>> parse_weighting("avar:p0=0.5").kinks()
        (0.5,)
    """
    family, params = _parse_spec(text)
    if family == "identity":
        _floats(params, [], {})
        return IdentityWeighting()
    if family == "power":
        return PowerWeighting(theta=_floats(params, ["theta"], {})["theta"])
    if family == "quadw":
        _floats(params, [], {})
        return QuadraticWeighting()
    if family == "prelec":
        values = _floats(params, ["alpha"], {"beta": 1.0})
        return PrelecWeighting(alpha=values["alpha"], beta=values["beta"])
    if family == "tk":
        return TverskyKahnemanWeighting(gamma=_floats(params, ["gamma"], {})["gamma"])
    if family == "avar":
        return AVaRKinkWeighting(p0=_floats(params, ["p0"], {})["p0"])
    if family == "pwl":
        _floats(params, ["knots"], {})
        return PiecewiseLinearWeighting(knots=_parse_knots(params["knots"]))
    raise ValueError(f"unknown weighting family {family!r}")


__all__ = [
    "UtilityModel",
    "LinearUtility",
    "QuadraticUtility",
    "CARAUtility",
    "CRRAUtility",
    "PiecewiseLinearUtility",
    "ComposedUtility",
    "AffineUtility",
    "WeightingModel",
    "IdentityWeighting",
    "PowerWeighting",
    "QuadraticWeighting",
    "PrelecWeighting",
    "TverskyKahnemanWeighting",
    "AVaRKinkWeighting",
    "PiecewiseLinearWeighting",
    "ComposedWeighting",
    "u_value",
    "u_d1",
    "u_d2",
    "h_value",
    "h_d1",
    "h_d2",
    "one_sided_h",
    "one_sided_u",
    "local_indexes",
    "parse_utility",
    "parse_weighting",
]
