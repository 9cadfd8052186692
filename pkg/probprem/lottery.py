"""Finite discrete risks, the named spread families, and their moments.

A :class:`Lottery` is the universal risk object: atoms sorted by payoff with
ties merged. Constructors build the binary spreads C, D and C(mu), the
loss risks A, A* and B(n) used for risk sharing, and the independent pool.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, NamedTuple, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .exceptions import LotteryError, ProbPremError, SpecError

PROB_TOL = 1e-12
MERGE_TOL = 1e-12
MEAN_TOL = 1e-10
# Round-off allowed on the wrong side of zero, relative to the largest |x - mean|
MOMENT_TOL = 1e-12


class Lottery(BaseModel):
    """Finite payoff distribution with strictly increasing payoffs.

    Build instances through :meth:`from_atoms`, which sorts, merges equal
    payoffs and drops zero-probability atoms; direct construction only
    validates.
    """

    model_config = ConfigDict(frozen=True)

    atoms: tuple[tuple[float, float], ...]

    @model_validator(mode="after")
    def _check_atoms(self) -> "Lottery":
        if not self.atoms:
            raise LotteryError("a lottery needs at least one atom")
        total = 0.0
        prev: float | None = None
        for x, p in self.atoms:
            if not (math.isfinite(x) and math.isfinite(p)):
                raise LotteryError(f"atom ({x}, {p}) is not finite")
            if p <= 0.0 or p > 1.0 + PROB_TOL:
                raise LotteryError(f"atom ({x}, {p}) has probability outside (0, 1]")
            if prev is not None and x <= prev:
                raise LotteryError(f"atom ({x}, {p}) breaks the ascending payoff order")
            prev = x
            total += p
        if abs(total - 1.0) > PROB_TOL:
            raise LotteryError(f"probabilities sum to {total!r}, not 1")
        return self

    @classmethod
    def from_atoms(cls, atoms: Iterable[tuple[float, float]]) -> "Lottery":
        """Sort ``atoms``, merge payoffs within ``MERGE_TOL`` and validate.

        Zero-probability atoms are dropped; negative ones are rejected.

        Example:
            >>> Lottery.from_atoms([(1.0, 0.5), (-1.0, 0.5)]).atoms
            ((-1.0, 0.5), (1.0, 0.5))
        """
        pairs = []
        for x, p in atoms:
            x, p = float(x), float(p)
            if p < 0.0 or p > 1.0 + PROB_TOL:
                raise LotteryError(f"atom ({x}, {p}) has probability outside [0, 1]")
            if p > 0.0:
                pairs.append((x, p))
        pairs.sort(key=lambda a: a[0])
        merged: list[tuple[float, float]] = []
        for x, p in pairs:
            if merged and abs(x - merged[-1][0]) <= MERGE_TOL:
                merged[-1] = (merged[-1][0], merged[-1][1] + p)
            else:
                merged.append((x, p))
        return cls(atoms=tuple(merged))

    @classmethod
    def degenerate(cls, payoff: float) -> "Lottery":
        return cls(atoms=((float(payoff), 1.0),))

    @property
    def payoffs(self) -> tuple[float, ...]:
        return tuple(x for x, _ in self.atoms)

    @property
    def probabilities(self) -> tuple[float, ...]:
        return tuple(p for _, p in self.atoms)

    def cdf(self) -> list[float]:
        """Cumulative probabilities F_1..F_n with F_n clamped to exactly 1."""
        out = []
        acc = 0.0
        for _, p in self.atoms:
            acc += p
            out.append(acc)
        out[-1] = 1.0
        return out

    def shift(self, delta: float) -> "Lottery":
        """Add ``delta`` to every payoff."""
        return Lottery.from_atoms((x + delta, p) for x, p in self.atoms)

    def to_json(self) -> str:
        return json.dumps({"atoms": [[x, p] for x, p in self.atoms]})

    @classmethod
    def from_json(cls, text: str) -> "Lottery":
        data = json.loads(text)
        try:
            atoms = data["atoms"]
        except (KeyError, TypeError) as exc:
            raise LotteryError("lottery JSON needs an 'atoms' list") from exc
        return cls.from_atoms((a[0], a[1]) for a in atoms)


class SpreadSpec(BaseModel):
    """Parameters of the binary spread family C, D, C(mu)."""

    model_config = ConfigDict(frozen=True)

    w0: float
    p0: float = Field(gt=0.0, lt=1.0)
    eps1: float = Field(gt=0.0)
    eps2: float = Field(gt=0.0)

    @model_validator(mode="after")
    def _check_eps1(self) -> "SpreadSpec":
        bound = min(self.p0, 1.0 - self.p0)
        if self.eps1 > bound + PROB_TOL:
            raise SpecError(
                f"eps1={self.eps1} exceeds min(p0, 1 - p0)={bound} for p0={self.p0}"
            )
        return self


class NStateSpread(BaseModel):
    """Zero-mean n-state spread with total mass 2*eps1 split evenly.

    The state list is kept unmerged: the premium shifts act per state.
    ``eps2`` bounds the payoffs and defaults to ``max |x_i|``.
    """

    model_config = ConfigDict(frozen=True)

    payoffs: tuple[float, ...]
    eps1: float = Field(gt=0.0, le=0.5)
    p0: float = Field(gt=0.0, lt=1.0)
    w0: float
    eps2: float | None = None

    @field_validator("payoffs")
    @classmethod
    def _check_payoffs(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if len(value) < 2:
            raise SpecError("an n-state spread needs at least two payoffs")
        if any(b < a for a, b in zip(value, value[1:])):
            raise SpecError("payoffs must be sorted ascending")
        if abs(math.fsum(value)) > PROB_TOL:
            raise SpecError(f"payoffs sum to {math.fsum(value)!r}, not 0")
        return value

    @model_validator(mode="after")
    def _check_bounds(self) -> "NStateSpread":
        if self.n1 < 1 or self.n2 < 1:
            raise SpecError("need at least one negative and one non-negative payoff")
        if self.eps2 is not None and max(abs(x) for x in self.payoffs) > self.eps2:
            raise SpecError(f"payoffs exceed eps2={self.eps2}")
        if self.p0 - self.eps1 < -PROB_TOL or self.p0 + self.eps1 > 1.0 + PROB_TOL:
            raise SpecError(
                f"[p0 - eps1, p0 + eps1] = [{self.p0 - self.eps1}, {self.p0 + self.eps1}]"
                " leaves the unit interval"
            )
        return self

    @property
    def n(self) -> int:
        return len(self.payoffs)

    @property
    def n1(self) -> int:
        return sum(1 for x in self.payoffs if x < 0.0)

    @property
    def n2(self) -> int:
        return self.n - self.n1

    @property
    def bound(self) -> float:
        return self.eps2 if self.eps2 is not None else max(abs(x) for x in self.payoffs)

    @classmethod
    def from_spread(cls, spec: SpreadSpec) -> "NStateSpread":
        """The n = 2 spread with payoffs (-eps2, eps2) matching ``spec``."""
        return cls(
            payoffs=(-spec.eps2, spec.eps2),
            eps1=spec.eps1,
            p0=spec.p0,
            w0=spec.w0,
            eps2=spec.eps2,
        )


class SpreadMoments(NamedTuple):
    m2: float
    mbar2: float
    py: float
    pr: float
    py_star: float


def _check_prob(label: str, payoff: float, p: float) -> None:
    if p < -PROB_TOL or p > 1.0 + PROB_TOL:
        raise LotteryError(f"atom {label} (payoff {payoff}) has probability {p} outside [0, 1]")


def _build(named: Sequence[tuple[str, float, float]]) -> Lottery:
    for label, x, p in named:
        _check_prob(label, x, p)
    return Lottery.from_atoms((x, min(max(p, 0.0), 1.0)) for _, x, p in named)


def make_C(spec: SpreadSpec) -> Lottery:
    """Binary risk C: w0 - eps2 with probability p0, w0 + eps2 otherwise."""
    return make_C_mu(spec, 0.0)


def make_D(spec: SpreadSpec) -> Lottery:
    """Contraction D of C: mass eps1 moved from each branch to w0."""
    w0, p0, e1, e2 = spec.w0, spec.p0, spec.eps1, spec.eps2
    return _build(
        [
            ("low", w0 - e2, p0 - e1),
            ("middle", w0, 2.0 * e1),
            ("high", w0 + e2, 1.0 - p0 - e1),
        ]
    )


def make_C_mu(spec: SpreadSpec, mu: float) -> Lottery:
    """C with the unfavorable probability reduced by ``mu``."""
    w0, p0, e2 = spec.w0, spec.p0, spec.eps2
    return _build([("low", w0 - e2, p0 - mu), ("high", w0 + e2, 1.0 - p0 + mu)])


def make_D_lambda(spec: SpreadSpec, lam: float) -> Lottery:
    """D with its middle payoff lowered to ``w0 - lam``; atoms re-sorted."""
    w0, p0, e1, e2 = spec.w0, spec.p0, spec.eps1, spec.eps2
    return _build(
        [
            ("low", w0 - e2, p0 - e1),
            ("middle", w0 - lam, 2.0 * e1),
            ("high", w0 + e2, 1.0 - p0 - e1),
        ]
    )


def _check_loss(eps1: float, loss: float) -> None:
    if loss <= 0.0:
        raise SpecError(f"loss must be positive, got {loss}")
    if not 0.0 < eps1 < 1.0:
        raise SpecError(f"eps1 must lie in (0, 1), got {eps1}")


def make_A(eps1: float, loss: float, w0: float = 0.0) -> Lottery:
    """Risk A: lose ``loss`` with probability ``eps1``."""
    return make_A_star(eps1, 0.0, loss, w0)


def make_A_star(eps1: float, m: float, loss: float, w0: float = 0.0) -> Lottery:
    """Risk A*: the loss probability of A reduced to ``(1 - m) * eps1``."""
    _check_loss(eps1, loss)
    if not 0.0 <= m < 1.0:
        raise SpecError(f"m must lie in [0, 1), got {m}")
    q = (1.0 - m) * eps1
    return _build([("loss", w0 - loss, q), ("no-loss", w0, 1.0 - q)])


def make_B_n(n: int, eps1: float, loss: float, w0: float = 0.0) -> Lottery:
    """Risk B(n): ``n`` mutually exclusive losses shared equally."""
    _check_loss(eps1, loss)
    if n < 2:
        raise SpecError(f"pool size n must be at least 2, got {n}")
    if n * eps1 >= 1.0:
        raise LotteryError(f"pooled loss probability n*eps1={n * eps1} must stay below 1")
    return _build([("loss", w0 - loss / n, n * eps1), ("no-loss", w0, 1.0 - n * eps1)])


def make_pool_independent(eps1: float, loss: float, w0: float = 0.0) -> Lottery:
    """Equal sharing between two individuals with independent losses."""
    _check_loss(eps1, loss)
    return _build(
        [
            ("both", w0 - loss, eps1 * eps1),
            ("one", w0 - loss / 2.0, 2.0 * eps1 * (1.0 - eps1)),
            ("none", w0, (1.0 - eps1) ** 2),
        ]
    )


def mean(lottery: Lottery) -> float:
    return math.fsum(x * p for x, p in lottery.atoms)


def variance(lottery: Lottery) -> float:
    m = mean(lottery)
    return math.fsum(p * (x - m) ** 2 for x, p in lottery.atoms)


def _clamp_sign(value: float, lottery: Lottery, m: float, *, sign: float, name: str) -> float:
    """Clamp round-off of a signed moment to zero; larger excursions are errors."""
    if sign * value >= 0.0:
        return value
    scale = max(abs(x - m) for x, _ in lottery.atoms)
    if abs(value) > MOMENT_TOL * max(scale, 1.0):
        raise ProbPremError(f"{name}={value!r} has the wrong sign beyond round-off")
    return 0.0


def maxiance(lottery: Lottery) -> float:
    """Second dual moment: E[max of two independent copies] minus the mean.

    Computed from the jumps of F**2, the distribution of the maximum.
    """
    m = mean(lottery)
    prev = 0.0
    terms = []
    for (x, _), f in zip(lottery.atoms, lottery.cdf()):
        terms.append((x - m) * (f * f - prev * prev))
        prev = f
    return _clamp_sign(math.fsum(terms), lottery, m, sign=1.0, name="maxiance")


def miniance(lottery: Lottery) -> float:
    """E[min of two independent copies] minus the mean."""
    m = mean(lottery)
    prev = 0.0
    terms = []
    for (x, _), f in zip(lottery.atoms, lottery.cdf()):
        g = 1.0 - (1.0 - f) ** 2
        terms.append((x - m) * (g - prev))
        prev = g
    return _clamp_sign(math.fsum(terms), lottery, m, sign=-1.0, name="miniance")


def spread_moments(spec: SpreadSpec | NStateSpread) -> SpreadMoments:
    """Primal and dual moments of the spread itself (sub-distribution).

    ``mbar2`` follows the sub-distribution convention of the n-state
    formulas, 4 eps1^2 / n^2 * sum (2i - 1) x_i. It is not the maxiance of
    the embedded three-point lottery, which equals 2 eps1 eps2 - 2 eps1^2 eps2
    in the binary case.

    Example:
        >>> spread_moments(SpreadSpec(w0=0, p0=0.5, eps1=0.1, eps2=0.5)).py
        1.0
    """
    if isinstance(spec, SpreadSpec):
        e1, e2 = spec.eps1, spec.eps2
        py = 2.0 * e2
        return SpreadMoments(
            m2=2.0 * e1 * e2 * e2,
            mbar2=2.0 * e1 * e1 * e2,
            py=py,
            pr=2.0 * e1,
            py_star=py,
        )
    xs = spec.payoffs
    n, n1, n2 = spec.n, spec.n1, spec.n2
    e1 = spec.eps1
    m2 = (2.0 * e1 / n) * math.fsum(x * x for x in xs)
    mbar2 = (4.0 * e1 * e1 / (n * n)) * math.fsum((2 * i - 1) * x for i, x in enumerate(xs, 1))
    py = math.fsum(abs(x) for x in xs)
    py_star = math.fsum(abs(x) for x in xs[:n1]) + (n1 / n2) * math.fsum(abs(x) for x in xs[n1:])
    return SpreadMoments(m2=m2, mbar2=mbar2, py=py, pr=2.0 * e1, py_star=py_star)


def _integrated_cdf(lottery: Lottery, points: Sequence[float]) -> list[float]:
    """Integral of F from the lowest support point up to each of ``points``."""
    out = []
    for t in points:
        out.append(math.fsum(p * (t - x) for x, p in lottery.atoms if x < t))
    return out


def is_mps(coarse: Lottery, fine: Lottery) -> bool:
    """True iff ``coarse`` is a mean-preserving spread of ``fine``.

    Means must agree within 1e-10 and the integrated distribution function of
    ``fine`` must lie below that of ``coarse`` everywhere; both are piecewise
    linear so checking the joint support suffices.
    """
    if abs(mean(coarse) - mean(fine)) > MEAN_TOL:
        return False
    points = sorted(set(coarse.payoffs) | set(fine.payoffs))
    scale = max(1.0, max(abs(x) for x in points))
    for a, b in zip(_integrated_cdf(fine, points), _integrated_cdf(coarse, points)):
        if a > b + PROB_TOL * scale:
            return False
    return True


__all__ = [
    "Lottery",
    "SpreadSpec",
    "NStateSpread",
    "SpreadMoments",
    "make_C",
    "make_D",
    "make_C_mu",
    "make_D_lambda",
    "make_A",
    "make_A_star",
    "make_B_n",
    "make_pool_independent",
    "mean",
    "variance",
    "maxiance",
    "miniance",
    "spread_moments",
    "is_mps",
]
