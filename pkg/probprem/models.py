"""
Pydantic models for solver reports and analysis results.
Every result emitted by the CLI is one of these models.
"""

from enum import Enum
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PremiumReport(BaseModel):
    """Exact probability premium with its local approximation terms."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    mu_exact: float = Field(description="Root of the indifference equation.")
    mu_approx_eu_term: float | None = Field(
        default=None,
        description="Utility-curvature term; None when the weighting is kinked at p0.",
    )
    mu_approx_dt_term: float | None = Field(
        default=None, description="Weighting-curvature term."
    )
    mu_approx_total: float | None = Field(
        default=None, description="Sum of the two approximation terms."
    )
    residual: float = Field(description="Indifference residual at mu_exact.")
    iterations: int = Field(ge=0, description="Bisection iterations after the scan.")
    bracket: tuple[float, float] = Field(description="Sub-bracket that was bisected.")
    multiple_roots: bool = Field(
        default=False,
        description="The scan saw several sign changes; the root closest to 0 was kept.",
    )

    @model_validator(mode="after")
    def _root_in_bracket(self) -> "PremiumReport":
        lo, hi = self.bracket
        if not lo <= self.mu_exact <= hi:
            raise ValueError(f"mu_exact={self.mu_exact} outside bracket {self.bracket}")
        return self


class RiskPremiumReport(BaseModel):
    """Exact risk premium lambda and its moment approximation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    lambda_exact: float
    lambda_approx_total: float | None = None
    residual: float
    iterations: int = Field(ge=0)
    bracket: tuple[float, float]
    multiple_roots: bool = False


class AttitudeOrder(str, Enum):
    FIRST_ORDER_AVERSE = "FirstOrderAverse"
    FIRST_ORDER_SEEKING = "FirstOrderSeeking"
    SECOND_ORDER_AVERSE = "SecondOrderAverse"
    SECOND_ORDER_SEEKING = "SecondOrderSeeking"
    NEUTRAL_OR_HIGHER = "NeutralOrHigher"

    @property
    def order(self) -> int | None:
        if self in (AttitudeOrder.FIRST_ORDER_AVERSE, AttitudeOrder.FIRST_ORDER_SEEKING):
            return 1
        if self in (AttitudeOrder.SECOND_ORDER_AVERSE, AttitudeOrder.SECOND_ORDER_SEEKING):
            return 2
        return None

    @property
    def averse(self) -> bool:
        return self in (AttitudeOrder.FIRST_ORDER_AVERSE, AttitudeOrder.SECOND_ORDER_AVERSE)


class GridPoint(BaseModel):
    """One solve of the classification grid."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    eps1: float
    mu: float


class AttitudeClassification(BaseModel):
    """Order of the attitude towards probability at (w0, p0)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    order: AttitudeOrder
    first_coeff: float = Field(description="Extrapolated limit of mu / eps1.")
    second_coeff: float = Field(description="Extrapolated limit of mu / eps1^2.")
    diagnostics: List[GridPoint] = Field(default_factory=list)


class Witness(BaseModel):
    """Location where a dominance check fails."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["utility", "weighting", "premium"]
    point: float | None = Field(default=None, description="x for utility, p for weighting.")
    gap: float = Field(description="Amount by which the second model falls short.")
    w0: float | None = None
    p0: float | None = None
    eps1: float | None = None
    eps2: float | None = None


class DominanceVerdict(BaseModel):
    """Outcome of an index or premium dominance check."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    holds: bool
    checked: int = Field(ge=0, description="Grid points or specs examined.")
    worst: Witness | None = Field(default=None, description="Most violating point.")

    def __bool__(self) -> bool:
        return self.holds


class TrianglePoint(BaseModel):
    """Point of the risk-sharing triangle: lose loss/2 w.p. q, loss w.p. p."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    q: float = Field(ge=0.0)
    p: float = Field(ge=0.0)

    @model_validator(mode="after")
    def _inside(self) -> "TrianglePoint":
        if self.p + self.q > 1.0 + 1e-12:
            raise ValueError(f"p + q = {self.p + self.q} exceeds 1")
        return self


class CurveTrace(BaseModel):
    """Indifference curve through the no-sharing point (0, p0)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    points: List[TrianglePoint] = Field(default_factory=list)
    residuals: List[float] = Field(
        default_factory=list, description="Value differences to the base point."
    )
    base: TrianglePoint
    slope_at_origin: float | None = None
    skipped: List[float] = Field(
        default_factory=list, description="Grid values of q with no bracket."
    )


class Preference(str, Enum):
    POOL = "pool"
    ALONE = "alone"
    INDIFFERENT = "indifferent"


class PoolDecision(BaseModel):
    """Comparison of the shared risk B(n) with the unfair risk A*."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    preference: Preference
    value_pool: float
    value_alone: float
    critical_m: float | None = None


class CheckResult(BaseModel):
    """One acceptance check run by ``probprem check``."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    passed: bool
    detail: str = ""
    elapsed_seconds: float = 0.0
