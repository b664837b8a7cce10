from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from nclebesgue.types.measure import ClassicalMeasureSpec, MomentTable

Verdict = Literal["AC", "SINGULAR", "MIXED"]


class PositivityReport(BaseModel):
    is_positive: bool
    min_eigenvalue: float
    N: int
    tol: float


class WanderingReport(BaseModel):
    is_wandering: bool
    max_violation: float
    norm_squared: float
    depth: int


class GnsReport(BaseModel):
    gram_min_eig: float
    rank: int
    interior_rank: int
    column_extreme_distance: float
    cuntz_defect: float
    isometry_defect: float


class DominationReport(BaseModel):
    holds: bool
    min_eigenvalue: float


class FactorizationReport(BaseModel):
    max_residual_FF: float
    max_residual_GG: float
    max_residual_FG: float

    @property
    def max_residual(self) -> float:
        return max(self.max_residual_FF, self.max_residual_GG, self.max_residual_FG)


class DecompositionResult(BaseModel):
    """μ = μ_ac + μ_s at Gram level N, moments reported to depth N_out."""

    model_config = ConfigDict(frozen=True)

    mu_ac: MomentTable
    mu_s: MomentTable
    pencil_spectrum: list[float]
    singular_rank: int
    threshold: float
    N: int
    N_out: int
    ac_gram_min_eig: float
    sing_gram_min_eig: float

    @property
    def ac_mass(self) -> float:
        return self.mu_ac.mass

    @property
    def sing_mass(self) -> float:
        return self.mu_s.mass

    def to_report(self) -> dict:
        return {
            "N": self.N,
            "N_out": self.N_out,
            "threshold": self.threshold,
            "singular_rank": self.singular_rank,
            "ac_mass": self.ac_mass,
            "sing_mass": self.sing_mass,
            "ac_gram_min_eig": self.ac_gram_min_eig,
            "sing_gram_min_eig": self.sing_gram_min_eig,
            "pencil_min": min(self.pencil_spectrum, default=None),
            "pencil_max": max(self.pencil_spectrum, default=None),
        }


class ClassificationReport(BaseModel):
    ac_mass: float
    sing_mass: float
    column_extreme_distance: float
    cuntz_defect: float
    mass_tolerance: float
    verdict: Verdict


class OracleDecomposition(BaseModel):
    ac_spec: ClassicalMeasureSpec
    sing_spec: ClassicalMeasureSpec


class ConvergencePoint(BaseModel):
    N: int
    max_error: float


class PencilComparison(BaseModel):
    max_moment_error: float
    N_out: int
    error_by_N: list[ConvergencePoint] = Field(default_factory=list)

    @property
    def is_non_increasing(self) -> bool:
        errors = [point.max_error for point in self.error_by_N]
        return all(b <= a + 1e-12 for a, b in zip(errors, errors[1:]))


class CheckResult(BaseModel):
    """One pass/fail item of a scenario report."""

    name: str
    passed: bool
    value: float | None = None
    bound: float | None = None
    detail: dict[str, Any] = Field(default_factory=dict)
