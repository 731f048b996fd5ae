from typing import Any

from pydantic import BaseModel, Field, model_validator

from codestab.types import CodeFamily, PerturbationFamily, SolverMode, SuiteGroup

_RANDOM_CODES = ("biregular",)
_RANDOM_PERTURBATIONS = ("two_body", "random_local")


class ExperimentSpec(BaseModel):
    """Everything needed to rerun a command; embedded in every JSON report."""

    command: str
    family: CodeFamily | None = None
    params: dict[str, Any] = Field(default_factory=dict, description="Constructor parameters")
    code_path: str | None = None
    perturbation: PerturbationFamily | None = None
    labels: list[str] | None = Field(default=None, description="Pauli labels for the 'paulis' family")
    coeffs: list[float] | None = None
    epsilons: list[float] = Field(default_factory=lambda: [0.0])
    seed: int | None = None
    out: str | None = None
    mode: SolverMode = "auto"
    options: dict[str, Any] = Field(default_factory=dict, description="Command-specific flags")

    @model_validator(mode="after")
    def check_inputs(self):
        if not self.epsilons:
            raise ValueError("epsilon grid is empty")
        random = self.family in _RANDOM_CODES or self.perturbation in _RANDOM_PERTURBATIONS
        if random and self.seed is None:
            raise ValueError("a seed is required when the code or perturbation is random")
        if self.perturbation == "paulis" and not self.labels:
            raise ValueError("the 'paulis' perturbation needs at least one label")
        return self


class SpectrumRow(BaseModel):
    epsilon: float
    cluster_size: int | None = None
    splitting: float | None = None
    gap: float | None = None
    well_separated: bool | None = None
    weyl_holds: bool | None = None
    projector_distance: float | None = None
    swt_orders: list[float] | None = Field(default=None, description="‖V_m‖ in the κ_m-norm, per order")
    flagged: bool = False
    error: str | None = None


class CriterionResult(BaseModel):
    number: int
    name: str
    group: SuiteGroup
    passed: bool
    details: dict[str, Any] = Field(default_factory=dict)
    seconds: float = Field(default=0.0, description="Wall time; excluded from determinism comparisons")


class SuiteSummary(BaseModel):
    passed: bool
    seed: int
    criteria: list[CriterionResult]


class ExperimentReport(BaseModel):
    spec: ExperimentSpec
    result: Any
