import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from codestab.models.operators import QuasiLocalOperator


class SWTOrderRow(BaseModel):
    m: int
    kappa_m: float
    v: float = Field(..., description="‖V_m‖ in the κ_m-norm")
    v_tilde: float = Field(..., description="‖ℙ⊥V_m‖ in the κ_m-norm")
    generator_norm: float | None = Field(default=None, description="‖A_m‖ in the κ_m-norm")
    generator_residual: float | None = Field(default=None, description="‖[H₀,A] + V − ℙV‖")
    conjugation_residual: float | None = None
    garbage_norm: float = Field(..., description="‖E_m‖")
    num_terms: int
    max_support: int
    flow_bound: float | None = None


class SWTRunSummary(BaseModel):
    code: str
    n: int
    d_s: int
    kappa1: float
    epsilon: float = Field(..., description="‖V₁‖ in the κ₁-norm")
    orders: list[SWTOrderRow]
    diverged: bool
    unitarity_error: float
    schedule_sup_norm: float = Field(..., description="max_t ‖A(t)‖ in the κ₁/2-norm")
    schedule_bound_holds: bool
    within_flow_envelope: bool | None = None


class SWTStepResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    d_next: QuasiLocalOperator
    v_next: QuasiLocalOperator
    e_next: np.ndarray
    generator: QuasiLocalOperator
    diagonal: QuasiLocalOperator = Field(..., description="ℙV_m")
    off_diagonal: QuasiLocalOperator = Field(..., description="ℙ⊥V_m")
    generator_residual: float | None = None
    conjugation_residual: float
    chopped_norm: float = Field(..., description="Norm of sub-threshold Pauli mass moved into E")


class SWTRunResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    summary: SWTRunSummary
    d_ops: list[QuasiLocalOperator]
    v_ops: list[QuasiLocalOperator]
    e_mats: list[np.ndarray]
    generators: list[QuasiLocalOperator]
    unitary: np.ndarray

    @property
    def orders_run(self) -> int:
        return len(self.v_ops)


class SpectralReport(BaseModel):
    code: str
    n: int
    k: int
    epsilon: float
    mode: str
    eigenvalues: list[float]
    cluster_size: int
    splitting: float = Field(..., description="δE, the spread of the ground cluster")
    gap: float = Field(..., description="First level above the cluster minus the top of the cluster")
    well_separated: bool
    weyl_holds: bool
    weyl_margin: float
    perturbation_norm: float
    projector_distance: float | None = None
    max_residual: float | None = None


class RelativeBound(BaseModel):
    c: float
    offset: float
    block_diagonal: bool
    codespace_residual: float = Field(..., description="‖(D − c_D)P‖; c covers P-states only when this is 0")


class IndistinguishabilityResult(BaseModel):
    holds: bool
    region: list[int]
    neighbourhood: list[int]
    r: int
    counterexample: str | None = None
    method: str
    checked: int = Field(..., description="Kernel vectors or Pauli operators examined")


class NormCheck(BaseModel):
    name: str
    lhs: float
    rhs: float
    margin: float
    tolerance: float = Field(..., description="Rounding slack; the check holds when margin >= -tolerance")
    holds: bool
