from pydantic import BaseModel, Field, model_validator


class FlowConstants(BaseModel):
    """Constants feeding the flow equations and the stability certificate."""

    kappa1: float = Field(default=1.0, gt=0, description="Initial decay rate κ₁")
    delta: int = Field(default=5, ge=1, description="Maximum degree Δ of the code graph")
    c_f_prime: float = Field(default=0.1, ge=0)
    c_f_dblprime: float = Field(default=1.0, ge=0)
    alpha: float = Field(default=1.0, gt=0)
    c_tilde_f_dblprime: float = Field(default=2.0, ge=2)


class FlowState(BaseModel):
    m: int = Field(..., ge=1)
    kappa_m: float = Field(..., gt=0)
    v: float = Field(..., ge=0)
    v_tilde: float = Field(..., ge=0)
    d: float = Field(..., ge=0)
    d_tilde: float = Field(..., ge=0)
    v_history: list[float] = Field(..., description="v_1, ..., v_m")

    @model_validator(mode="after")
    def history_matches_order(self):
        if len(self.v_history) != self.m:
            raise ValueError(f"history holds {len(self.v_history)} values at order {self.m}")
        return self


class TrajectoryRow(BaseModel):
    m: int
    kappa_m: float
    delta_kappa_m: float
    v: float
    v_tilde: float
    d: float
    d_tilde: float
    v_bound: float | None = None
    v_tilde_bound: float | None = None
    d_bound: float | None = None
    d_tilde_bound: float | None = None
    within_bounds: bool = True
    swt_condition: bool = Field(..., description="ṽ_m ≤ δκ_m/3")


class FlowTrajectory(BaseModel):
    epsilon: float
    c_iter: float
    rows: list[TrajectoryRow]
    all_within_bounds: bool
    swt_condition_holds: bool
    first_violation: int | None = None


class CIterResult(BaseModel):
    c_iter: float
    sum_branch: float = Field(..., description="(3c̃_f″/2)(e^{c_f′ δκ̃₁^{−α}} + Σ_m ...)")
    initial_branch: float = Field(..., description="27/(κ₂δκ₁)·max(1, δκ₁)")
    truncation_index: int = Field(..., description="Last order included in the sum")


class EpsilonZeroResult(BaseModel):
    epsilon0: float
    cap: float = Field(..., description="min(1/(4c_iter), δκ₁/3)")
    c_iter: float
    m_check: int
    tail_decreasing: bool
    tail_heuristic: bool = Field(
        default=True, description="The condition beyond m_check is inferred, not verified"
    )


class StabilityCertificate(BaseModel):
    epsilon: float
    epsilon0: float
    n: int
    d_s: int
    c_iter: float
    m_star: int | None
    epsilon_star: float
    c1: float
    c2: float
    spectrum_intervals: tuple[tuple[float, float], tuple[float, float]]
    gap_lower_bound: float
    splitting_bound: float = Field(..., description="2ε*")
    projector_bound: float = Field(..., description="4√ε*")
    valid: bool
    reasons: list[str] = Field(default_factory=list)
    tail_heuristic: bool = True
    provenance: dict[str, str] = Field(default_factory=dict)
