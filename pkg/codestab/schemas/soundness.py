import math

from pydantic import BaseModel, Field, field_validator

from codestab.types import Sector


class ProfileRow(BaseModel):
    M: int = Field(..., description="Stabilizer weight")
    f_emp: int = Field(..., description="Running maximum of the minimal check counts")
    f_raw: int | None = Field(
        default=None, description="Worst minimal count among stabilizers of exactly weight M"
    )
    witness: str | None = Field(default=None, description="Worst stabilizer of weight M")
    certified: bool


class SoundnessProfile(BaseModel):
    code: str
    sector: Sector | None = Field(default=None, description="None for the whole group")
    M_max: int
    rows: list[ProfileRow]
    certified: bool
    group_size: int = Field(..., description="Number of elements of the enumerated group")
    explored: int = Field(
        ...,
        description=(
            "Elements reached before the budget ran out. For a CSS combination this is the product of the"
            " sector counts, i.e. the size of the group the combined rows cover, not an enumeration count"
        ),
    )
    sectors: dict[str, "SoundnessProfile"] = Field(
        default_factory=dict, description="Per-sector profiles behind a CSS combination"
    )

    def f_emp(self, M: int) -> int:
        for row in self.rows:
            if row.M == M:
                return row.f_emp
        raise KeyError(M)


SoundnessProfile.model_rebuild()


class ExpansionRow(BaseModel):
    size: int
    min_ratio: float
    min_weight: int
    witness: list[int]
    subsets: int
    certified: bool


class ExpansionProfile(BaseModel):
    code: str
    size_max: int
    eta_emp: float = Field(..., ge=0)
    rows: list[ExpansionRow]
    certified: bool
    seed: int


class SoundnessFunction(BaseModel):
    """f(M) = c_f M^{2−β} below the weight cutoff d_c."""

    c_f: float = Field(..., gt=0)
    beta: float = Field(..., le=1)
    d_c: float = Field(default=math.inf, gt=0)

    @field_validator("beta")
    @classmethod
    def finite_beta(cls, v):
        if not math.isfinite(v):
            raise ValueError("beta must be finite")
        return v

    @property
    def exponent(self) -> float:
        return 2.0 - self.beta

    def __call__(self, M: float) -> float:
        return self.c_f * M**self.exponent

    def inverse(self, y: float) -> float:
        return (y / self.c_f) ** (1.0 / self.exponent)


class GrowthConstants(BaseModel):
    geometry: str
    beta_used: float
    alpha: float
    c_g: float
    c_tilde_f: float
    c_tilde_f_prime: float | None
    c_f_prime: float
    c_f_dblprime: float


class SoundnessSum(BaseModel):
    sum: float
    bound: float
    holds: bool
    delta_kappa: float
    terms: list[float] = Field(..., description="γ(r) e^{−δκ f̃(r)} for r = 0, 1, ...")
    constants: GrowthConstants
