from typing import Any

from pydantic import BaseModel, Field

from codestab.types import CodeKind


class CodeParameters(BaseModel):
    n: int
    k: int
    d: int | None = Field(
        default=None, description="Distance, or None when only a lower bound is known"
    )
    d_lower_bound: int = Field(..., description="Certified lower bound on d")
    certified: bool = Field(..., description="True when d is exact")
    d_x: int | None = None
    d_z: int | None = None
    kind: CodeKind

    def label(self) -> str:
        d = str(self.d) if self.d is not None else f">={self.d_lower_bound}"
        return f"[[{self.n},{self.k},{d}]]"


class CodeGraphMetrics(BaseModel):
    n: int
    edges: list[tuple[int, int]] = Field(..., description="Qubit pairs sharing a check")
    max_degree: int = Field(..., description="Δ of the code graph")
    q: int = Field(..., description="Maximum check weight")
    q_prime: int = Field(..., description="Maximum number of checks on a qubit")
    growth: list[list[int]] = Field(
        ..., description="Γ_i(r) = |B_{i,r}| for r = 0..radius, per qubit"
    )

    def gamma(self, i: int, r: int) -> int:
        """γ_i(r) = Γ_i(r) − Γ_i(r−1), with Γ_i(−1) = 0."""
        profile = self.growth[i]
        current = profile[min(r, len(profile) - 1)]
        previous = profile[min(r - 1, len(profile) - 1)] if r > 0 else 0
        return current - previous

    def max_gamma(self, r: int) -> int:
        return max(self.gamma(i, r) for i in range(self.n))


class CheckRecord(BaseModel):
    pauli: str = Field(..., description="Signed Pauli label, qubit 0 first")
    weight: float = Field(default=1.0, description="Hamiltonian weight λ")


class CodeArtifact(BaseModel):
    """On-disk form of a code, written by ``build`` and read by every other command."""

    name: str
    n: int
    kind: CodeKind
    checks: list[CheckRecord]
    metadata: dict[str, Any] = Field(default_factory=dict)
    parameters: CodeParameters | None = None
