from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from codestab.models.bits import BitMatrix
from codestab.models.pauli import PauliString
from codestab.types import CodeKind


class StabilizerCode(BaseModel):
    """Qubits, commuting check strings and their Hamiltonian weights λ."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    checks: tuple[PauliString, ...] = Field(default=())
    lambdas: tuple[float, ...] = Field(default=())
    name: str = Field(default="", description="Family label used in reports")
    metadata: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="before")
    @classmethod
    def default_lambdas(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("lambdas"):
            data = dict(data)
            data["lambdas"] = tuple(1.0 for _ in data.get("checks", ()))
        return data

    @model_validator(mode="after")
    def check_shapes(self):
        if len(self.lambdas) != len(self.checks):
            raise ValueError("one weight per check is required")
        for i, (check, lam) in enumerate(zip(self.checks, self.lambdas)):
            if check.n != self.n:
                raise ValueError(f"check {i} acts on {check.n} qubits, code has {self.n}")
            if check.sign != 1:
                raise ValueError(f"check {i} has sign -1")
            if check.is_identity:
                raise ValueError(f"check {i} is the identity")
            if lam < 1:
                raise ValueError(f"check {i} has weight {lam} < 1")
        return self

    @property
    def m(self) -> int:
        return len(self.checks)

    @property
    def kind(self) -> CodeKind:
        if all(c.is_z_type for c in self.checks):
            return "classical"
        if all(c.is_z_type or c.is_x_type for c in self.checks):
            return "css"
        return "general"

    def check_vectors(self) -> list[int]:
        return [c.vector for c in self.checks]

    def sector_indices(self, sector: str) -> list[int]:
        """Indices of the pure X (``"X"``) or pure Z (``"Z"``) checks."""
        if sector == "X":
            return [i for i, c in enumerate(self.checks) if c.is_x_type]
        return [i for i, c in enumerate(self.checks) if c.is_z_type]


class BipartiteTanner(BaseModel):
    """Classical Tanner graph; row ``c`` of ``biadjacency`` lists the bits of check ``c``."""

    model_config = ConfigDict(frozen=True)

    biadjacency: BitMatrix
    name: str = Field(default="")

    @model_validator(mode="after")
    def check_rows(self):
        if any(row == 0 for row in self.biadjacency.data):
            raise ValueError("every check must touch at least one bit")
        return self

    @property
    def n_bits(self) -> int:
        return self.biadjacency.cols

    @property
    def n_checks(self) -> int:
        return self.biadjacency.rows

    @property
    def max_bit_degree(self) -> int:
        return max(self.biadjacency.col_weights(), default=0)

    @property
    def max_check_degree(self) -> int:
        return max(self.biadjacency.row_weights(), default=0)
