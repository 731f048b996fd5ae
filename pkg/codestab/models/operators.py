from collections.abc import Iterable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from codestab.core.exceptions import ContractViolationError
from codestab.models.code import StabilizerCode
from codestab.models.pauli import PauliString
from codestab.utils.bits import bit_indices, mask_from_indices

PauliKey = tuple[int, int]


class PauliSum(BaseModel):
    """Σ c_{x,z} P_{x,z} over unsigned Hermitian strings P_{x,z} = i^{|x&z|} X^x Z^z.

    Hermitian operators have real coefficients.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    coeffs: dict[PauliKey, complex] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_keys(self):
        limit = 1 << self.n
        for x, z in self.coeffs:
            if x < 0 or z < 0 or x >= limit or z >= limit:
                raise ValueError(f"Pauli key ({x}, {z}) does not fit {self.n} qubits")
        return self

    @classmethod
    def zero(cls, n: int) -> "PauliSum":
        return cls(n=n)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[complex, PauliString]]) -> "PauliSum":
        coeffs: dict[PauliKey, complex] = {}
        for c, p in terms:
            if p.n != n:
                raise ContractViolationError(f"term on {p.n} qubits in a sum on {n}")
            key = (p.x, p.z)
            coeffs[key] = coeffs.get(key, 0j) + complex(c) * p.sign
        return cls(n=n, coeffs={k: v for k, v in coeffs.items() if v != 0})

    @classmethod
    def from_labels(cls, labels: dict[str, complex]) -> "PauliSum":
        paulis = [(c, PauliString.from_label(label)) for label, c in labels.items()]
        if not paulis:
            raise ContractViolationError("empty label map; use PauliSum.zero(n)")
        return cls.from_terms(paulis[0][1].n, paulis)

    @classmethod
    def from_arrays(cls, n: int, xs: np.ndarray, zs: np.ndarray, values: np.ndarray) -> "PauliSum":
        return cls(
            n=n,
            coeffs={(int(x), int(z)): complex(c) for x, z, c in zip(xs, zs, values) if c != 0},
        )

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        keys = list(self.coeffs)
        xs = np.array([k[0] for k in keys], dtype=np.int64)
        zs = np.array([k[1] for k in keys], dtype=np.int64)
        values = np.array([self.coeffs[k] for k in keys], dtype=complex)
        return xs, zs, values

    def __len__(self) -> int:
        return len(self.coeffs)

    def items(self):
        return self.coeffs.items()

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def support_mask(self) -> int:
        mask = 0
        for x, z in self.coeffs:
            mask |= x | z
        return mask

    def coefficient(self, p: PauliString) -> complex:
        return self.coeffs.get((p.x, p.z), 0j) * p.sign

    def _check_same_n(self, other: "PauliSum") -> None:
        if other.n != self.n:
            raise ContractViolationError(f"qubit count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "PauliSum") -> "PauliSum":
        self._check_same_n(other)
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            total = coeffs.get(k, 0j) + v
            if total == 0:
                coeffs.pop(k, None)
            else:
                coeffs[k] = total
        return PauliSum(n=self.n, coeffs=coeffs)

    def __mul__(self, scalar: complex) -> "PauliSum":
        if scalar == 0:
            return PauliSum.zero(self.n)
        return PauliSum(n=self.n, coeffs={k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "PauliSum":
        return self * -1

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-other)

    def chop(self, tol: float) -> "PauliSum":
        return PauliSum(n=self.n, coeffs={k: v for k, v in self.coeffs.items() if abs(v) > tol})

    def l1_norm(self) -> float:
        """Σ |c|, an upper bound on the operator norm."""
        return float(sum(abs(v) for v in self.coeffs.values()))

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(v.imag) <= tol for v in self.coeffs.values())

    def is_anti_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(v.real) <= tol for v in self.coeffs.values())

    def max_abs_difference(self, other: "PauliSum") -> float:
        diff = self - other
        return max((abs(v) for v in diff.coeffs.values()), default=0.0)

    def labels(self) -> dict[str, complex]:
        return {PauliString(n=self.n, x=x, z=z).label(): v for (x, z), v in self.coeffs.items()}


TermKey = tuple[tuple[int, ...], int]


class LocalTerm(BaseModel):
    """One O_{S,s}: Paulis sharing syndrome ``syndrome`` and supported inside ``support``."""

    model_config = ConfigDict(frozen=True)

    support: tuple[int, ...]
    syndrome: int = Field(default=0, ge=0, description="Bit c set when check c anticommutes")
    payload: PauliSum

    @model_validator(mode="after")
    def check_support(self):
        if list(self.support) != sorted(set(self.support)):
            raise ValueError("support must be sorted and duplicate-free")
        outside = self.payload.support_mask & ~mask_from_indices(self.support)
        if outside:
            raise ValueError(f"payload acts on qubits {bit_indices(outside)} outside its support")
        return self

    @property
    def key(self) -> TermKey:
        return self.support, self.syndrome

    @property
    def support_mask(self) -> int:
        return mask_from_indices(self.support)

    @property
    def size(self) -> int:
        return len(self.support)

    def with_payload(self, payload: PauliSum) -> "LocalTerm":
        return LocalTerm(support=self.support, syndrome=self.syndrome, payload=payload)


class QuasiLocalOperator(BaseModel):
    """Σ_{S,s} O_{S,s} with unique (S, s) keys."""

    model_config = ConfigDict(frozen=True)

    n: int
    terms: list[LocalTerm] = Field(default_factory=list)
    code: StabilizerCode | None = None

    @model_validator(mode="after")
    def check_terms(self):
        seen = set()
        for term in self.terms:
            if term.payload.n != self.n:
                raise ValueError(f"term on {term.payload.n} qubits in an operator on {self.n}")
            if term.key in seen:
                raise ValueError(f"duplicate term key {term.key}")
            seen.add(term.key)
        return self

    @classmethod
    def zero(cls, n: int, code: StabilizerCode | None = None) -> "QuasiLocalOperator":
        return cls(n=n, code=code)

    @classmethod
    def from_terms(
        cls, n: int, terms: Iterable[LocalTerm], code: StabilizerCode | None = None
    ) -> "QuasiLocalOperator":
        """Merge terms sharing a key; drop empty payloads."""
        merged: dict[TermKey, LocalTerm] = {}
        for term in terms:
            existing = merged.get(term.key)
            merged[term.key] = term if existing is None else existing.with_payload(existing.payload + term.payload)
        kept = [t for t in merged.values() if not t.payload.is_zero]
        kept.sort(key=lambda t: (len(t.support), t.support, t.syndrome))
        return cls(n=n, terms=kept, code=code)

    def __add__(self, other: "QuasiLocalOperator") -> "QuasiLocalOperator":
        if other.n != self.n:
            raise ContractViolationError(f"qubit count mismatch: {self.n} vs {other.n}")
        return QuasiLocalOperator.from_terms(self.n, [*self.terms, *other.terms], self.code or other.code)

    def __mul__(self, scalar: complex) -> "QuasiLocalOperator":
        return QuasiLocalOperator.from_terms(
            self.n, [t.with_payload(t.payload * scalar) for t in self.terms], self.code
        )

    __rmul__ = __mul__

    def __neg__(self) -> "QuasiLocalOperator":
        return self * -1

    def __sub__(self, other: "QuasiLocalOperator") -> "QuasiLocalOperator":
        return self + (-other)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def by_key(self) -> dict[TermKey, LocalTerm]:
        return {t.key: t for t in self.terms}

    def to_pauli_sum(self) -> PauliSum:
        out = PauliSum.zero(self.n)
        for term in self.terms:
            out = out + term.payload
        return out

    def chop(self, tol: float) -> "QuasiLocalOperator":
        return QuasiLocalOperator.from_terms(
            self.n, [t.with_payload(t.payload.chop(tol)) for t in self.terms], self.code
        )

    def max_support(self) -> int:
        return max((t.size for t in self.terms), default=0)
