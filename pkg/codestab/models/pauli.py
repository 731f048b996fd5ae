from pydantic import BaseModel, ConfigDict, Field, model_validator

from codestab.core.exceptions import ContractViolationError
from codestab.models.bits import BitVector
from codestab.utils.bits import bit_indices

_LETTERS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}


class PauliString(BaseModel):
    """Hermitian Pauli string ``sign * i^{|x&z|} X^x Z^z``.

    Bit ``j`` of ``x`` / ``z`` is qubit ``j``; a qubit with both bits set
    carries Y.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Qubit count")
    x: int = Field(default=0, ge=0, description="X-part")
    z: int = Field(default=0, ge=0, description="Z-part")
    sign: int = Field(default=1, description="+1 or -1")

    @model_validator(mode="after")
    def check_bits(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.x >> self.n or self.z >> self.n:
            raise ValueError("Pauli bits set beyond n")
        return self

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n=n)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse ``[+-]?[IXYZ]*``; the first letter is qubit 0."""
        sign = 1
        if label[:1] in "+-" and label:
            sign = -1 if label[0] == "-" else 1
            label = label[1:]
        x = z = 0
        for j, letter in enumerate(label.upper()):
            if letter not in _LETTERS:
                raise ContractViolationError(f"bad Pauli letter {letter!r}")
            bx, bz = _LETTERS[letter]
            x |= bx << j
            z |= bz << j
        return cls(n=len(label), x=x, z=z, sign=sign)

    @classmethod
    def from_sparse(cls, n: int, ops: dict[int, str], sign: int = 1) -> "PauliString":
        x = z = 0
        for q, letter in ops.items():
            bx, bz = _LETTERS[letter.upper()]
            x |= bx << q
            z |= bz << q
        return cls(n=n, x=x, z=z, sign=sign)

    @classmethod
    def z_on(cls, n: int, qubits) -> "PauliString":
        return cls.from_sparse(n, {q: "Z" for q in qubits})

    @classmethod
    def x_on(cls, n: int, qubits) -> "PauliString":
        return cls.from_sparse(n, {q: "X" for q in qubits})

    @classmethod
    def from_vector(cls, n: int, vector: int, sign: int = 1) -> "PauliString":
        mask = (1 << n) - 1
        return cls(n=n, x=vector & mask, z=(vector >> n) & mask, sign=sign)

    @property
    def x_bits(self) -> BitVector:
        return BitVector(length=self.n, bits=self.x)

    @property
    def z_bits(self) -> BitVector:
        return BitVector(length=self.n, bits=self.z)

    @property
    def vector(self) -> int:
        """Symplectic vector packed as x | z << n."""
        return self.x | (self.z << self.n)

    @property
    def support_mask(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return self.support_mask.bit_count()

    def support(self) -> list[int]:
        return bit_indices(self.support_mask)

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_x_type(self) -> bool:
        return self.z == 0

    @property
    def is_z_type(self) -> bool:
        return self.x == 0

    def __neg__(self) -> "PauliString":
        return self.model_copy(update={"sign": -self.sign})

    def unsigned(self) -> "PauliString":
        return self if self.sign == 1 else -self

    def label(self) -> str:
        letters = []
        for j in range(self.n):
            bx, bz = (self.x >> j) & 1, (self.z >> j) & 1
            letters.append("IXZY"[bx + 2 * bz])
        return ("+" if self.sign == 1 else "-") + "".join(letters)

    def __str__(self) -> str:
        return self.label()
