from collections.abc import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from codestab.core.exceptions import ContractViolationError
from codestab.utils.bits import bit_indices, mask_from_indices


class BitVector(BaseModel):
    """Fixed-length vector over GF(2); bit ``i`` of ``bits`` is entry ``i``."""

    model_config = ConfigDict(frozen=True)

    length: int = Field(..., ge=0, description="Number of entries")
    bits: int = Field(default=0, ge=0, description="Packed payload")

    @model_validator(mode="after")
    def check_padding(self):
        if self.bits >> self.length:
            raise ValueError("bits set beyond the vector length")
        return self

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length=length, bits=0)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        return cls(length=length, bits=mask_from_indices(indices))

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "BitVector":
        return cls.from_indices(len(entries), (i for i, e in enumerate(entries) if e & 1))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise ContractViolationError(
                f"length mismatch: {self.length} vs {other.length}"
            )
        return BitVector(length=self.length, bits=self.bits ^ other.bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.length

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> list[int]:
        return bit_indices(self.bits)


class BitMatrix(BaseModel):
    """Row-major GF(2) matrix; each row is packed into an int of ``cols`` bits."""

    model_config = ConfigDict(frozen=True)

    cols: int = Field(..., ge=0)
    data: tuple[int, ...] = Field(default=())

    @model_validator(mode="after")
    def check_rows(self):
        for i, row in enumerate(self.data):
            if row < 0 or row >> self.cols:
                raise ValueError(f"row {i} does not fit in {self.cols} columns")
        return self

    @classmethod
    def from_array(cls, array: np.ndarray | Sequence[Sequence[int]]) -> "BitMatrix":
        arr = np.asarray(array, dtype=np.int64) & 1
        if arr.ndim != 2:
            raise ContractViolationError("expected a 2D array")
        rows = [mask_from_indices(np.flatnonzero(r).tolist()) for r in arr]
        return cls(cols=int(arr.shape[1]), data=tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(cols=n, data=tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(cols=cols, data=(0,) * rows)

    @property
    def rows(self) -> int:
        return len(self.data)

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.cols
        for i, row in enumerate(self.data):
            for j in bit_indices(row):
                cols[j] |= 1 << i
        return BitMatrix(cols=self.rows, data=tuple(cols))

    def row_weights(self) -> list[int]:
        return [row.bit_count() for row in self.data]

    def col_weights(self) -> list[int]:
        return self.transpose().row_weights()
