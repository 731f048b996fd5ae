import numpy as np
import pytest

from codestab.models.bits import BitMatrix, BitVector
from codestab.utils.bits import bit_indices, gather_bits, iter_gray_code, scatter_bits


def test_gray_code_visits_every_combination_once() -> None:
    """All 2^k XOR combinations of the basis appear exactly once."""
    basis = [0b0011, 0b0101, 0b1000]
    seen = list(iter_gray_code(basis))
    assert seen[0] == 0
    assert len(seen) == 8
    assert len(set(seen)) == 8


def test_gather_and_scatter_are_inverse() -> None:
    """Scattering gathered bits restores the bits on the chosen positions."""
    states = np.array([0b101101, 0b010010], dtype=np.int64)
    positions = [0, 2, 5]
    packed = gather_bits(states, positions)
    assert packed.tolist() == [0b111, 0b000]
    assert scatter_bits(packed, positions).tolist() == [0b100101, 0]


def test_bitvector_padding_rejected() -> None:
    """Bits beyond the length do not validate."""
    with pytest.raises(ValueError):
        BitVector(length=3, bits=0b1000)


def test_bitvector_xor_is_self_inverse() -> None:
    """v XOR v has weight 0."""
    v = BitVector.from_list([1, 0, 1, 1])
    assert (v ^ v).weight == 0
    assert v.indices() == [0, 2, 3]


def test_bitmatrix_transpose() -> None:
    """Transposing swaps row and column weights."""
    m = BitMatrix.from_array([[1, 1, 0], [0, 1, 1]])
    t = m.transpose()
    assert t.rows == 3 and t.cols == 2
    assert t.row_weights() == m.col_weights() == [1, 2, 1]
    assert bit_indices(t.data[1]) == [0, 1]
