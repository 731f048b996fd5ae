import pytest

from codestab.core.exceptions import ContractViolationError
from codestab.models.bits import BitMatrix, BitVector
from codestab.services import gf2
from codestab.services.constructors import toric_code
from codestab.services.stabilizer import sector_matrix


def test_rank_and_left_nullspace() -> None:
    """Three dependent rows have rank 2 and one vanishing combination."""
    basis, null = gf2.echelon([0b011, 0b110, 0b101])
    assert len(basis) == 2
    assert null == [0b111]
    assert gf2.rank(BitMatrix(cols=3, data=(0b011, 0b110, 0b101))) == 2


@pytest.mark.parametrize(
    ("matrix", "expected"),
    [(BitMatrix.identity(3), 3), (BitMatrix.zeros(3, 3), 0), (sector_matrix(toric_code(2), "Z"), 3)],
)
def test_rank(matrix: BitMatrix, expected: int) -> None:
    assert gf2.rank(matrix) == expected


def test_kernel_of_repetition_parity_checks() -> None:
    """The only codeword of the length-3 repetition code is 111."""
    h = BitMatrix(cols=3, data=(0b011, 0b110))
    assert [v.bits for v in gf2.kernel(h)] == [0b111]


def test_solve_affine() -> None:
    """xᵀa = b is solved by the combination of both rows; 001 is unreachable."""
    a = BitMatrix(cols=3, data=(0b011, 0b110))
    solved = gf2.solve_affine(a, BitVector(length=3, bits=0b101))
    assert solved is not None
    particular, null = solved
    assert particular.bits == 0b11
    assert null == []
    assert gf2.solve_affine(a, BitVector(length=3, bits=0b001)) is None


def test_solve_affine_length_mismatch() -> None:
    """A right-hand side of the wrong length is a contract violation."""
    with pytest.raises(ContractViolationError):
        gf2.solve_affine(BitMatrix(cols=3, data=(0b011,)), BitVector(length=2, bits=1))


def test_min_support_solution_path_code() -> None:
    """Z0Z7 needs all seven neighbouring checks of a length-8 path."""
    rows = tuple((1 << j) | (1 << (j + 1)) for j in range(7))
    a = BitMatrix(cols=8, data=rows)
    target = BitVector(length=8, bits=(1 << 0) | (1 << 7))
    assert gf2.min_support_solution(a, target, cap=10) == 7
    assert gf2.min_support_solution(a, target, cap=6) is None


def test_min_weight_codeword_with_cap() -> None:
    """The repetition codeword 111 has weight 3; a cap of 2 reports a lower bound."""
    gen = BitMatrix(cols=3, data=(0b111,))
    zero = BitVector.zeros(3)
    assert gf2.min_weight_codeword(gen, zero, w_max=5) == 3
    assert gf2.min_weight_codeword(gen, zero, w_max=2) is None


def test_pauli_weight_counts_qubits_once() -> None:
    """A Y on qubit 0 (x and z set) has Pauli weight 1."""
    weight = gf2.pauli_weight_fn(2)
    assert weight(0b01 | (0b01 << 2)) == 1
    assert weight(0b01 | (0b10 << 2)) == 2
