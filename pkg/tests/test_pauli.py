import numpy as np
import pytest

from codestab.core.exceptions import ContractViolationError
from codestab.models.operators import PauliSum
from codestab.models.pauli import PauliString
from codestab.services.pauli import commutes, multiply, pauli_matrix, pauli_sum_commutator, pauli_sum_product


def test_label_parsing() -> None:
    """Labels put qubit 0 first and carry the sign."""
    p = PauliString.from_label("-XZY")
    assert p.sign == -1
    assert (p.x, p.z) == (0b101, 0b110)
    assert p.label() == "-XZY"
    assert p.weight == 3
    assert (p.x_bits.bits, p.z_bits.length) == (0b101, 3)


def test_bad_letter() -> None:
    """Only I, X, Y and Z are Pauli letters."""
    with pytest.raises(ContractViolationError, match="bad Pauli letter"):
        PauliString.from_label("XQ")


@pytest.mark.parametrize(
    ("a", "b", "expected"),
    [("X", "Z", False), ("XX", "ZZ", True), ("XI", "IZ", True), ("Y", "Y", True), ("XY", "YY", False)],
)
def test_commutes_matches_matrices(a: str, b: str, expected: bool) -> None:
    """The symplectic test agrees with the dense commutator."""
    p, q = PauliString.from_label(a), PauliString.from_label(b)
    mp, mq = pauli_matrix(p), pauli_matrix(q)
    assert commutes(p, q) is expected
    assert np.allclose(mp @ mq, mq @ mp) is expected


def test_xx_times_zz_is_minus_yy() -> None:
    """XX · ZZ = −YY."""
    out = multiply(PauliString.from_label("XX"), PauliString.from_label("ZZ"))
    assert out.label() == "-YY"


def test_anticommuting_product_rejected() -> None:
    """X · Z is not Hermitian."""
    with pytest.raises(ContractViolationError):
        multiply(PauliString.from_label("X"), PauliString.from_label("Z"))


def test_y_matrix() -> None:
    """Y in the computational basis."""
    np.testing.assert_allclose(pauli_matrix(PauliString.from_label("Y")), [[0, -1j], [1j, 0]])


def test_sum_commutator_and_product() -> None:
    """[X, Z] = −2iY and X·X = I."""
    x = PauliSum.from_labels({"X": 1.0})
    z = PauliSum.from_labels({"Z": 1.0})
    assert pauli_sum_commutator(x, z).coeffs == {(1, 1): -2j}
    assert pauli_sum_product(x, x).coeffs == {(0, 0): 1.0}
