import numpy as np

from codestab.core.exceptions import ContractViolationError
from codestab.models.operators import PauliSum
from codestab.models.pauli import PauliString
from codestab.utils.bits import parity_array

_PHASES = (1, 1j, -1, -1j)


def _check_sizes(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise ContractViolationError(f"qubit count mismatch: {p.n} vs {q.n}")


def symplectic_product(x1: int, z1: int, x2: int, z2: int) -> int:
    return ((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1


def commutes(p: PauliString, q: PauliString) -> bool:
    _check_sizes(p, q)
    return symplectic_product(p.x, p.z, q.x, q.z) == 0


def product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power of i in P(x1,z1) P(x2,z2) = i^e P(x1^x2, z1^z2) for unsigned strings."""
    x3, z3 = x1 ^ x2, z1 ^ z2
    return (
        (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        + 2 * (z1 & x2).bit_count()
        - (x3 & z3).bit_count()
    ) % 4


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Product ``p @ q``; raises when the result is not Hermitian (p, q anticommute)."""
    _check_sizes(p, q)
    phase = product_phase(p.x, p.z, q.x, q.z)
    if phase & 1:
        raise ContractViolationError(
            f"product of anticommuting strings {p} and {q} is not Hermitian"
        )
    sign = p.sign * q.sign * (-1 if phase == 2 else 1)
    return PauliString(n=p.n, x=p.x ^ q.x, z=p.z ^ q.z, sign=sign)


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix; qubit j is bit j of the basis index."""
    dim = 1 << p.n
    cols = np.arange(dim, dtype=np.int64)
    values = p.sign * (1j ** (p.x & p.z).bit_count()) * parity_array(cols & p.z)
    out = np.zeros((dim, dim), dtype=complex)
    out[cols ^ p.x, cols] = values
    return out


def pauli_sum_product(a: PauliSum, b: PauliSum) -> PauliSum:
    """Operator product ``a @ b`` expanded in the Hermitian Pauli basis."""
    if a.n != b.n:
        raise ContractViolationError(f"qubit count mismatch: {a.n} vs {b.n}")
    coeffs: dict[tuple[int, int], complex] = {}
    for (x1, z1), c1 in a.items():
        for (x2, z2), c2 in b.items():
            key = (x1 ^ x2, z1 ^ z2)
            coeffs[key] = coeffs.get(key, 0j) + c1 * c2 * _PHASES[product_phase(x1, z1, x2, z2)]
    return PauliSum(n=a.n, coeffs={k: v for k, v in coeffs.items() if v != 0})


def pauli_sum_commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    """[a, b]; only anticommuting pairs contribute, each as 2 c_a c_b P_a P_b."""
    if a.n != b.n:
        raise ContractViolationError(f"qubit count mismatch: {a.n} vs {b.n}")
    coeffs: dict[tuple[int, int], complex] = {}
    for (x1, z1), c1 in a.items():
        for (x2, z2), c2 in b.items():
            if not symplectic_product(x1, z1, x2, z2):
                continue
            key = (x1 ^ x2, z1 ^ z2)
            value = 2 * c1 * c2 * _PHASES[product_phase(x1, z1, x2, z2)]
            coeffs[key] = coeffs.get(key, 0j) + value
    return PauliSum(n=a.n, coeffs={k: v for k, v in coeffs.items() if v != 0})
