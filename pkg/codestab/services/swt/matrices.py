"""Dense and sparse matrices for Pauli sums, their Walsh-Hadamard decomposition,
and embedding of patch matrices into the full space.

Basis index bit ``j`` is local qubit ``j``; for a patch the local qubits are
``positions`` in order.
"""

import logging
from collections import defaultdict

import numpy as np
import scipy.sparse as sp

from codestab.core.config import settings
from codestab.core.exceptions import ContractViolationError, PatchTooLargeError
from codestab.models.code import StabilizerCode
from codestab.models.operators import PauliSum
from codestab.utils.bits import gather_bits, mask_from_indices, parity_array, popcount_array, scatter_bits

logger = logging.getLogger("codestab.swt.matrices")

_I_POWERS = np.array([1, 1j, -1, -1j])


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the last axis (length 2^s)."""
    out = np.array(a, dtype=complex, copy=True)
    size = out.shape[-1]
    lead = out.shape[:-1]
    h = 1
    while h < size:
        out = out.reshape(*lead, size // (2 * h), 2, h)
        lo, hi = out[..., 0, :], out[..., 1, :]
        out = np.stack((lo + hi, lo - hi), axis=-2)
        h *= 2
    return out.reshape(*lead, size)


def _local_keys(ps: PauliSum, positions: list[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    outside = ps.support_mask & ~mask_from_indices(positions)
    if outside:
        raise ContractViolationError("Pauli sum acts outside the requested positions")
    xs, zs, values = ps.arrays()
    return gather_bits(xs, positions), gather_bits(zs, positions), values


def pauli_sum_matrix(ps: PauliSum, positions: list[int] | None = None) -> np.ndarray:
    """Dense matrix of ``ps`` on the qubits ``positions`` (default: all n)."""
    positions = list(range(ps.n)) if positions is None else list(positions)
    s = len(positions)
    if s > settings.patch_max_qubits:
        raise PatchTooLargeError(f"dense matrix on {s} qubits exceeds {settings.patch_max_qubits}")
    dim = 1 << s
    out = np.zeros((dim, dim), dtype=complex)
    if ps.is_zero:
        return out
    xs, zs, values = _local_keys(ps, positions)
    cols = np.arange(dim, dtype=np.int64)
    phased = values * _I_POWERS[popcount_array(xs & zs) % 4]

    if len(xs) > 4 * dim:
        # dense coefficient grid, one transform per X-pattern
        grid = np.zeros((dim, dim), dtype=complex)
        np.add.at(grid, (xs, zs), phased)
        diag = fwht(grid)
        rows = cols[None, :] ^ cols[:, None]
        out[rows, np.broadcast_to(cols, (dim, dim))] = diag
        return out

    groups: dict[int, np.ndarray] = defaultdict(lambda: np.zeros(dim, dtype=complex))
    for x, z, c in zip(xs, zs, phased):
        groups[int(x)] += c * parity_array(cols & z)
    for x, diag in groups.items():
        out[cols ^ x, cols] += diag
    return out


def pauli_sum_sparse(ps: PauliSum) -> sp.csr_matrix:
    """CSR matrix on all n qubits; one diagonal-times-flip block per X-pattern."""
    dim = 1 << ps.n
    cols = np.arange(dim, dtype=np.int64)
    by_x: dict[int, list[tuple[int, complex]]] = defaultdict(list)
    for (x, z), c in ps.items():
        by_x[x].append((z, c * _I_POWERS[(x & z).bit_count() % 4]))

    row_blocks, col_blocks, data_blocks = [], [], []
    for x, entries in by_x.items():
        diag = np.zeros(dim, dtype=complex)
        for z, c in entries:
            diag += c * parity_array(cols & z)
        keep = diag != 0
        row_blocks.append(cols[keep] ^ x)
        col_blocks.append(cols[keep])
        data_blocks.append(diag[keep])
    if not data_blocks:
        return sp.csr_matrix((dim, dim), dtype=complex)
    matrix = sp.coo_matrix(
        (np.concatenate(data_blocks), (np.concatenate(row_blocks), np.concatenate(col_blocks))),
        shape=(dim, dim),
    )
    return matrix.tocsr()


def pauli_decompose(
    matrix: np.ndarray, positions: list[int] | None = None, n: int | None = None, tol: float | None = None
) -> PauliSum:
    """Pauli coefficients c_P = tr(P M)/2^s of a patch matrix, keyed on the global qubits."""
    dim = matrix.shape[0]
    s = dim.bit_length() - 1
    if matrix.shape != (dim, dim) or 1 << s != dim:
        raise ContractViolationError(f"expected a square 2^s matrix, got {matrix.shape}")
    positions = list(range(s)) if positions is None else list(positions)
    if len(positions) != s:
        raise ContractViolationError(f"{len(positions)} positions for a {s}-qubit matrix")
    n = n if n is not None else max(positions, default=-1) + 1
    tol = settings.pauli_chop if tol is None else tol

    idx = np.arange(dim, dtype=np.int64)
    # G[x, b] = M[b, b ^ x]
    gathered = matrix[idx[None, :], idx[None, :] ^ idx[:, None]]
    coeffs = fwht(gathered) / dim
    x_grid, z_grid = np.meshgrid(idx, idx, indexing="ij")
    coeffs *= _I_POWERS[popcount_array(x_grid & z_grid) % 4]

    keep = np.abs(coeffs) > tol
    xs = scatter_bits(x_grid[keep], positions)
    zs = scatter_bits(z_grid[keep], positions)
    return PauliSum.from_arrays(n, xs, zs, coeffs[keep])


def embed(patch: np.ndarray, positions: list[int], n: int) -> np.ndarray:
    """Full-space matrix of patch ⊗ identity on the remaining qubits."""
    s = len(positions)
    if patch.shape != (1 << s, 1 << s):
        raise ContractViolationError(f"patch shape {patch.shape} does not match {s} positions")
    if n > settings.dense_max_qubits:
        raise PatchTooLargeError(f"dense full-space matrix on {n} qubits exceeds {settings.dense_max_qubits}")
    taken = set(positions)
    others = [q for q in range(n) if q not in taken]
    local = scatter_bits(np.arange(1 << s, dtype=np.int64), positions)
    rest = scatter_bits(np.arange(1 << len(others), dtype=np.int64), others)
    index = local[:, None] | rest[None, :]
    out = np.zeros((1 << n, 1 << n), dtype=patch.dtype)
    out[index[:, None, :], index[None, :, :]] = patch[:, :, None]
    return out


def hamiltonian_pauli_sum(code: StabilizerCode) -> PauliSum:
    """H₀ = Σ λ_Q (I − Q)/2."""
    coeffs: dict[tuple[int, int], complex] = {}
    identity = 0.0
    for lam, check in zip(code.lambdas, code.checks):
        identity += lam / 2
        key = (check.x, check.z)
        coeffs[key] = coeffs.get(key, 0j) - lam / 2 * check.sign
    if identity:
        coeffs[(0, 0)] = complex(identity)
    return PauliSum(n=code.n, coeffs={k: v for k, v in coeffs.items() if v != 0})


def hamiltonian_matrix(
    code: StabilizerCode, perturbation: PauliSum | None = None, epsilon: float = 0.0, sparse: bool = False
):
    """H₀ + εV as a dense array or CSR matrix."""
    total = hamiltonian_pauli_sum(code)
    if perturbation is not None and epsilon != 0:
        if perturbation.n != code.n:
            raise ContractViolationError(f"perturbation on {perturbation.n} qubits, code has {code.n}")
        total = total + perturbation * epsilon
    if sparse:
        if code.n > settings.sparse_max_qubits:
            raise PatchTooLargeError(f"{code.n} qubits exceed the sparse limit {settings.sparse_max_qubits}")
        return pauli_sum_sparse(total)
    if code.n > settings.dense_max_qubits:
        raise PatchTooLargeError(f"{code.n} qubits exceed the dense limit {settings.dense_max_qubits}")
    return pauli_sum_matrix(total)
