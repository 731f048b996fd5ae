"""Syndrome-resolved decomposition of Pauli sums, κ-norms, local projectors and
block splitting on patches."""

import logging
import math
from collections import defaultdict
from collections.abc import Iterable

import numpy as np
import scipy.linalg
import scipy.sparse.linalg as spla

from codestab.core.config import settings
from codestab.core.exceptions import ConsistencyError, PatchTooLargeError
from codestab.models.code import StabilizerCode
from codestab.models.operators import LocalTerm, PauliSum, QuasiLocalOperator
from codestab.services.pauli import pauli_sum_commutator, symplectic_product
from codestab.services.swt.matrices import embed, pauli_decompose, pauli_sum_matrix, pauli_sum_sparse
from codestab.utils.bits import bit_indices, gather_bits, mask_from_indices, popcount_array

logger = logging.getLogger("codestab.swt.operators")


def _syndromes_and_supports(code: StabilizerCode, xs: np.ndarray, zs: np.ndarray) -> tuple[list[int], list[int]]:
    if code.m <= 62:
        syndromes = np.zeros(len(xs), dtype=np.int64)
        strong = xs | zs
        for c, check in enumerate(code.checks):
            anti = (popcount_array(xs & check.z) + popcount_array(zs & check.x)) & 1
            syndromes |= anti << c
            strong |= np.where(anti == 1, check.support_mask, 0)
        return syndromes.tolist(), strong.tolist()

    syndrome_list, strong_list = [], []
    for x, z in zip(xs.tolist(), zs.tolist()):
        bits, mask = 0, x | z
        for c, check in enumerate(code.checks):
            if symplectic_product(x, z, check.x, check.z):
                bits |= 1 << c
                mask |= check.support_mask
        syndrome_list.append(bits)
        strong_list.append(mask)
    return syndrome_list, strong_list


def decompose(op: PauliSum, code: StabilizerCode) -> QuasiLocalOperator:
    """Group Paulis by (strong support, syndrome).

    The strong support of P is supp(P) together with every check that
    anticommutes with P.
    """
    if op.n != code.n:
        raise ConsistencyError(f"operator on {op.n} qubits, code has {code.n}")
    if op.is_zero:
        return QuasiLocalOperator.zero(code.n, code)
    xs, zs, values = op.arrays()
    syndromes, supports = _syndromes_and_supports(code, xs, zs)
    groups: dict[tuple[int, int], dict[tuple[int, int], complex]] = defaultdict(dict)
    for x, z, c, s, mask in zip(xs.tolist(), zs.tolist(), values, syndromes, supports):
        groups[(mask, s)][(x, z)] = complex(c)
    terms = [
        LocalTerm(support=tuple(bit_indices(mask)), syndrome=s, payload=PauliSum(n=code.n, coeffs=coeffs))
        for (mask, s), coeffs in groups.items()
    ]
    return QuasiLocalOperator.from_terms(code.n, terms, code)


def verify_decomposition(op: QuasiLocalOperator, code: StabilizerCode) -> None:
    """Raise unless every term has a uniform syndrome and contains its anticommuting checks."""
    for term in op.terms:
        xs, zs, _ = term.payload.arrays()
        syndromes, supports = _syndromes_and_supports(code, xs, zs)
        for s, mask in zip(syndromes, supports):
            if s != term.syndrome:
                raise ConsistencyError(f"term {term.support} mixes syndromes {s} and {term.syndrome}")
            if mask & ~term.support_mask:
                raise ConsistencyError(f"term {term.support} misses an anticommuting check")


def checks_inside(code: StabilizerCode, mask: int) -> list[int]:
    return [c for c, check in enumerate(code.checks) if check.support_mask & ~mask == 0]


class PatchCache:
    """P_S, Q_S and H_S on the patch of each support seen so far."""

    def __init__(self, code: StabilizerCode):
        self.code = code
        self._patches: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    def get(self, positions: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        mask = mask_from_indices(positions)
        if mask not in self._patches:
            self._patches[mask] = _patch_operators(self.code, list(positions))
        return self._patches[mask]


def _patch_operators(code: StabilizerCode, positions: list[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if len(positions) > settings.patch_max_qubits:
        raise PatchTooLargeError(f"patch of {len(positions)} qubits exceeds {settings.patch_max_qubits}")
    dim = 1 << len(positions)
    identity = np.eye(dim, dtype=complex)
    p_s = identity.copy()
    h_s = np.zeros((dim, dim), dtype=complex)
    for c in checks_inside(code, mask_from_indices(positions)):
        check = code.checks[c]
        q = pauli_sum_matrix(PauliSum.from_terms(code.n, [(1.0, check)]), positions)
        p_s = p_s @ (identity + q) / 2
        h_s += code.lambdas[c] * (identity - q) / 2
    return p_s, identity - p_s, h_s


def local_projectors(code: StabilizerCode, s: Iterable[int], full: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """(P_S, Q_S) on the patch of ``s``, or embedded in the full space."""
    positions = sorted(set(s))
    p_s, q_s, _ = _patch_operators(code, positions)
    if full:
        return embed(p_s, positions, code.n), embed(q_s, positions, code.n)
    return p_s, q_s


def local_hamiltonian(code: StabilizerCode, s: Iterable[int]) -> np.ndarray:
    """H_S = Σ_{C ⊆ S} λ_C (I − Q_C)/2 on the patch of ``s``."""
    return _patch_operators(code, sorted(set(s)))[2]


def block_split(
    term: LocalTerm, code: StabilizerCode, cache: PatchCache | None = None
) -> tuple[LocalTerm, LocalTerm]:
    """(P_S V P_S + Q_S V Q_S, P_S V Q_S + Q_S V P_S) for one term."""
    cache = cache or PatchCache(code)
    p_s, q_s, _ = cache.get(term.support)
    matrix = pauli_sum_matrix(term.payload, list(term.support))
    diagonal = p_s @ matrix @ p_s + q_s @ matrix @ q_s
    off = matrix - diagonal
    positions = list(term.support)
    return (
        term.with_payload(pauli_decompose(diagonal, positions, code.n)),
        term.with_payload(pauli_decompose(off, positions, code.n)),
    )


def operator_norm(payload: PauliSum, positions: Iterable[int]) -> float:
    """Spectral norm of ``payload`` on the patch ``positions``."""
    positions = list(positions)
    if payload.is_zero:
        return 0.0
    if len(positions) > settings.patch_max_qubits:
        raise PatchTooLargeError(f"norm on {len(positions)} qubits exceeds {settings.patch_max_qubits}")
    if len(positions) <= settings.dense_max_qubits:
        return float(scipy.linalg.norm(pauli_sum_matrix(payload, positions), 2))

    xs, zs, values = payload.arrays()
    local = PauliSum.from_arrays(len(positions), gather_bits(xs, positions), gather_bits(zs, positions), values)
    matrix = pauli_sum_sparse(local)
    if payload.is_hermitian() or payload.is_anti_hermitian():
        top = spla.eigsh(matrix, k=1, which="LM", return_eigenvectors=False, tol=settings.eig_tol)
        return float(np.abs(top[0]))
    return float(spla.svds(matrix, k=1, return_singular_vectors=False)[0])


def term_norms(op: QuasiLocalOperator) -> list[float]:
    return [operator_norm(t.payload, t.support) for t in op.terms]


def kappa_norm(op: QuasiLocalOperator, kappa: float, norms: list[float] | None = None) -> float:
    """max_i Σ_{S ∋ i} Σ_s ‖O_{S,s}‖ e^{κ|S|}; identity terms (S = ∅) contribute nothing."""
    if kappa < 0:
        raise ConsistencyError(f"kappa must be non-negative, got {kappa}")
    if op.is_zero:
        return 0.0
    norms = norms if norms is not None else term_norms(op)
    per_qubit = np.zeros(op.n)
    for term, norm in zip(op.terms, norms):
        if term.support:
            per_qubit[list(term.support)] += norm * math.exp(kappa * term.size)
    return float(per_qubit.max(initial=0.0))


def commutator(a: QuasiLocalOperator, b: QuasiLocalOperator) -> QuasiLocalOperator:
    """[a, b] with each pair of overlapping terms placed on the union of their supports."""
    terms = []
    for ta in a.terms:
        mask_a = ta.support_mask
        for tb in b.terms:
            if not mask_a & tb.support_mask:
                continue
            payload = pauli_sum_commutator(ta.payload, tb.payload)
            if payload.is_zero:
                continue
            union = tuple(bit_indices(mask_a | tb.support_mask))
            terms.append(LocalTerm(support=union, syndrome=ta.syndrome ^ tb.syndrome, payload=payload))
    return QuasiLocalOperator.from_terms(a.n, terms, a.code or b.code)


def conjugation_series(
    a: QuasiLocalOperator, op: QuasiLocalOperator, tol: float = 1e-14, order_max: int = 40
) -> QuasiLocalOperator:
    """e^{−A} O e^{A} − O = Σ_{k≥1} (−1)^k/k! ad_A^k O, cut once a nested term is below ``tol``."""
    total = QuasiLocalOperator.zero(op.n, op.code)
    nested = op
    for k in range(1, order_max + 1):
        nested = commutator(a, nested).chop(settings.pauli_chop)
        if nested.is_zero:
            return total
        scale = (-1) ** k / math.factorial(k)
        total = total + nested * scale
        size = sum(t.payload.l1_norm() for t in nested.terms) / math.factorial(k)
        if size < tol:
            return total
    logger.warning(f"conjugation series not converged after {order_max} orders")
    return total
