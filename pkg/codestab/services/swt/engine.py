"""Order-by-order Schrieffer-Wolff iteration H₀ + D_m + V_m + E_m at desk scale.

Each step solves [H₀, A] + V = ℙV term by term on patches, then conjugates the
full Hamiltonian exactly with e^{A}.
"""

import logging

import numpy as np
import scipy.linalg

from codestab.core.config import settings
from codestab.core.exceptions import ConsistencyError, NumericFailureError, PatchTooLargeError
from codestab.models.code import StabilizerCode
from codestab.models.operators import PauliSum, QuasiLocalOperator
from codestab.schemas.flow import FlowConstants
from codestab.schemas.swt import SWTOrderRow, SWTRunResult, SWTRunSummary, SWTStepResult
from codestab.services.flow import c_iter_const, epsilon_zero_search, flow_trajectory, kappa_m
from codestab.services.swt.matrices import hamiltonian_matrix, pauli_decompose, pauli_sum_matrix
from codestab.services.swt.operators import PatchCache, decompose, kappa_norm

logger = logging.getLogger("codestab.swt.engine")

_DIVERGENCE_RUN = 3


def _pseudo_inverse(h_s: np.ndarray) -> np.ndarray:
    """Inverse of H_S on the range of Q_S; H_S vanishes exactly on the range of P_S."""
    w, vecs = scipy.linalg.eigh(h_s)
    inv = np.where(w > 0.5, 1.0 / np.where(w > 0.5, w, 1.0), 0.0)
    return (vecs * inv) @ vecs.conj().T


def generator_solution(
    code: StabilizerCode, v: QuasiLocalOperator, cache: PatchCache | None = None
) -> tuple[QuasiLocalOperator, QuasiLocalOperator, QuasiLocalOperator]:
    """(A, ℙV, ℙ⊥V) with A_{S,s} = P_S V Q_S H_S⁻¹ − H_S⁻¹ Q_S V P_S."""
    cache = cache or PatchCache(code)
    n = code.n
    generators, diagonal, off = [], [], []
    for term in v.terms:
        positions = list(term.support)
        p_s, q_s, h_s = cache.get(term.support)
        matrix = pauli_sum_matrix(term.payload, positions)
        pvq = p_s @ matrix @ q_s
        qvp = q_s @ matrix @ p_s
        off_matrix = pvq + qvp
        if term.syndrome == 0:
            if np.abs(off_matrix).max(initial=0.0) > settings.residual_tol:
                raise ConsistencyError(f"syndrome-free term on {term.support} has an off-diagonal part")
            diagonal.append(term)
            continue
        h_inv = _pseudo_inverse(h_s)
        a_matrix = pvq @ h_inv - h_inv @ qvp
        generators.append(term.with_payload(pauli_decompose(a_matrix, positions, n)))
        diagonal.append(term.with_payload(pauli_decompose(matrix - off_matrix, positions, n)))
        off.append(term.with_payload(pauli_decompose(off_matrix, positions, n)))
    return (
        QuasiLocalOperator.from_terms(n, generators, code),
        QuasiLocalOperator.from_terms(n, diagonal, code),
        QuasiLocalOperator.from_terms(n, off, code),
    )


def solve_generator(code: StabilizerCode, v: QuasiLocalOperator, cache: PatchCache | None = None) -> QuasiLocalOperator:
    """Anti-Hermitian A with [H₀, A] + V = ℙV."""
    return generator_solution(code, v, cache)[0]


def dense(op: QuasiLocalOperator | PauliSum) -> np.ndarray:
    ps = op.to_pauli_sum() if isinstance(op, QuasiLocalOperator) else op
    return pauli_sum_matrix(ps)


def generator_residual(
    code: StabilizerCode, v: QuasiLocalOperator, a: QuasiLocalOperator, p_v: QuasiLocalOperator
) -> float:
    """‖[H₀, A] + V − ℙV‖ on the full space."""
    h0 = hamiltonian_matrix(code)
    a_mat = dense(a)
    return float(scipy.linalg.norm(h0 @ a_mat - a_mat @ h0 + dense(v) - dense(p_v), 2))


def split_by_support(op: QuasiLocalOperator, d_s: int) -> tuple[QuasiLocalOperator, QuasiLocalOperator]:
    """(terms with |S| < d_s, terms with |S| >= d_s)."""
    small = [t for t in op.terms if t.size < d_s]
    large = [t for t in op.terms if t.size >= d_s]
    return (
        QuasiLocalOperator.from_terms(op.n, small, op.code),
        QuasiLocalOperator.from_terms(op.n, large, op.code),
    )


def swt_step(
    code: StabilizerCode,
    d_m: QuasiLocalOperator,
    v_m: QuasiLocalOperator,
    e_m: np.ndarray,
    d_s: int,
    cache: PatchCache | None = None,
    check_generator: bool = True,
) -> SWTStepResult:
    """e^{−A_m}(H₀ + D_m + V_m + E_m)e^{A_m} = H₀ + D_{m+1} + V_{m+1} + E_{m+1}."""
    n = code.n
    if n > settings.swt_max_qubits:
        raise PatchTooLargeError(f"{n} qubits exceed the SWT limit {settings.swt_max_qubits}")
    cache = cache or PatchCache(code)
    a_m, p_v, off_v = generator_solution(code, v_m, cache)
    d_next = d_m + p_v

    residual = generator_residual(code, v_m, a_m, p_v) if check_generator else None
    if residual is not None and residual > settings.residual_tol:
        raise NumericFailureError(f"generator residual {residual:.3e} exceeds {settings.residual_tol:g}")

    if a_m.is_zero:
        zero = QuasiLocalOperator.zero(n, code)
        return SWTStepResult(
            d_next=d_next,
            v_next=zero,
            e_next=e_m,
            generator=a_m,
            diagonal=p_v,
            off_diagonal=off_v,
            generator_residual=residual,
            conjugation_residual=0.0,
            chopped_norm=0.0,
        )

    h0 = hamiltonian_matrix(code)
    d_mat, d_next_mat = dense(d_m), dense(d_next)
    total = h0 + d_mat + dense(v_m) + e_m
    u = scipy.linalg.expm(dense(a_m))
    u_dag = u.conj().T
    conjugated = u_dag @ total @ u
    e_conj = u_dag @ e_m @ u

    v_prime = conjugated - h0 - d_next_mat - e_conj
    v_prime = (v_prime + v_prime.conj().T) / 2
    kept = pauli_decompose(v_prime, n=n)
    chopped = v_prime - pauli_sum_matrix(kept)
    v_next, large = split_by_support(decompose(kept, code), d_s)
    e_next = e_conj + dense(large) + chopped

    conj_residual = float(scipy.linalg.norm(conjugated - (h0 + d_next_mat + dense(v_next) + e_next), 2))
    if conj_residual > settings.conjugation_tol:
        raise NumericFailureError(
            f"conjugation identity off by {conj_residual:.3e} (tolerance {settings.conjugation_tol:g})"
        )
    return SWTStepResult(
        d_next=d_next,
        v_next=v_next,
        e_next=e_next,
        generator=a_m,
        diagonal=p_v,
        off_diagonal=off_v,
        generator_residual=residual,
        conjugation_residual=conj_residual,
        chopped_norm=float(scipy.linalg.norm(chopped, 2)),
    )


def schedule_norms(generators: list[QuasiLocalOperator], kappa: float) -> list[float]:
    """‖A(t)‖_κ on each interval [2^{−m}, 2^{1−m}) of the schedule A(t) = 2^m A_m."""
    return [2.0**m * kappa_norm(a, kappa) for m, a in enumerate(generators, start=1)]


def _flow_envelope(consts: FlowConstants, epsilon: float, m_max: int) -> list[float] | None:
    c_iter = c_iter_const(consts).c_iter
    eps0 = epsilon_zero_search(consts, c_iter=c_iter).epsilon0
    if epsilon > eps0:
        logger.info(f"epsilon={epsilon:.3g} above epsilon0={eps0:.3g}; flow envelope not applicable")
        return None
    return [row.v for row in flow_trajectory(consts, epsilon, m_max=m_max, c_iter=c_iter).rows]


def swt_run(
    code: StabilizerCode,
    v: PauliSum,
    m_target: int,
    d_s: int,
    kappa1: float = 1.0,
    flow_consts: FlowConstants | None = None,
) -> SWTRunResult:
    """Iterate swt_step up to order ``m_target`` and assemble U = e^{A₁}⋯e^{A_{m−1}}."""
    n = code.n
    if n > settings.swt_max_qubits:
        raise PatchTooLargeError(f"{n} qubits exceed the SWT limit {settings.swt_max_qubits}")
    if m_target < 1 or d_s < 1:
        raise ConsistencyError(f"need m_target >= 1 and d_s >= 1, got {m_target}, {d_s}")
    cache = PatchCache(code)
    v_1, large = split_by_support(decompose(v, code), d_s)
    d_ops = [QuasiLocalOperator.zero(n, code)]
    v_ops = [v_1]
    e_mats = [dense(large)]
    generators: list[QuasiLocalOperator] = []
    rows: list[SWTOrderRow] = []
    diverged = False
    rising = 0

    m = 1
    while True:
        kappa = kappa_m(kappa1, m)
        v_m = v_ops[-1]
        last = m >= m_target
        step = None if last else swt_step(code, d_ops[-1], v_m, e_mats[-1], d_s, cache)
        if step is None:
            _, _, off = generator_solution(code, v_m, cache)
        else:
            off = step.off_diagonal
        v_norm = kappa_norm(v_m, kappa)
        rows.append(
            SWTOrderRow(
                m=m,
                kappa_m=kappa,
                v=v_norm,
                v_tilde=kappa_norm(off, kappa),
                generator_norm=None if step is None else kappa_norm(step.generator, kappa),
                generator_residual=None if step is None else step.generator_residual,
                conjugation_residual=None if step is None else step.conjugation_residual,
                garbage_norm=float(scipy.linalg.norm(e_mats[-1], 2)),
                num_terms=len(v_m),
                max_support=v_m.max_support(),
            )
        )
        logger.debug(f"order {m}: v={v_norm:.3e}, terms={len(v_m)}")
        if len(rows) > 1 and rows[-1].v > rows[-2].v:
            rising += 1
        else:
            rising = 0
        if rising >= _DIVERGENCE_RUN:
            diverged = True
            logger.warning(f"SWT norms increased for {_DIVERGENCE_RUN} consecutive orders; stopping at m={m}")
            break
        if step is None:
            break
        generators.append(step.generator)
        d_ops.append(step.d_next)
        v_ops.append(step.v_next)
        e_mats.append(step.e_next)
        m += 1

    unitary = np.eye(1 << n, dtype=complex)
    for a in generators:
        unitary = unitary @ scipy.linalg.expm(dense(a))
    unitarity_error = float(scipy.linalg.norm(unitary.conj().T @ unitary - np.eye(1 << n), 2))

    epsilon = rows[0].v
    sup_norm = max(schedule_norms(generators, kappa1 / 2), default=0.0)
    within = None
    if flow_consts is not None:
        envelope = _flow_envelope(flow_consts, epsilon, len(rows))
        if envelope is not None:
            for row, bound in zip(rows, envelope):
                row.flow_bound = bound
            within = all(row.v <= bound * (1 + 1e-9) + 1e-15 for row, bound in zip(rows, envelope))

    summary = SWTRunSummary(
        code=code.name,
        n=n,
        d_s=d_s,
        kappa1=kappa1,
        epsilon=epsilon,
        orders=rows,
        diverged=diverged,
        unitarity_error=unitarity_error,
        schedule_sup_norm=sup_norm,
        schedule_bound_holds=sup_norm <= 2 * epsilon * (1 + 1e-9),
        within_flow_envelope=within,
    )
    return SWTRunResult(
        summary=summary,
        d_ops=d_ops,
        v_ops=v_ops,
        e_mats=e_mats,
        generators=generators,
        unitary=unitary,
    )


def dressed_hamiltonian(code: StabilizerCode, run: SWTRunResult) -> np.ndarray:
    """H₀ + D_m + V_m + E_m at the last order reached."""
    return hamiltonian_matrix(code) + dense(run.d_ops[-1]) + dense(run.v_ops[-1]) + run.e_mats[-1]

