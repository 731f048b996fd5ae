"""Spectra of H₀ + εV, relative boundedness of D by H₀, and the local
indistinguishability test for code patches."""

import logging
from itertools import product

import numpy as np
import scipy.linalg
import scipy.sparse.linalg as spla

from codestab.core.config import settings
from codestab.core.exceptions import ContractViolationError, NumericFailureError, PatchTooLargeError
from codestab.models.bits import BitMatrix
from codestab.models.code import StabilizerCode
from codestab.models.operators import PauliSum
from codestab.models.pauli import PauliString
from codestab.schemas.swt import IndistinguishabilityResult, RelativeBound, SpectralReport, SWTRunResult
from codestab.services import gf2
from codestab.services.stabilizer import neighbourhood, num_logical_qubits, syndrome_bits
from codestab.services.swt.matrices import hamiltonian_matrix, pauli_sum_matrix
from codestab.services.swt.operators import checks_inside, local_projectors
from codestab.types import SolverMode
from codestab.utils.bits import bit_indices, gather_bits, mask_from_indices, scatter_bits

logger = logging.getLogger("codestab.swt.spectral")

_RESIDUAL_LIMIT = 1e-6


def unperturbed_levels(code: StabilizerCode, count: int) -> np.ndarray:
    """Lowest ``count`` eigenvalues of H₀ with multiplicity.

    Every reachable syndrome s carries energy Σ_{c∈s} λ_c on a 2^k-dimensional space.
    """
    generators = []
    for q in range(code.n):
        generators.append(syndrome_bits(code, 1 << q, 0))
        generators.append(syndrome_bits(code, 0, 1 << q))
    basis = gf2.span_basis(generators)
    if len(basis) > settings.gf2_enum_rank_limit:
        raise PatchTooLargeError(f"syndrome space of rank {len(basis)} too large to enumerate")
    lambdas = np.asarray(code.lambdas, dtype=float)
    if code.m <= 62:
        spans = np.zeros(1, dtype=np.int64)
        for vec in basis:
            spans = np.concatenate((spans, spans ^ vec))
        bits = (spans[:, None] >> np.arange(code.m)) & 1
        energies = bits @ lambdas
    else:
        found = [0]
        for vec in basis:
            found += [s ^ vec for s in found]
        energies = np.array([sum(lambdas[c] for c in bit_indices(s)) for s in found])
    multiplicity = 1 << num_logical_qubits(code)
    return np.repeat(np.sort(energies), multiplicity)[:count]


def codespace_projector(code: StabilizerCode) -> np.ndarray:
    return local_projectors(code, range(code.n), full=True)[0]


def ground_cluster(eigenvalues: np.ndarray, ground: int, factor: float) -> tuple[int, float, float, bool]:
    """(size, splitting, gap, well_separated) of the lowest cluster.

    The cluster ends at the largest absolute gap among the lowest ``ground + 1``
    levels. It is well separated when that gap is at least ``factor`` times the
    largest gap inside the cluster, so the separation test is relative.
    """
    levels = eigenvalues[: ground + 1]
    gaps = np.diff(levels)
    idx = int(np.argmax(gaps))
    size = idx + 1
    splitting = float(levels[size - 1] - levels[0])
    gap = float(gaps[idx])
    intra = float(gaps[:idx].max(initial=0.0))
    return size, splitting, gap, gap >= factor * intra


def _sparse_lowest(matrix, k: int) -> tuple[np.ndarray, float]:
    dim = matrix.shape[0]
    v0 = np.random.default_rng(settings.eig_seed).standard_normal(dim).astype(complex)
    try:
        values, vectors = spla.eigsh(matrix, k=k, which="SA", v0=v0, tol=settings.eig_tol)
    except spla.ArpackNoConvergence as exc:
        raise NumericFailureError(f"sparse eigensolver did not converge: {exc}") from exc
    order = np.argsort(values)
    values, vectors = values[order], vectors[:, order]
    residuals = np.linalg.norm(matrix @ vectors - vectors * values, axis=0)
    max_residual = float(residuals.max(initial=0.0))
    if max_residual > _RESIDUAL_LIMIT:
        raise NumericFailureError(f"eigenvector residuals up to {max_residual:.3e}: {residuals.tolist()}")
    return values.real, max_residual


def spectral_report(
    code: StabilizerCode,
    v: PauliSum | None,
    epsilon: float,
    num_eigs: int | None = None,
    mode: SolverMode = "auto",
    run: SWTRunResult | None = None,
) -> SpectralReport:
    """Lowest levels of H₀ + εV, the ground cluster, its splitting and the gap above it."""
    n = code.n
    k = num_logical_qubits(code)
    ground = 1 << k
    num_eigs = num_eigs if num_eigs is not None else ground + 4
    if num_eigs < ground + 1:
        raise ContractViolationError(f"need at least {ground + 1} eigenvalues, got {num_eigs}")
    if mode == "auto":
        mode = "dense" if n <= settings.dense_max_qubits else "sparse"
    if mode == "dense" and n > settings.dense_max_qubits:
        raise PatchTooLargeError(f"{n} qubits exceed the dense limit {settings.dense_max_qubits}")
    if mode == "sparse" and n > settings.sparse_max_qubits:
        raise PatchTooLargeError(f"{n} qubits exceed the sparse limit {settings.sparse_max_qubits}")
    if v is None:
        v = PauliSum.zero(n)

    max_residual = None
    vectors = None
    if mode == "dense":
        h = hamiltonian_matrix(code, v, epsilon)
        values, vectors = scipy.linalg.eigh(h)
        eigenvalues = values[:num_eigs]
        v_norm = float(scipy.linalg.norm(pauli_sum_matrix(v), 2)) if not v.is_zero else 0.0
    else:
        h = hamiltonian_matrix(code, v, epsilon, sparse=True)
        eigenvalues, max_residual = _sparse_lowest(h, min(num_eigs, h.shape[0] - 1))
        v_norm = v.l1_norm()

    size, splitting, gap, separated = ground_cluster(eigenvalues, ground, settings.cluster_gap_factor)
    reference = unperturbed_levels(code, len(eigenvalues))
    shifts = np.abs(eigenvalues[: len(reference)] - reference)
    allowed = abs(epsilon) * v_norm
    weyl_margin = float(allowed - shifts.max(initial=0.0))

    projector_distance = None
    if run is not None and vectors is not None:
        p_new = vectors[:, :size] @ vectors[:, :size].conj().T
        u = run.unitary
        rotated = u @ codespace_projector(code) @ u.conj().T
        projector_distance = float(scipy.linalg.norm(p_new - rotated, 2))

    if not separated:
        logger.warning(f"ground cluster of {code.name} at epsilon={epsilon:g} is not well separated")
    return SpectralReport(
        code=code.name,
        n=n,
        k=k,
        epsilon=epsilon,
        mode=mode,
        eigenvalues=[float(x) for x in eigenvalues],
        cluster_size=size,
        splitting=splitting,
        gap=gap,
        well_separated=separated,
        weyl_holds=weyl_margin >= -1e-9,
        weyl_margin=weyl_margin,
        perturbation_norm=v_norm,
        projector_distance=projector_distance,
        max_residual=max_residual,
    )


def relative_bound_estimate(code: StabilizerCode, d: np.ndarray) -> RelativeBound:
    """Offset c_D and the smallest c with (D − c_D)² ≼ c² H₀² on the excited space."""
    dim = 1 << code.n
    if d.shape != (dim, dim):
        raise ContractViolationError(f"D has shape {d.shape}, expected {(dim, dim)}")
    h0 = hamiltonian_matrix(code)
    p = codespace_projector(code)
    q = np.eye(dim) - p
    offset = float(np.real(np.trace(p @ d @ p)) / np.real(np.trace(p)))

    scale = max(1.0, float(scipy.linalg.norm(d, 2)))
    block_diagonal = float(scipy.linalg.norm(p @ d @ q, 2)) <= 1e-8 * scale
    if not block_diagonal:
        logger.warning("D is not block diagonal; offset is a least-squares fit on the codespace")

    shifted = d - offset * np.eye(dim)
    codespace_residual = float(scipy.linalg.norm(shifted @ p, 2))

    energies, basis = scipy.linalg.eigh(h0)
    excited = basis[:, energies > 0.5]
    if excited.shape[1] == 0:
        return RelativeBound(c=0.0, offset=offset, block_diagonal=block_diagonal, codespace_residual=codespace_residual)
    lhs = excited.conj().T @ shifted.conj().T @ shifted @ excited
    rhs = excited.conj().T @ h0 @ h0 @ excited
    top = scipy.linalg.eigh(lhs, rhs, eigvals_only=True)[-1]
    return RelativeBound(
        c=float(np.sqrt(max(top, 0.0))),
        offset=offset,
        block_diagonal=block_diagonal,
        codespace_residual=codespace_residual,
    )


def _exact_indistinguishability(code: StabilizerCode, region: list[int], bar_mask: int) -> tuple[str | None, int]:
    n, t = code.n, len(region)
    inside = [code.checks[c] for c in checks_inside(code, bar_mask)]
    rows = []
    for check in inside:
        cx = int(gather_bits(np.array([check.x]), region)[0])
        cz = int(gather_bits(np.array([check.z]), region)[0])
        rows.append(cz | (cx << t))
    if rows:
        kernel = [v.bits for v in gf2.kernel(BitMatrix(cols=2 * t, data=tuple(rows)))]
    else:
        kernel = [1 << i for i in range(2 * t)]
    span, _ = gf2.echelon([c.vector for c in inside])
    low = (1 << t) - 1
    for vec in kernel:
        lx = int(scatter_bits(np.array([vec & low]), region)[0])
        lz = int(scatter_bits(np.array([vec >> t]), region)[0])
        if not gf2.in_span(lx | (lz << n), span):
            return PauliString(n=n, x=lx, z=lz).label(), len(kernel)
    return None, len(kernel)


def _enumerated_indistinguishability(code: StabilizerCode, region: list[int], bar: list[int]) -> tuple[str | None, int]:
    if len(bar) > settings.dense_max_qubits:
        raise PatchTooLargeError(f"neighbourhood of {len(bar)} qubits too large to enumerate")
    p_bar, _ = local_projectors(code, bar)
    trace = np.real(np.trace(p_bar))
    checked = 0
    for letters in product("IXYZ", repeat=len(region)):
        if all(letter == "I" for letter in letters):
            continue
        op = PauliString.from_sparse(code.n, dict(zip(region, letters)))
        o_mat = pauli_sum_matrix(PauliSum.from_terms(code.n, [(1.0, op)]), bar)
        sandwich = p_bar @ o_mat @ p_bar
        scalar = np.trace(sandwich) / trace
        checked += 1
        if np.abs(sandwich - scalar * p_bar).max() > 1e-9:
            return op.label(), checked
    return None, checked


def local_indistinguishability_check(
    code: StabilizerCode, s, r: int, method: str = "exact"
) -> IndistinguishabilityResult:
    """Whether P_S̄ O P_S̄ ∝ P_S̄ for every Pauli O on S, with S̄ the r-neighbourhood of S.

    ``exact`` reduces the test to GF(2): every Pauli on S that commutes with
    the checks inside S̄ must be a product of those checks. ``enumerate``
    sandwiches each Pauli on S between patch projectors.
    """
    region = sorted(set(s))
    if not region:
        raise ContractViolationError("region must be non-empty")
    bar = sorted(neighbourhood(code, region, r))
    if method == "exact":
        counterexample, checked = _exact_indistinguishability(code, region, mask_from_indices(bar))
    elif method == "enumerate":
        if len(region) > 4:
            raise ContractViolationError("enumeration is limited to regions of at most 4 qubits")
        counterexample, checked = _enumerated_indistinguishability(code, region, bar)
    else:
        raise ContractViolationError(f"unknown method {method!r}")
    return IndistinguishabilityResult(
        holds=counterexample is None,
        region=region,
        neighbourhood=bar,
        r=r,
        counterexample=counterexample,
        method=method,
        checked=checked,
    )
