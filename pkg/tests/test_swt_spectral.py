import numpy as np
import pytest

from codestab.core.exceptions import ContractViolationError, PatchTooLargeError
from codestab.models.code import StabilizerCode
from codestab.models.pauli import PauliString
from codestab.services import gf2
from codestab.services.constructors import face_support, ising_toric, repetition_code, toric_code
from codestab.services.perturbations import x_field
from codestab.services.stabilizer import syndrome_of
from codestab.services.swt.engine import swt_run
from codestab.services.swt.matrices import hamiltonian_matrix
from codestab.services.swt.operators import checks_inside
from codestab.services.swt.spectral import (
    codespace_projector,
    ground_cluster,
    local_indistinguishability_check,
    relative_bound_estimate,
    spectral_report,
    unperturbed_levels,
)


def test_unperturbed_levels(rep3: StabilizerCode) -> None:
    """Syndrome energies 0, 1, 1, 2, each with multiplicity 2^k."""
    np.testing.assert_allclose(unperturbed_levels(rep3, 8), [0, 0, 1, 1, 1, 1, 2, 2])


def test_toric_ground_cluster(toric2: StabilizerCode) -> None:
    """Four degenerate ground states and a gap of 2 at ε = 0."""
    report = spectral_report(toric2, None, 0.0)
    assert report.cluster_size == 4
    assert report.splitting == pytest.approx(0.0, abs=1e-10)
    assert report.gap == pytest.approx(2.0)
    assert report.well_separated and report.weyl_holds


def test_transverse_field_splitting() -> None:
    """The Ising doublet splits only slightly and stays gapped."""
    code = repetition_code(4, coupling=2.0)
    report = spectral_report(code, x_field(4), 0.1)
    assert report.cluster_size == 2
    assert 0 < report.splitting < 1e-2
    assert report.gap > 1.5
    assert report.weyl_holds


def test_sparse_matches_dense(toric2: StabilizerCode) -> None:
    """Both solvers agree on the low spectrum."""
    dense = spectral_report(toric2, x_field(8), 0.05, mode="dense")
    sparse = spectral_report(toric2, x_field(8), 0.05, mode="sparse")
    np.testing.assert_allclose(sparse.eigenvalues, dense.eigenvalues, atol=1e-6)
    assert sparse.max_residual is not None


def test_too_few_levels(toric2: StabilizerCode) -> None:
    """At least 2^k + 1 levels are needed to see the gap."""
    with pytest.raises(ContractViolationError):
        spectral_report(toric2, None, 0.0, num_eigs=4)


def test_dense_limit(toric3: StabilizerCode) -> None:
    """18 qubits exceed the dense limit."""
    with pytest.raises(PatchTooLargeError):
        spectral_report(toric3, None, 0.0, mode="dense")


def test_projector_distance(rep4: StabilizerCode) -> None:
    """The rotated codespace tracks the perturbed ground space."""
    v = x_field(4)
    run = swt_run(rep4, v * 0.05, m_target=4, d_s=5)
    report = spectral_report(rep4, v, 0.05, run=run)
    assert report.projector_distance is not None
    assert report.projector_distance < 1e-2


def test_codespace_projector(toric2: StabilizerCode) -> None:
    """The codespace has dimension 2^k."""
    assert np.trace(codespace_projector(toric2)).real == pytest.approx(4.0)


def test_relative_bound_of_h0(rep3: StabilizerCode) -> None:
    """D = H₀ is bounded by H₀ with c = 1; D = 0 with c = 0."""
    h0 = hamiltonian_matrix(rep3)
    bound = relative_bound_estimate(rep3, h0)
    assert bound.c == pytest.approx(1.0)
    assert bound.offset == pytest.approx(0.0, abs=1e-12)
    assert bound.block_diagonal
    assert relative_bound_estimate(rep3, np.zeros_like(h0)).c == pytest.approx(0.0, abs=1e-6)


def test_classical_code_is_locally_distinguishable(rep3: StabilizerCode) -> None:
    """Z₀ tells the two repetition ground states apart."""
    result = local_indistinguishability_check(rep3, [0], 1)
    assert not result.holds
    assert result.counterexample == "+ZII"


def test_toric_single_qubit_indistinguishable() -> None:
    """No single-qubit Pauli sees the toric logical state."""
    result = local_indistinguishability_check(toric_code(4), [0], 1)
    assert result.holds


@pytest.mark.parametrize(("region", "r"), [([0, 1], 0), ([0, 1], 1), ([0], 1)])
def test_exact_and_enumerated_agree(toric2: StabilizerCode, region: list[int], r: int) -> None:
    """The GF(2) test and the projector sandwich give the same verdict."""
    exact = local_indistinguishability_check(toric2, region, r)
    enumerated = local_indistinguishability_check(toric2, region, r, method="enumerate")
    assert exact.holds == enumerated.holds


def test_ground_cluster_ends_at_largest_gap() -> None:
    """The cluster stops at the largest gap and is compared with its internal spread."""
    levels = np.array([0.0, 0.01, 0.02, 1.0, 1.5])
    size, splitting, gap, separated = ground_cluster(levels, 4, 10.0)
    assert size == 3
    assert splitting == pytest.approx(0.02)
    assert gap == pytest.approx(0.98)
    assert separated
    assert not ground_cluster(np.array([0.0, 0.3, 0.6, 1.0, 2.0]), 4, 10.0)[3]


def test_sparse_solver_on_toric_l3(toric3: StabilizerCode) -> None:
    """eigsh on 2^18 states keeps four ground states below a gap of at least 1/2."""
    report = spectral_report(toric3, x_field(18), 0.05, mode="sparse")
    assert report.mode == "sparse"
    assert report.cluster_size == 4
    assert report.gap > 0.5
    assert report.max_residual is not None and report.max_residual <= 1e-6


def test_ising_toric_shares_the_toric_ground_space() -> None:
    """At L=2 both Hamiltonians project onto the same codespace."""
    np.testing.assert_allclose(codespace_projector(ising_toric(2)), codespace_projector(toric_code(2)), atol=1e-12)


def test_ising_toric_distant_plaquette_distinguishes() -> None:
    """A plaquette far from f0 commutes with its neighbourhood checks without being their product."""
    L = 5
    code = ising_toric(L)
    face = face_support(L, 2, 2)
    result = local_indistinguishability_check(code, face, 1)
    assert not result.holds
    assert len(result.neighbourhood) < code.n
    witness = PauliString.from_label(result.counterexample)
    assert set(witness.support()) <= set(face)

    plaquette = PauliString.z_on(code.n, face)
    inside = checks_inside(code, sum(1 << q for q in result.neighbourhood))
    span, _ = gf2.echelon([code.checks[c].vector for c in inside])
    assert syndrome_of(code, plaquette).weight == 0
    assert not gf2.in_span(plaquette.vector, span)


def test_ising_toric_l3_neighbourhood_is_everything() -> None:
    """At L=3 one step from any face reaches all 18 qubits, so every face passes."""
    code = ising_toric(3)
    for x in range(3):
        for y in range(3):
            result = local_indistinguishability_check(code, face_support(3, x, y), 1)
            assert len(result.neighbourhood) == code.n
            assert result.holds
