import numpy as np
import pytest
import scipy.linalg

from codestab.models.code import StabilizerCode
from codestab.models.operators import PauliSum
from codestab.services.perturbations import two_body, x_field
from codestab.services.swt.checks import random_quasi_local
from codestab.services.swt.engine import dense
from codestab.services.swt.matrices import embed, pauli_decompose, pauli_sum_matrix, pauli_sum_sparse
from codestab.services.swt.operators import (
    commutator,
    conjugation_series,
    decompose,
    kappa_norm,
    local_hamiltonian,
    local_projectors,
    verify_decomposition,
)


def test_walsh_hadamard_decomposition() -> None:
    """Pauli coefficients are recovered from the dense matrix."""
    v = two_body(4, seed=1)
    back = pauli_decompose(pauli_sum_matrix(v))
    assert back.max_abs_difference(v) < 1e-12


def test_sparse_matches_dense() -> None:
    """Sparse and dense builders agree."""
    v = two_body(3, seed=2) + x_field(3)
    np.testing.assert_allclose(pauli_sum_sparse(v).toarray(), pauli_sum_matrix(v), atol=1e-14)


def test_embedding_of_patch() -> None:
    """A patch matrix on qubit 1 embeds as I ⊗ M ⊗ I."""
    x = PauliSum.from_labels({"X": 1.0})
    full = embed(pauli_sum_matrix(x), [1], 3)
    np.testing.assert_allclose(full, pauli_sum_matrix(PauliSum.from_labels({"IXI": 1.0})))


def test_strong_support_decomposition(rep3: StabilizerCode) -> None:
    """X₀ flips check 0 and takes its support; X₁ flips both checks."""
    op = decompose(x_field(3), rep3)
    verify_decomposition(op, rep3)
    keys = {t.key for t in op.terms}
    assert keys == {((0, 1), 0b01), ((0, 1, 2), 0b11), ((1, 2), 0b10)}


def test_kappa_norm(rep3: StabilizerCode) -> None:
    """At κ = 0 the norm counts terms through the busiest qubit."""
    op = decompose(x_field(3), rep3)
    assert kappa_norm(op, 0.0) == pytest.approx(3.0)
    assert kappa_norm(op, 1.0) == pytest.approx(2 * np.exp(2) + np.exp(3))


def test_local_projectors(rep3: StabilizerCode) -> None:
    """P_S projects onto the 2-dimensional ZZ = +1 space of a two-qubit patch."""
    p, q = local_projectors(rep3, [0, 1])
    assert np.trace(p).real == pytest.approx(2.0)
    np.testing.assert_allclose(p @ q, np.zeros((4, 4)), atol=1e-14)
    np.testing.assert_allclose(local_hamiltonian(rep3, [0, 1]), q, atol=1e-14)


def test_commutator_matches_dense(rep4: StabilizerCode) -> None:
    """Union-support commutators equal the dense commutator."""
    a = random_quasi_local(rep4, 11, anti_hermitian=True)
    b = random_quasi_local(rep4, 12)
    ma, mb = dense(a), dense(b)
    np.testing.assert_allclose(dense(commutator(a, b)), ma @ mb - mb @ ma, atol=1e-12)


def test_conjugation_series_matches_expm(rep4: StabilizerCode) -> None:
    """The nested-commutator series reproduces e^{−A} O e^{A} − O."""
    a = random_quasi_local(rep4, 21, anti_hermitian=True) * 0.1
    op = random_quasi_local(rep4, 22)
    u = scipy.linalg.expm(dense(a))
    expected = scipy.linalg.expm(-dense(a)) @ dense(op) @ u - dense(op)
    np.testing.assert_allclose(dense(conjugation_series(a, op)), expected, atol=1e-10)
