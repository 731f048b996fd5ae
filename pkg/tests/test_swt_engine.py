import numpy as np
import pytest
import scipy.linalg

from codestab.core.exceptions import PatchTooLargeError
from codestab.models.code import StabilizerCode
from codestab.schemas.flow import FlowConstants
from codestab.services.constructors import trivial_field_code
from codestab.services.perturbations import two_body, x_field
from codestab.services.swt.engine import (
    dense,
    dressed_hamiltonian,
    generator_residual,
    generator_solution,
    solve_generator,
    split_by_support,
    swt_run,
)
from codestab.services.swt.matrices import hamiltonian_matrix
from codestab.services.swt.operators import decompose


def test_generator_solves_defining_equation(rep4: StabilizerCode) -> None:
    """[H₀, A] + V = ℙV with A anti-Hermitian."""
    v = decompose(x_field(4) * 0.1, rep4)
    a, p_v, off = generator_solution(rep4, v)
    assert generator_residual(rep4, v, a, p_v) < 1e-10
    assert a.to_pauli_sum().is_anti_hermitian()
    np.testing.assert_allclose(dense(p_v) + dense(off), dense(v), atol=1e-12)
    np.testing.assert_allclose(dense(solve_generator(rep4, v)), dense(a), atol=1e-14)


def test_split_by_support(rep4: StabilizerCode) -> None:
    """Terms of size ≥ d_s move to the large part."""
    op = decompose(x_field(4), rep4)
    small, large = split_by_support(op, 3)
    assert all(t.size < 3 for t in small.terms)
    assert all(t.size >= 3 for t in large.terms)
    assert len(small) + len(large) == len(op)


def test_run_shrinks_perturbation(rep4: StabilizerCode) -> None:
    """A weak transverse field is pushed to higher orders; U stays unitary."""
    result = swt_run(rep4, x_field(4) * 0.05, m_target=4, d_s=4)
    summary = result.summary
    assert not summary.diverged
    assert summary.unitarity_error < 1e-10
    assert summary.orders[1].v < summary.orders[0].v
    assert summary.orders[-1].v < summary.orders[0].v
    assert summary.schedule_bound_holds


def test_dressed_hamiltonian_is_unitarily_equivalent(rep4: StabilizerCode) -> None:
    """H₀ + D + V + E has the spectrum of H₀ + εV."""
    eps = 0.05
    v = x_field(4)
    result = swt_run(rep4, v * eps, m_target=3, d_s=4)
    original = scipy.linalg.eigvalsh(hamiltonian_matrix(rep4, v, eps))
    dressed = scipy.linalg.eigvalsh(dressed_hamiltonian(rep4, result))
    np.testing.assert_allclose(dressed, original, atol=1e-8)


def test_trivial_field_two_body() -> None:
    """Worked example: single-qubit fields with a random two-body perturbation."""
    code = trivial_field_code(5)
    result = swt_run(code, two_body(5, seed=0) * 0.1, m_target=3, d_s=5)
    assert result.orders_run == len(result.summary.orders)
    assert all(row.garbage_norm >= 0 for row in result.summary.orders)
    assert result.summary.orders[0].v_tilde > 0


def test_flow_envelope_recorded(rep4: StabilizerCode) -> None:
    """With flow constants every order carries its envelope value, or none above ε₀."""
    result = swt_run(rep4, x_field(4) * 0.05, m_target=2, d_s=4, flow_consts=FlowConstants())
    within = result.summary.within_flow_envelope
    if within is None:
        assert all(row.flow_bound is None for row in result.summary.orders)
    else:
        assert all(row.flow_bound is not None for row in result.summary.orders)


def test_large_code_rejected(toric3: StabilizerCode) -> None:
    """18 qubits exceed the dense iteration limit."""
    with pytest.raises(PatchTooLargeError):
        swt_run(toric3, x_field(18) * 0.01, m_target=2, d_s=4)
