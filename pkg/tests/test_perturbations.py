import pytest

from codestab.core.exceptions import ContractViolationError
from codestab.models.code import StabilizerCode
from codestab.services.perturbations import build_perturbation, from_labels, random_local, two_body, x_field, z_field


def test_fields() -> None:
    """X field has unit coefficients; Z field is normalized by n."""
    assert x_field(3).l1_norm() == 3.0
    assert set(z_field(4).coeffs.values()) == {0.25}


def test_two_body_is_seeded() -> None:
    """Equal seeds give equal operators; XX and ZZ share each weight."""
    v = two_body(4, seed=7)
    assert v == two_body(4, seed=7)
    assert v != two_body(4, seed=8)
    assert len(v) == 12
    assert v.is_hermitian()
    assert v.coeffs[(0b11, 0)] == v.coeffs[(0, 0b11)]


def test_random_local_stays_on_code_graph(rep4: StabilizerCode) -> None:
    """Two-qubit strings on a chain act on neighbouring qubits."""
    v = random_local(rep4, seed=3, num_terms=10, max_weight=2)
    assert v.is_hermitian()
    for x, z in v.coeffs:
        support = x | z
        assert support in {1, 2, 4, 8, 0b11, 0b110, 0b1100}


def test_labels_must_match() -> None:
    """Weights pair up with labels of one length."""
    assert from_labels(["XX", "ZI"], [0.5, 2.0]).labels() == {"+XX": 0.5, "+ZI": 2.0}
    with pytest.raises(ContractViolationError):
        from_labels(["XX", "Z"])
    with pytest.raises(ContractViolationError):
        from_labels(["XX"], [1.0, 2.0])


def test_plaquette_field_needs_torus(rep4: StabilizerCode, toric2: StabilizerCode) -> None:
    """The plaquette field is defined on torus codes only."""
    assert len(build_perturbation("plaquette_field", toric2)) == 4
    with pytest.raises(ContractViolationError, match="torus"):
        build_perturbation("plaquette_field", rep4)


def test_label_length_checked_against_code(rep4: StabilizerCode) -> None:
    """User strings must act on the code's qubits."""
    with pytest.raises(ContractViolationError):
        build_perturbation("paulis", rep4, labels=["XX"])
