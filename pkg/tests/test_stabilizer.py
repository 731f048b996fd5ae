import pytest

from codestab.core.exceptions import InvalidCodeError
from codestab.models.code import StabilizerCode
from codestab.models.pauli import PauliString
from codestab.services.constructors import repetition_code, toric_code, trivial_field_code
from codestab.services.pauli import commutes
from codestab.services.stabilizer import (
    code_parameters,
    logicals,
    neighbourhood,
    num_logical_qubits,
    syndrome_of,
    validate,
)


@pytest.mark.parametrize(
    ("code", "label"),
    [
        (repetition_code(5), "[[5,1,5]]"),
        (toric_code(2), "[[8,2,2]]"),
        (toric_code(3), "[[18,2,3]]"),
    ],
)
def test_code_parameters(code: StabilizerCode, label: str) -> None:
    """Known ⟦n, k, d⟧ of the reference families."""
    params = code_parameters(code)
    assert params.label() == label
    assert params.certified


def test_distance_cap_reports_lower_bound() -> None:
    """A search capped below d gives d_lower_bound = w_max + 1."""
    params = code_parameters(repetition_code(6), w_max=3)
    assert params.d is None
    assert params.d_lower_bound == 4
    assert not params.certified


def test_trivial_code_has_no_logicals() -> None:
    """Single-qubit Z checks leave k = 0."""
    code = trivial_field_code(4)
    assert num_logical_qubits(code) == 0
    assert code_parameters(code).k == 0


def test_anticommuting_checks_rejected() -> None:
    """validate names the first anticommuting pair."""
    code = StabilizerCode(n=1, checks=(PauliString.from_label("X"), PauliString.from_label("Z")))
    with pytest.raises(InvalidCodeError) as info:
        validate(code)
    assert info.value.pair == (0, 1)


def test_minus_identity_in_group_rejected() -> None:
    """XX, ZZ and YY commute but multiply to −I."""
    checks = tuple(PauliString.from_label(s) for s in ("XX", "ZZ", "YY"))
    with pytest.raises(InvalidCodeError, match="-I"):
        validate(StabilizerCode(n=2, checks=checks))


def test_negative_check_sign_rejected() -> None:
    """Checks are stored with sign +1."""
    with pytest.raises(ValueError):
        StabilizerCode(n=2, checks=(PauliString.from_label("-ZZ"),))


def test_toric_metrics(toric2: StabilizerCode) -> None:
    """Every toric check has weight 4 and every qubit sits in 4 checks."""
    metrics = validate(toric2)
    assert metrics.q == 4
    assert metrics.q_prime == 4
    assert len(metrics.growth) == toric2.n
    assert all(profile[0] == 1 for profile in metrics.growth)


def test_syndrome(rep3: StabilizerCode) -> None:
    """X on qubit 1 flips both checks of the length-3 chain."""
    assert syndrome_of(rep3, PauliString.x_on(3, [1])).bits == 0b11
    assert syndrome_of(rep3, PauliString.x_on(3, [0])).bits == 0b01


def test_logicals_are_symplectic(toric2: StabilizerCode) -> None:
    """Logical pairs anticommute within a pair, commute across pairs and with every check."""
    pairs = logicals(toric2)
    assert len(pairs) == 2
    for i, (xi, zi) in enumerate(pairs):
        assert not commutes(xi, zi)
        assert xi.is_x_type and zi.is_z_type
        for check in toric2.checks:
            assert commutes(xi, check) and commutes(zi, check)
        for j, (xj, zj) in enumerate(pairs):
            if i != j:
                assert commutes(xi, zj) and commutes(xi, xj)


def test_neighbourhood(rep4: StabilizerCode) -> None:
    """Balls grow one site per unit radius along the chain."""
    assert neighbourhood(rep4, [0], 0) == {0}
    assert neighbourhood(rep4, [0], 2) == {0, 1, 2}
