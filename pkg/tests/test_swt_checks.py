from codestab.models.code import StabilizerCode
from codestab.services.perturbations import x_field
from codestab.services.swt.checks import (
    NORM_SLACK,
    block_split_checks,
    generator_checks,
    inequality_suite,
    random_quasi_local,
)
from codestab.services.swt.operators import decompose


def test_random_operator_is_seeded(rep4: StabilizerCode) -> None:
    """Equal seeds give equal decomposed operators."""
    assert random_quasi_local(rep4, 5) == random_quasi_local(rep4, 5)
    assert random_quasi_local(rep4, 5, anti_hermitian=True).to_pauli_sum().is_anti_hermitian()


def test_block_split_never_increases_norm(rep4: StabilizerCode) -> None:
    """Both halves of a term are bounded by the term."""
    checks = block_split_checks(rep4, random_quasi_local(rep4, 9))
    assert checks
    assert all(c.holds for c in checks)


def test_generator_bound_transverse_field(rep4: StabilizerCode) -> None:
    """Single flips cost 1, double flips 2; the generator norm follows."""
    checks = generator_checks(rep4, decompose(x_field(4), rep4), 1.0)
    term_checks = [c for c in checks if c.name == "generator_term_norm"]
    assert len(term_checks) == 4
    assert all(c.holds for c in checks)


def test_inequality_suite(rep4: StabilizerCode, toric2: StabilizerCode) -> None:
    """Every inequality holds on seeded random pairs."""
    results = inequality_suite(rep4, 5, seed=0) + inequality_suite(toric2, 3, seed=1)
    names = {c.name for c in results}
    assert {"commutator", "conjugation", "generator_kappa_norm", "block_diagonal_norm"} <= names
    assert all(c.holds for c in results), [c for c in results if not c.holds]


def test_checks_carry_their_tolerance(rep4: StabilizerCode) -> None:
    """holds is margin ≥ −tolerance with the tolerance scaled by max(1, |rhs|)."""
    for check in block_split_checks(rep4, random_quasi_local(rep4, 2)):
        assert check.tolerance == NORM_SLACK * max(1.0, abs(check.rhs))
        assert check.holds == (check.margin >= -check.tolerance)
