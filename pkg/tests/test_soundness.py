import math

import pytest

from codestab.core.exceptions import ContractViolationError, NotAStabilizerError
from codestab.models.code import StabilizerCode
from codestab.models.pauli import PauliString
from codestab.schemas.soundness import SoundnessFunction
from codestab.services.constructors import ising_toric, repetition_code
from codestab.services.soundness import (
    expansion_profile,
    growth_constants,
    min_expansion,
    soundness_profile,
    soundness_sum,
    tilde_f_eval,
    tilde_f_sequence,
)
from codestab.services.stabilizer import validate


@pytest.mark.parametrize("method", ["linear", "search"])
def test_end_to_end_string_needs_every_check(method: str) -> None:
    """Z0Z7 on the length-8 chain is the product of all seven checks."""
    assert min_expansion(repetition_code(8), PauliString.z_on(8, [0, 7]), method=method) == 7


def test_min_expansion_cap() -> None:
    """A cap below the answer gives None."""
    assert min_expansion(repetition_code(8), PauliString.z_on(8, [0, 7]), cap=5) is None


@pytest.mark.parametrize("label", ["XIII", "ZIII", "-ZZII"])
def test_non_stabilizers_rejected(label: str) -> None:
    """Anticommuting strings, logicals and negated stabilizers are not group elements."""
    with pytest.raises(NotAStabilizerError):
        min_expansion(repetition_code(4), PauliString.from_label(label))


def test_repetition_profile() -> None:
    """On the length-4 chain the worst weight-2 stabilizer is Z0Z3."""
    profile = soundness_profile(repetition_code(4), 4)
    assert profile.certified
    assert profile.group_size == 8
    assert [r.f_raw for r in profile.rows] == [None, 3, None, 2]
    assert [r.f_emp for r in profile.rows] == [0, 3, 3, 3]
    assert profile.f_emp(2) == 3
    assert profile.rows[1].witness == "+ZIIZ"


def test_toric_profiles_are_quadratic(toric2: StabilizerCode, toric3: StabilizerCode) -> None:
    """Toric codes satisfy f(M) ≤ M² in each sector."""
    for code in (toric2, toric3):
        profile = soundness_profile(code, code.n)
        assert profile.certified
        assert set(profile.sectors) == {"X", "Z"}
        for sector in profile.sectors.values():
            assert all(row.f_emp <= row.M**2 for row in sector.rows)


def test_budget_marks_profile_uncertified(toric3: StabilizerCode) -> None:
    """Stopping the enumeration early is reported, not hidden."""
    profile = soundness_profile(toric3, 6, budget=20)
    assert not profile.certified
    assert profile.explored < profile.group_size


def test_css_explored_counts_the_product_group(toric2: StabilizerCode) -> None:
    """The combined profile covers every pair of sector elements."""
    profile = soundness_profile(toric2, toric2.n)
    x, z = profile.sectors["X"], profile.sectors["Z"]
    assert (x.explored, z.explored) == (x.group_size, z.group_size) == (8, 8)
    assert profile.explored == x.explored * z.explored == profile.group_size == 64


def test_ising_toric_soundness_degrades_with_size() -> None:
    """f_emp(4) of the Ising-toric Hamiltonian grows with L."""
    counts = [soundness_profile(ising_toric(L), 4).f_emp(4) for L in (2, 3, 4)]
    assert counts == [6, 6, 10]
    assert counts == sorted(counts)


def test_expansion_profile(toric2: StabilizerCode) -> None:
    """Single toric checks have ratio 4; two adjacent vertices share two edges."""
    profile = expansion_profile(toric2, 2)
    assert profile.rows[0].min_ratio == 4.0
    assert profile.rows[1].min_weight == 4
    assert profile.eta_emp == 2.0
    assert profile.certified


def test_tilde_f_recursion() -> None:
    """f(M) = M², Δ = 2: f̃ = 0, 1, √1.5, ..."""
    f = SoundnessFunction(c_f=1.0, beta=0.0)
    values = tilde_f_sequence(f, 2, 3)
    assert values[:3] == pytest.approx([0.0, 1.0, math.sqrt(1.5)])
    assert values[3] == pytest.approx(math.sqrt(1.5 + math.sqrt(1.5) / 2))
    assert tilde_f_eval(f, 2, 2) == pytest.approx(values[2])


def test_exponential_growth_needs_positive_beta() -> None:
    """β ≤ 0 has no convergent bound on an expanding graph."""
    with pytest.raises(ContractViolationError):
        growth_constants(SoundnessFunction(c_f=1.0, beta=0.0), 3)


def test_soundness_sum_terms() -> None:
    """The r = 0 term is 1 and the reported sum adds up its terms."""
    result = soundness_sum(SoundnessFunction(c_f=1.0, beta=0.5), 1.0, 3)
    assert result.terms[0] == 1.0
    assert result.sum == pytest.approx(sum(result.terms))
    assert result.holds == (result.sum <= result.bound)


def test_soundness_sum_on_measured_graph(toric3: StabilizerCode) -> None:
    """Measured growth stops the sum at the graph radius."""
    metrics = validate(toric3)
    result = soundness_sum(SoundnessFunction(c_f=1.0, beta=0.0), 0.5, metrics, dimension=2)
    radius = max(len(p) for p in metrics.growth) - 1
    assert len(result.terms) <= radius + 1
    assert result.constants.geometry == "finite_dimension"
