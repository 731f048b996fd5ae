import pytest

from codestab.services.acceptance import CRITERIA, run_suite


def test_criteria_are_numbered_in_order() -> None:
    """Criteria run in their published order."""
    assert [number for number, *_ in CRITERIA] == list(range(1, len(CRITERIA) + 1))


@pytest.mark.parametrize(
    "group",
    [
        "flow",
        "soundness",
        "locality",
        "oracles",
        "swt",
        pytest.param("gap", marks=pytest.mark.slow),
        pytest.param("splitting", marks=pytest.mark.slow),
        pytest.param("controls", marks=pytest.mark.slow),
        pytest.param("norms", marks=pytest.mark.slow),
    ],
)
def test_group_passes(group: str) -> None:
    """Each group passes on its own."""
    summary = run_suite(seed=0, only=[group])
    assert summary.passed, summary.criteria
    assert {c.group for c in summary.criteria} == {group}


@pytest.mark.slow
def test_norm_margins_report_tolerance() -> None:
    """Every tightest margin sits within its reported rounding tolerance."""
    (criterion,) = run_suite(seed=0, only=["norms"]).criteria
    margins = criterion.details["min_margin"]
    assert {"commutator", "conjugation", "block_diagonal_norm"} <= set(margins)
    assert all(m["margin"] >= -m["tolerance"] for m in margins.values())


def test_summary_collects_selected_groups() -> None:
    """Selecting two groups returns both results in criterion order."""
    summary = run_suite(seed=0, only=["oracles", "flow"])
    assert [c.group for c in summary.criteria] == ["flow", "oracles"]
    assert summary.passed == all(c.passed for c in summary.criteria)
