import pytest

from codestab.core.exceptions import ContractViolationError
from codestab.services.codes import build_code, load_code, save_code, tanner_from_spec
from codestab.services.stabilizer import code_parameters


@pytest.mark.parametrize(
    ("family", "params", "n"),
    [
        ("repetition", {"n": 5}, 5),
        ("repetition", {"n": 5, "cyclic": True}, 5),
        ("ising", {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}, 3),
        ("trivial", {"n": 2}, 2),
        ("toric", {"L": 2}, 8),
        ("ising_toric", {"L": 2}, 8),
        ("hgp", {"left": "rep3", "right": "rep2"}, 8),
        ("biregular", {"n_bits": 12, "deg_bit": 3, "deg_check": 4, "seed": 1}, 12),
    ],
)
def test_build_families(family: str, params: dict, n: int) -> None:
    """Every family builds from a parameter dict."""
    assert build_code(family, params).n == n


def test_missing_parameter() -> None:
    """Missing constructor parameters are named."""
    with pytest.raises(ContractViolationError, match="L"):
        build_code("toric", {})


def test_tanner_spec() -> None:
    """repNc is the cyclic repetition graph."""
    tanner = tanner_from_spec("rep4c")
    assert tanner.n_checks == 4
    assert tanner.n_bits == 4


def test_artifact_round_trip(tmp_path) -> None:
    """Saved codes reload with the same checks, weights and parameters."""
    code = build_code("repetition", {"n": 4, "coupling": 2.0})
    path = tmp_path / "rep4.json"
    save_code(code, path, code_parameters(code))
    loaded = load_code(path)
    assert loaded.checks == code.checks
    assert loaded.lambdas == (2.0, 2.0, 2.0)
    assert loaded.name == "repetition"


def test_missing_artifact(tmp_path) -> None:
    """Loading a file that does not exist is a contract violation."""
    with pytest.raises(ContractViolationError, match="does not exist"):
        load_code(tmp_path / "nope.json")
