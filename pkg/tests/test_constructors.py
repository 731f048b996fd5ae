import networkx as nx
import pytest

from codestab.core.exceptions import AlistParseError, ConstructionError, ContractViolationError
from codestab.models.code import StabilizerCode
from codestab.services.constructors import (
    format_alist,
    hypergraph_product,
    ising_code,
    ising_toric,
    parse_alist,
    random_biregular_classical,
    relabel,
    repetition_tanner,
    toric_code,
    toric_relabeling,
    write_alist,
)
from codestab.services.constructors.classical import load_alist
from codestab.services.stabilizer import code_parameters, num_logical_qubits, validate


def test_toric_sizes(toric3: StabilizerCode) -> None:
    """2L² qubits, L² vertex and L² plaquette checks, all commuting."""
    assert toric3.n == 18
    assert toric3.m == 18
    assert toric3.sector_indices("X") == list(range(9))
    validate(toric3)


@pytest.mark.parametrize(("L", "checks"), [(2, 9), (3, 28)])
def test_ising_toric_check_count(L: int, checks: int) -> None:
    """Vertices, one plaquette and one product per neighbouring face pair."""
    code = ising_toric(L)
    assert code.m == checks
    validate(code)


def test_ising_toric_has_toric_logicals() -> None:
    """The face pairs and B_{f0} generate the same group as the plaquettes."""
    assert num_logical_qubits(ising_toric(3)) == num_logical_qubits(toric_code(3)) == 2


def test_hgp_of_repetition_codes(hgp_rep3: StabilizerCode) -> None:
    """HGP(rep3, rep3) is a [[13,1,3]] CSS code with X-checks first."""
    params = code_parameters(hgp_rep3)
    assert params.label() == "[[13,1,3]]"
    assert params.kind == "css"
    assert all(c.is_x_type for c in hgp_rep3.checks[:6])


@pytest.mark.parametrize("L", [2, 3, 4])
def test_hgp_of_cyclic_repetition_is_toric(L: int) -> None:
    """The explicit relabeling maps HGP(rep-Lc, rep-Lc) onto the toric code."""
    cyc = repetition_tanner(L, cyclic=True)
    moved = relabel(hypergraph_product(cyc, cyc), toric_relabeling(L))
    assert sorted((c.x, c.z) for c in moved.checks) == sorted((c.x, c.z) for c in toric_code(L).checks)


def test_ising_code_requires_connected_graph() -> None:
    """Disconnected graphs would give more than two ground states."""
    graph = nx.Graph([(0, 1), (2, 3)])
    with pytest.raises(ContractViolationError, match="disconnected"):
        ising_code(graph)


def test_ising_coupling() -> None:
    """The coupling becomes every check weight."""
    code = ising_code(nx.cycle_graph(4), coupling=2.0)
    assert code.lambdas == (2.0,) * 4


def test_biregular_degrees_and_seed() -> None:
    """Degrees are exact and the graph is a function of the seed."""
    tanner = random_biregular_classical(12, 3, 4, seed=1)
    assert tanner.biadjacency.row_weights() == [4] * 9
    assert tanner.biadjacency.col_weights() == [3] * 12
    assert (tanner.max_bit_degree, tanner.max_check_degree) == (3, 4)
    assert random_biregular_classical(12, 3, 4, seed=1) == tanner


@pytest.mark.parametrize(("n", "dv", "dc"), [(12, 2, 4), (10, 3, 4)])
def test_biregular_rejects_bad_degrees(n: int, dv: int, dc: int) -> None:
    """Degrees ≤ 2 or an unmatched edge count cannot be built."""
    with pytest.raises(ConstructionError):
        random_biregular_classical(n, dv, dc, seed=0)


def test_alist_round_trip(tmp_path) -> None:
    """Writing and reading an alist file preserves the parity-check matrix."""
    tanner = repetition_tanner(5, cyclic=True)
    path = tmp_path / "rep5c.alist"
    write_alist(tanner, path)
    loaded = load_alist(path)
    assert loaded.biadjacency == tanner.biadjacency
    assert loaded.name == "rep5c"


def test_alist_parse_error_line() -> None:
    """A truncated file reports the line where data ran out."""
    text = format_alist(repetition_tanner(3))
    truncated = "\n".join(text.splitlines()[:5])
    with pytest.raises(AlistParseError) as info:
        parse_alist(truncated)
    assert info.value.line == 6


def test_alist_inconsistent_lists() -> None:
    """Check lists must agree with the bit lists."""
    lines = format_alist(repetition_tanner(3)).splitlines()
    lines[-1] = "1 3"
    with pytest.raises(AlistParseError, match="disagrees"):
        parse_alist("\n".join(lines))
