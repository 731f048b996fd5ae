import networkx as nx

from codestab.core.exceptions import ContractViolationError
from codestab.models.code import StabilizerCode
from codestab.models.pauli import PauliString


def ising_code(graph: nx.Graph, coupling: float = 1.0) -> StabilizerCode:
    """One Z_iZ_j check of weight ``coupling`` per edge of a connected graph.

    Nodes are numbered in sorted order. ``coupling=2`` makes
    Σ λ(I − Z_iZ_j)/2 equal to −Σ Z_iZ_j up to a constant.
    """
    if graph.number_of_nodes() == 0:
        raise ContractViolationError("interaction graph has no vertices")
    if nx.number_of_selfloops(graph):
        raise ContractViolationError("interaction graph has self-loops")
    if not nx.is_connected(graph):
        raise ContractViolationError(
            "interaction graph is disconnected; the ground space would exceed two states"
        )
    index = {node: i for i, node in enumerate(sorted(graph.nodes))}
    n = len(index)
    edges = sorted(tuple(sorted((index[u], index[v]))) for u, v in graph.edges)
    checks = tuple(PauliString.z_on(n, edge) for edge in edges)
    return StabilizerCode(
        n=n,
        checks=checks,
        lambdas=tuple(float(coupling) for _ in checks),
        name="ising",
        metadata={"edges": [list(e) for e in edges], "coupling": coupling},
    )


def repetition_code(n: int, cyclic: bool = False, coupling: float = 1.0) -> StabilizerCode:
    if n < 2:
        raise ContractViolationError("repetition code needs n >= 2")
    graph = nx.cycle_graph(n) if cyclic and n > 2 else nx.path_graph(n)
    code = ising_code(graph, coupling)
    return code.model_copy(
        update={"name": "repetition", "metadata": {**code.metadata, "cyclic": cyclic}}
    )


def trivial_field_code(n: int) -> StabilizerCode:
    """Single-qubit Z checks on every qubit: k = 0, unique ground state."""
    if n < 1:
        raise ContractViolationError("trivial field code needs n >= 1")
    return StabilizerCode(
        n=n, checks=tuple(PauliString.z_on(n, [i]) for i in range(n)), name="trivial"
    )
