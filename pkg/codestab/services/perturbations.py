"""Perturbation families V for H = H₀ + εV, all at unit strength."""

import logging

import networkx as nx
import numpy as np

from codestab.core.exceptions import ContractViolationError
from codestab.models.code import StabilizerCode
from codestab.models.operators import PauliSum
from codestab.models.pauli import PauliString
from codestab.services.constructors.toric import face_support
from codestab.services.stabilizer import code_graph
from codestab.types import PerturbationFamily

logger = logging.getLogger("codestab.perturbations")


def x_field(n: int) -> PauliSum:
    """Σ_i X_i."""
    return PauliSum.from_terms(n, [(1.0, PauliString.x_on(n, [i])) for i in range(n)])


def z_field(n: int) -> PauliSum:
    """n⁻¹ Σ_i Z_i, a longitudinal field that breaks the Z₂ degeneracy at first order."""
    return PauliSum.from_terms(n, [(1.0 / n, PauliString.z_on(n, [i])) for i in range(n)])


def plaquette_field(L: int, normalized: bool = False) -> PauliSum:
    """Σ_f B_f over all L² plaquettes of the torus, optionally divided by n = 2L²."""
    n = 2 * L * L
    scale = 1.0 / n if normalized else 1.0
    faces = [PauliString.z_on(n, face_support(L, x, y)) for x in range(L) for y in range(L)]
    return PauliSum.from_terms(n, [(scale, f) for f in faces])


def two_body(n: int, seed: int) -> PauliSum:
    """n⁻¹ Σ_{i<j} u_ij (X_iX_j + Z_iZ_j) with u_ij uniform in [−1, 1]."""
    if n < 2:
        raise ContractViolationError("two-body perturbation needs n >= 2")
    rng = np.random.default_rng(seed)
    terms = []
    for i in range(n):
        for j in range(i + 1, n):
            u = float(rng.uniform(-1.0, 1.0)) / n
            terms.append((u, PauliString.x_on(n, [i, j])))
            terms.append((u, PauliString.z_on(n, [i, j])))
    return PauliSum.from_terms(n, terms)


def random_local(
    code: StabilizerCode, seed: int, num_terms: int = 8, max_weight: int = 2, scale: float = 1.0
) -> PauliSum:
    """Random Hermitian Pauli sum; each string sits on a connected patch of the code graph."""
    if max_weight < 1 or num_terms < 1:
        raise ContractViolationError("need num_terms >= 1 and max_weight >= 1")
    rng = np.random.default_rng(seed)
    graph = code_graph(code)
    n = code.n
    terms = []
    for _ in range(num_terms):
        center = int(rng.integers(n))
        ball = list(nx.bfs_tree(graph, center))
        weight = int(rng.integers(1, min(max_weight, len(ball)) + 1))
        qubits = ball[:weight]
        letters = rng.choice(np.array(list("XYZ")), size=weight)
        p = PauliString.from_sparse(n, dict(zip(qubits, letters.tolist())))
        terms.append((float(rng.uniform(-scale, scale)), p))
    return PauliSum.from_terms(n, terms)


def from_labels(labels: list[str], coeffs: list[float] | None = None) -> PauliSum:
    """User Pauli strings such as ``XXI`` with optional real weights (default 1)."""
    if not labels:
        raise ContractViolationError("no Pauli labels given")
    coeffs = coeffs if coeffs is not None else [1.0] * len(labels)
    if len(coeffs) != len(labels):
        raise ContractViolationError(f"{len(labels)} labels but {len(coeffs)} weights")
    paulis = [PauliString.from_label(label) for label in labels]
    n = paulis[0].n
    if any(p.n != n for p in paulis):
        raise ContractViolationError("Pauli labels have different lengths")
    return PauliSum.from_terms(n, list(zip(coeffs, paulis)))


def build_perturbation(
    family: PerturbationFamily,
    code: StabilizerCode,
    seed: int = 0,
    labels: list[str] | None = None,
    coeffs: list[float] | None = None,
) -> PauliSum:
    n = code.n
    if family == "x_field":
        return x_field(n)
    if family == "z_field":
        return z_field(n)
    if family == "plaquette_field":
        L = code.metadata.get("L")
        if L is None:
            raise ContractViolationError(f"plaquette field needs a torus code, got {code.name}")
        return plaquette_field(int(L))
    if family == "two_body":
        return two_body(n, seed)
    if family == "random_local":
        return random_local(code, seed)
    if family == "paulis":
        v = from_labels(labels or [], coeffs)
        if v.n != n:
            raise ContractViolationError(f"Pauli labels act on {v.n} qubits, code has {n}")
        return v
    raise ContractViolationError(f"unknown perturbation family {family!r}")
