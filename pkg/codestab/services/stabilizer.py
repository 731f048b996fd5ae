"""Syndromes, validation, logical operators and parameters of stabilizer codes."""

import logging
from itertools import combinations

import networkx as nx

from codestab.core.config import settings
from codestab.core.exceptions import ConsistencyError, ContractViolationError, InvalidCodeError
from codestab.models.bits import BitMatrix, BitVector
from codestab.models.code import StabilizerCode
from codestab.models.pauli import PauliString
from codestab.schemas.code import CodeGraphMetrics, CodeParameters
from codestab.services import gf2
from codestab.services.pauli import multiply, symplectic_product
from codestab.utils.bits import bit_indices, iter_gray_code

logger = logging.getLogger("codestab.stabilizer")


def syndrome_bits(code: StabilizerCode, x: int, z: int) -> int:
    bits = 0
    for c, check in enumerate(code.checks):
        if symplectic_product(x, z, check.x, check.z):
            bits |= 1 << c
    return bits


def syndrome_of(code: StabilizerCode, p: PauliString) -> BitVector:
    if p.n != code.n:
        raise ContractViolationError(f"operator on {p.n} qubits, code has {code.n}")
    return BitVector(length=code.m, bits=syndrome_bits(code, p.x, p.z))


def check_matrix(code: StabilizerCode) -> BitMatrix:
    """Symplectic check matrix, one row x | z << n per check."""
    return BitMatrix(cols=2 * code.n, data=tuple(code.check_vectors()))


def sector_matrix(code: StabilizerCode, sector: str) -> BitMatrix:
    """Supports of the pure X or pure Z checks as an n-column matrix."""
    rows = [code.checks[i].support_mask for i in code.sector_indices(sector)]
    return BitMatrix(cols=code.n, data=tuple(rows))


def product_of_checks(code: StabilizerCode, combo: int) -> PauliString:
    out = PauliString.identity(code.n)
    for c in bit_indices(combo):
        out = multiply(out, code.checks[c])
    return out


def code_graph(code: StabilizerCode) -> nx.Graph:
    """Qubits joined when some check acts on both."""
    graph = nx.Graph()
    graph.add_nodes_from(range(code.n))
    for check in code.checks:
        graph.add_edges_from(combinations(check.support(), 2))
    return graph


def neighbourhood(code: StabilizerCode, qubits, r: int, graph: nx.Graph | None = None) -> set[int]:
    """All qubits within graph distance ``r`` of ``qubits``."""
    qubits = set(qubits)
    if not qubits or r <= 0:
        return qubits
    graph = graph if graph is not None else code_graph(code)
    return set(nx.multi_source_dijkstra_path_length(graph, qubits, cutoff=r))


def growth_profiles(graph: nx.Graph) -> list[list[int]]:
    """Γ_i(r) for every vertex, r from 0 up to the vertex eccentricity."""
    profiles = []
    for i in sorted(graph.nodes):
        distances = nx.single_source_shortest_path_length(graph, i)
        radius = max(distances.values())
        counts = [0] * (radius + 1)
        for dist in distances.values():
            counts[dist] += 1
        total, cumulative = 0, []
        for count in counts:
            total += count
            cumulative.append(total)
        profiles.append(cumulative)
    return profiles


def validate(code: StabilizerCode) -> CodeGraphMetrics:
    """Check commutation and sign consistency, then measure the code graph."""
    checks = code.checks
    for i, j in combinations(range(code.m), 2):
        if symplectic_product(checks[i].x, checks[i].z, checks[j].x, checks[j].z):
            raise InvalidCodeError(
                f"checks {i} ({checks[i]}) and {j} ({checks[j]}) anticommute", pair=(i, j)
            )
    _, relations = gf2.echelon(code.check_vectors())
    for relation in relations:
        if product_of_checks(code, relation).sign != 1:
            raise InvalidCodeError(
                f"checks {bit_indices(relation)} multiply to -I; the codespace is empty"
            )

    graph = code_graph(code)
    per_qubit = [0] * code.n
    for check in checks:
        for q in check.support():
            per_qubit[q] += 1
    return CodeGraphMetrics(
        n=code.n,
        edges=sorted(tuple(sorted(e)) for e in graph.edges),
        max_degree=max((d for _, d in graph.degree), default=0),
        q=max((c.weight for c in checks), default=0),
        q_prime=max(per_qubit, default=0),
        growth=growth_profiles(graph),
    )


def num_logical_qubits(code: StabilizerCode) -> int:
    return code.n - gf2.rank(check_matrix(code))


def _quotient_basis(candidates, modulo) -> list[int]:
    """Candidates independent of ``modulo`` and of each other."""
    basis, _ = gf2.echelon(list(modulo))
    chosen = []
    for v in candidates:
        remainder, _ = gf2.reduce(v, basis)
        if remainder:
            basis.append((remainder.bit_length() - 1, remainder, 0))
            chosen.append(v)
    return chosen


def _symplectic_form(n: int):
    mask = (1 << n) - 1
    return lambda a, b: symplectic_product(a & mask, a >> n, b & mask, b >> n)


def _pair_logicals(n: int, x_pool: list[int], z_pool: list[int]) -> list[tuple[int, int]]:
    """Symplectic Gram-Schmidt; X candidates are paired with Z candidates."""
    form = _symplectic_form(n)
    pairs = []
    x_pool, z_pool = list(x_pool), list(z_pool)
    while x_pool:
        a = x_pool.pop(0)
        idx = next((i for i, b in enumerate(z_pool) if form(a, b)), None)
        if idx is None:
            idx = next((i for i, b in enumerate(x_pool) if form(a, b)), None)
            if idx is None:
                raise ConsistencyError("logical candidate without a partner")
            b = x_pool.pop(idx)
        else:
            b = z_pool.pop(idx)
        pairs.append((a, b))

        def orthogonalize(v: int) -> int:
            cb, ca = form(v, b), form(v, a)
            if cb:
                v ^= a
            if ca:
                v ^= b
            return v

        x_pool = [orthogonalize(v) for v in x_pool]
        z_pool = [orthogonalize(v) for v in z_pool]
    if z_pool:
        raise ConsistencyError("unpaired logical candidates left")
    return pairs


def _sector_logical_bases(code: StabilizerCode) -> tuple[list[int], list[int]]:
    """X- and Z-type logical representatives as n-bit supports (CSS and classical)."""
    h_x, h_z = sector_matrix(code, "X"), sector_matrix(code, "Z")
    x_candidates = [v.bits for v in gf2.kernel(h_z)] if h_z.rows else [1 << i for i in range(code.n)]
    z_candidates = [v.bits for v in gf2.kernel(h_x)] if h_x.rows else [1 << i for i in range(code.n)]
    x_basis = _quotient_basis(x_candidates, h_x.data)
    z_basis = _quotient_basis(z_candidates, h_z.data)
    return x_basis, z_basis


def logicals(code: StabilizerCode) -> list[tuple[PauliString, PauliString]]:
    """k anticommuting (X̄, Z̄) pairs, mutually commuting across pairs.

    CSS and classical codes get X-type X̄ and Z-type Z̄.
    """
    n = code.n
    if code.kind in ("css", "classical"):
        x_basis, z_basis = _sector_logical_bases(code)
        pairs = _pair_logicals(n, x_basis, [z << n for z in z_basis])
    else:
        swapped = [(v >> n) | ((v & ((1 << n) - 1)) << n) for v in code.check_vectors()]
        normalizer = [v.bits for v in gf2.kernel(BitMatrix(cols=2 * n, data=tuple(swapped)))]
        basis = _quotient_basis(normalizer, code.check_vectors())
        pairs = _pair_logicals(n, basis, [])
    return [(PauliString.from_vector(n, a), PauliString.from_vector(n, b)) for a, b in pairs]


def _min_nontrivial_weight(
    stab_rows: list[int],
    logical_basis: list[int],
    w_max: int,
    width: int,
    pauli_n: int | None = None,
) -> int | None:
    """Lightest element of (logical span) + (stabilizer span) outside the stabilizers."""
    if not logical_basis:
        return None
    gen = BitMatrix(cols=width, data=tuple(stab_rows))
    stab_rank = len(gf2.echelon(stab_rows)[0])
    if len(logical_basis) <= 10 and stab_rank <= settings.gf2_enum_rank_limit:
        best: int | None = None
        for rep in iter_gray_code(logical_basis):
            if rep == 0:
                continue
            w = gf2.min_weight_codeword(gen, BitVector(length=width, bits=rep), w_max, pauli_n)
            if w is not None and (best is None or w < best):
                best = w
        return best

    stab_basis, _ = gf2.echelon(stab_rows)
    full_basis, _ = gf2.echelon(stab_rows + logical_basis)
    n_positions = pauli_n if pauli_n is not None else width
    for w in range(1, min(w_max, n_positions) + 1):
        for candidate in gf2._support_candidates(n_positions, w, pauli_n):
            if gf2.in_span(candidate, full_basis) and not gf2.in_span(candidate, stab_basis):
                return w
    return None


def code_parameters(code: StabilizerCode, w_max: int | None = None) -> CodeParameters:
    """⟦n, k, d⟧ with per-sector distances for CSS and classical codes.

    A sector whose search exceeds ``w_max`` contributes the lower bound
    ``w_max + 1``. Classical codes report d = d_X.
    """
    n = code.n
    w_max = w_max if w_max is not None else min(n, settings.distance_w_max)
    k = num_logical_qubits(code)
    bound = w_max + 1
    kind = code.kind
    if k == 0:
        return CodeParameters(n=n, k=0, d=None, d_lower_bound=0, certified=True, kind=kind)

    if kind in ("css", "classical"):
        x_basis, z_basis = _sector_logical_bases(code)
        d_x = _min_nontrivial_weight(list(sector_matrix(code, "X").data), x_basis, w_max, n)
        d_z = _min_nontrivial_weight(list(sector_matrix(code, "Z").data), z_basis, w_max, n)
        if kind == "classical":
            d, lower = d_x, (d_x if d_x is not None else bound)
        else:
            known = [v for v in (d_x, d_z) if v is not None]
            if len(known) == 2 or (known and min(known) < bound):
                d = min(known)
                lower = d
            else:
                d, lower = None, bound
        params = CodeParameters(
            n=n, k=k, d=d, d_lower_bound=lower, certified=d is not None, d_x=d_x, d_z=d_z, kind=kind
        )
    else:
        pairs = logicals(code)
        basis = [v for pair in pairs for v in (pair[0].vector, pair[1].vector)]
        d = _min_nontrivial_weight(code.check_vectors(), basis, w_max, 2 * n, pauli_n=n)
        params = CodeParameters(
            n=n,
            k=k,
            d=d,
            d_lower_bound=d if d is not None else bound,
            certified=d is not None,
            kind=kind,
        )
    if not params.certified:
        logger.warning(f"distance search capped at {w_max}: d >= {params.d_lower_bound}")
    return params


def hamiltonian_description(code: StabilizerCode) -> list[tuple[float, PauliString]]:
    """Terms (λ_Q, Q) of H₀ = Σ λ_Q (I − Q)/2."""
    return list(zip(code.lambdas, code.checks))
