"""2D toric code and its unsound Ising-toric variant on an L x L torus.

Edge (x, y, o) is qubit 2(xL + y) + o; o = 0 joins (x, y) to (x+1, y) and
o = 1 joins (x, y) to (x, y+1).
"""

from codestab.core.exceptions import ContractViolationError
from codestab.models.code import StabilizerCode
from codestab.models.pauli import PauliString


def edge_index(L: int, x: int, y: int, o: int) -> int:
    return 2 * ((x % L) * L + (y % L)) + o


def vertex_support(L: int, x: int, y: int) -> list[int]:
    return sorted(
        {
            edge_index(L, x, y, 0),
            edge_index(L, x - 1, y, 0),
            edge_index(L, x, y, 1),
            edge_index(L, x, y - 1, 1),
        }
    )


def face_support(L: int, x: int, y: int) -> list[int]:
    return sorted(
        {
            edge_index(L, x, y, 0),
            edge_index(L, x, y + 1, 0),
            edge_index(L, x, y, 1),
            edge_index(L, x + 1, y, 1),
        }
    )


def face_neighbours(L: int, x: int, y: int) -> list[tuple[int, int]]:
    """Lattice neighbours of a face, wrapped and deduplicated."""
    out = []
    for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        f = ((x + dx) % L, (y + dy) % L)
        if f != (x, y) and f not in out:
            out.append(f)
    return out


def _check_size(L: int) -> None:
    if L < 2:
        raise ContractViolationError(f"torus size must be >= 2, got {L}")


def _vertex_checks(L: int) -> list[PauliString]:
    n = 2 * L * L
    return [PauliString.x_on(n, vertex_support(L, x, y)) for x in range(L) for y in range(L)]


def toric_code(L: int) -> StabilizerCode:
    """L² vertex X-checks followed by L² plaquette Z-checks."""
    _check_size(L)
    n = 2 * L * L
    faces = [PauliString.z_on(n, face_support(L, x, y)) for x in range(L) for y in range(L)]
    return StabilizerCode(
        n=n, checks=tuple(_vertex_checks(L) + faces), name="toric", metadata={"L": L}
    )


def ising_toric(L: int, f0: tuple[int, int] = (0, 0)) -> StabilizerCode:
    """Vertex checks, the single plaquette B_{f0}, and B_f B_f' for neighbouring faces."""
    _check_size(L)
    n = 2 * L * L
    checks = _vertex_checks(L)
    checks.append(PauliString.z_on(n, face_support(L, *f0)))
    seen: set[frozenset[tuple[int, int]]] = set()
    pairs = []
    for x in range(L):
        for y in range(L):
            for g in face_neighbours(L, x, y):
                key = frozenset({(x, y), g})
                if key in seen:
                    continue
                seen.add(key)
                support = set(face_support(L, x, y)) ^ set(face_support(L, *g))
                checks.append(PauliString.z_on(n, sorted(support)))
                pairs.append([[x, y], list(g)])
    return StabilizerCode(
        n=n,
        checks=tuple(checks),
        name="ising_toric",
        metadata={"L": L, "f0": list(f0), "face_pairs": pairs},
    )


def toric_relabeling(L: int) -> list[int]:
    """Qubit map from HGP(cyclic rep-L, cyclic rep-L) to toric_code(L).

    Entry i is the toric qubit of HGP qubit i: (b, b̃) goes to the horizontal
    edge at (b, b̃) and (c, c̃) to the vertical edge at (c+1, c̃).
    """
    _check_size(L)
    perm = [0] * (2 * L * L)
    for b in range(L):
        for bt in range(L):
            perm[b * L + bt] = edge_index(L, b, bt, 0)
    for c in range(L):
        for ct in range(L):
            perm[L * L + c * L + ct] = edge_index(L, c + 1, ct, 1)
    return perm
