"""Linear algebra over GF(2) on int-packed rows, plus bounded weight searches."""

import logging
from collections.abc import Callable, Sequence
from itertools import combinations

from codestab.core.config import settings
from codestab.core.exceptions import ContractViolationError
from codestab.models.bits import BitMatrix, BitVector
from codestab.utils.bits import iter_gray_code, mask_from_indices

logger = logging.getLogger("codestab.gf2")

# (pivot bit, reduced row, combination of input rows that produced it)
EchelonRow = tuple[int, int, int]


def echelon(rows: Sequence[int]) -> tuple[list[EchelonRow], list[int]]:
    """Row-reduce ``rows`` in insertion order.

    Returns the echelon basis and the row combinations that vanish (a basis
    of the left nullspace). Later basis rows never contain earlier pivots, so
    reducing a vector in insertion order clears every pivot.
    """
    basis: list[EchelonRow] = []
    null: list[int] = []
    for i, row in enumerate(rows):
        tag = 1 << i
        for pivot, value, combo in basis:
            if (row >> pivot) & 1:
                row ^= value
                tag ^= combo
        if row:
            basis.append((row.bit_length() - 1, row, tag))
        else:
            null.append(tag)
    return basis, null


def reduce(vector: int, basis: Sequence[EchelonRow]) -> tuple[int, int]:
    """Reduce ``vector`` by ``basis``; returns (remainder, combination used)."""
    combo = 0
    for pivot, value, tag in basis:
        if (vector >> pivot) & 1:
            vector ^= value
            combo ^= tag
    return vector, combo


def span_basis(rows: Sequence[int]) -> list[int]:
    return [value for _, value, _ in echelon(rows)[0]]


def in_span(vector: int, basis: Sequence[EchelonRow]) -> bool:
    return reduce(vector, basis)[0] == 0


def rank(m: BitMatrix) -> int:
    return len(echelon(m.data)[0])


def kernel(m: BitMatrix) -> list[BitVector]:
    """Right nullspace: vectors y with every row of ``m`` orthogonal to y."""
    _, null = echelon(m.transpose().data)
    return [BitVector(length=m.cols, bits=v) for v in null]


def solve_affine(
    a: BitMatrix, b: BitVector
) -> tuple[BitVector, list[BitVector]] | None:
    """Solve xᵀa = bᵀ.

    Returns a particular solution and a basis of the solutions of xᵀa = 0,
    or None when b is not a combination of the rows of ``a``.
    """
    if b.length != a.cols:
        raise ContractViolationError(
            f"right-hand side has length {b.length}, matrix has {a.cols} columns"
        )
    basis, null = echelon(a.data)
    remainder, combo = reduce(b.bits, basis)
    if remainder:
        return None
    return (
        BitVector(length=a.rows, bits=combo),
        [BitVector(length=a.rows, bits=v) for v in null],
    )


def _min_coset_weight(
    offset: int, basis: Sequence[int], weight: Callable[[int], int], skip_zero: bool
) -> int | None:
    best: int | None = None
    for combo in iter_gray_code(list(basis)):
        value = offset ^ combo
        if skip_zero and value == 0:
            continue
        w = weight(value)
        if best is None or w < best:
            best = w
            if best == 0:
                break
    return best


def _meet_in_the_middle(rows: Sequence[int], target: int, cap: int) -> int | None:
    """Smallest w ≤ cap such that some w distinct rows XOR to ``target``.

    At the first weight with a hit, the two halves are disjoint: overlapping
    halves would give a lighter solution found at an earlier weight.
    """
    if target == 0:
        return 0
    indices = range(len(rows))
    half_tables: dict[int, set[int]] = {}
    for w in range(1, cap + 1):
        w1 = w // 2
        w2 = w - w1
        if w1 not in half_tables:
            table = set()
            for subset in combinations(indices, w1):
                value = 0
                for i in subset:
                    value ^= rows[i]
                table.add(value)
            half_tables[w1] = table
        table = half_tables[w1]
        for subset in combinations(indices, w2):
            value = target
            for i in subset:
                value ^= rows[i]
            if value in table:
                return w
    return None


def min_support_solution(a: BitMatrix, b: BitVector, cap: int) -> int | None:
    """Minimum Hamming weight of x with xᵀa = bᵀ, or None if above ``cap``.

    Exact: the solution coset is enumerated when the nullity is small,
    otherwise rows are searched by weight class with meet-in-the-middle.
    """
    if cap < 0:
        raise ContractViolationError("cap must be non-negative")
    solved = solve_affine(a, b)
    if solved is None:
        return None
    particular, null = solved
    if len(null) <= settings.gf2_enum_rank_limit:
        best = _min_coset_weight(
            particular.bits, [v.bits for v in null], int.bit_count, skip_zero=False
        )
        return best if best is not None and best <= cap else None
    logger.debug(
        f"nullity {len(null)} above enumeration limit, weight-class search to {cap}"
    )
    return _meet_in_the_middle(a.data, b.bits, cap)


def pauli_weight_fn(n: int) -> Callable[[int], int]:
    """Weight of a symplectic vector packed as x | z << n."""
    mask = (1 << n) - 1
    return lambda v: ((v | (v >> n)) & mask).bit_count()


def _support_candidates(n_positions: int, w: int, pauli_n: int | None):
    for support in combinations(range(n_positions), w):
        if pauli_n is None:
            yield mask_from_indices(support)
            continue
        # each qubit on the support carries X, Z or Y
        for letters in range(3**w):
            value = 0
            for q in support:
                letters, kind = divmod(letters, 3)
                if kind != 1:
                    value |= 1 << q
                if kind != 0:
                    value |= 1 << (q + pauli_n)
            yield value


def min_weight_codeword(
    gen: BitMatrix,
    coset: BitVector,
    w_max: int,
    pauli_n: int | None = None,
) -> int | None:
    """Minimum weight of xᵀgen ⊕ coset over all x.

    The zero vector is excluded when ``coset`` is zero. None means the
    minimum exceeds ``w_max``, a certified lower bound of ``w_max + 1``.
    With ``pauli_n`` the columns are symplectic (x | z << n) and the weight
    is the Pauli weight.
    """
    if w_max < 1:
        raise ContractViolationError("w_max must be at least 1")
    if coset.length != gen.cols:
        raise ContractViolationError(
            f"coset has length {coset.length}, generator has {gen.cols} columns"
        )
    weight = pauli_weight_fn(pauli_n) if pauli_n is not None else int.bit_count
    echelon_rows, _ = echelon(gen.data)
    skip_zero = coset.bits == 0
    if len(echelon_rows) <= settings.gf2_enum_rank_limit:
        best = _min_coset_weight(
            coset.bits, [v for _, v, _ in echelon_rows], weight, skip_zero
        )
        return best if best is not None and best <= w_max else None

    if not skip_zero and in_span(coset.bits, echelon_rows):
        return 0
    n_positions = pauli_n if pauli_n is not None else gen.cols
    for w in range(1, min(w_max, n_positions) + 1):
        for candidate in _support_candidates(n_positions, w, pauli_n):
            if in_span(candidate ^ coset.bits, echelon_rows):
                return w
    logger.info(f"no codeword of weight <= {w_max}; reporting a lower bound")
    return None
