"""Random biregular Tanner graphs and alist parity-check files."""

import logging
from collections import Counter
from pathlib import Path

import numpy as np

from codestab.core.config import settings
from codestab.core.exceptions import AlistParseError, ConstructionError
from codestab.models.bits import BitMatrix
from codestab.models.code import BipartiteTanner, StabilizerCode
from codestab.models.pauli import PauliString
from codestab.utils.bits import bit_indices

logger = logging.getLogger("codestab.constructors")


def random_biregular_classical(
    n_bits: int, deg_bit: int, deg_check: int, seed: int
) -> BipartiteTanner:
    """Configuration-model Tanner graph with exact degrees.

    Parallel edges are removed by swapping check endpoints between edges,
    at most ``settings.biregular_retries`` swaps.
    """
    if deg_bit <= 2 or deg_check <= 2:
        raise ConstructionError("bit and check degrees must both exceed 2")
    if (n_bits * deg_bit) % deg_check:
        raise ConstructionError(
            f"{n_bits} bits of degree {deg_bit} cannot be matched to checks of degree {deg_check}"
        )
    n_checks = n_bits * deg_bit // deg_check
    if deg_check > n_bits or deg_bit > n_checks:
        raise ConstructionError("degrees too large for a simple bipartite graph")

    rng = np.random.default_rng(seed)
    bit_ends = np.repeat(np.arange(n_bits), deg_bit)
    check_ends = rng.permutation(np.repeat(np.arange(n_checks), deg_check))
    n_edges = len(bit_ends)

    for _ in range(settings.biregular_retries + 1):
        counts = Counter(zip(bit_ends.tolist(), check_ends.tolist()))
        bad = next((i for i in range(n_edges) if counts[(bit_ends[i], check_ends[i])] > 1), None)
        if bad is None:
            break
        b_i, c_i = int(bit_ends[bad]), int(check_ends[bad])
        for j in rng.permutation(n_edges).tolist():
            b_j, c_j = int(bit_ends[j]), int(check_ends[j])
            if b_j == b_i or c_j == c_i:
                continue
            if counts[(b_i, c_j)] == 0 and counts[(b_j, c_i)] == 0:
                check_ends[bad], check_ends[j] = c_j, c_i
                break
        else:
            j = int(rng.integers(n_edges))
            check_ends[bad], check_ends[j] = check_ends[j], check_ends[bad]
    else:
        raise ConstructionError(
            f"no simple graph after {settings.biregular_retries} re-pairings (seed {seed})"
        )

    rows = [0] * n_checks
    for b, c in zip(bit_ends.tolist(), check_ends.tolist()):
        rows[c] |= 1 << b
    return BipartiteTanner(
        biadjacency=BitMatrix(cols=n_bits, data=tuple(rows)),
        name=f"biregular-{n_bits}-{deg_bit}-{deg_check}-s{seed}",
    )


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise AlistParseError(f"non-integer entry in {line.strip()!r}", lineno) from exc


def parse_alist(text: str, name: str = "") -> BipartiteTanner:
    lines = [(i + 1, line) for i, line in enumerate(text.splitlines()) if line.strip()]

    def take(k: int, what: str) -> tuple[int, list[int]]:
        if k >= len(lines):
            last = lines[-1][0] if lines else 0
            raise AlistParseError(f"file ends before {what}", last + 1)
        lineno, line = lines[k]
        return lineno, _ints(line, lineno)

    lineno, head = take(0, "the size line")
    if len(head) != 2:
        raise AlistParseError("expected 'n m'", lineno)
    n, m = head
    lineno, maxima = take(1, "the degree maxima")
    if len(maxima) != 2:
        raise AlistParseError("expected two degree maxima", lineno)
    lineno, col_deg = take(2, "the bit degrees")
    if len(col_deg) != n:
        raise AlistParseError(f"expected {n} bit degrees", lineno)
    lineno, row_deg = take(3, "the check degrees")
    if len(row_deg) != m:
        raise AlistParseError(f"expected {m} check degrees", lineno)
    if max(col_deg, default=0) != maxima[0] or max(row_deg, default=0) != maxima[1]:
        raise AlistParseError("degree maxima disagree with the degree lists", lineno)

    rows = [0] * m
    for b in range(n):
        lineno, entries = take(4 + b, f"the neighbour list of bit {b + 1}")
        checks = [e for e in entries if e]
        if len(checks) != col_deg[b] or any(not 1 <= c <= m for c in checks):
            raise AlistParseError(f"bit {b + 1} neighbours inconsistent with its degree", lineno)
        for c in checks:
            rows[c - 1] |= 1 << b
    for c in range(m):
        lineno, entries = take(4 + n + c, f"the neighbour list of check {c + 1}")
        bits = sorted(e - 1 for e in entries if e)
        if len(bits) != row_deg[c] or bits != bit_indices(rows[c]):
            raise AlistParseError(f"check {c + 1} disagrees with the bit lists", lineno)
    return BipartiteTanner(biadjacency=BitMatrix(cols=n, data=tuple(rows)), name=name)


def load_alist(path: str | Path) -> BipartiteTanner:
    path = Path(path)
    logger.debug(f"reading alist {path}")
    return parse_alist(path.read_text(), name=path.stem)


def format_alist(tanner: BipartiteTanner) -> str:
    h = tanner.biadjacency
    cols = h.transpose().data
    col_deg = [c.bit_count() for c in cols]
    row_deg = h.row_weights()
    max_col, max_row = max(col_deg, default=0), max(row_deg, default=0)
    out = [
        f"{h.cols} {h.rows}",
        f"{max_col} {max_row}",
        " ".join(map(str, col_deg)),
        " ".join(map(str, row_deg)),
    ]
    for col in cols:
        entries = [c + 1 for c in bit_indices(col)]
        out.append(" ".join(map(str, entries + [0] * (max_col - len(entries)))))
    for row in h.data:
        entries = [b + 1 for b in bit_indices(row)]
        out.append(" ".join(map(str, entries + [0] * (max_row - len(entries)))))
    return "\n".join(out) + "\n"


def write_alist(tanner: BipartiteTanner, path: str | Path) -> None:
    Path(path).write_text(format_alist(tanner))


def classical_code(tanner: BipartiteTanner) -> StabilizerCode:
    """Z-type checks on the rows of a Tanner graph's parity-check matrix."""
    n = tanner.n_bits
    checks = tuple(PauliString.z_on(n, bit_indices(row)) for row in tanner.biadjacency.data)
    return StabilizerCode(n=n, checks=checks, name=tanner.name or "classical", metadata={"tanner": tanner.name})
