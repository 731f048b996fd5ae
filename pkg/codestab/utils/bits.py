from collections.abc import Iterable, Iterator

import numpy as np


def popcount(value: int) -> int:
    return value.bit_count()


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def bit_indices(value: int) -> list[int]:
    """Positions of the set bits, ascending."""
    out = []
    while value:
        low = value & -value
        out.append(low.bit_length() - 1)
        value ^= low
    return out


def iter_gray_code(basis: list[int]) -> Iterator[int]:
    """Yield every XOR combination of ``basis`` once, starting from 0.

    Consecutive outputs differ by one basis element.
    """
    value = 0
    yield value
    for step in range(1, 1 << len(basis)):
        value ^= basis[(step & -step).bit_length() - 1]
        yield value


def popcount_array(values: np.ndarray) -> np.ndarray:
    return np.bitwise_count(values.astype(np.uint64)).astype(np.int64)


def parity_array(values: np.ndarray) -> np.ndarray:
    """(-1)**popcount for every entry, as float64."""
    return 1.0 - 2.0 * (popcount_array(values) & 1)


def gather_bits(states: np.ndarray, positions: list[int]) -> np.ndarray:
    """Pack bits ``positions[j]`` of each state into bit ``j`` of the result."""
    out = np.zeros_like(states, dtype=np.int64)
    for j, p in enumerate(positions):
        out |= ((states >> p) & 1) << j
    return out


def scatter_bits(local: np.ndarray, positions: list[int]) -> np.ndarray:
    """Inverse of :func:`gather_bits`: bit ``j`` of ``local`` goes to ``positions[j]``."""
    out = np.zeros_like(local, dtype=np.int64)
    for j, p in enumerate(positions):
        out |= ((local >> j) & 1) << p
    return out
