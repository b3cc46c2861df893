"""Helpers for element sets stored as integer bitmasks.

Bit ``i`` set means element ``i`` is in the set. Iteration is always in
ascending element order.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

import numpy as np


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def lex_key(mask: int) -> tuple[int, ...]:
    """Sort key ordering sets by their ascending element lists."""
    return tuple(elements_of(mask))


def subsets_of_size(mask: int, k: int) -> Iterator[int]:
    """k-subsets of ``mask`` in lexicographic order of element lists."""
    for combo in combinations(elements_of(mask), k):
        yield mask_of(combo)


def popcount_table(n: int) -> np.ndarray:
    """Popcounts of every mask in ``range(2**n)`` as int8."""
    pc = np.zeros(1 << n, dtype=np.int8)
    for i in range(n):
        view = pc.reshape(-1, 2, 1 << i)
        view[:, 1, :] = view[:, 0, :] + 1
    return pc


def as_mask(x) -> int:
    """Accept either an int mask or an iterable of elements."""
    if isinstance(x, (int, np.integer)):
        return int(x)
    return mask_of(x)
