"""Backtracking isomorphism test for small matroids."""
from __future__ import annotations

from collections import Counter

from .bits import iter_bits
from .errors import GroundSetTooLargeForIsomorphism
from .matroid import Matroid

ISO_MAX_N = 12


def _signature(M: Matroid) -> list[tuple]:
    sizes = [[] for _ in range(M.n)]
    for c in M.circuits:
        k = c.bit_count() if hasattr(c, "bit_count") else bin(c).count("1")
        for e in iter_bits(c):
            sizes[e].append(k)
    return [tuple(sorted(s)) for s in sizes]


def find_isomorphism(M1: Matroid, M2: Matroid) -> list[int] | None:
    """A bijection ``perm`` with ``perm[e]`` in M2 mapping circuits onto circuits."""
    if max(M1.n, M2.n) > ISO_MAX_N:
        raise GroundSetTooLargeForIsomorphism(f"isomorphism search needs n <= {ISO_MAX_N}")
    if M1.n != M2.n or len(M1.circuits) != len(M2.circuits):
        return None
    s1, s2 = _signature(M1), _signature(M2)
    if Counter(s1) != Counter(s2):
        return None
    n = M1.n
    # most constrained elements first
    order = sorted(range(n), key=lambda e: (Counter(s1)[s1[e]], e))
    by_elem1 = [[c for c in M1.circuits if c >> e & 1] for e in range(n)]
    by_elem2 = [[c for c in M2.circuits if c >> e & 1] for e in range(n)]
    set2, set1 = M2.circuit_set, M1.circuit_set
    perm = [-1] * n
    inv = [-1] * n

    def consistent(e: int, f: int, dom: int, img: int) -> bool:
        for c in by_elem1[e]:
            if c & ~dom == 0:
                image = 0
                for x in iter_bits(c):
                    image |= 1 << perm[x]
                if image not in set2:
                    return False
        for c in by_elem2[f]:
            if c & ~img == 0:
                pre = 0
                for x in iter_bits(c):
                    pre |= 1 << inv[x]
                if pre not in set1:
                    return False
        return True

    def extend(i: int, dom: int, img: int) -> bool:
        if i == n:
            return True
        e = order[i]
        for f in range(n):
            if inv[f] != -1 or s2[f] != s1[e]:
                continue
            perm[e], inv[f] = f, e
            d2, i2 = dom | (1 << e), img | (1 << f)
            if consistent(e, f, d2, i2) and extend(i + 1, d2, i2):
                return True
            perm[e], inv[f] = -1, -1
        return False

    return list(perm) if extend(0, 0, 0) else None


def are_isomorphic(M1: Matroid, M2: Matroid) -> bool:
    return find_isomorphism(M1, M2) is not None
