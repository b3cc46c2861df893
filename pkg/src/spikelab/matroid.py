"""Exact matroids stored as circuit families over bitmask element sets.

A :class:`Matroid` is immutable and canonical: the circuit list is
duplicate-free, an antichain, and sorted by mask value, so two equal
matroids compare equal field by field.  Rank, closure, flats and duals are
derived on demand.  For ground sets up to :data:`TABLE_MAX` elements the
rank of every subset can be tabulated with numpy; exhaustive scans use that
table, single queries fall back to greedy augmentation.
"""
from __future__ import annotations

import os
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .bits import (
    as_mask,
    elements_of,
    full_mask,
    iter_bits,
    mask_of,
    popcount,
    popcount_table,
)
from .errors import (
    ElementOutOfRange,
    EmptyCircuit,
    GroundSetTooLarge,
    GroundSetTooLargeForExhaustiveScan,
    OverlappingSets,
)
from .report import AuditReport

HARD_MAX_N = 31
TABLE_MAX = 24
# single rank queries use the table below this size even if it is not cached yet
_EAGER_TABLE_N = 16


def max_ground_set() -> int:
    """Element cap; ``SPIKELAB_MAX_N`` may lower it but never raise it."""
    env = os.environ.get("SPIKELAB_MAX_N")
    if env:
        try:
            return max(0, min(HARD_MAX_N, int(env)))
        except ValueError:
            pass
    return HARD_MAX_N


def _check_size(n: int) -> None:
    cap = max_ground_set()
    if n < 0 or n > cap:
        raise GroundSetTooLarge(f"ground set of {n} elements exceeds cap {cap}")


def antichain_reduce(masks: Iterable[int]) -> tuple[int, ...]:
    """Drop duplicates and every set that properly contains another."""
    uniq = sorted(set(masks), key=lambda m: (popcount(m), m))
    kept: list[int] = []
    arr = np.zeros(len(uniq), dtype=np.int64)
    for m in uniq:
        k = len(kept)
        if k and np.any((arr[:k] & ~np.int64(m)) == 0):
            continue
        arr[k] = m
        kept.append(m)
    return tuple(sorted(kept))


class Matroid:
    """Matroid on ``{0..n-1}`` given by its circuits (bitmasks)."""

    def __init__(self, n: int, circuits: Iterable[int], name: str | None = None, *, _canonical=False):
        _check_size(n)
        self.n = n
        if _canonical:
            self.circuits = tuple(circuits)
        else:
            self.circuits = antichain_reduce(circuits)
        self.name = name

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self.circuits == other.circuits

    def __hash__(self):
        return hash((self.n, self.circuits))

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<Matroid{tag} n={self.n} rank={self.rank()} circuits={len(self.circuits)}>"

    @property
    def ground(self) -> int:
        return full_mask(self.n)

    def circuit_lists(self) -> list[list[int]]:
        return sorted(elements_of(c) for c in self.circuits)

    @cached_property
    def circuit_set(self) -> frozenset[int]:
        return frozenset(self.circuits)

    @cached_property
    def _circuit_array(self) -> np.ndarray:
        return np.array(self.circuits, dtype=np.int64)

    def is_circuit(self, X) -> bool:
        return as_mask(X) in self.circuit_set

    # independence and rank ------------------------------------------------
    def _table_ready(self) -> bool:
        return "rank_table" in self.__dict__ or self.n <= _EAGER_TABLE_N

    def is_independent(self, X) -> bool:
        X = as_mask(X)
        if self._table_ready():
            return int(self.rank_table[X]) == popcount(X)
        if not self.circuits:
            return True
        return not bool(np.any((self._circuit_array & ~np.int64(X)) == 0))

    def greedy_rank(self, X) -> int:
        """Rank by greedy augmentation against the circuit list."""
        X = as_mask(X)
        arr = self._circuit_array
        basis = 0
        r = 0
        for e in iter_bits(X):
            trial = basis | (1 << e)
            if len(arr) == 0 or not np.any((arr & ~np.int64(trial)) == 0):
                basis = trial
                r += 1
        return r

    def rank(self, X=None) -> int:
        if X is None:
            X = self.ground
        X = as_mask(X)
        if self._table_ready():
            return int(self.rank_table[X])
        return self.greedy_rank(X)

    def corank(self, X=None) -> int:
        """Rank in the dual: |X| + r(E - X) - r(M)."""
        if X is None:
            X = self.ground
        X = as_mask(X)
        return popcount(X) + self.rank(self.ground & ~X) - self.rank()

    def closure(self, X) -> int:
        X = as_mask(X)
        if self._table_ready():
            return int(self.closure_table[X])
        r = self.rank(X)
        cl = X
        for e in range(self.n):
            if not X >> e & 1 and self.rank(X | (1 << e)) == r:
                cl |= 1 << e
        return cl

    def is_flat(self, X) -> bool:
        X = as_mask(X)
        return self.closure(X) == X

    # tables -----------------------------------------------------------------
    def require_table(self) -> None:
        if self.n > TABLE_MAX:
            raise GroundSetTooLargeForExhaustiveScan(
                f"exhaustive scan needs n <= {TABLE_MAX}, got {self.n}"
            )

    @cached_property
    def popcounts(self) -> np.ndarray:
        self.require_table()
        return popcount_table(self.n)

    @cached_property
    def dependent_table(self) -> np.ndarray:
        """Boolean over all masks: does the set contain a stored circuit."""
        self.require_table()
        dep = np.zeros(1 << self.n, dtype=bool)
        if self.circuits:
            dep[np.array(self.circuits, dtype=np.int64)] = True
        for i in range(self.n):
            v = dep.reshape(-1, 2, 1 << i)
            v[:, 1, :] |= v[:, 0, :]
        return dep

    @cached_property
    def rank_table(self) -> np.ndarray:
        """Rank of every subset: max size of an independent subset."""
        self.require_table()
        val = np.where(self.dependent_table, 0, self.popcounts).astype(np.int8)
        for i in range(self.n):
            v = val.reshape(-1, 2, 1 << i)
            np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
        val.flags.writeable = False
        return val

    @cached_property
    def closure_table(self) -> np.ndarray:
        rt = self.rank_table
        cl = np.arange(1 << self.n, dtype=np.int64)
        for i in range(self.n):
            rv = rt.reshape(-1, 2, 1 << i)
            cv = cl.reshape(-1, 2, 1 << i)
            cv[:, 0, :] |= np.where(rv[:, 1, :] == rv[:, 0, :], 1 << i, 0)
        cl.flags.writeable = False
        return cl

    @cached_property
    def flats(self) -> tuple[int, ...]:
        """All flats, sorted by (rank, mask)."""
        if self.n <= TABLE_MAX:
            fl = np.unique(self.closure_table)
            ranks = self.rank_table[fl]
            order = np.lexsort((fl, ranks))
            return tuple(int(x) for x in fl[order])
        return tuple(sorted(_flats_by_search(self), key=lambda f: (self.rank(f), f)))

    @cached_property
    def lambda_table(self) -> np.ndarray:
        rt = self.rank_table.astype(np.int16)
        return (rt + rt[::-1] - rt[-1]).astype(np.int8)

    # derived matroids -------------------------------------------------------
    @cached_property
    def _dual(self) -> "Matroid":
        if self.n <= TABLE_MAX:
            rt = self.rank_table.astype(np.int16)
            dual_rt = self.popcounts + rt[::-1] - rt[-1]
            circuits = circuits_from_rank_table(self.n, dual_rt)
        else:
            circuits = antichain_reduce(_cocircuits_by_hyperplanes(self))
        d = Matroid(self.n, circuits, _canonical=True)
        d.__dict__["_dual"] = self
        return d

    def dual(self) -> "Matroid":
        return self._dual

    @property
    def cocircuits(self) -> tuple[int, ...]:
        return self._dual.circuits

    def is_cocircuit(self, X) -> bool:
        return as_mask(X) in self._dual.circuit_set


# construction helpers -------------------------------------------------------

def from_circuits(n: int, circuits: Iterable[Iterable[int]], name: str | None = None) -> Matroid:
    """Build a canonical matroid from element lists.

    Duplicates and non-minimal members are dropped; circuit elimination is
    not checked here (see :func:`validate_circuit_axioms`).
    """
    _check_size(n)
    masks = []
    for c in circuits:
        c = list(c)
        if not c:
            raise EmptyCircuit("circuits must be non-empty")
        for e in c:
            if not 0 <= e < n:
                raise ElementOutOfRange(f"element {e} not in 0..{n - 1}")
        masks.append(mask_of(c))
    return Matroid(n, masks, name=name)


def circuits_from_rank_table(n: int, rank_table: np.ndarray) -> tuple[int, ...]:
    """Minimal dependent sets of a tabulated rank function."""
    pc = popcount_table(n)
    dep = rank_table < pc
    minimal = dep.copy()
    for i in range(n):
        mv = minimal.reshape(-1, 2, 1 << i)
        dv = dep.reshape(-1, 2, 1 << i)
        mv[:, 1, :] &= ~dv[:, 0, :]
    return tuple(int(x) for x in np.flatnonzero(minimal))


def _flats_by_search(M: Matroid) -> set[int]:
    flats = {M.closure(0)}
    frontier = list(flats)
    while frontier:
        nxt = []
        for F in frontier:
            for e in range(M.n):
                if not F >> e & 1:
                    G = M.closure(F | (1 << e))
                    if G not in flats:
                        flats.add(G)
                        nxt.append(G)
        frontier = nxt
    return flats


def _cocircuits_by_hyperplanes(M: Matroid) -> list[int]:
    r = M.rank()
    E = M.ground
    if r == 0:
        return [1 << e for e in range(M.n)]
    hyper = set()
    for combo in combinations(range(M.n), r - 1):
        X = mask_of(combo)
        if M.is_independent(X):
            hyper.add(M.closure(X))
    return [E & ~H for H in hyper]


def validate_circuit_axioms(M: Matroid) -> AuditReport:
    """Check non-emptiness, the antichain property and circuit elimination."""
    rep = AuditReport("circuit-axioms")
    if any(c == 0 for c in M.circuits):
        rep.add("non-empty", False, "empty circuit present")
        return rep
    rep.add("non-empty", True)
    anti = antichain_reduce(M.circuits)
    rep.add("antichain", anti == tuple(sorted(M.circuits)))
    if M.n <= TABLE_MAX:
        dep = M.dependent_table
        contains = lambda target: bool(dep[target])
    else:
        arr = np.array(M.circuits, dtype=np.int64)
        contains = lambda target: bool(np.any((arr & ~np.int64(target)) == 0))
    cs = M.circuits
    for a in range(len(cs)):
        c1 = cs[a]
        for b in range(a + 1, len(cs)):
            c2 = cs[b]
            common = c1 & c2
            if not common:
                continue
            union = c1 | c2
            for e in iter_bits(common):
                if not contains(union & ~(1 << e)):
                    rep.add(
                        "elimination",
                        False,
                        f"no circuit inside (C1 u C2) - {{{e}}}",
                        {"C1": elements_of(c1), "C2": elements_of(c2), "e": e},
                    )
                    return rep
    rep.add("elimination", True)
    return rep


def dual(M: Matroid) -> Matroid:
    return M.dual()


def rank(M: Matroid, X=None) -> int:
    return M.rank(X)


def closure(M: Matroid, X) -> int:
    return M.closure(X)


def minor(M: Matroid, delete=0, contract=0, *, return_map: bool = False):
    """``M \\ delete / contract`` with survivors repacked in ascending order.

    With ``return_map`` the list of original indices (position = new index)
    is returned alongside the matroid.
    """
    D, C = as_mask(delete), as_mask(contract)
    if D & C:
        raise OverlappingSets(f"delete and contract share {elements_of(D & C)}")
    keep = elements_of(M.ground & ~(D | C))
    index = {old: new for new, old in enumerate(keep)}
    cands = [c & ~C for c in M.circuits if not c & D]
    cands = [c for c in cands if c]
    reduced = antichain_reduce(cands)
    packed = [mask_of(index[e] for e in iter_bits(c)) for c in reduced]
    N = Matroid(len(keep), packed)
    return (N, keep) if return_map else N


def delete(M: Matroid, X) -> Matroid:
    return minor(M, X, 0)


def contract(M: Matroid, X) -> Matroid:
    return minor(M, 0, X)


def restrict(M: Matroid, X) -> Matroid:
    return minor(M, M.ground & ~as_mask(X), 0)


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    n = M1.n + M2.n
    _check_size(n)
    return Matroid(n, list(M1.circuits) + [c << M1.n for c in M2.circuits])


def relabel(M: Matroid, perm: Sequence[int]) -> Matroid:
    """Image of M under ``e -> perm[e]``."""
    return Matroid(M.n, [mask_of(perm[e] for e in iter_bits(c)) for c in M.circuits])
