"""Named matroids, modular-cut extensions, truncation and elongation."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from .bits import as_mask, elements_of, mask_of
from .errors import (
    CorankZero,
    GroundSetTooLargeForExhaustiveScan,
    InvalidParameters,
    NotAModularCut,
    RankZero,
)
from .matroid import TABLE_MAX, Matroid, circuits_from_rank_table, minor
from .report import AuditReport


# named matroids --------------------------------------------------------------

def uniform(t: int, n: int) -> Matroid:
    if not 0 <= t <= n:
        raise InvalidParameters(f"uniform needs 0 <= t <= n, got t={t}, n={n}")
    circuits = [mask_of(c) for c in combinations(range(n), t + 1)] if t < n else []
    return Matroid(n, sorted(circuits), name=f"U{t},{n}", _canonical=True)


def _wheel_circuits(r: int) -> tuple[int, list[int]]:
    # spokes are 0..r-1; rim edge r+i joins rim vertices i and i+1
    rim = mask_of(range(r, 2 * r))
    cycles = []
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            arc = 0
            k = i
            while k != j:
                arc |= 1 << (r + k)
                k = (k + 1) % r
            cycles.append((1 << i) | (1 << j) | arc)
    return rim, cycles


def _check_wheel(r: int) -> None:
    if r < 3 or 2 * r > 31:
        raise InvalidParameters(f"wheel/whirl needs 3 <= r and 2r <= 31, got r={r}")


def wheel(r: int) -> Matroid:
    """Cycle matroid of the wheel with r spokes (spokes 0..r-1, rim r..2r-1)."""
    _check_wheel(r)
    rim, cycles = _wheel_circuits(r)
    return Matroid(2 * r, cycles + [rim], name=f"W{r}")


def whirl(r: int) -> Matroid:
    """Relax the rim circuit of the wheel: rim plus any spoke becomes a circuit."""
    _check_wheel(r)
    rim, cycles = _wheel_circuits(r)
    return Matroid(2 * r, cycles + [rim | (1 << s) for s in range(r)], name=f"W^{r}")


def named_matroid(kind: str, *params: int) -> Matroid:
    kind = kind.replace("-", "_")
    try:
        if kind == "uniform":
            return uniform(*params)
        if kind == "wheel":
            return wheel(*params)
        if kind == "whirl":
            return whirl(*params)
        if kind == "free_spike":
            from .spikes import make_spike

            return make_spike(*params)[0]
    except TypeError as exc:
        raise InvalidParameters(str(exc)) from exc
    raise InvalidParameters(f"unknown matroid kind {kind!r}")


# modular cuts -----------------------------------------------------------------

@dataclass(frozen=True)
class ModularCutSpec:
    """A family of flats given by a membership predicate on flat masks."""

    contains: Callable[[int], bool]
    description: str = ""

    def __call__(self, flat: int) -> bool:
        return bool(self.contains(flat))

    @classmethod
    def from_flats(cls, flats: Iterable, description: str = "explicit") -> "ModularCutSpec":
        chosen = frozenset(as_mask(f) for f in flats)
        return cls(chosen.__contains__, description)

    @classmethod
    def free(cls, M: Matroid) -> "ModularCutSpec":
        E = M.ground
        return cls(lambda F: F == E, "spanning flats")

    @classmethod
    def principal(cls, M: Matroid, X) -> "ModularCutSpec":
        C = M.closure(as_mask(X))
        return cls(lambda F: F & C == C, f"flats containing cl({elements_of(C)})")

    @classmethod
    def everything(cls) -> "ModularCutSpec":
        return cls(lambda F: True, "all flats")

    @classmethod
    def spine_unions(cls, arms, k: int) -> "ModularCutSpec":
        """Flats containing at least ``k`` of the given 2-element spines."""
        masks = [as_mask(a) for a in arms]

        def contains(F: int) -> bool:
            return sum(1 for a in masks if a & F == a) >= k

        return cls(contains, f"flats containing >= {k} spines")


def _selected_flats(M: Matroid, cut: ModularCutSpec) -> tuple[list[int], list[int]]:
    sel, unsel = [], []
    for F in M.flats:
        (sel if cut(F) else unsel).append(F)
    return sel, unsel


def is_modular_cut(M: Matroid, cut: ModularCutSpec) -> AuditReport:
    """Upward closure among flats plus closure under modular-pair intersection."""
    rep = AuditReport("modular-cut")
    sel, unsel = _selected_flats(M, cut)
    sel_arr = np.array(sel, dtype=np.int64)
    for G in unsel:
        if len(sel_arr):
            hits = np.flatnonzero((sel_arr & ~np.int64(G)) == 0)
            if len(hits):
                F = sel[int(hits[0])]
                rep.add(
                    "upward-closed",
                    False,
                    "flat containing a selected flat is not selected",
                    {"selected": elements_of(F), "superset": elements_of(G)},
                )
                return rep
    rep.add("upward-closed", True)
    if M.n <= TABLE_MAX:
        rt = M.rank_table
        rank_many = lambda masks: rt[masks].astype(np.int16)
    else:
        rank_many = lambda masks: np.array([M.rank(int(m)) for m in masks], dtype=np.int16)
    sel_sorted = np.sort(sel_arr)
    ranks = rank_many(sel_arr) if len(sel_arr) else np.zeros(0, dtype=np.int16)
    for i in range(len(sel) - 1):
        F1 = np.int64(sel[i])
        others = sel_arr[i + 1:]
        inter = others & F1
        union = others | F1
        modular = ranks[i] + ranks[i + 1:] == rank_many(union) + rank_many(inter)
        pos = np.searchsorted(sel_sorted, inter)
        pos = np.minimum(pos, len(sel_sorted) - 1)
        present = sel_sorted[pos] == inter
        bad = np.flatnonzero(modular & ~present)
        if len(bad):
            j = int(bad[0])
            rep.add(
                "modular-intersection",
                False,
                "modular pair whose intersection is not selected",
                {
                    "F1": elements_of(int(F1)),
                    "F2": elements_of(int(others[j])),
                    "intersection": elements_of(int(inter[j])),
                },
            )
            return rep
    rep.add("modular-intersection", True)
    return rep


def extend_by_modular_cut(M: Matroid, cut: ModularCutSpec, *, validate: bool = True) -> Matroid:
    """Single-element extension by new element ``M.n`` determined by ``cut``.

    r+(X + e) = r(X) when cl(X) is in the cut, r(X) + 1 otherwise.
    """
    if M.n + 1 > TABLE_MAX:
        raise GroundSetTooLargeForExhaustiveScan(
            f"extension needs n + 1 <= {TABLE_MAX}, got n={M.n}"
        )
    if validate:
        rep = is_modular_cut(M, cut)
        if not rep.passed:
            f = rep.failures()[0]
            raise NotAModularCut(f"{cut.description or 'cut'}: {f.message}", f.witness)
    sel, _ = _selected_flats(M, cut)
    cl = M.closure_table
    member = np.isin(cl, np.array(sel, dtype=np.int64))
    rt = M.rank_table
    upper = rt + (~member).astype(np.int8)
    new_rt = np.concatenate([rt, upper])
    circuits = circuits_from_rank_table(M.n + 1, new_rt)
    return Matroid(M.n + 1, circuits, _canonical=True)


def free_extension(M: Matroid) -> Matroid:
    return extend_by_modular_cut(M, ModularCutSpec.free(M), validate=False)


def free_coextension(M: Matroid) -> Matroid:
    return free_extension(M.dual()).dual()


def truncation(M: Matroid) -> Matroid:
    if M.rank() < 1:
        raise RankZero("truncation needs rank >= 1")
    return minor(free_extension(M), 0, 1 << M.n)


def elongation(M: Matroid) -> Matroid:
    if M.corank() < 1:
        raise CorankZero("elongation needs corank >= 1")
    return truncation(M.dual()).dual()


_DERIVED = {
    "free_extension": free_extension,
    "free_coextension": free_coextension,
    "truncation": truncation,
    "elongation": elongation,
}


def derived_matroid(M: Matroid, kind: str) -> Matroid:
    try:
        fn = _DERIVED[kind.replace("-", "_")]
    except KeyError:
        raise InvalidParameters(f"unknown derived matroid {kind!r}") from None
    return fn(M)
