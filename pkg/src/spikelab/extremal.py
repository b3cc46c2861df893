"""Sunflowers, trapped circuits and disjoint circuit/cocircuit extraction."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .bits import as_mask, elements_of, iter_bits, popcount
from .errors import Insufficient, InvalidParameters, NotFound, PreconditionViolated
from .matroid import Matroid
from .report import AuditReport


@dataclass(frozen=True)
class SetFamily:
    """Distinct equal-size subsets of a universe ``{0..n-1}``."""

    n: int
    members: tuple[int, ...]
    uniform: bool = True  # False only for extracted circuits of mixed size

    def __post_init__(self):
        if len(set(self.members)) != len(self.members):
            raise InvalidParameters("family members must be distinct")
        sizes = {popcount(m) for m in self.members}
        if self.uniform and len(sizes) > 1:
            raise InvalidParameters(f"members have mixed sizes {sorted(sizes)}")
        if any(m >> self.n for m in self.members):
            raise InvalidParameters("member outside the universe")

    @classmethod
    def of(cls, n: int, members: Iterable) -> "SetFamily":
        return cls(n, tuple(as_mask(m) for m in members))

    @property
    def s(self) -> int:
        return popcount(self.members[0]) if self.members else 0

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def lists(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]


# bounds -----------------------------------------------------------------------

def f_bound(s: int, n: int) -> int:
    """f(1, n) = n and f(s, n) = s (n - 1) f(s - 1, n)."""
    if s < 1 or n < 1:
        raise InvalidParameters("f needs positive arguments")
    v = n
    for k in range(2, s + 1):
        v *= k * (n - 1)
    return v


def g_bound(l: int, d: int) -> int:
    if l < 1 or d < 1:
        raise InvalidParameters("g needs positive arguments")
    return f_bound(l, 2 ** (l - 1) * d)


def h_bound(l: int, d: int, t: int) -> int:
    if t < 1:
        raise InvalidParameters("h needs a positive t")
    return g_bound(l, t * d)


def bound(name: str, *args: int, t: int | None = None) -> int:
    if name == "f":
        return f_bound(*args)
    if name == "g":
        return g_bound(*args)
    if name == "h":
        if t is None:
            raise InvalidParameters("h needs t")
        return h_bound(*args, t)
    raise InvalidParameters(f"unknown bound {name!r}")


# sunflowers --------------------------------------------------------------------

def _sunflower(members: list[int], s: int, n: int):
    if n <= 0:
        return 0, []
    # greedy maximal pairwise disjoint subfamily
    disjoint, used = [], 0
    for m in members:
        if not m & used:
            disjoint.append(m)
            used |= m
    if len(disjoint) >= n:
        return 0, disjoint[:n]
    if s <= 1:
        return None
    counts = {e: sum(1 for m in members if m >> e & 1) for e in iter_bits(used)}
    # pigeonhole element first, the rest as opportunistic fallbacks
    for e in sorted(counts, key=lambda e: (-counts[e], e)):
        if counts[e] < n:
            break
        bit = 1 << e
        sub = _sunflower([m ^ bit for m in members if m & bit], s - 1, n)
        if sub is not None:
            core, petals = sub
            return core | bit, [p | bit for p in petals]
    return None


def sunflower_extract(family: SetFamily, n: int):
    """n members whose pairwise intersections all equal a common core J.

    Always succeeds when ``len(family) >= f(s, n)``; below that bound it may
    still succeed, otherwise :class:`Insufficient` is raised.
    """
    if n < 1:
        raise InvalidParameters("petal count must be positive")
    s = family.s
    if len(family) == 0 or s < 1:
        raise Insufficient("empty family")
    res = _sunflower(sorted(family.members), s, n)
    if res is None:
        raise Insufficient(f"no sunflower with {n} petals among {len(family)} sets of size {s}")
    core, petals = res
    return core, SetFamily(family.n, tuple(petals))


def is_sunflower(members: Sequence[int], core: int) -> bool:
    return all(a & b == core for a, b in combinations(members, 2))


# trapped circuits --------------------------------------------------------------

def trapped_circuit(M: Matroid, circuits: SetFamily, J) -> int:
    """A circuit inside the union of the members that avoids J.

    Uses the first 2^k members (k maximal) and halves them level by level,
    eliminating the next element of J whenever both halves' circuits use it.
    """
    J = as_mask(J)
    members = sorted(circuits.members)
    if not members:
        raise PreconditionViolated("empty circuit family")
    k = len(members).bit_length() - 1
    members = members[: 1 << k]
    for c in members:
        if not M.is_circuit(c):
            raise PreconditionViolated(f"{elements_of(c)} is not a circuit")
    if popcount(J) > k:
        raise PreconditionViolated(f"|J|={popcount(J)} exceeds k={k}")
    if len(members) > 1 and not is_sunflower(members, J):
        raise PreconditionViolated("pairwise intersections are not all equal to J")
    if len(members) == 1 and J:
        raise PreconditionViolated("a single circuit needs J empty")
    xs = elements_of(J)
    level = list(members)
    for j in range(1, k + 1):
        x = 1 << xs[j - 1] if j <= len(xs) else 0
        nxt = []
        for i in range(0, len(level), 2):
            c1, c2 = level[i], level[i + 1]
            if not c1 & x:
                nxt.append(c1)
            elif not c2 & x:
                nxt.append(c2)
            else:
                target = (c1 | c2) & ~x
                hit = next((c for c in M.circuits if c & ~target == 0), None)
                if hit is None:
                    raise PreconditionViolated("circuit elimination failed: input is not a matroid")
                nxt.append(hit)
        level = nxt
    result = level[0]
    union = 0
    for c in members:
        union |= c
    assert M.is_circuit(result) and result & ~union == 0 and not result & J
    return result


# disjoint circuits and cocircuits ----------------------------------------------

def _search_disjoint(candidates: Sequence[int], d: int) -> list[int] | None:
    chosen: list[int] = []

    def go(start: int, used: int) -> bool:
        if len(chosen) == d:
            return True
        for i in range(start, len(candidates)):
            c = candidates[i]
            if not c & used:
                chosen.append(c)
                if go(i + 1, used | c):
                    return True
                chosen.pop()
        return False

    return chosen if go(0, 0) else None


def disjoint_circuits(M: Matroid, l: int, d: int) -> SetFamily:
    """d pairwise disjoint circuits, guaranteed once M has g(l, d) l-circuits.

    The sunflower-and-trapping route runs first; below the bound a direct
    search over l-circuits and then all circuits is tried before giving up.
    """
    if l < 1 or d < 1:
        raise InvalidParameters("l and d must be positive")
    lc = [c for c in M.circuits if popcount(c) == l]
    block = 2 ** (l - 1)
    result = None
    if lc:
        try:
            core, petals = sunflower_extract(SetFamily(M.n, tuple(lc)), block * d)
        except Insufficient:
            if len(lc) >= g_bound(l, d):
                raise
        else:
            ps = sorted(petals.members)
            if not core:
                result = ps[:d]
            else:
                result = [
                    trapped_circuit(M, SetFamily(M.n, tuple(ps[j * block:(j + 1) * block])), core)
                    for j in range(d)
                ]
    if result is None:
        result = _search_disjoint(lc, d)
    if result is None:
        result = _search_disjoint(sorted(M.circuits, key=lambda c: (popcount(c), c)), d)
    if result is None:
        raise Insufficient(f"no {d} pairwise disjoint circuits found")
    for a, b in combinations(result, 2):
        assert not a & b
    assert all(M.is_circuit(c) for c in result)
    return SetFamily(M.n, tuple(result), uniform=len({popcount(c) for c in result}) <= 1)


def disjoint_cocircuits_2t(M: Matroid, t: int, d: int) -> SetFamily:
    """d pairwise disjoint 2t-element cocircuits of a (t,2t)-property matroid."""
    from .spikes import has_property

    if not has_property(M, t, 2 * t):
        raise PreconditionViolated(f"matroid lacks the ({t},{2 * t})-property")
    circuits = list(disjoint_circuits(M, 2 * t, t * d).members)
    cocircs = sorted(c for c in M.cocircuits if popcount(c) == 2 * t)
    out = []
    for g in range(d):
        group = circuits[g * t:(g + 1) * t]
        picks = 0
        union = 0
        for c in group:
            picks |= c & -c
            union |= c
        hit = next((c for c in cocircs if c & picks == picks), None)
        if hit is None:
            raise Insufficient(f"no {2 * t}-cocircuit through {elements_of(picks)}")
        assert hit & ~union == 0
        out.append(hit)
    return SetFamily(M.n, tuple(out))


# small structure ---------------------------------------------------------------

SMALL_STRUCTURE_MAX_N = 16


def small_structure_audit(M: Matroid, t: int, *, require_property: bool = True) -> AuditReport:
    """Rank-below-t sets are independent, rank-t restrictions are uniform,
    and there is no U_{t,3t} restriction.

    With ``require_property=False`` the checks run even without the
    (t,2t)-property, as plain structural facts.
    """
    from .spikes import has_property

    if M.n > SMALL_STRUCTURE_MAX_N:
        raise InvalidParameters(f"small-structure audit needs n <= {SMALL_STRUCTURE_MAX_N}")
    if require_property and not has_property(M, t, 2 * t):
        raise PreconditionViolated(f"matroid lacks the ({t},{2 * t})-property")
    rep = AuditReport(f"small structure (t={t})")
    rt, pc = M.rank_table, M.popcounts
    bad = np.flatnonzero((rt < t) & (rt < pc))
    rep.add("low-rank-independent", len(bad) == 0, f"every set of rank < {t} is independent",
            elements_of(int(bad[0])) if len(bad) else None)
    # a rank-t set has a non-circuit (t+1)-subset iff some (t+1)-set of rank <= t is not a circuit
    witness = None
    for Y in combinations(range(M.n), t + 1):
        m = sum(1 << e for e in Y)
        if rt[m] <= t and not M.is_circuit(m):
            witness = list(Y)
            break
    rep.add("rank-t-uniform", witness is None, f"rank-{t} restrictions are U_{{{t},k}}", witness)
    witness = None
    if 3 * t <= M.n:
        for X in combinations(range(M.n), 3 * t):
            m = sum(1 << e for e in X)
            if rt[m] != t:
                continue
            if all(rt[sum(1 << e for e in Y)] == t for Y in combinations(X, t)):
                witness = list(X)
                break
    rep.add("no-U(t,3t)", witness is None, f"no restriction isomorphic to U_{{{t},{3 * t}}}", witness)
    return rep


@dataclass(frozen=True)
class ProfileCircuit:
    circuit: int
    profile: tuple[int, ...]
    w_count: int | None = None
    w_bound_ok: bool | None = None


def profile_circuit_search(M: Matroid, cocircuits: Sequence, y: int, t: int) -> ProfileCircuit:
    """A 2t-circuit through y meeting each given cocircuit in 2 elements,
    or one of them in 3 and the rest in 2.

    For the second pattern, with S the circuit minus y, the number of w
    outside the cocircuits with S + w a circuit is also reported and
    checked against 3t.
    """
    from .spikes import has_property

    cos = [as_mask(c) for c in cocircuits]
    if len(cos) != t - 1:
        raise PreconditionViolated(f"need {t - 1} cocircuits, got {len(cos)}")
    used = 0
    for c in cos:
        if not M.is_cocircuit(c):
            raise PreconditionViolated(f"{elements_of(c)} is not a cocircuit")
        if c & used:
            raise PreconditionViolated("cocircuits are not pairwise disjoint")
        used |= c
    if used >> y & 1:
        raise PreconditionViolated(f"y={y} lies in a listed cocircuit")
    if not has_property(M, t, 2 * t):
        raise PreconditionViolated(f"matroid lacks the ({t},{2 * t})-property")
    picks = (1 << y)
    for c in cos:
        picks |= c & -c
    for C in M.circuits:
        if popcount(C) != 2 * t or C & picks != picks:
            continue
        prof = tuple(popcount(C & c) for c in cos)
        threes = prof.count(3)
        if any(p not in (2, 3) for p in prof) or threes > 1:
            continue
        if threes == 0:
            return ProfileCircuit(C, prof)
        S = C & ~(1 << y)
        Y = M.ground & ~used
        w = sum(1 for e in iter_bits(Y) if M.is_circuit(S | (1 << e)))
        return ProfileCircuit(C, prof, w, w < 3 * t)
    raise NotFound(f"no 2t-circuit through {elements_of(picks)} with the required profile")
