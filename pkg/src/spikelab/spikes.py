"""Echidnas and t-spikes: recognition, audits and constructions."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .bits import as_mask, elements_of, iter_bits, popcount
from .connectivity import connectivity_lambda, is_n_connected
from .constructions import ModularCutSpec, elongation, extend_by_modular_cut, truncation
from .errors import (
    ExtensionFailed,
    GroundSetTooLarge,
    GroundSetTooLargeForSearch,
    InvalidParameters,
    NotACircuit,
    NotAModularCut,
    NotAnEchidna,
    NotASpike,
    OddGroundSet,
    OrderTooSmall,
    PartitionDoesNotCoverGroundSet,
    PreconditionViolated,
    StructureViolation,
    VerificationFailed,
)
from .matroid import Matroid, direct_sum, minor
from .report import AuditReport

SEARCH_MAX_N = 20
MAKE_SPIKE_MAX_N = 20


@dataclass(frozen=True)
class ArmPartition:
    """Ordered, pairwise disjoint 2-element sets (spines or arms)."""

    arms: tuple[int, ...]

    def __post_init__(self):
        seen = 0
        for a in self.arms:
            if popcount(a) != 2:
                raise InvalidParameters(f"arm {elements_of(a)} does not have 2 elements")
            if a & seen:
                raise InvalidParameters("arms are not pairwise disjoint")
            seen |= a

    @classmethod
    def of(cls, arms: Iterable) -> "ArmPartition":
        return cls(tuple(as_mask(a) for a in arms))

    def __len__(self):
        return len(self.arms)

    def __iter__(self):
        return iter(self.arms)

    def __getitem__(self, i):
        return self.arms[i]

    @property
    def support(self) -> int:
        m = 0
        for a in self.arms:
            m |= a
        return m

    def union(self, indices: Iterable[int]) -> int:
        m = 0
        for i in indices:
            m |= self.arms[i]
        return m

    def lists(self) -> list[list[int]]:
        return [elements_of(a) for a in self.arms]

    def canonical(self) -> "ArmPartition":
        """Pairs ascending internally, sorted by first element."""
        return ArmPartition(tuple(sorted(self.arms, key=lambda a: (a & -a))))


@dataclass(frozen=True)
class SpikeCertificate:
    matroid: Matroid
    arms: ArmPartition
    t: int
    order: int
    verified_circuit_unions: int
    verified_cocircuit_unions: int

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "order": self.order,
            "verified_circuit_unions": self.verified_circuit_unions,
            "verified_cocircuit_unions": self.verified_cocircuit_unions,
        }


@dataclass(frozen=True)
class ArmUnion:
    J: tuple[int, ...]


@dataclass(frozen=True)
class Broad:
    meet_count: int
    contain_count: int


def _arms(pi) -> ArmPartition:
    return pi if isinstance(pi, ArmPartition) else ArmPartition.of(pi)


def _require_t(t: int) -> None:
    if t < 1:
        raise InvalidParameters("t must be at least 1")


# recognition -----------------------------------------------------------------

def has_property(M: Matroid, t1: int, l1: int, t2: int | None = None, l2: int | None = None) -> AuditReport:
    """Every t1-set lies in an l1-circuit and every t2-set in an l2-cocircuit."""
    if t2 is None:
        t2, l2 = t1, l1
    if not (t1 <= l1 and t2 <= l2 and t1 <= M.n and t2 <= M.n):
        raise InvalidParameters("need t1 <= l1, t2 <= l2 and t1, t2 <= n")
    rep = AuditReport(f"({t1},{l1},{t2},{l2})-property")
    for side, t, l, family in (
        ("circuit", t1, l1, M.circuits),
        ("cocircuit", t2, l2, M.cocircuits),
    ):
        covered = set()
        for c in family:
            if popcount(c) == l:
                for sub in combinations(elements_of(c), t):
                    covered.add(sub)
        missing = next((s for s in combinations(range(M.n), t) if s not in covered), None)
        if missing is None:
            rep.add(side, True, f"every {t}-set lies in a {l}-element {side}")
        else:
            rep.add(side, False, f"{t}-set in no {l}-element {side}", list(missing))
    return rep


def is_t_echidna(M: Matroid, pi, t: int, side: str = "primal") -> AuditReport:
    """Every union of t arms is a circuit (of M, or of M* for ``side='dual'``).

    The report does not depend on ``side`` so that the dual check of M and
    the primal check of M* produce equal reports.
    """
    _require_t(t)
    pi = _arms(pi)
    if side not in ("primal", "dual"):
        raise InvalidParameters(f"side must be primal or dual, not {side!r}")
    if t > len(pi):
        raise InvalidParameters(f"t={t} exceeds order {len(pi)}")
    N = M.dual() if side == "dual" else M
    rep = AuditReport(f"{t}-echidna")
    count = 0
    for I in combinations(range(len(pi)), t):
        U = pi.union(I)
        if not N.is_circuit(U):
            rep.add("unions", False, f"union of arms {list(I)} is not a circuit", list(I))
            return rep
        count += 1
    rep.add("unions", True, f"{count} unions of {t} arms are circuits")
    return rep


def is_t_spike(M: Matroid, pi, t: int):
    """A :class:`SpikeCertificate` when pi is a t-echidna and t-coechidna, else the failing report."""
    _require_t(t)
    pi = _arms(pi)
    if pi.support != M.ground:
        raise PartitionDoesNotCoverGroundSet("arms must cover the ground set")
    rep = AuditReport(f"{t}-spike")
    if len(pi) < t:
        rep.add("order", False, f"order {len(pi)} < t={t}")
        return rep
    primal = is_t_echidna(M, pi, t, "primal")
    dual = is_t_echidna(M, pi, t, "dual")
    for label, sub in (("echidna", primal), ("coechidna", dual)):
        for f in sub.findings:
            rep.add(label, f.passed, f.message, f.witness)
    if not rep.passed:
        return rep
    k = comb(len(pi), t)
    return SpikeCertificate(M, pi, t, len(pi), k, k)


def _certify(M: Matroid, pi: ArmPartition, t: int) -> SpikeCertificate:
    res = is_t_spike(M, pi, t)
    if not isinstance(res, SpikeCertificate):
        raise VerificationFailed(res.format())
    return res


def find_spike_partition(M: Matroid, t: int) -> ArmPartition | None:
    """Lexicographically first arm partition certifying M as a t-spike, or None."""
    _require_t(t)
    if M.n % 2:
        raise OddGroundSet(f"ground set has {M.n} elements")
    if M.n > SEARCH_MAX_N:
        raise GroundSetTooLargeForSearch(f"partition search needs n <= {SEARCH_MAX_N}")
    if M.n == 0:
        return None
    circ, cocirc = M.circuit_set, M.dual().circuit_set
    arms: list[int] = []

    def compatible(a: int) -> bool:
        if len(arms) + 1 < t:
            return True
        for I in combinations(arms, t - 1):
            U = a
            for b in I:
                U |= b
            if U not in circ or U not in cocirc:
                return False
        return True

    def search(free: int) -> bool:
        if not free:
            return len(arms) >= t
        x = free & -free
        rest = free ^ x
        for y in iter_bits(rest):
            a = x | (1 << y)
            if compatible(a):
                arms.append(a)
                if search(rest ^ (1 << y)):
                    return True
                arms.pop()
        return False

    if not search(M.ground):
        return None
    pi = ArmPartition(tuple(arms))
    _certify(M, pi, t)
    return pi


def extend_echidna(M: Matroid, partial, t: int) -> ArmPartition:
    """Grow a t-echidna to a spike partition of all of E(M).

    Repeatedly take the smallest uncovered z and the smallest z' such that
    {z, z'} together with the first t-1 spines is a 2t-element circuit.
    """
    _require_t(t)
    pi = _arms(partial)
    if len(pi) < max(4 * t - 3, t):
        raise PreconditionViolated(f"partial echidna has order {len(pi)} < 4t-3 = {4 * t - 3}")
    if not has_property(M, t, 2 * t):
        raise PreconditionViolated(f"matroid lacks the ({t},{2 * t})-property")
    if not is_t_echidna(M, pi, t):
        raise PreconditionViolated(f"partial is not a {t}-echidna")
    arms = list(pi.arms)
    base = pi.union(range(t - 1))
    circ = M.circuit_set
    while True:
        covered = 0
        for a in arms:
            covered |= a
        outside = M.ground & ~covered
        if not outside:
            break
        z = outside & -outside
        chosen = None
        for zp in iter_bits(outside & ~z):
            pair = z | (1 << zp)
            if pair | base not in circ:
                continue
            if all(pair | ArmPartition(tuple(arms)).union(I) in circ
                   for I in combinations(range(len(arms)), t - 1)):
                chosen = pair
                break
        if chosen is None:
            raise ExtensionFailed(f"no partner for element {z.bit_length() - 1}")
        arms.append(chosen)
    result = ArmPartition(tuple(arms))
    try:
        _certify(M, result, t)
    except VerificationFailed as exc:
        raise ExtensionFailed(str(exc)) from exc
    return result


# structure ---------------------------------------------------------------------

def classify_circuit(M: Matroid, pi, C, t: int | None = None):
    """ArmUnion(J) for a union of t arms, otherwise Broad(meet, contain).

    ``t`` is required to check the Broad bounds; without it only the shape
    is reported.
    """
    pi = _arms(pi)
    C = as_mask(C)
    if not M.is_circuit(C):
        raise NotACircuit(f"{elements_of(C)} is not a circuit")
    meet = [i for i, a in enumerate(pi) if a & C]
    contain = [i for i, a in enumerate(pi) if a & C == a]
    if len(meet) == len(contain) and pi.union(contain) == C:
        if t is not None and len(contain) != t:
            raise StructureViolation(f"circuit is a union of {len(contain)} arms, expected {t}")
        return ArmUnion(tuple(contain))
    r = len(pi)
    if t is not None and not (len(meet) >= r - (t - 2) and len(contain) < t):
        raise StructureViolation(
            f"circuit {elements_of(C)} meets {len(meet)} arms and contains {len(contain)}"
        )
    return Broad(len(meet), len(contain))


def lambda_profile(M: Matroid, pi, t: int) -> dict[int, set[int]]:
    """Observed lambda values of arm unions, keyed by number of arms."""
    pi = _arms(pi)
    r = len(pi)
    out: dict[int, set[int]] = {}
    for k in range(1, r):
        out[k] = {connectivity_lambda(M, pi.union(J)) for J in combinations(range(r), k)}
    return out


SPIKE_CHECKS = ("order", "rank", "lambda", "circuits", "connectivity", "anemone")


def audit_spike(M: Matroid, pi, t: int, concatenation: Sequence[Sequence[int]] | None = None,
                checks: Iterable[str] = SPIKE_CHECKS) -> AuditReport:
    """Structural audit of a certified t-spike.

    ``concatenation`` groups arm indices into parts for the anemone check.
    """
    pi = _arms(pi)
    if not isinstance(is_t_spike(M, pi, t), SpikeCertificate):
        raise NotASpike(f"arms do not form a {t}-spike")
    checks = set(checks)
    r = len(pi)
    rep = AuditReport(f"{t}-spike audit (order {r})")

    if "order" in checks:
        rep.add("order", r >= 2 * t - 1, f"r={r}, 2t-1={2 * t - 1}")

    if "rank" in checks:
        ok = M.n == 2 * r and M.rank() == r and M.corank() == r
        rep.add("rank", ok, f"|E|={M.n}, rank={M.rank()}, corank={M.corank()}, r={r}")

    if "lambda" in checks:
        bad = None
        for k in range(1, r):
            expected = 2 * min(k, r - k, t - 1)
            for J in combinations(range(r), k):
                lam = connectivity_lambda(M, pi.union(J))
                if lam != expected:
                    bad = {"J": list(J), "lambda": lam, "expected": expected}
                    break
            if bad:
                break
        rep.add("lambda", bad is None, "lambda of arm unions = 2 min(|J|, r-|J|, t-1)", bad)

    if "circuits" in checks:
        bad = None
        unions = broad = 0
        for C in M.circuits:
            try:
                kind = classify_circuit(M, pi, C, t)
            except StructureViolation as exc:
                bad = {"circuit": elements_of(C), "error": str(exc)}
                break
            if isinstance(kind, ArmUnion):
                unions += 1
            else:
                broad += 1
        rep.add("circuits", bad is None, f"{unions} arm unions, {broad} broad circuits", bad)

    if "connectivity" in checks:
        if t >= 2 and r >= 4 * t - 4:
            sub = is_n_connected(M, 2 * t - 1)
            f = sub.findings[0]
            rep.add("connectivity", f.passed, f"{2 * t - 1}-connected: {f.message}", f.witness)
        else:
            rep.skip("connectivity", "needs t >= 2 and r >= 4t-4")

    if "anemone" in checks:
        if concatenation is None:
            rep.skip("anemone", "no concatenation supplied")
        else:
            parts = [list(p) for p in concatenation]
            flat = sorted(i for p in parts for i in p)
            if flat != list(range(r)):
                rep.add("anemone", False, "parts do not partition the arms", parts)
            elif any(2 * len(p) < 2 * t - 2 for p in parts):
                rep.add("anemone", False, "a part has fewer than 2t-2 elements", parts)
            else:
                bad = None
                masks = [pi.union(p) for p in parts]
                m = len(masks)
                for k in range(1, m):
                    for S in combinations(range(m), k):
                        P = 0
                        for i in S:
                            P |= masks[i]
                        lam = connectivity_lambda(M, P)
                        if lam != 2 * t - 2:
                            bad = {"parts": list(S), "lambda": lam}
                            break
                    if bad:
                        break
                rep.add("anemone", bad is None, f"every union of parts has lambda={2 * t - 2}", bad)
    return rep


# constructions ---------------------------------------------------------------

def tip_extension(M: Matroid, pi, t: int, *, samples: int = 0, seed: int = 0) -> Matroid:
    """Extend by a tip e lying in cl(X) exactly when X holds at least t-1 spines.

    The result is checked on every union of t-1 and of t-2 spines plus
    ``samples`` random subsets. For an arbitrary X the condition is read
    through the closure: e is spanned by X exactly when cl(X) holds at
    least t-1 spines, since a spanning X picks up e whatever it contains.
    """
    _require_t(t)
    pi = _arms(pi)
    if not is_t_echidna(M, pi, t):
        raise NotAnEchidna(f"arms are not a {t}-echidna")
    cut = ModularCutSpec.spine_unions(pi.arms, t - 1)
    try:
        Mp = extend_by_modular_cut(M, cut)
    except NotAModularCut as exc:
        raise StructureViolation(f"tip family is not a modular cut: {exc}") from exc
    e = M.n
    failures = []

    def check(X: int, through_closure: bool = False) -> None:
        Y = M.closure(X) if through_closure else X
        want = sum(1 for a in pi if a & Y == a) >= t - 1
        got = bool(Mp.closure(X) >> e & 1)
        if want != got:
            failures.append(elements_of(X))

    r = len(pi)
    for k in (t - 1, t - 2):
        if 0 <= k <= r:
            for I in combinations(range(r), k):
                check(pi.union(I))
    rng = random.Random(seed)
    for _ in range(samples):
        check(rng.getrandbits(M.n) if M.n else 0, through_closure=True)
    if failures:
        raise VerificationFailed(f"tip closure condition fails on {failures[0]}")
    return Mp


def spike_down(M: Matroid, pi, t: int):
    """(t-1)-spike on the same arms via a tip quotient and a tip lift."""
    pi = _arms(pi)
    if t < 2:
        raise PreconditionViolated("spike_down needs t >= 2")
    if not isinstance(is_t_spike(M, pi, t), SpikeCertificate):
        raise NotASpike(f"input is not a {t}-spike")
    Q = minor(tip_extension(M, pi, t), 0, 1 << M.n)
    N = Q.dual()
    Np = tip_extension(N, pi, t)
    result = minor(Np, 0, 1 << N.n).dual()
    return result, _certify(result, pi, t - 1)


def spike_up(M: Matroid, pi, t: int):
    """(t+1)-spike on the same arms: elongation of the truncation."""
    pi = _arms(pi)
    r = len(pi)
    if r < 2 * t + 1:
        raise OrderTooSmall(f"order {r} < 2t+1 = {2 * t + 1}")
    if not isinstance(is_t_spike(M, pi, t), SpikeCertificate):
        raise NotASpike(f"input is not a {t}-spike")
    result = elongation(truncation(M))
    return result, _certify(result, pi, t + 1)


def one_spike(r: int) -> tuple[Matroid, ArmPartition]:
    if r < 1:
        raise InvalidParameters("order must be positive")
    if 2 * r > 31:
        raise GroundSetTooLarge(f"order {r} needs {2 * r} elements")
    M = Matroid(0, [])
    pair = Matroid(2, [0b11])
    for _ in range(r):
        M = direct_sum(M, pair)
    return M, ArmPartition(tuple(0b11 << (2 * i) for i in range(r)))


def make_spike(t: int, r: int):
    """Free t-spike of order r: a 1-spike lifted t-1 times by ``spike_up``."""
    _require_t(t)
    if r < 2 * t - 1:
        raise OrderTooSmall(f"order {r} < 2t-1 = {2 * t - 1}")
    if 2 * r > MAKE_SPIKE_MAX_N:
        raise GroundSetTooLarge(f"2r = {2 * r} exceeds {MAKE_SPIKE_MAX_N}")
    M, pi = one_spike(r)
    cert = _certify(M, pi, 1)
    for k in range(1, t):
        M, cert = spike_up(M, pi, k)
    M.name = f"free {t}-spike of order {r}"
    return M, pi, cert
