from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import CATALOG, SMALL
from oracles import brute_closure, brute_cocircuits, brute_rank_table, graph_cycles

from spikelab.bits import elements_of, mask_of, popcount
from spikelab.connectivity import (
    connectivity_lambda,
    connectivity_lambda_dual_form,
    is_n_connected,
)
from spikelab.constructions import (
    ModularCutSpec,
    derived_matroid,
    elongation,
    extend_by_modular_cut,
    is_modular_cut,
    named_matroid,
    truncation,
    uniform,
    wheel,
    whirl,
)
from spikelab.errors import (
    CorankZero,
    ElementOutOfRange,
    EmptyCircuit,
    GroundSetTooLarge,
    GroundSetTooLargeForExhaustiveScan,
    GroundSetTooLargeForIsomorphism,
    InvalidParameters,
    NotAModularCut,
    OverlappingSets,
    RankZero,
)
from spikelab.isomorphism import are_isomorphic, find_isomorphism
from spikelab.matroid import (
    Matroid,
    direct_sum,
    from_circuits,
    minor,
    relabel,
    validate_circuit_axioms,
)
from spikelab.spikes import is_t_spike, make_spike, one_spike, SpikeCertificate

U24 = uniform(2, 4)


# from_circuits ------------------------------------------------------------------

def test_from_circuits_uniform():
    M = from_circuits(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    assert M == U24
    assert len(M.circuits) == 4


def test_from_circuits_drops_supersets_and_duplicates():
    M = from_circuits(4, [[0, 1, 2], [0, 1, 2, 3], [2, 1, 0]])
    assert M.circuit_lists() == [[0, 1, 2]]
    assert from_circuits(2, [[0, 1]]) == uniform(1, 2)


@pytest.mark.parametrize(
    "n, circuits, exc",
    [
        (3, [[0, 3]], ElementOutOfRange),
        (3, [[]], EmptyCircuit),
        (32, [], GroundSetTooLarge),
    ],
)
def test_from_circuits_errors(n, circuits, exc):
    with pytest.raises(exc):
        from_circuits(n, circuits)


def test_env_cap_lowers_only(monkeypatch):
    monkeypatch.setenv("SPIKELAB_MAX_N", "5")
    with pytest.raises(GroundSetTooLarge):
        from_circuits(6, [[0, 1]])
    monkeypatch.setenv("SPIKELAB_MAX_N", "40")
    with pytest.raises(GroundSetTooLarge):
        from_circuits(32, [[0, 1]])
    assert from_circuits(31, [[0, 30]]).n == 31


@given(st.sampled_from(sorted(CATALOG)), st.randoms(use_true_random=False))
def test_canonical_form_is_order_independent(name, rnd):
    M = CATALOG[name]
    lists = [elements_of(c) for c in M.circuits]
    rnd.shuffle(lists)
    for c in lists:
        rnd.shuffle(c)
    assert from_circuits(M.n, lists).circuits == M.circuits


# circuit axioms ---------------------------------------------------------------

def test_validate_passes_on_catalog(small_matroid):
    assert validate_circuit_axioms(small_matroid).passed


def test_validate_reports_missing_elimination():
    M = from_circuits(4, [[0, 1, 2], [0, 1, 3]])
    rep = validate_circuit_axioms(M)
    assert not rep.passed
    w = rep.failures()[0].witness
    assert w["e"] == 0 and sorted([w["C1"], w["C2"]]) == [[0, 1, 2], [0, 1, 3]]


def test_validate_free_spike():
    M, _, _ = make_spike(2, 4)
    assert validate_circuit_axioms(M).passed


# rank and closure -----------------------------------------------------------------

def test_rank_examples():
    assert U24.rank() == 2
    assert U24.rank(0) == 0
    M, pi, _ = make_spike(2, 4)
    assert M.rank(pi.union([0, 1])) == 3


def test_rank_table_matches_brute_force(small_matroid):
    M = small_matroid
    brute = brute_rank_table(M.n, M.circuits)
    assert [int(x) for x in M.rank_table] == brute
    for X in range(1 << M.n):
        assert M.greedy_rank(X) == brute[X]


def test_large_matroid_uses_greedy_rank():
    M = direct_sum(make_spike(2, 5)[0], make_spike(2, 5)[0])
    assert M.n == 20 and "rank_table" not in M.__dict__
    assert M.rank() == 10
    assert M.closure(0b1111) == 0b1111


def test_closure_examples(spike25):
    assert U24.closure(0b0011) == 0b1111
    M, pi, _ = make_spike(2, 4)
    x2 = min(elements_of(pi[1]))
    assert M.closure(pi[0] | (1 << x2)) == pi.union([0, 1])
    assert U24.closure(U24.ground) == U24.ground


def test_closure_matches_oracle(small_matroid):
    M = small_matroid
    rt = brute_rank_table(M.n, M.circuits)
    for X in range(1 << M.n):
        assert M.closure(X) == brute_closure(M.n, rt, X)


@given(st.sampled_from(sorted(SMALL)), st.integers(0, 2**10 - 1), st.integers(0, 2**10 - 1))
def test_closure_idempotent_and_monotone(name, a, b):
    M = SMALL[name]
    X, Y = a & M.ground, (a | b) & M.ground
    cX = M.closure(X)
    assert M.closure(cX) == cX
    assert cX & ~M.closure(Y) == 0


# duality -----------------------------------------------------------------------

def test_dual_examples(spike25):
    assert U24.dual() == U24
    assert uniform(1, 2).dual() == uniform(1, 2)
    M, pi, _ = make_spike(2, 4)
    D = M.dual()
    assert all(D.is_circuit(pi.union(I)) for I in combinations(range(4), 2))


def test_dual_matches_minimal_transversals(small_matroid):
    M = small_matroid
    assert list(M.dual().circuits) == brute_cocircuits(M.n, M.circuits)


def test_dual_involution(small_matroid):
    D = small_matroid.dual()
    DD = Matroid(D.n, D.circuits).dual()
    assert DD == small_matroid


def test_rank_duality(small_matroid):
    M = small_matroid
    assert M.rank() + M.dual().rank() == M.n


def test_dual_fallback_for_large_ground_set():
    M = direct_sum(uniform(1, 13), uniform(2, 12))
    assert M.n == 25
    D = M.dual()
    assert D == direct_sum(uniform(12, 13), uniform(10, 12))


# minors and sums -------------------------------------------------------------------

def test_minor_examples():
    assert minor(U24, 0b1000, 0) == uniform(2, 3)
    assert minor(U24, 0, 0b1000) == uniform(1, 3)
    assert minor(U24, 0, 0) == U24


def test_minor_index_map():
    N, keep = minor(wheel(3), 0b000010, 0b100000, return_map=True)
    assert keep == [0, 2, 3, 4]
    assert N.n == 4


def test_minor_overlap():
    with pytest.raises(OverlappingSets):
        minor(U24, 0b1, 0b11)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_contraction_dual_to_deletion(name):
    M = SMALL[name]
    for e in range(M.n):
        assert minor(M, 0, 1 << e).dual() == minor(M.dual(), 1 << e, 0)


def test_direct_sum_examples():
    M = direct_sum(uniform(1, 2), uniform(1, 2))
    assert M == one_spike(2)[0]
    assert direct_sum(U24, Matroid(0, [])) == U24
    S = direct_sum(uniform(1, 2), uniform(2, 3))
    assert S.n == 5 and S.rank() == 3
    assert S.circuit_lists() == [[0, 1], [2, 3, 4]]
    with pytest.raises(GroundSetTooLarge):
        direct_sum(uniform(1, 16), uniform(1, 16))


# named matroids -------------------------------------------------------------------

def test_named_uniform():
    assert named_matroid("uniform", 2, 4) == U24
    with pytest.raises(InvalidParameters):
        named_matroid("uniform", 5, 4)


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_wheel_is_cycle_matroid(r):
    edges = [("hub", i) for i in range(r)] + [(i, (i + 1) % r) for i in range(r)]
    assert wheel(r).circuits == tuple(graph_cycles(edges))


def test_wheel3_triangles_and_triads():
    W = wheel(3)
    assert W.n == 6 and W.rank() == 3
    for e in range(6):
        assert any(popcount(c) == 3 and c >> e & 1 for c in W.circuits)
        assert any(popcount(c) == 3 and c >> e & 1 for c in W.cocircuits)


def test_whirl_relaxes_rim():
    W = whirl(3)
    assert W != uniform(3, 6)
    assert validate_circuit_axioms(W).passed
    assert not W.is_circuit(0b111000)
    assert W.rank(0b111000) == 3


@pytest.mark.parametrize("r", [2, 16])
def test_wheel_bad_params(r):
    with pytest.raises(InvalidParameters):
        wheel(r)


def test_named_free_spike():
    M = named_matroid("free_spike", 2, 4)
    assert M == make_spike(2, 4)[0]


# connectivity ---------------------------------------------------------------------

def test_lambda_examples(spike37):
    M, pi, _ = spike37
    assert connectivity_lambda(M, 0) == 0
    assert connectivity_lambda(M, pi[0]) == 2
    assert connectivity_lambda(M, pi.union([0, 1, 2])) == 4


@pytest.mark.parametrize("name", sorted(k for k, v in CATALOG.items() if v.n <= 12))
def test_lambda_formulas_agree_and_symmetric(name):
    M = CATALOG[name]
    D = M.dual()
    for X in range(1 << M.n):
        lam = connectivity_lambda(M, X)
        assert lam == M.rank(X) + D.rank(X) - popcount(X)
        assert lam == connectivity_lambda(M, M.ground & ~X)
        assert lam == int(M.lambda_table[X])


def test_lambda_dual_form_helper(spike25):
    M, pi, _ = spike25
    assert connectivity_lambda_dual_form(M, pi.union([0, 2])) == 2


def test_n_connected_examples():
    M, _, _ = make_spike(2, 4)
    assert is_n_connected(M, 3).passed
    rep = is_n_connected(one_spike(2)[0], 2)
    assert not rep.passed
    assert rep.failures()[0].witness["lambda"] == 0
    assert is_n_connected(U24, 3).passed


def test_n_connected_witness_is_real():
    rep = is_n_connected(wheel(4), 4)
    assert not rep.passed
    w = rep.failures()[0].witness
    X = mask_of(w["X"])
    lam = connectivity_lambda(wheel(4), X)
    assert lam == w["lambda"] and lam < min(len(w["X"]), len(w["complement"]), 3)


def test_n_connected_guard():
    M = direct_sum(uniform(1, 13), uniform(1, 12))
    with pytest.raises(GroundSetTooLargeForExhaustiveScan):
        is_n_connected(M, 2)
    with pytest.raises(InvalidParameters):
        is_n_connected(U24, 1)


# modular cuts ----------------------------------------------------------------------

def test_free_extension_of_uniform():
    N = extend_by_modular_cut(U24, ModularCutSpec.free(U24))
    assert N == uniform(2, 5)


def test_cut_of_everything_is_modular():
    for M in (U24, wheel(3), make_spike(2, 4)[0]):
        assert is_modular_cut(M, ModularCutSpec.everything()).passed


def test_two_points_not_upward_closed():
    cut = ModularCutSpec.from_flats([0b0001, 0b0010])
    rep = is_modular_cut(U24, cut)
    assert not rep.passed
    assert rep.failures()[0].check == "upward-closed"
    with pytest.raises(NotAModularCut):
        extend_by_modular_cut(U24, cut)


def test_non_modular_intersection_detected():
    # two lines of W3 meeting in a point, plus everything above them, but not the point
    W = wheel(3)
    lines = [F for F in W.flats if W.rank(F) == 2]
    a, b = next((a, b) for a, b in combinations(lines, 2) if a & b)
    cut = ModularCutSpec(lambda F: (F & a == a) or (F & b == b), "two lines")
    rep = is_modular_cut(W, cut)
    assert not rep.passed
    assert rep.failures()[0].check == "modular-intersection"


def test_principal_extension_adds_parallel_element():
    N = extend_by_modular_cut(U24, ModularCutSpec.principal(U24, 0b0001))
    assert N.is_circuit(0b10001)


def test_extension_restriction_recovers_original(small_matroid):
    M = small_matroid
    if M.n + 1 > 11:
        pytest.skip("kept small")
    for cut in (ModularCutSpec.free(M), ModularCutSpec.everything(), ModularCutSpec.principal(M, 0b1)):
        N = extend_by_modular_cut(M, cut)
        assert minor(N, 1 << M.n, 0) == M
        assert validate_circuit_axioms(N).passed


def test_free_extension_new_element_in_no_small_circuit():
    M = wheel(4)
    N = extend_by_modular_cut(M, ModularCutSpec.free(M))
    e = 1 << M.n
    assert all(popcount(c) > M.rank() for c in N.circuits if c & e)


def test_rank_rule_of_extension():
    M = wheel(3)
    cut = ModularCutSpec.principal(M, 0b000011)
    sel = {F for F in M.flats if cut(F)}
    N = extend_by_modular_cut(M, cut)
    for X in range(1 << M.n):
        want = M.rank(X) + (0 if M.closure(X) in sel else 1)
        assert N.rank(X | (1 << M.n)) == want
        assert N.rank(X) == M.rank(X)


# truncation / elongation -------------------------------------------------------------

def test_truncation_examples():
    assert truncation(U24) == uniform(1, 4)
    assert elongation(U24) == uniform(3, 4)
    assert derived_matroid(U24, "truncation") == uniform(1, 4)
    assert derived_matroid(U24, "free_coextension").n == 5
    with pytest.raises(RankZero):
        truncation(uniform(0, 3))
    with pytest.raises(CorankZero):
        elongation(uniform(3, 3))
    with pytest.raises(InvalidParameters):
        derived_matroid(U24, "bogus")


def test_elongated_truncated_one_spike_is_two_spike():
    M, pi = one_spike(5)
    N = elongation(truncation(M))
    assert isinstance(is_t_spike(N, pi, 2), SpikeCertificate)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_truncation_and_elongation_invariants(name):
    M = SMALL[name]
    if M.rank() >= 1:
        T = truncation(M)
        assert T.n == M.n and T.rank() == M.rank() - 1
        assert {c for c in M.circuits if popcount(c) <= M.rank() - 1} <= T.circuit_set
        assert all(T.is_circuit(c) or popcount(c) > T.rank() for c in M.circuits)
    if M.corank() >= 1:
        L = elongation(M)
        assert L.n == M.n and L.rank() == M.rank() + 1
        small_cocircuits = {c for c in M.cocircuits if popcount(c) <= M.corank() - 1}
        assert small_cocircuits <= set(L.cocircuits)


# isomorphism -------------------------------------------------------------------------

def test_isomorphism_examples():
    perm = [2, 0, 3, 1]
    assert are_isomorphic(U24, relabel(U24, perm))
    assert not are_isomorphic(wheel(3), whirl(3))
    assert not are_isomorphic(uniform(1, 2), uniform(2, 3))


@given(st.sampled_from(sorted(SMALL)), st.randoms(use_true_random=False))
def test_relabelled_copies_are_isomorphic(name, rnd):
    M = SMALL[name]
    perm = list(range(M.n))
    rnd.shuffle(perm)
    N = relabel(M, perm)
    f = find_isomorphism(M, N)
    assert f is not None
    assert relabel(M, f) == N


def test_isomorphism_guard():
    with pytest.raises(GroundSetTooLargeForIsomorphism):
        are_isomorphic(uniform(1, 13), uniform(1, 13))


def test_wheel_whirl_never_isomorphic():
    for r in (3, 4, 5):
        assert not are_isomorphic(wheel(r), whirl(r))
