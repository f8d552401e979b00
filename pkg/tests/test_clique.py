"""Purity set, uncoverable differences, clique checking, closure, search.

The oracles here recompute the defining sets by brute force through the
error-word layer (weight of an explicit word), independent of the set
arithmetic inside the clique module.
"""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mixedqec.algebra import ModVec, PHASE_ONE
from mixedqec.errors import ErrorWord, enumerate_errors, weight
from mixedqec.graphs import WeightedGraph, loop_graph, graph_action
from mixedqec.graphstate import layered_system, stabilizer_error_word
from mixedqec.clique import (
    CodingClique, all_vectors, check_clique, closure, condition_ii_phase,
    covered_differences, in_uncoverable, purity_set, search_clique,
)

L3 = loop_graph(3, 2)
L6 = loop_graph(6, 2)
L5_3 = loop_graph(5, 3)


def vec(m, *entries):
    return ModVec.of(m, entries)


def brute_purity(graphs, d):
    """Filter every exponent tuple by the weight of its stabilizer word."""
    sys = layered_system(graphs)
    out = []
    for ss in all_vectors(graphs):
        w = stabilizer_error_word(sys, graphs, ss)
        if weight(w, sys) < d:
            out.append(ss)
    return set(out)


def brute_covered(graphs, d):
    """Differences t_l - s_l G_l over every error word of weight in (0, d)."""
    sys = layered_system(graphs)
    out = set()
    for e in enumerate_errors(sys, d - 1):
        if e.label_is_identity():
            continue
        deltas = tuple(e.z_layer(sys, l) - graph_action(e.x_layer(sys, l), g)
                       for l, g in enumerate(graphs))
        out.add(deltas)
    return out


class TestPuritySet:
    def test_d1_only_zero(self):
        ps = purity_set((L3, L3), 1)
        assert len(ps) == 1
        assert all(v.is_zero() for v in ps[0])

    def test_l3_pair_matches_brute_force(self):
        got = set(purity_set((L3, L3), 2))
        assert got == brute_purity((L3, L3), 2)

    def test_l6_pair_matches_brute_force(self):
        got = set(purity_set((L6, L6), 3))
        assert got == brute_purity((L6, L6), 3)

    def test_l5_mod3_matches_brute_force(self):
        got = set(purity_set((L5_3,), 2))
        assert got == brute_purity((L5_3,), 2)

    def test_contains_zero(self):
        for d in (1, 2, 3):
            ps = purity_set((L3, L3), d)
            assert any(all(v.is_zero() for v in s) for s in ps)


class TestUncoverable:
    def test_l3_pair_matches_brute_force(self):
        covered = brute_covered((L3, L3), 2)
        for deltas in all_vectors((L3, L3)):
            assert in_uncoverable(deltas, (L3, L3), 2) == (deltas not in covered)

    def test_l6_pair_matches_brute_force(self):
        covered = brute_covered((L6, L6), 3)
        for deltas in all_vectors((L6, L6)):
            assert in_uncoverable(deltas, (L6, L6), 3) == (deltas not in covered)

    def test_zero_difference_membership_matches_scan(self):
        # the definition bounds error weight strictly above 0, and on a
        # loop graph no weight-1 word reduces to the zero label, so the
        # zero difference is uncoverable at d=2 (the scan decides this)
        zero = (ModVec.zeros(2, 3), ModVec.zeros(2, 3))
        assert in_uncoverable(zero, (L3, L3), 2) == (
            zero not in brute_covered((L3, L3), 2))
        assert in_uncoverable(zero, (L3, L3), 2)

    def test_wide_support_difference_uncoverable(self):
        # a weight-2 error reaches at most 2 own positions plus 4 loop
        # neighbours per layer, and this split defeats every such reach
        deltas = (vec(2, 0, 0, 0, 0, 1, 1), vec(2, 1, 1, 1, 1, 0, 0))
        assert in_uncoverable(deltas, (L6, L6), 3)


EX1_GENS = [
    (vec(2, 1, 0, 0, 1, 0, 0), vec(2, 0, 0, 1, 1, 0, 1)),
    (vec(2, 0, 1, 0, 0, 1, 0), vec(2, 0, 0, 1, 0, 1, 1)),
    (vec(2, 0, 0, 1, 1, 0, 1), vec(2, 1, 0, 1, 0, 0, 1)),
    (vec(2, 0, 0, 0, 1, 1, 0), vec(2, 1, 1, 0, 0, 0, 0)),
]

EX2_GENS_8 = [
    (vec(2, 1, 0, 0, 0, 0, 0), vec(2, 1, 1, 1, 1, 1)),
    (vec(2, 0, 1, 1, 1, 1, 0), vec(2, 1, 0, 0, 0, 0)),
    (vec(2, 0, 0, 0, 0, 1, 1), vec(2, 0, 1, 0, 1, 0)),
]


class TestClosure:
    def test_sixteen_element_group(self):
        assert len(closure(EX1_GENS)) == 16

    def test_eight_element_group(self):
        assert len(closure(EX2_GENS_8)) == 8

    def test_single_generator_order(self):
        g = (vec(3, 1, 0, 0),)
        assert len(closure([g])) == 3
        g = (vec(4, 1, 0, 0),)
        assert len(closure([g])) == 4

    def test_contains_zero_and_closed(self):
        vecs = closure(EX2_GENS_8)
        assert any(all(v.is_zero() for v in s) for s in vecs)
        vs = set(vecs)
        for a in vs:
            for b in vs:
                s = tuple(x + y for x, y in zip(a, b))
                assert s in vs

    @given(st.lists(
        st.tuples(st.lists(st.integers(0, 3), min_size=3, max_size=3)),
        min_size=1, max_size=3))
    @settings(max_examples=30, deadline=None)
    def test_closure_is_a_group_mod4(self, raw):
        gens = [(ModVec.of(4, tuple(t[0])),) for t in raw]
        vs = set(closure(gens))
        assert (ModVec.zeros(4, 3),) in vs
        for a in vs:
            assert tuple(-x for x in a) in vs
            for b in vs:
                assert tuple(x + y for x, y in zip(a, b)) in vs


class TestCheckClique:
    def test_singleton_zero_passes(self):
        c = CodingClique(graphs=(L3, L3), d=2,
                        vectors=((ModVec.zeros(2, 3), ModVec.zeros(2, 3)),))
        assert check_clique(c).ok

    def test_sixteen_vector_closure_passes_d3(self):
        c = CodingClique(graphs=(L6, L6), d=3, vectors=closure(EX1_GENS))
        rep = check_clique(c)
        assert rep.ok
        assert rep.zero_member and rep.purity_phases_trivial
        assert rep.differences_uncoverable

    def test_missing_zero_fails(self):
        c = CodingClique(graphs=(L3, L3), d=2,
                        vectors=((vec(2, 1, 0, 0), vec(2, 0, 1, 0)),))
        rep = check_clique(c)
        assert not rep.ok and not rep.zero_member

    def test_covered_difference_fails_with_witness(self):
        # 0 and Z^1 differ by delta = e1, reachable by the weight-1 error Z^1
        c = CodingClique(graphs=(L3, L3), d=2, vectors=(
            (ModVec.zeros(2, 3), ModVec.zeros(2, 3)),
            (vec(2, 1, 0, 0), vec(2, 0, 0, 0)),
        ))
        rep = check_clique(c)
        assert not rep.ok and not rep.differences_uncoverable
        assert rep.witness is not None

    def test_purity_phase_violation_detected(self):
        # on (L6, L4) at d=3 the alternating patterns on the 4-loop map
        # to zero under the adjacency, giving weight-2 purity elements
        L4 = loop_graph(4, 2)
        ps = purity_set((L6, L4), 3)
        assert len(ps) == 3
        nontrivial = [s for s in ps if not all(v.is_zero() for v in s)]
        assert nontrivial
        bad = None
        for cand in all_vectors((L6, L4)):
            if any(condition_ii_phase(s, cand) != PHASE_ONE for s in nontrivial):
                bad = cand
                break
        assert bad is not None
        c = CodingClique(graphs=(L6, L4), d=3,
                        vectors=((ModVec.zeros(2, 6), ModVec.zeros(2, 4)), bad))
        rep = check_clique(c)
        assert not rep.ok and not rep.purity_phases_trivial

    def test_report_json_shape(self):
        c = CodingClique(graphs=(L6, L6), d=3, vectors=closure(EX1_GENS))
        js = check_clique(c).to_json()
        assert js["verdict"] == "pass"
        assert set(js["conditions"]) == {"zero_member", "purity_phases_trivial",
                                         "differences_uncoverable"}
        assert js["purity_size"] == 1


class TestSearch:
    def test_l3_pair_finds_size_4(self):
        res = search_clique((L3, L3), d=2, target_K=4)
        assert res.flag in ("target", "ok")
        assert len(res.clique.vectors) >= 4
        assert check_clique(res.clique).ok

    def test_d1_whole_space(self):
        res = search_clique((L3, L3), d=1, target_K=64)
        assert len(res.clique.vectors) == 64

    def test_set_mode_matches_group_mode_size(self):
        a = search_clique((L3, L3), d=2, target_K=4, mode="group")
        b = search_clique((L3, L3), d=2, target_K=4, mode="set")
        assert len(a.clique.vectors) == len(b.clique.vectors) == 4

    def test_budget_flag(self):
        res = search_clique((L6, L6), d=3, target_K=16, budget=1, mode="set")
        assert res.flag in ("budget", "target")
        assert check_clique(res.clique).ok

    def test_deterministic(self):
        a = search_clique((L3, L3), d=2, target_K=4)
        b = search_clique((L3, L3), d=2, target_K=4)
        assert a.clique.vectors == b.clique.vectors
        assert a.nodes_used == b.nodes_used

    def test_rejects_bad_target(self):
        with pytest.raises(ValueError):
            search_clique((L3, L3), d=2, target_K=0)

    @given(st.integers(3, 5), st.integers(0, 1))
    @settings(max_examples=10, deadline=None)
    def test_search_output_always_checks(self, n, extra_layer):
        graphs = (loop_graph(n, 2),) * (2 if extra_layer else 1)
        res = search_clique(graphs, d=2, target_K=4)
        assert check_clique(res.clique).ok


class TestConditionIIPhase:
    def test_exact_product_over_layers(self):
        s = (vec(2, 1, 1, 0), vec(3, 1, 0, 0))
        c = (vec(2, 1, 0, 0), vec(3, 2, 0, 0))
        # w_2^{1} * w_3^{2}: half turn plus two thirds = 1/6 turn mod 1
        ph = condition_ii_phase(s, c)
        assert (ph.k / ph.L) % 1 == pytest.approx(1 / 6)

    def test_zero_vector_gives_one(self):
        s = (vec(2, 1, 1, 0),)
        c = (ModVec.zeros(2, 3),)
        assert condition_ii_phase(s, c) == PHASE_ONE
