from collections import Counter

import pytest
from hypothesis import given, strategies as st

from heistqft.coloring import (
    act_cycle,
    check_coloring,
    classify_edges,
    count_colorings,
    decompose,
    enumerate_colorings,
    expand_pattern,
    fixed_colorings,
    is_admissible,
    meridian_exponent,
    pattern_counts,
    search_count,
)
from heistqft.corpus import corpus_graph
from heistqft.errors import EmptyCycle
from heistqft.ribbon import MeridianSpace, all_cycle_classes, cycle_from_edges, meridian_from_edges

from oracles import admissible, brute_colorings


@given(st.integers(0, 8).flatmap(lambda k: st.tuples(st.just(k), st.integers(0, k), st.integers(0, k), st.integers(0, k))))
def test_admissibility_matches_definition(data):
    k, a, b, c = data
    assert is_admissible((a, b, c), k) == admissible(a, b, c, k)
    assert is_admissible((a, b, c), k) == is_admissible((c, a, b), k)


@pytest.mark.parametrize("k", range(0, 5))
def test_enumeration_matches_brute_force(small_name, k):
    g = corpus_graph(small_name, k)
    brute = brute_colorings(g)
    assert enumerate_colorings(g) == sorted(brute)
    assert count_colorings(g) == len(brute) == search_count(g)
    assert all(check_coloring(g, j) for j in brute)


# frozen from the brute-force enumeration above and the Verlinde formula
COUNTS = {
    "theta": [1, 4, 10, 20, 35, 56, 84],
    "tetrahedron": [1, 8, 36, 120, 329, 784, 1680],
    "loop_leg": [1, 2, 1, 2, 3, 4, 5],
    "theta_legs_even": [1, 4, 6, 20, 45, 84, 140],
    "two_circles": [1, 32, 528, 14400, 165969, 1207360, 6496512],
}


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_frozen_counts(name):
    for k, want in enumerate(COUNTS[name][:5]):
        assert count_colorings(corpus_graph(name, k)) == want


@pytest.mark.parametrize("k", [2, 3, 4])
def test_pattern_counts_match_counter(small_name, k):
    g = corpus_graph(small_name, k)
    cols = enumerate_colorings(g)
    for lam in all_cycle_classes(g):
        keep = lam.bits | (1 << g.n_edges - 1)
        want = Counter(tuple(j[i] for i in range(g.n_edges) if keep >> i & 1) for j in cols)
        assert pattern_counts(g, keep) == dict(want)


def test_pattern_counts_on_large_graph_sum_to_count():
    g = corpus_graph("two_circles", 3)
    lam = cycle_from_edges(g, [4, 5, 7, 8, 9])
    pats = pattern_counts(g, lam.bits)
    assert sum(pats.values()) == 14400
    j = expand_pattern(g, lam.bits, next(iter(pats)))
    assert len(j) == g.n_edges


def test_fixed_edges_and_conflicts():
    g = corpus_graph("loop_leg", 2)
    leg = g.edge_index[2]
    assert enumerate_colorings(g, {leg: 0}) == []
    assert count_colorings(g, {leg: 2}) == 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_cycle_action_is_a_free_involution_on_colorings(small_name, k):
    g = corpus_graph(small_name, k)
    cols = set(enumerate_colorings(g))
    for lam in all_cycle_classes(g):
        for j in cols:
            lj = act_cycle(lam, j, k)
            assert lj in cols
            assert act_cycle(lam, lj, k) == j
        fixed = fixed_colorings(g, lam)
        if lam:
            assert fixed == sorted(j for j in cols if act_cycle(lam, j, k) == j)
            if k % 2:
                assert fixed == []


def test_meridian_exponent_parity_is_class_invariant():
    g = corpus_graph("two_circles", 2)
    space = MeridianSpace(g)
    for j in enumerate_colorings(g)[:50]:
        for rel in space.relations:
            for bits in (0b101, 0b1100000):
                a = space.make(bits)
                b = space.make(bits ^ rel)
                assert meridian_exponent(a, j, use_rep=True) % 2 == meridian_exponent(b, j, use_rep=True) % 2


def test_classification_of_the_two_circle_example():
    g = corpus_graph("two_circles", 2)
    lam = cycle_from_edges(g, [4, 5, 7, 8, 9])
    cls = classify_edges(g, lam)
    assert g.edges_of(cls.external) == (1, 10, 11)
    assert g.edges_of(cls.internal) == (6,)
    with pytest.raises(EmptyCycle):
        classify_edges(g, cycle_from_edges(g, []))


def test_decomposition_of_the_two_circle_example():
    g = corpus_graph("two_circles", 2)
    lam = cycle_from_edges(g, [4, 5, 7, 8, 9])
    mu = meridian_from_edges(g, [6, 8, 15])
    dec = decompose(g, lam, mu)
    assert dec.e_u_lambda == (1,)
    assert dec.e_t_lambda == (10, 11)
    assert dec.e_u_complement == (2, 3)
    assert dec.mu_lambda == (15,)
    assert len(dec.mu_cut_edges) == 2
    assert (dec.n1, dec.n2, dec.m, dec.m_prime) == (1, 2, 2, 1)
    assert g.formal_genus() == dec.g1 + dec.g2 + dec.m - 1


@pytest.mark.parametrize("name", ["theta", "dumbbell", "tetrahedron", "theta_legs_even", "two_circles", "chord_across"])
def test_decomposition_genus_identity(name):
    g = corpus_graph(name, 2)
    space = MeridianSpace(g)
    for lam in all_cycle_classes(g):
        if not lam:
            continue
        for mu in [space.zero()] + space.basis():
            dec = decompose(g, lam, mu)
            assert g.formal_genus() == dec.g1 + dec.g2 + dec.m - 1
            assert dec.gamma_lambda.n_boundary == dec.n1 + dec.m
