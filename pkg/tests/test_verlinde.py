import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heistqft.coloring import count_colorings
from heistqft.corpus import corpus_graph
from heistqft.errors import EmptyCycle
from heistqft.heisenberg import ColoringBasis, trace
from heistqft.ribbon import CycleClass, MeridianSpace, cycle_basis, cycle_from_edges, meridian_from_edges
from heistqft.verlinde import (
    QuadraticForm,
    all_quadratic_forms,
    arf,
    boundary_signs,
    brick_dims_mod0,
    brick_dims_mod2,
    closed_trace,
    gamma,
    graph_verlinde_number,
    spectral_brick_dims,
    standard_gram,
    verify_decomposition_props,
    verlinde_number,
)

from oracles import float_verlinde


def test_closed_genus_two_anchors():
    assert [verlinde_number(2, 0, k) for k in (1, 2, 4)] == [4, 10, 35]


@pytest.mark.parametrize("g,n", [(0, 3), (1, 1), (2, 0), (2, 2), (3, 0)])
@pytest.mark.parametrize("k", range(0, 7))
def test_verlinde_matches_float_sum(g, n, k):
    for colors in itertools.product(range(k + 1), repeat=n):
        assert verlinde_number(g, n, k, colors) == round(float_verlinde(g, n, k, colors))


def test_verlinde_rejects_wrong_color_count():
    with pytest.raises(ValueError):
        verlinde_number(1, 2, 2, [0])


@pytest.mark.parametrize("k", range(0, 6))
def test_graph_count_is_verlinde(small_name, k):
    g = corpus_graph(small_name, k)
    assert count_colorings(g) == graph_verlinde_number(g)


def test_gamma():
    assert gamma([]) == 1
    assert gamma([2, 0, 2]) == 1
    assert gamma([2, 4, 0]) == -1
    assert gamma([1, 1]) == 0


def test_closed_trace():
    assert closed_trace(2, 4, []) == 3
    assert closed_trace(2, 3, []) == 0
    assert closed_trace(1, 2, [2]) == -1
    assert closed_trace(0, 2, [2, 2, 2]) == Fraction(-1, 2)
    assert closed_trace(1, 3, [1], mu_boundary=True, mu_signs=[1]) == -verlinde_number(1, 1, 3, [1])


def test_boundary_signs_finds_the_boundary_meridians():
    g = corpus_graph("theta_legs_odd", 3)
    space = MeridianSpace(g)
    leg = g.boundary_edges[0]
    assert boundary_signs(space, space.make(1 << leg)) == 1 << leg
    interior = next(m for m in space.basis() if not space.in_boundary_subgroup(m))
    assert boundary_signs(space, interior) is None


def test_brick_anchors():
    assert brick_dims_mod2(2, 0, 2) == (1, 0)
    assert brick_dims_mod0(2, 0, 4) == (5, 2)
    d_plus, d_minus = brick_dims_mod2(2, 0, 2)
    assert 10 * d_plus + 6 * d_minus == verlinde_number(2, 0, 2)
    d0, d1 = brick_dims_mod0(2, 0, 4)
    assert d0 + 15 * d1 == verlinde_number(2, 0, 4)


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("k", [2, 4, 6, 8, 10])
def test_brick_dims_total(g, k):
    d = verlinde_number(g, 0, k)
    if k % 4:
        a, b = brick_dims_mod2(g, 0, k)
        plus = 2 ** (g - 1) * (2**g + 1)
        assert plus * a + (4**g - plus) * b == d
    else:
        a, b = brick_dims_mod0(g, 0, k)
        assert a + (4**g - 1) * b == d


def test_brick_level_checks():
    with pytest.raises(ValueError):
        brick_dims_mod0(1, 0, 2)
    with pytest.raises(ValueError):
        brick_dims_mod2(1, 0, 4)


@pytest.mark.parametrize("g,plus", [(1, 3), (2, 10), (3, 36)])
def test_arf_census(g, plus):
    forms = all_quadratic_forms(standard_gram(g))
    values = [arf(q) for q in forms]
    assert values.count(0) == plus and values.count(1) == 4**g - plus


@given(st.integers(1, 3), st.data())
def test_forms_refine_the_pairing(g, data):
    gram = standard_gram(g)
    q = QuadraticForm(gram, data.draw(st.integers(0, 4**g - 1)))
    x, y = data.draw(st.integers(0, 4**g - 1)), data.draw(st.integers(0, 4**g - 1))
    assert q(x ^ y) == (q(x) + q(y) + q.pairing(x, y)) % 2
    assert q(0) == 0


def test_degenerate_form_has_no_arf():
    with pytest.raises(ValueError):
        arf(QuadraticForm((0,), 1))


@pytest.mark.parametrize("k,expect", [(2, {0: 1, 1: 0}), (4, {0: 5, 1: 2})])
def test_theta_spectral_tables(k, expect):
    table = spectral_brick_dims(corpus_graph("theta", k))
    assert table.consistent and table.total == verlinde_number(2, 0, k)
    assert len(table.dims) == 16
    for label, cls in table.classes.items():
        assert table.dims[label] == expect[cls]
    assert sorted(table.classes.values()).count(0) == (10 if k == 2 else 1)


@pytest.mark.parametrize("k", [0, 2, 4, 6, 8])
def test_spectral_dims_match_closed_forms(small_name, k):
    table = spectral_brick_dims(corpus_graph(small_name, k))
    assert table.consistent, table.to_json()


@pytest.mark.parametrize("k", [2, 4])
def test_spectral_dims_from_matrix_traces(k):
    g = corpus_graph("tetrahedron", k)
    basis = ColoringBasis(g)
    table = spectral_brick_dims(g, trace_fn=lambda graph, e: trace(basis, e))
    assert table.consistent and table == spectral_brick_dims(g)


def test_spectral_refuses_odd_levels():
    with pytest.raises(ValueError):
        spectral_brick_dims(corpus_graph("theta", 3))


@pytest.mark.parametrize("k", [0, 2, 4])
def test_decomposition_props_on_basis_pairs(small_name, k):
    g = corpus_graph(small_name, k)
    space = MeridianSpace(g)
    for lam in cycle_basis(g):
        for mu in [space.zero()] + space.basis():
            rep = verify_decomposition_props(g, lam, mu)
            assert rep.passed, rep.to_json()


def test_decomposition_props_refusals(theta2):
    space = MeridianSpace(theta2)
    with pytest.raises(EmptyCycle):
        verify_decomposition_props(theta2, CycleClass(0, theta2.edge_ids), space.zero())
    g = corpus_graph("theta", 3)
    with pytest.raises(ValueError):
        verify_decomposition_props(g, cycle_basis(g)[0], MeridianSpace(g).zero())


@pytest.mark.parametrize("k,cases,value", [(2, 9, -8), (4, 25, -27)])
def test_two_circle_instance(k, cases, value):
    g = corpus_graph("two_circles", k)
    lam = cycle_from_edges(g, [4, 5, 7, 8, 9])
    mu = meridian_from_edges(g, [6, 8, 15])
    rep = verify_decomposition_props(g, lam, mu)
    assert (rep.g1, rep.g2, rep.m, rep.m_prime) == (2, 2, 2, 1)
    assert rep.fixed_cases == cases and rep.fixed_passed
    assert rep.signed_lhs == rep.signed_rhs == value
