import functools
import itertools

import pytest
from hypothesis import given, strategies as st

from heistqft.corpus import corpus_graph
from heistqft.cyclo import QMonomial, make_ring
from heistqft.errors import ParseError, ValidationError
from heistqft.heisenberg import (
    ColoringBasis,
    HeisenbergElement,
    RepMatrix,
    compose,
    longitude_cocycle,
    make_element,
    parse_element,
    rep_matrix,
    rho_u,
    symplectic_pairing,
    trace,
    trace_fixed,
    verify_cocycle,
    verify_external_edge_condition,
    verify_involution,
)
from heistqft.ribbon import MeridianSpace, all_cycle_classes, cycle_basis, longitude_intersection
from heistqft.skein import delta_monomial
from heistqft.verlinde import element_closed_trace

from conftest import SMALL


def _elements(graph, space, with_m=False):
    lams = all_cycle_classes(graph)
    mus = [space.make(0)] + space.basis()
    ms = range(4) if with_m else [0]
    return [HeisenbergElement(m, mu, lam) for m in ms for mu in mus for lam in lams]


@pytest.mark.parametrize("k", range(0, 7))
def test_rho_is_a_fourth_root_of_unity(k):
    rho = rho_u(k)
    assert (rho**4).value() == make_ring(k).one()
    if k % 2 == 0:
        assert rho.value() == make_ring(k).one() * (-1) ** (k // 2)


def test_parse_element_roundtrip(theta2):
    g = parse_element(theta2, "u^3;mu=e1;lambda=f1+f2")
    assert g.m == 3 and g.lam.support == (1, 2)
    assert parse_element(theta2, g.literal()) == g
    assert parse_element(theta2, "") == make_element(MeridianSpace(theta2))
    assert parse_element(theta2, "u").m == 1
    assert parse_element(theta2, "u^5").m == 1


@pytest.mark.parametrize("text", ["u^x", "nu=e1", "mu"])
def test_parse_element_rejects(theta2, text):
    with pytest.raises(ParseError):
        parse_element(theta2, text)


def test_parse_element_rejects_non_cycles(theta2):
    with pytest.raises(ValidationError):
        parse_element(theta2, "lambda=f1")


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_matrices_are_monomial_and_square_to_scalars(small_name, k):
    g = corpus_graph(small_name, k)
    basis = ColoringBasis(g)
    space = MeridianSpace(g)
    ident = RepMatrix.identity(k, basis.dim)
    for lam in cycle_basis(g):
        mat = rep_matrix(basis, HeisenbergElement(0, space.make(0), lam))
        assert mat.is_permutation_like()
        assert mat @ mat == ident
    for mu in space.basis():
        mat = rep_matrix(basis, HeisenbergElement(0, mu, all_cycle_classes(g)[0]))
        assert mat @ mat == ident
    u = rep_matrix(basis, HeisenbergElement(1, space.make(0), all_cycle_classes(g)[0]))
    assert u @ u @ u @ u == ident


@pytest.mark.parametrize("k", [1, 2, 3])
def test_compose_matches_matrix_product(small_name, k):
    g = corpus_graph(small_name, k)
    basis = ColoringBasis(g)
    space = MeridianSpace(g)
    elems = _elements(g, space)
    mats = {e: rep_matrix(basis, e) for e in elems}
    for a, b in itertools.product(elems[:24], repeat=2):
        assert mats[a] @ mats[b] == rep_matrix(basis, compose(a, b))


@pytest.mark.parametrize("k", [0, 2, 4, 6])
def test_even_level_commutation_sign(small_name, k):
    g = corpus_graph(small_name, k)
    space = MeridianSpace(g)
    basis = ColoringBasis(g) if k <= 2 else None
    elems = _elements(g, space)[:20]
    for a, b in itertools.product(elems, repeat=2):
        ab = compose(a, b)
        sign = (k // 2) * symplectic_pairing(a, b)
        assert ab.mu == (a.mu + b.mu) and ab.lam == (a.lam + b.lam)
        assert (rho_u(k) ** ab.m).value() == make_ring(k).one() * (-1) ** (sign % 2)
        if basis is not None:
            lhs = rep_matrix(basis, a) @ rep_matrix(basis, b)
            rhs = rep_matrix(basis, HeisenbergElement(0, ab.mu, ab.lam)).scaled(
                QMonomial.sign(make_ring(k), sign)
            )
            assert lhs == rhs


@given(st.sampled_from(SMALL), st.sampled_from([1, 2, 3]), st.data())
def test_compose_is_associative(name, k, data):
    g = corpus_graph(name, k)
    elems = _elements(g, MeridianSpace(g), with_m=True)
    a, b, c = (data.draw(st.sampled_from(elems)) for _ in range(3))
    left, right = compose(compose(a, b), c), compose(a, compose(b, c))
    assert (left.mu, left.lam) == (right.mu, right.lam)
    # rho is only determined as a represented scalar: at even k it is a sign
    assert (rho_u(k) ** left.m).value() == (rho_u(k) ** right.m).value()


@pytest.mark.parametrize("k", range(0, 6))
def test_both_trace_paths_match_the_closed_form(small_name, k):
    g = corpus_graph(small_name, k)
    basis = ColoringBasis(g)
    space = MeridianSpace(g)
    for e in _elements(g, space, with_m=True)[::3]:
        fast = trace_fixed(g, e)
        assert fast == trace(basis, e)
        assert fast == element_closed_trace(e, space)


def test_boundary_meridian_trace_is_signed_count():
    g = corpus_graph("theta_legs_odd", 3)
    space = MeridianSpace(g)
    e = make_element(space, 0, [g.edge_ids[g.boundary_edges[0]]], [])
    assert space.in_boundary_subgroup(e.mu)
    val = trace_fixed(g, e)
    assert val == element_closed_trace(e, space)
    assert abs(abs(val.complex_value()) - ColoringBasis(g).dim) < 1e-9


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("k", [0, 2, 4, 6])
def test_conditions_hold_on_corpus(name, k):
    g = corpus_graph(name, k)
    for check in (verify_external_edge_condition, verify_cocycle, verify_involution):
        rep = check(g)
        assert rep.passed, rep.witness
    # odd boundary colors leave no fixed colorings to test
    assert verify_involution(g).checked > 0


@pytest.mark.parametrize("k", [1, 3, 5])
def test_odd_levels(small_name, k):
    g = corpus_graph(small_name, k)
    assert verify_external_edge_condition(g).notes
    assert verify_cocycle(g).passed and verify_involution(g).passed
    e = HeisenbergElement(0, MeridianSpace(g).make(0), cycle_basis(g)[0])
    assert trace_fixed(g, e).is_zero()


def _corrupted(graph, lam, j):
    val = delta_monomial(graph, lam, j)
    first = graph.edge_index[lam.support[0]]
    return -val if j[first] == graph.k // 2 else val


def test_corrupted_delta_is_caught_with_a_witness():
    g = corpus_graph("tetrahedron", 2)
    ext = verify_external_edge_condition(g, delta=_corrupted)
    assert not ext.passed and ext.witness["coloring"]
    coc = verify_cocycle(g, delta=lambda gr, lam, j: delta_monomial(gr, lam, j) * QMonomial(make_ring(2), 2 * sum(j)))
    assert not coc.passed and "ratio" in coc.witness


def test_nonplanar_cocycle_is_central():
    g = corpus_graph("chord_across", 2)
    basis = cycle_basis(g)
    crossing = [(a, b) for a, b in itertools.combinations(basis, 2) if longitude_intersection(g, a, b)]
    assert crossing
    rep = verify_cocycle(g)
    assert rep.passed and rep.notes
    for a, b in crossing:
        assert longitude_cocycle(g, a, b) in (1, 3)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_reversed_traversal_and_rebasing_keep_traces(small_name, k):
    g = corpus_graph(small_name, k)
    rev = functools.partial(delta_monomial, reverse=True)
    space, alt = MeridianSpace(g), MeridianSpace(g, descending=False)
    assert verify_cocycle(g, delta=rev).passed and verify_involution(g, delta=rev).passed
    for e in _elements(g, space)[::2]:
        e2 = HeisenbergElement(e.m, alt.make(e.mu.bits), e.lam)
        t = trace_fixed(g, e)
        assert t == trace_fixed(g, e, delta=rev) == trace_fixed(g, e2)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_rescaled_entries_are_fourth_roots(small_name, k):
    g = corpus_graph(small_name, k)
    basis = ColoringBasis(g)
    ring = make_ring(k)
    allowed = {ring.one(), -ring.one(), ring.a_power(k + 2), -ring.a_power(k + 2)}
    for lam in all_cycle_classes(g):
        if lam:
            mat = rep_matrix(basis, HeisenbergElement(0, MeridianSpace(g).make(0), lam)).rescaled(basis)
            assert mat.entry_values() <= allowed


def test_matrix_json_shape(theta2):
    mat = rep_matrix(ColoringBasis(theta2), parse_element(theta2, "lambda=f1+f2"))
    data = mat.to_json()
    assert data["dim"] == 10 and len(data["cols"]) == 10
    assert set(data["cols"][0]) == {"row", "val"}
