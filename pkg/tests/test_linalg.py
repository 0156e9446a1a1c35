import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holoprime.algebra import Form, Rational, blades, wedge
from holoprime.linalg import (
    BasisSolver,
    QuotientSpace,
    Subspace,
    contains,
    dim,
    greedy_basis,
    induced_quotient_map,
    orthogonal_complement,
    product_chain,
    product_space,
    saturation_degree,
    span,
    subspace_intersect,
    subspace_sum,
)
from oracles import span_rank
from strategies import forms


def w(*idx, n=4):
    return Form(n, len(idx), {idx: 1})


@st.composite
def subspaces(draw, n, k, max_gens=5):
    gens = draw(st.lists(forms(n=n, k=k, max_terms=4, coeff=3), max_size=max_gens))
    return span(gens, n=n, k=k)


def test_span_and_dim():
    s = span([w(1, 2), w(3, 4), w(1, 2) + w(3, 4)])
    assert s.dim == 2
    assert dim(s) == 2
    assert contains(s, w(1, 2) - w(3, 4))
    assert not contains(s, w(1, 3))


def test_canonical_equality():
    a = span([w(1, 2) + w(3, 4), w(1, 2) - w(3, 4)])
    b = span([w(1, 2), w(3, 4)])
    assert a == b and hash(a) == hash(b)


def test_zero_and_full():
    assert Subspace.zero(5, 2).dim == 0
    assert Subspace.full(5, 2).dim == 10
    assert Subspace.full(5, 2).is_full()
    assert orthogonal_complement(Subspace.full(5, 2)).dim == 0


def test_projection_of_known_vector():
    s = span([w(1, 2) + w(3, 4)])
    assert s.project(w(1, 2)) == Rational(1, 2) * (w(1, 2) + w(3, 4))


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("HOLOPRIME_MAX_DIM", "5")
    with pytest.raises(ValueError):
        Subspace.full(6, 1)
    assert Subspace.full(5, 1).dim == 5


@given(st.data())
@settings(max_examples=80)
def test_sum_intersection_dimension_formula(data):
    n = data.draw(st.integers(3, 6))
    k = data.draw(st.integers(1, 2))
    a, b = data.draw(subspaces(n, k)), data.draw(subspaces(n, k))
    assert subspace_sum(a, b).dim + subspace_intersect(a, b).dim == a.dim + b.dim


@given(st.data())
@settings(max_examples=80)
def test_span_rank_matches_sympy(data):
    n = data.draw(st.integers(2, 6))
    k = data.draw(st.integers(1, n))
    gens = data.draw(st.lists(forms(n=n, k=k, max_terms=4), max_size=6))
    assert span(gens, n=n, k=k).dim == span_rank(gens, n, k)


@given(st.data())
@settings(max_examples=80)
def test_complement_involution(data):
    n = data.draw(st.integers(2, 6))
    a = data.draw(subspaces(n, 2 if n >= 2 else 1))
    c = a.complement()
    assert c.complement() == a
    assert c.dim + a.dim == a.ambient_dim
    assert all(not a.project(f) for f in c.basis())


@given(st.data())
@settings(max_examples=60)
def test_projection_idempotent_and_orthogonal(data):
    n = data.draw(st.integers(3, 5))
    a = data.draw(subspaces(n, 2))
    x = data.draw(forms(n=n, k=2))
    p = a.project(x)
    assert a.project(p) == p
    assert not a.complement().project(p)
    assert p in a


@given(st.data())
@settings(max_examples=40)
def test_product_associativity(data):
    n = data.draw(st.integers(4, 6))
    a = data.draw(subspaces(n, 2, max_gens=3))
    assert product_space(product_space(a, 1), 1) == product_space(a, 2)


def test_product_space_relation_example():
    e = span([w(1, 2)])
    assert product_space(e, 1).dim == 2
    with pytest.raises(ValueError):
        product_space(e, 3)


def test_saturation_degree():
    asd = span([w(1, 2) - w(3, 4), w(1, 3) + w(2, 4), w(1, 4) - w(2, 3)])
    assert saturation_degree(asd) == 0
    e = span([w(1, 2, n=5)])
    assert [s.dim for s in product_chain(e)] == [1, 3, 3, 1]
    assert saturation_degree(e) == 2
    assert saturation_degree(Subspace.full(5, 2)) == 0
    with pytest.raises(ValueError):
        product_chain(Subspace.zero(4, 2))


def test_saturation_degree_invariant_examples():
    from holoprime.g2 import g2_build_tables
    from holoprime.spin7 import spin7_build_tables

    assert saturation_degree(g2_build_tables()[(4, 1)]) == 1
    # L2_21 . L1 is already all of L3 on R^8
    assert saturation_degree(spin7_build_tables()[(2, 21)]) == 0


def test_product_contains_generators():
    e = span([w(1, 2) + w(3, 4), w(1, 3)])
    p = product_space(e, 1)
    assert all(wedge(b, w(i)) in p for b in e.basis() for i in range(1, 5))
    assert product_space(Subspace.full(4, 1), 2) == Subspace.full(4, 3)


def test_induced_quotient_map():
    lam = w(1)
    e = span([w(1, 2)])
    src = QuotientSpace(e)
    tgt = QuotientSpace(product_space(e, 1))
    m = induced_quotient_map(lam, src, tgt)
    assert m.shape == (tgt.dim, src.dim)
    # on the complement basis w13, w23, w14, w24, w34 only w34 survives: w1 ^ w34 = w134
    assert m.rank() == 1
    assert m.nullity() == 4
    with pytest.raises(ValueError):
        induced_quotient_map(w(3), QuotientSpace(e), QuotientSpace(Subspace.zero(4, 3)))


def test_induced_map_degenerate_cases():
    from holoprime.operators import mult_map

    src, tgt = QuotientSpace(Subspace.zero(4, 2)), QuotientSpace(Subspace.zero(4, 3))
    assert induced_quotient_map(Form.zero(4, 1), src, tgt).rank() == 0
    lam = w(1) + 2 * w(3)
    assert induced_quotient_map(lam, src, tgt).dense() == mult_map(lam, 2).dense()


def test_basis_solver_and_greedy_basis():
    basis = [w(1, 2) + w(3, 4), w(1, 2) - w(3, 4)]
    solve = BasisSolver(basis)
    assert solve(w(1, 2)) == [Rational(1, 2), Rational(1, 2)]
    with pytest.raises(ValueError):
        solve(w(1, 3))
    with pytest.raises(ValueError):
        BasisSolver(basis + [w(1, 2)])
    assert greedy_basis([w(1, 2), 2 * w(1, 2), w(3, 4)]) == [w(1, 2), w(3, 4)]


def test_coordinates():
    s = span([w(1, 2), w(3, 4)])
    x = 3 * w(1, 2) - w(3, 4)
    c = s.coordinates(x)
    assert sum((f * a for f, a in zip(s.basis(), c)), Form.zero(4, 2)) == x
    with pytest.raises(ValueError):
        s.coordinates(w(1, 3))
