from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holoprime.algebra import (
    Form,
    Rational,
    blades,
    colex_index,
    embed,
    hodge_star,
    inner_product,
    shift,
    volume,
    wedge,
)
from holoprime.g2 import phi_form
from oracles import brute_star, brute_wedge, terms_of
from strategies import forms


def w(*idx, n=7):
    return Form(n, len(idx), {idx: 1})


def test_colex_positions_do_not_depend_on_n():
    assert [colex_index(b) for b in blades(4, 2)] == list(range(6))
    assert blades(4, 2) == ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4))
    for b in blades(5, 3):
        assert blades(7, 3)[colex_index(b)] == b


def test_rationals_are_lowest_terms():
    x = Rational(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)
    assert Rational(0).denominator == 1
    assert Form(3, 1, {(1,): Fraction(2, 4)}).coefficient((1,)) == Rational(1, 2)


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        Form(3, 1, {(1,): 0.5})


def test_blade_validation():
    with pytest.raises(ValueError):
        Form(3, 2, {(2, 1): 1})
    with pytest.raises(ValueError):
        Form(3, 2, {(1, 4): 1})


def test_wedge_examples():
    assert wedge(w(1), w(2)) == w(1, 2)
    assert wedge(w(2), w(1)) == -w(1, 2)
    assert not wedge(w(1, 2), w(1, 2))
    phi = phi_form()
    assert wedge(phi, hodge_star(phi)) == 7 * volume(7)


def test_phi_wedge_star_phi_by_brute_force():
    phi = phi_form()
    got = brute_wedge(terms_of(phi), brute_star(7, terms_of(phi)))
    assert got == {(1, 2, 3, 4, 5, 6, 7): 7}


def test_wedge_dimension_mismatch():
    with pytest.raises(ValueError):
        wedge(w(1, n=3), w(1, n=4))


def test_star_examples():
    assert hodge_star(Form.scalar(5)) == volume(5)
    assert hodge_star(w(1, 2, 3)) == w(4, 5, 6, 7)
    assert hodge_star(volume(4)) == Form.scalar(4)


def test_inner_product_examples():
    assert inner_product(w(1, 2), w(1, 2)) == 1
    assert inner_product(w(1, 2), w(3, 4)) == 0
    assert inner_product(phi_form(), phi_form()) == 7
    with pytest.raises(ValueError):
        inner_product(w(1), w(1, 2))


def test_basis_sorts_indices_with_sign():
    assert Form.basis(4, (2, 1)) == -w(1, 2, n=4)
    assert not Form.basis(4, (1, 1))


def test_embed_and_shift():
    a = w(1, 2, n=3)
    assert embed(a, 5) == w(1, 2, n=5)
    assert shift(a, 5, 2) == w(3, 4, n=5)
    with pytest.raises(ValueError):
        embed(a, 2)


def test_degree_above_n_is_zero():
    assert not wedge(w(1, 2, n=3), w(1, 3, n=3))
    assert wedge(w(1, 2, n=3), w(1, 3, n=3)).k == 4


@given(st.data())
@settings(max_examples=200)
def test_wedge_matches_brute_force(data):
    n = data.draw(st.integers(1, 7))
    a = data.draw(forms(n=n))
    b = data.draw(forms(n=n))
    got = wedge(a, b)
    want = brute_wedge(terms_of(a), terms_of(b)) if a.k + b.k <= n else {}
    assert terms_of(got) == want


@given(st.data())
@settings(max_examples=200)
def test_star_matches_brute_force(data):
    a = data.draw(forms(max_n=8))
    assert terms_of(hodge_star(a)) == brute_star(a.n, terms_of(a))


@given(st.data())
@settings(max_examples=200)
def test_graded_commutativity(data):
    n = data.draw(st.integers(1, 7))
    a, b = data.draw(forms(n=n)), data.draw(forms(n=n))
    assert wedge(a, b) == (-1) ** (a.k * b.k) * wedge(b, a)


@given(st.data())
@settings(max_examples=100)
def test_wedge_associative(data):
    n = data.draw(st.integers(1, 6))
    a, b, c = (data.draw(forms(n=n, max_terms=3)) for _ in range(3))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(forms(max_n=9, max_terms=8))
@settings(max_examples=500)
def test_star_involution_sign(a):
    n, k = a.n, a.k
    assert hodge_star(hodge_star(a)) == (-1) ** (k * (n - k)) * a


@given(st.data())
@settings(max_examples=200)
def test_metric_star_compatibility(data):
    n = data.draw(st.integers(1, 7))
    k = data.draw(st.integers(0, n))
    a, b = data.draw(forms(n=n, k=k)), data.draw(forms(n=n, k=k))
    assert wedge(a, hodge_star(b)) == inner_product(a, b) * volume(n)


@given(forms(max_n=6))
def test_inner_product_positive(a):
    assert inner_product(a, a) > 0 or not a
