from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qhk.params import ModelParams, ParameterMismatch
from qhk.tensor import (LabelError, LabeledTensor, alt_group, contract_pair, e_vector, interior, permute,
                        sym_group, t_form, t_vector, tensor, tsum, wedge, form_grade)

P = ModelParams(2)
BASIS = list(P.tangent_basis())

coef = st.fractions(min_value=-9, max_value=9, max_denominator=9)


@st.composite
def vectors(draw, terms=3):
    picks = draw(st.lists(st.tuples(st.sampled_from(BASIS), coef), min_size=1, max_size=terms))
    return tsum((t_vector(P, a, s, c) for (a, s), c in picks), t_form(P, 1))


@st.composite
def forms(draw, grade):
    out = t_form(P, grade)
    for _ in range(draw(st.integers(1, 2))):
        vs = [draw(vectors(2)) for _ in range(grade)]
        w = vs[0]
        for v in vs[1:]:
            w = wedge(w, v)
        out = out + w
    return out


def test_wedge_is_unnormalised():
    x, y = t_vector(P, 1, 1), t_vector(P, 2, 1)
    assert wedge(x, y).full() == tensor(x, y) - tensor(y, x)


def test_grades_and_zero():
    assert form_grade(t_form(P, 3)) == 3
    x = t_vector(P, 1, 2)
    assert wedge(x, x).is_zero()


@settings(max_examples=30, deadline=None)
@given(forms(1), forms(2), forms(1))
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=30, deadline=None)
@given(forms(2), forms(1))
def test_graded_commutativity(a, b):
    assert wedge(a, b) == wedge(b, a)
    assert wedge(b, wedge(b, b)).is_zero()


@settings(max_examples=30, deadline=None)
@given(vectors(), vectors(), forms(3))
def test_interior_anticommutes(x, y, alpha):
    assert interior(x, interior(y, alpha)) == -interior(y, interior(x, alpha))


@settings(max_examples=30, deadline=None)
@given(vectors(), forms(1), forms(2))
def test_interior_is_a_derivation(x, a, b):
    assert interior(x, wedge(a, b)) == wedge(interior(x, a), b) - wedge(a, interior(x, b))


@settings(max_examples=30, deadline=None)
@given(forms(3))
def test_text_roundtrip(a):
    assert LabeledTensor.from_text(a.to_text()) == a


def test_alt_and_sym_are_projectors():
    t = tensor(e_vector(P, 1), e_vector(P, 2, Fraction(3, 2)), e_vector(P, 3))
    a = alt_group(t, [0, 1, 2])
    assert alt_group(a.full(), [0, 1, 2]) == a
    s = sym_group(t, [0, 1, 2])
    assert sym_group(s.full(), [0, 1, 2]) == s
    assert alt_group(s.full(), [0, 1]).is_zero()


def test_contract_pair_is_omega():
    # omega_E(e_1, e_3) = 1 at n = 2
    t = tensor(e_vector(P, 1), e_vector(P, 3))
    assert contract_pair(t, 0, 1).coeff(()) == 1
    assert contract_pair(permute(t, [1, 0]), 0, 1).coeff(()) == -1


def test_mixing_parameters_fails():
    with pytest.raises(ParameterMismatch):
        t_vector(P, 1, 1) + t_vector(ModelParams(3), 1, 1)


def test_bad_labels_and_indices():
    with pytest.raises(LabelError):
        LabeledTensor(P, ("E", "Q"))
    with pytest.raises(ValueError):
        LabeledTensor(P, ("E",), (), {(5,): 1})
    with pytest.raises(LabelError):
        t_vector(P, 1, 1) + e_vector(P, 1)
