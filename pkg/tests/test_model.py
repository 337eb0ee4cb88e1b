from fractions import Fraction
from math import comb

import pytest

from qhk.field import OneFormField
from qhk.model import (DomainElement, DomainError, build_alpha0, build_gamma0, build_gamma0_alpha0,
                       build_j_triple, build_omega, domain_basis, domain_basis_element, domain_dimension,
                       embed_preimage, embed_s2h, image_rank, s2h_basis)
from qhk.params import ModelParams
from qhk.symplectic import omega_e_bivector, primitive_basis
from qhk.tensor import Group, LabeledTensor, t_form, wedge

ROTATIONS = [
    [[Fraction(3, 5), Fraction(4, 5), 0], [Fraction(-4, 5), Fraction(3, 5), 0], [0, 0, 1]],
    [[1, 0, 0], [0, Fraction(5, 13), Fraction(12, 13)], [0, Fraction(-12, 13), Fraction(5, 13)]],
]


def _e2(p, entries):
    return LabeledTensor(p, ("E", "E"), (Group("alt", ((0,), (1,))),), entries)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_quaternion_triple(n):
    t = build_j_triple(ModelParams(n))
    assert t.quaternion_failures() == []
    assert t.compatibility_failures() == []


@pytest.mark.parametrize("rot", ROTATIONS)
def test_omega_invariant_under_rotation(p2, rot):
    t = build_j_triple(p2)
    rotated = t.rotated(rot)
    assert rotated.quaternion_failures() == []
    assert build_omega(p2, rotated) == build_omega(p2)


def test_non_rotation_changes_omega(p2):
    t = build_j_triple(p2)
    scaled = t.rotated([[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert build_omega(p2, scaled) != build_omega(p2)


def test_omega_top_power_is_nonzero(p2):
    om = build_omega(p2)
    assert wedge(om, om)  # a nonzero multiple of the volume 8-vector


def test_alpha0_is_an_embedded_element(p2):
    u2 = s2h_basis(p2)[1]
    assert embed_s2h(u2, _e2(p2, {(1, 2): 1})) == build_alpha0(p2)


def test_embedding_refuses_traceful_beta(p2):
    with pytest.raises(DomainError):
        embed_s2h(s2h_basis(p2)[0], omega_e_bivector(p2))


def test_embedding_refuses_non_symmetric_s(p2):
    s = LabeledTensor(p2, ("H", "H"), (), {(1, 2): 1})
    with pytest.raises(DomainError):
        embed_s2h(s, _e2(p2, {(1, 2): 1}))


@pytest.mark.parametrize("n", [2, 3])
def test_embedding_is_injective(n):
    p = ModelParams(n)
    assert image_rank(p) == 3 * len(primitive_basis(p, 2))


def test_membership_rejects_outside_vectors(p2):
    a = t_form(p2, 4, {(1, 1, 1, 2, 2, 1, 2, 2): 1})
    with pytest.raises(DomainError):
        embed_preimage(a)


def test_domain_dimensions():
    assert domain_dimension(ModelParams(2)) == 120
    assert domain_dimension(ModelParams(3)) == 504
    assert domain_dimension(ModelParams(4)) == 4 * 4 * 3 * 27


def test_domain_basis_indexing(p2):
    basis = domain_basis(p2)
    assert len(basis) == 120
    for k in (0, 7, 59, 119):
        assert domain_basis_element(p2, k) == basis[k]


def test_field_roundtrip(p2):
    for el in domain_basis(p2)[::17]:
        assert DomainElement.from_field(el.field) == el


def test_gamma0_alpha0_is_in_the_domain(p3):
    el = DomainElement.from_field(build_gamma0_alpha0(p3))
    assert el.field == build_gamma0_alpha0(p3)


def test_field_outside_domain_is_rejected(p2):
    a = t_form(p2, 4, {(1, 1, 1, 2, 2, 1, 2, 2): 1})
    f = OneFormField.decomposable(build_gamma0(p2), a)
    with pytest.raises(DomainError):
        DomainElement.from_field(f)


def test_top_binomials_sanity():
    # dim Lambda^2_0 E at n = 2 is 5
    assert len(primitive_basis(ModelParams(2), 2)) == comb(4, 2) - 1
