"""The operator, the pipelines and the splitting commute with Sp(E) x Sp(H)."""
import random
from fractions import Fraction

import pytest

from qhk.checks import random_domain_element
from qhk.decompose import decompose
from qhk.field import OneFormField
from qhk.model import DomainElement, build_gamma0_alpha0
from qhk.operators import ck_operator, pipeline_he, pipeline_hk, pipeline_s3h
from qhk.params import ModelParams
from qhk.tensor import apply_linear


def _identity(p):
    return {a: {a: 1} for a in p.e_indices()}


def swap(p):
    n, m = p.n, _identity(p)
    m.update({1: {2: 1}, 2: {1: 1}, n + 1: {n + 2: 1}, n + 2: {n + 1: 1}})
    return m


def transvection(p):
    m = _identity(p)
    m[p.n + 1] = {p.n + 1: 1, 1: 1}
    return m


def squeeze(p):
    m = _identity(p)
    m[1] = {1: 2}
    m[p.n + 1] = {p.n + 1: Fraction(1, 2)}
    return m


H_IDENTITY = {1: {1: 1}, 2: {2: 1}}
H_SHEAR = {1: {1: 1}, 2: {2: 1, 1: 2}}
H_SWAP = {1: {2: 1}, 2: {1: -1}}

ACTIONS = [(swap, H_IDENTITY), (transvection, H_SHEAR), (squeeze, H_SWAP)]


def act(t, p, e_map, h_map):
    return apply_linear(apply_linear(t, "E", e_map(p)), "H", h_map)


def act_field(f, p, e_map, h_map):
    return OneFormField.from_tensor(act(f.to_tensor(), p, e_map, h_map))


def act_domain(el, p, e_map, h_map):
    return DomainElement(act(el.coords, p, e_map, h_map))


@pytest.mark.parametrize("e_map,h_map", ACTIONS)
def test_operator_commutes_with_the_group(p2, e_map, h_map):
    rng = random.Random(1)
    el = random_domain_element(p2, rng)
    moved = act_domain(el, p2, e_map, h_map)
    assert ck_operator(moved) == act_field(ck_operator(el), p2, e_map, h_map)


@pytest.mark.parametrize("e_map,h_map", ACTIONS)
def test_pipelines_commute_with_the_group(p2, e_map, h_map):
    eta = build_gamma0_alpha0(p2)
    moved = act_field(eta, p2, e_map, h_map)
    for pipe, stage in ((pipeline_he, "HE"), (pipeline_hk, "HK"), (pipeline_s3h, "d2")):
        assert pipe(moved)[stage] == act(pipe(eta)[stage], p2, e_map, h_map)


@pytest.mark.parametrize("e_map,h_map", ACTIONS)
def test_decomposition_commutes_with_the_group(e_map, h_map):
    p = ModelParams(3)
    el = random_domain_element(p, random.Random(2), terms=8)
    moved = decompose(act_domain(el, p, e_map, h_map))
    for name, part in decompose(el).items():
        assert moved[name] == act_domain(part, p, e_map, h_map)


def test_non_symplectic_map_is_not_a_symmetry(p2):
    def stretch(p):
        m = _identity(p)
        m[1] = {1: 2}
        return m

    eta = build_gamma0_alpha0(p2)
    moved = act_field(eta, p2, stretch, H_IDENTITY)
    assert ck_operator(moved) != act_field(ck_operator(eta), p2, stretch, H_IDENTITY)
