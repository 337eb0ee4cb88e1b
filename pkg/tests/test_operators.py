from fractions import Fraction
from pathlib import Path

import pytest

from qhk.field import OneFormField
from qhk.model import DomainElement, build_gamma0, build_gamma0_alpha0, domain_basis
from qhk.operators import (ck_operator, contract_omega_e4, contraction_trace, e_split, pipeline_he,
                           pipeline_hk, pipeline_s3h, wedge_trace)
from qhk.params import ModelParams
from qhk.tensor import DegreeError, t_form, t_vector, tensor, e_vector

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("pipeline", [pipeline_he, pipeline_hk, pipeline_s3h])
def test_pipeline_golden(n, pipeline):
    res = pipeline(build_gamma0_alpha0(ModelParams(n)))
    assert res.to_text() == (GOLDEN / f"{res.name.lower()}_n{n}.txt").read_text()


def test_stage_signatures(p2):
    eta = build_gamma0_alpha0(p2)
    assert pipeline_he(eta).signatures()["HE"] == "HE"
    assert pipeline_hk(eta).signatures()["HK"] == "HEEE"
    sig = pipeline_s3h(eta).signatures()
    assert sig["d1"] == "HHHEEE" and sig["d2"] == "HHHE"


def test_traces_vanish_on_the_image(p2):
    for el in domain_basis(p2)[::11]:
        t = ck_operator(el)
        assert wedge_trace(t).is_zero()
        assert contraction_trace(t).is_zero()


def test_traces_do_not_vanish_before_the_operator(p2):
    eta = build_gamma0_alpha0(p2)
    assert wedge_trace(eta) or contraction_trace(eta)


def test_coefficient_override(p2):
    eta = build_gamma0_alpha0(p2)
    same = ck_operator(eta, (Fraction(4, 5), None, Fraction(1, 5)))
    assert same == ck_operator(eta)
    assert ck_operator(eta, (None, Fraction(1, 4), None)) != ck_operator(eta)


def test_operator_accepts_domain_elements(p2):
    el = DomainElement.from_field(build_gamma0_alpha0(p2))
    assert ck_operator(el) == ck_operator(build_gamma0_alpha0(p2))


def test_operator_is_linear(p2):
    a, b = domain_basis(p2)[3], domain_basis(p2)[50]
    assert ck_operator(a * 2 + b) == ck_operator(a) * 2 + ck_operator(b)


def test_operator_needs_four_vectors(p2):
    f = OneFormField.decomposable(build_gamma0(p2), t_form(p2, 3, {(1, 1, 2, 1, 3, 2): 1}))
    with pytest.raises(DegreeError):
        ck_operator(f)


def test_contract_omega_e4_is_symmetric_in_h(p2):
    a = t_form(p2, 4, {(1, 1, 1, 2, 3, 1, 4, 2): 1})
    out = contract_omega_e4(a)
    full = out.full()
    assert all(full.coeff((k[1], k[0]) + k[2:]) == v for k, v in full.entries.items())


@pytest.mark.parametrize("n", [2, 3])
def test_e_split_is_a_decomposition(n):
    p = ModelParams(n)
    e = [e_vector(p, a) for a in (1, 2, n + 1, n + 2)]
    t = (tensor(e[0], e[1], e[2]) - tensor(e[0], e[2], e[1])
         + (tensor(e[3], e[0], e[1]) - tensor(e[3], e[1], e[0])) * 3)
    parts = e_split(t, (0, 1, 2))
    assert parts["L3"] + parts["E"] + parts["K"] == t.full()
    for name, x in parts.items():
        again = e_split(x, (0, 1, 2))
        for other, y in again.items():
            assert (y == x.full()) if other == name else y.is_zero()


def test_pipeline_lookup(p2):
    res = pipeline_he(build_gamma0_alpha0(p2))
    assert res.final == res["HE"]
    with pytest.raises(KeyError):
        res["nope"]


def test_t_vector_field_is_not_a_domain_input(p2):
    with pytest.raises(DegreeError):
        ck_operator(OneFormField.decomposable(build_gamma0(p2), t_vector(p2, 1, 1)))
