from math import comb

import pytest

from qhk.params import ModelParams
from qhk.scalar import Scalar
from qhk.symplectic import (contract_omega_e_r, e_form, lefschetz_constant, omega_e_bivector,
                            pr_primitive, primitive_basis, trace_rank)
from qhk.tensor import DegreeError, wedge


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_trace_of_omega_is_n(n):
    assert contract_omega_e_r(omega_e_bivector(ModelParams(n))).coeff(()) == n


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_primitive_dimensions(n):
    p = ModelParams(n)
    assert comb(2 * n, 2) - trace_rank(p, 2) == 2 * n * n - n - 1
    assert comb(2 * n, 3) - trace_rank(p, 3) == comb(2 * n, 3) - 2 * n
    assert len(primitive_basis(p, 2)) == 2 * n * n - n - 1
    assert len(primitive_basis(p, 3)) == comb(2 * n, 3) - 2 * n


def test_lambda3_primitive_is_empty_at_n2(p2):
    assert primitive_basis(p2, 3) == ()


@pytest.mark.parametrize("n", [2, 3])
def test_projection_lands_in_kernel_and_is_idempotent(n):
    p = ModelParams(n)
    beta = e_form(p, 3, {(1, 2, n + 1): 1, (1, 2, n + 2): Scalar(2, 1)})
    pr = pr_primitive(beta, 3)
    assert contract_omega_e_r(pr).is_zero()
    assert pr_primitive(pr, 3) == pr
    # the removed part is omega ^ (something)
    rest = beta - pr
    assert contract_omega_e_r(rest) == contract_omega_e_r(beta)


def test_projection_of_omega_is_zero(p3):
    assert pr_primitive(omega_e_bivector(p3), 2).is_zero()


def test_lefschetz_constants(p3):
    assert lefschetz_constant(p3, 2) == 3
    assert lefschetz_constant(p3, 3) == 2


def test_trace_needs_degree_two(p2):
    with pytest.raises(DegreeError):
        contract_omega_e_r(e_form(p2, 1, {(1,): 1}))


def test_primitive_basis_is_primitive(p3):
    for b in primitive_basis(p3, 3):
        assert contract_omega_e_r(b).is_zero()
    assert wedge(omega_e_bivector(p3), omega_e_bivector(p3))
