import random

import pytest

from qhk.checks import random_domain_element
from qhk.decompose import ALLOWED, FORBIDDEN, SUMMANDS, decompose
from qhk.model import DomainError, build_gamma0_alpha0
from qhk.params import ModelParams


def _samples(n, k=3):
    p = ModelParams(n)
    rng = random.Random(n)
    return [random_domain_element(p, rng, terms=8) for _ in range(k)]


@pytest.mark.parametrize("n", [2, 3])
def test_components_sum_back(n):
    for el in _samples(n):
        parts = decompose(el)
        assert tuple(parts) == SUMMANDS
        total = parts["HE"]
        for s in SUMMANDS[1:]:
            total = total + parts[s]
        assert total == el


@pytest.mark.parametrize("n", [2, 3])
def test_projectors_are_idempotent_and_orthogonal(n):
    for el in _samples(n, 2):
        for name, part in decompose(el).items():
            again = decompose(part)
            for other, x in again.items():
                assert (x == part) if other == name else x.is_zero()


def test_lambda3_summands_vanish_at_n2():
    for el in _samples(2):
        parts = decompose(el)
        assert parts["HL3"].is_zero() and parts["S3HL3"].is_zero()


def test_forbidden_and_allowed_partition():
    assert set(FORBIDDEN) | set(ALLOWED) == set(SUMMANDS)
    assert not set(FORBIDDEN) & set(ALLOWED)


def test_needs_domain_element(p2):
    with pytest.raises(DomainError):
        decompose(build_gamma0_alpha0(p2))
