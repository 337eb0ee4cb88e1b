from fractions import Fraction

import pytest

from qhk.linalg import InconsistentSystem, LeftInverse, nullspace, rank
from qhk.scalar import Scalar


def test_rank_of_dependent_rows():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {1: Fraction(1, 3)}]
    assert rank(rows) == 2


def test_nullspace_is_exact_kernel():
    # columns c0 = (1, 1), c1 = (2, 2), c2 = (0, 1): kernel spanned by 2 c0 - c1
    cols = [{"a": 1, "b": 1}, {"a": 2, "b": 2}, {"b": 1}]
    ker = nullspace(cols)
    assert len(ker) == 1
    v = ker[0]
    for row in ("a", "b"):
        assert sum((cols[j].get(row, 0) * c for j, c in v.items()), Scalar(0)) == 0


def test_nullspace_of_independent_columns_is_empty():
    assert nullspace([{0: 1}, {1: 1}, {0: 1, 1: 1, 2: 1}]) == []


def test_left_inverse_solves_and_detects_inconsistency():
    cols = [{0: 1, 1: 1}, {1: 1, 2: Fraction(1, 2)}]
    solver = LeftInverse(cols)
    x = solver.solve({0: 3, 1: 5, 2: 1})
    assert x == {0: Scalar(3), 1: Scalar(2)}
    with pytest.raises(InconsistentSystem):
        solver.solve({0: 1})
