"""Symplectic trace and primitive parts of alternating E-tensors.

The trace of an r-vector on E is the sum over i<j of
(-1)^(i+j+1) omega_E(e_i, e_j) times the (r-2)-vector with both factors
removed.  On the stored full tensor this is half the slot contraction of the
first two slots, which is how it is computed here.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from fractions import Fraction
from math import comb
from typing import Sequence

from .linalg import nullspace, rank
from .params import ModelParams
from .scalar import Scalar
from .tensor import (DegreeError, Group, LabeledTensor, LabelError, alt_group,
                     contract_pair, permute, tensor)

__all__ = [
    "e_form",
    "omega_e_bivector",
    "contract_omega_e_r",
    "lefschetz_constant",
    "pr_primitive",
    "pr_primitive_slots",
    "primitive_basis",
    "trace_rank",
]

HALF = Scalar(Fraction(1, 2))


def e_form(params: ModelParams, r: int, entries=None) -> LabeledTensor:
    """An r-vector on E; keys are strictly increasing index tuples."""
    groups = (Group("alt", tuple((k,) for k in range(r))),) if r >= 2 else ()
    return LabeledTensor(params, ("E",) * r, groups, entries or {})


def omega_e_bivector(params: ModelParams) -> LabeledTensor:
    """omega_E = sum_j e_j ^ e_{n+j} (the form omega_E(e_j, e_{n+j}) = 1 raised)."""
    n = params.n
    return e_form(params, 2, {(j, j + n): 1 for j in range(1, n + 1)})


def _grade(beta: LabeledTensor) -> int:
    r = len(beta.slots)
    if any(lab != "E" for lab in beta.slots):
        raise LabelError("expected an alternating E-tensor")
    if r >= 2 and (len(beta.groups) != 1 or beta.groups[0].kind != "alt"
                   or sorted(beta.groups[0].positions) != list(range(r))):
        raise DegreeError("expected a fully alternating E-tensor")
    return r


def contract_omega_e_r(beta: LabeledTensor) -> LabeledTensor:
    """The symplectic trace Lambda^r E -> Lambda^(r-2) E."""
    r = _grade(beta)
    if r < 2:
        raise DegreeError(f"trace needs r >= 2, got r = {r}")
    return contract_pair(beta, 0, 1) * HALF


def _omega_wedge(v: LabeledTensor, first: int) -> LabeledTensor:
    """omega_E ^ v for v with its E-form part in slots ``first`` onward.

    Slots before ``first`` are spectators; the two omega slots are placed
    in front of v's form slots.
    """
    p = v.params
    head = list(range(first))
    k = len(v.slots) - first
    w = tensor(v.full(), omega_e_bivector(p).full())
    m = len(v.slots)
    order = head + [m, m + 1] + list(range(first, m))
    w = permute(w, order)
    if k == 0:
        return w
    # unnormalised wedge: (2+k)!/(2! k!) * Alt
    return alt_group(w, range(first, first + 2 + k)).full() * comb(2 + k, 2)


@lru_cache(maxsize=None)
def lefschetz_constant(params: ModelParams, r: int) -> Scalar:
    """c with trace(omega_E ^ v) = c v for primitive (r-2)-vectors v."""
    if r == 2:
        v = LabeledTensor(params, (), (), {(): 1})
    else:
        v = e_form(params, r - 2, {tuple(range(1, r - 1)): 1})
    image = contract_pair(_omega_wedge(v, 0), 0, 1) * HALF
    c = image.full().coeff(tuple(range(1, r - 1)))
    if image != v.full() * c:
        raise ArithmeticError("omega_E ^ . is not a multiple of the identity under the trace")
    return c


def pr_primitive_slots(t: LabeledTensor, positions: Sequence[int]) -> LabeledTensor:
    """Primitive part in the E-slots ``positions`` (r = 2 or 3), others spectators.

    ``t`` must be antisymmetric in those slots.  Returns a tensor without
    symmetry groups, in the original slot order.
    """
    positions = list(positions)
    r = len(positions)
    if r not in (2, 3):
        raise DegreeError("primitive projection implemented for r = 2, 3")
    if any(t.slots[q] != "E" for q in positions):
        raise LabelError("primitive projection acts on E-slots")
    others = [q for q in range(len(t.slots)) if q not in positions]
    order = others + positions
    u = permute(t.full(), order)
    m = len(others)
    trace = contract_pair(u, m, m + 1) * HALF
    lift = _omega_wedge(trace, m)
    res = u - lift / lefschetz_constant(t.params, r)
    back = [0] * len(order)
    for new, old in enumerate(order):
        back[old] = new
    return permute(res, back)


def pr_primitive(beta: LabeledTensor, r: int | None = None) -> LabeledTensor:
    """Component of an r-vector (r = 2, 3) in the primitive subspace Lambda^r_0 E."""
    rr = _grade(beta)
    if r is not None and r != rr:
        raise DegreeError(f"expected grade {r}, got {rr}")
    out = pr_primitive_slots(beta, range(rr))
    return alt_group(out, range(rr)) if rr >= 2 else out


def _trace_columns(params: ModelParams, r: int):
    keys = list(itertools.combinations(params.e_indices(), r))
    cols = []
    for key in keys:
        img = contract_omega_e_r(e_form(params, r, {key: 1}))
        if r == 2:
            cols.append({(): img.coeff(())} if img.coeff(()) else {})
        else:
            cols.append(dict(img.entries))
    return keys, cols


def trace_rank(params: ModelParams, r: int) -> int:
    """Rank of the trace map on Lambda^r E."""
    _, cols = _trace_columns(params, r)
    return rank(cols)


@lru_cache(maxsize=None)
def primitive_basis(params: ModelParams, r: int) -> tuple[LabeledTensor, ...]:
    """A basis of Lambda^r_0 E: the kernel of the trace, by exact elimination."""
    keys, cols = _trace_columns(params, r)
    return tuple(e_form(params, r, {keys[j]: v for j, v in vec.items()})
                 for vec in nullspace(cols))
