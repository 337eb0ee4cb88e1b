"""The algebraic conformal-Killing operator and its projection pipelines.

For a field eta with values in Lambda^4 T,

    T(eta)(X) = a eta(X) + b sum_c b^c ^ i_X eta(b_c) - c X ^ sum_c i_{b^c} eta(b_c)

with (a, b, c) = (4/5, 1/5, 1/(4n-3)) and {b_c, b^c} g-dual frames.  The
pipelines contract T(eta) down to the irreducible pieces HE, HK, (S^3H)E and
S^3H Lambda^3_0 E; each stage is kept for inspection.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .field import OneFormField
from .params import ModelParams
from .scalar import Scalar
from .symplectic import pr_primitive_slots
from .tensor import (DegreeError, Group, LabeledTensor, alt_group, contract_pair,
                     form_grade, impose, interior, permute, sym_group, t_form,
                     t_vector, wedge)

__all__ = [
    "Coefficients",
    "default_coefficients",
    "ck_operator",
    "wedge_trace",
    "contraction_trace",
    "contract_omega_e4",
    "PipelineResult",
    "pipeline_he",
    "pipeline_hk",
    "pipeline_s3h",
    "e_split",
    "omega_heee",
]

HALF = Scalar(Fraction(1, 2))
Coefficients = tuple  # (a, b, c) as Fractions; c may be None for 1/(4n-3)


def default_coefficients(params: ModelParams) -> tuple[Fraction, Fraction, Fraction]:
    return Fraction(4, 5), Fraction(1, 5), Fraction(1, 4 * params.n - 3)


def _resolve(params: ModelParams, coefficients) -> tuple:
    base = default_coefficients(params)
    if coefficients is None:
        return base
    return tuple(b if c is None else c for c, b in zip(coefficients, base))


def _as_field(eta) -> OneFormField:
    # DomainElement and anything else exposing ``.field``
    return eta if isinstance(eta, OneFormField) else eta.field


def _check_grade4(eta: OneFormField):
    if eta.slots != ("E", "H") * 4 or eta.groups != t_form(eta.params, 4).groups:
        raise DegreeError("operator needs a field with values in Lambda^4 T")


def _dual_vector(params: ModelParams, x) -> LabeledTensor:
    c, d = params.dual_t(x)
    return t_vector(params, *d, c)


def ck_operator(eta, coefficients=None) -> OneFormField:
    """T(eta); ``coefficients`` overrides (a, b, c), entries set to None keep the default."""
    eta = _as_field(eta)
    _check_grade4(eta)
    p = eta.params
    a, b, c = _resolve(p, coefficients)
    items = [(_dual_vector(p, x), v) for x, v in eta.items()]
    zero3 = t_form(p, 3)
    delta = zero3
    for dx, v in items:
        delta = delta + interior(dx, v)
    values = {}
    for x in p.tangent_basis():
        xv = t_vector(p, *x)
        acc = eta(x) * a
        for dx, v in items:
            acc = acc + wedge(dx, interior(xv, v)) * b
        if delta:
            acc = acc - wedge(xv, delta) * c
        values[x] = acc
    return OneFormField(p, eta.slots, eta.groups, values)


def wedge_trace(eta) -> LabeledTensor:
    """sum_c b^c ^ eta(b_c), a 5-vector."""
    eta = _as_field(eta)
    p = eta.params
    return sum((wedge(_dual_vector(p, x), v) for x, v in eta.items()), t_form(p, 5))


def contraction_trace(eta) -> LabeledTensor:
    """sum_c i_{b^c} eta(b_c), a 3-vector."""
    eta = _as_field(eta)
    p = eta.params
    return sum((interior(_dual_vector(p, x), v) for x, v in eta.items()), t_form(p, 3))


def contract_omega_e4(alpha: LabeledTensor) -> LabeledTensor:
    """omega_E contraction Lambda^4 T -> S^2H (x) Lambda^2 T.

    On decomposables x_1 h_1 ^ ... ^ x_4 h_4 this is the sum over i < j of
    (-1)^(i+j+1) omega_E(x_i, x_j)(h_i h_j + h_j h_i) times the remaining
    2-vector, which is the contraction of the E-parts of the first two
    factors of the full tensor.  Output slots: H, H (symmetric), then E H E H.
    """
    if form_grade(alpha) != 4:
        raise DegreeError("expected a 4-vector on T")
    return impose(contract_pair(alpha, 0, 2), Group("sym", ((0,), (1,))), check=True)


# ----------------------------------------------------------------------
# pipelines


@dataclass
class PipelineResult:
    """Named intermediate tensors of a pipeline, in order of computation."""

    name: str
    stages: list[tuple[str, LabeledTensor]] = field(default_factory=list)

    def add(self, label: str, t: LabeledTensor) -> LabeledTensor:
        self.stages.append((label, t))
        return t

    def __getitem__(self, label: str) -> LabeledTensor:
        for k, t in self.stages:
            if k == label:
                return t
        raise KeyError(label)

    @property
    def final(self) -> LabeledTensor:
        return self.stages[-1][1]

    def signatures(self) -> dict[str, str]:
        return {k: "".join(t.slots) for k, t in self.stages}

    def to_text(self) -> str:
        parts = []
        for k, t in self.stages:
            parts.append(f"## {k}\n{t.to_text()}")
        return "".join(parts)


def _t_tensor(eta, coefficients) -> LabeledTensor:
    return ck_operator(eta, coefficients).to_tensor()


def _omega_e_stage(t: LabeledTensor) -> LabeledTensor:
    # slots E H | (E H)^4  ->  E H H H (E H)(E H)
    return contract_pair(t, 2, 4)


def _heee(res: PipelineResult, t: LabeledTensor) -> LabeledTensor:
    s1 = res.add("omegaE", _omega_e_stage(t))
    s2 = res.add("omegaH", contract_pair(s1, 1, 2))          # E H (E H)(E H)
    regrouped = permute(s2.full(), [0, 1, 3, 5, 2, 4])       # E H H H E E
    s3 = contract_pair(regrouped, 1, 2)                      # E H E E
    return res.add("omegaH2", permute(s3, [1, 0, 2, 3]))    # H E E E


def omega_heee(eta) -> LabeledTensor:
    """omega_H^2 omega_E of a Lambda^4-valued field itself (no operator applied)."""
    eta = _as_field(eta)
    _check_grade4(eta)
    return _heee(PipelineResult("HEEE"), eta.to_tensor())


def pipeline_he(eta, coefficients=None) -> PipelineResult:
    """T_HE: omega_E, then omega_H twice, then omega_E on the first two E-slots."""
    res = PipelineResult("HE")
    t = res.add("T", _t_tensor(eta, coefficients))
    heee = _heee(res, t)
    res.add("HE", contract_pair(heee, 1, 2))
    return res


def e_split(t: LabeledTensor, positions: Sequence[int]) -> dict[str, LabeledTensor]:
    """Split E (x) Lambda^2_0 E in the E-slots ``positions`` into Lambda^3_0 E, E and K parts.

    ``positions`` = (slot of E, first and second slot of the Lambda^2_0 part);
    other slots are spectators.  Parts are returned full, in the input slot
    order.  The E part is iota(c(t)) / kappa where c contracts the E-slot
    into the Lambda^2_0 part, iota(v) = sum_a e^a (x) pr_0(v ^ e_a) and
    kappa = c(iota(v)) / v is computed, not assumed.
    """
    p = t.params
    positions = list(positions)
    others = [q for q in range(len(t.slots)) if q not in positions]
    order = others + positions
    back = [0] * len(order)
    for new, old in enumerate(order):
        back[old] = new
    m = len(others)
    u = permute(t.full(), order)

    skew = alt_group(u, range(m, m + 3)).full()
    lam3 = pr_primitive_slots(skew, range(m, m + 3))
    epart = _iota(contract_pair(u, m, m + 1)) / _kappa(p)
    k = u - lam3 - epart
    return {name: permute(x, back) for name, x in (("L3", lam3), ("E", epart), ("K", k))}


def _iota(w: LabeledTensor) -> LabeledTensor:
    """w with its last slot in E -> spectators, e^a, then pr_0(w_last ^ e_a)."""
    p = w.params
    m = len(w.slots) - 1
    out: dict[tuple, Scalar] = {}
    for key, v in w.full().entries.items():
        b = key[m]
        head = key[:m]
        for a in p.e_indices():
            c, d = p.dual_e(a)
            for k2, sgn in ((head + (d, b, a), 1), (head + (d, a, b), -1)):
                val = v * (c * sgn)
                out[k2] = out[k2] + val if k2 in out else val
    raw = LabeledTensor._make(p, w.slots[:m] + ("E", "E", "E"), (), out)
    return pr_primitive_slots(raw, (m + 1, m + 2))


_KAPPA: dict = {}


def _kappa(params: ModelParams) -> Scalar:
    if params not in _KAPPA:
        v = LabeledTensor(params, ("E",), (), {(1,): 1})
        image = contract_pair(_iota(v), 0, 1)
        kappa = image.coeff((1,))
        if image != v * kappa or not kappa:
            raise ArithmeticError("c o iota is not a nonzero multiple of the identity")
        _KAPPA[params] = kappa
    return _KAPPA[params]


def pipeline_hk(eta, coefficients=None) -> PipelineResult:
    """pr onto H E Lambda^2_0 E of the HEEE stage, its skew defect and its K part."""
    res = PipelineResult("HK")
    t = res.add("T", _t_tensor(eta, coefficients))
    heee = _heee(res, t)
    skew2 = heee - permute(heee, [0, 1, 3, 2])
    pr = res.add("prHELambda20E", pr_primitive_slots(skew2, (2, 3)))
    res.add("skewDefect", pr - alt_group(pr, (1, 2, 3)).full())
    res.add("HK", e_split(pr, (1, 2, 3))["K"])
    return res


def pipeline_s3h(eta, coefficients=None) -> PipelineResult:
    """omega_H, sym^H, omega_E on Lambda^3 E, alternation, then the two finishes.

    Final stages: "d1" (S^3H Lambda^3_0 E component) and "d2" (S^3H E).
    """
    res = PipelineResult("S3H")
    t = res.add("T", _t_tensor(eta, coefficients))
    s1 = res.add("omegaH", contract_pair(t, 1, 3))                # E E (E H)^3
    regrouped = permute(s1.full(), [0, 1, 3, 5, 7, 2, 4, 6])      # E E H H H E E E
    s2 = res.add("symH", sym_group(regrouped, [2, 3, 4]))
    s3 = contract_pair(s2, 5, 6) * HALF                           # E E H H H E
    s3 = res.add("omegaE", permute(s3, [2, 3, 4, 0, 1, 5]))       # H H H E E E
    s4 = res.add("S3HLambda3E", alt_group(s3, [3, 4, 5]) * 6)
    res.add("d1", pr_primitive_slots(s4, (3, 4, 5)))
    res.add("d2", contract_pair(s4, 3, 4) * HALF)
    return res
