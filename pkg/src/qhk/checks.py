"""Verification checks and the kernel oracle.

Every check compares an exact computation with an exact expected value and
returns a ``CheckReport``.  Failures are reported, never raised.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from . import closed_forms as cf
from .decompose import ALLOWED, FORBIDDEN, SUMMANDS, decompose
from .field import OneFormField
from .linalg import LeftInverse, nullspace
from .model import (DomainElement, build_alpha0, build_gamma0, build_gamma0_alpha0,
                    build_j_triple, build_omega, domain_basis, domain_basis_element,
                    domain_dimension, image_rank)
from .params import ModelParams
from .scalar import Scalar, as_scalar
from .symplectic import primitive_basis, trace_rank
from .tensor import LabeledTensor, contract_pair, interior, permute, t_form, t_vector, wedge
from .operators import (ck_operator, contraction_trace,
                        omega_heee, pipeline_he, pipeline_hk, pipeline_s3h, wedge_trace)

__all__ = [
    "Variant",
    "MUTATIONS",
    "SizeGuardError",
    "CheckReport",
    "KernelReport",
    "check_lemma1",
    "check_lemma2",
    "check_lemma3",
    "check_corollary",
    "check_trace_identities",
    "check_structure",
    "check_schur",
    "kernel_oracle",
    "random_domain_element",
    "CHECKS",
    "run_all",
]

MAX_KERNEL_N = 4

# what each check reproduces, by content rather than by numbering
ANCHORS = {
    "lemma1": "omega_H^2 omega_E T(gamma_0 alpha_0): lambda display and its H E Lambda^2_0 E projection",
    "lemma2": "T_HE(gamma_0 alpha_0) = 8n(2n+1)/(5(4n-3)) h e_2",
    "lemma3": "S^3H-valued beta display and its S^3H Lambda^3 E projection",
    "corollary": "T_(S^3H)E(gamma_0 alpha_0) = 4n(n+3)/(4n-3) sym(h h h~) e_2",
    "traces": "wedge and contraction traces of T vanish",
    "structure": "quaternion relations, invariance of Omega, primitive dimensions",
    "schur": "each pipeline is a nonzero scalar on its summand and kills the rest",
    "kernel": "ker T on the domain lies in H Lambda^3_0 E + (S^3H) K",
}


class SizeGuardError(ValueError):
    """Refused to run an oracle above the size guard without an explicit override."""


@dataclass(frozen=True)
class Variant:
    """Deliberate perturbations used as sensitivity controls.

    ``coefficients`` replaces (a, b, c) of the operator; None entries keep
    the defaults.
    """

    omega_h_sign: int = 1
    coefficients: tuple | None = None

    def params(self, n: int) -> ModelParams:
        return ModelParams(n, omega_h_sign=self.omega_h_sign)

    def coeffs(self, n: int):
        return self.coefficients


def _perturb(index: int, value: Callable[[int], Fraction]) -> Callable[[int], Variant]:
    def make(n: int) -> Variant:
        c = [None, None, None]
        c[index] = value(n)
        return Variant(coefficients=tuple(c))
    return make


# name -> builder taking n
MUTATIONS: dict[str, Callable[[int], Variant]] = {
    "flip-omega-h": lambda n: Variant(omega_h_sign=-1),
    "coef-a": _perturb(0, lambda n: Fraction(3, 4)),
    "coef-b": _perturb(1, lambda n: Fraction(1, 4)),
    "coef-c": _perturb(2, lambda n: Fraction(1, 4 * n - 2)),
}


def _ser(x) -> object:
    if isinstance(x, LabeledTensor):
        return x.to_text()
    if isinstance(x, (Scalar, Fraction, int)):
        return str(as_scalar(x))
    if isinstance(x, (tuple, list)):
        return [_ser(v) for v in x]
    return str(x)


@dataclass
class CheckReport:
    name: str
    n: int
    status: str  # "pass", "fail" or "vacuous"
    expected: dict = field(default_factory=dict)
    actual: dict = field(default_factory=dict)
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass
class KernelReport:
    n: int
    domainDim: int
    kernelDim: int
    componentNorms: dict
    status: str
    bound: int
    reverified: bool
    header: dict = field(default_factory=dict)
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def ok(self) -> bool:
        return self.status != "fail"


class _Collector:
    """Accumulates named sub-checks into one report."""

    def __init__(self, name: str, n: int):
        self.name, self.n = name, n
        self.expected: dict = {}
        self.actual: dict = {}
        self.sub: dict[str, str] = {}
        self.details: dict = {}
        self.t0 = time.perf_counter()

    def equal(self, key: str, expected, actual):
        self.expected[key] = _ser(expected)
        self.actual[key] = _ser(actual)
        self.sub[key] = "pass" if expected == actual else "fail"

    def nonzero(self, key: str, value, vacuous: bool = False):
        self.expected[key] = "nonzero"
        if vacuous:
            self.actual[key] = "zero" if not value else "nonzero"
            self.sub[key] = "vacuous"
            return
        self.actual[key] = "nonzero" if value else "zero"
        self.sub[key] = "pass" if value else "fail"

    def report(self) -> CheckReport:
        states = set(self.sub.values())
        if "fail" in states:
            status = "fail"
        elif "pass" in states:
            status = "pass"
        else:
            status = "vacuous"
        self.details["subchecks"] = dict(self.sub)
        self.details["anchor"] = ANCHORS[self.name]
        return CheckReport(self.name, self.n, status, self.expected, self.actual,
                           time.perf_counter() - self.t0, self.details)


def _solve_coefficients(terms: Sequence[LabeledTensor], target: LabeledTensor):
    """Coefficients x with sum x_k terms_k = target, or None if impossible or not unique."""
    cols = [dict(t.full().entries) for t in terms]
    try:
        solver = LeftInverse(cols)
        x = solver.solve(dict(target.full().entries))
    except (ValueError, ArithmeticError):
        return None
    return tuple(x.get(k, Scalar(0)) for k in range(len(terms)))


def _lambda3_vacuous(p: ModelParams) -> bool:
    return len(primitive_basis(p, 3)) == 0


# ----------------------------------------------------------------------
# reproduction checks on gamma_0 (x) alpha_0


def check_lemma1(n: int, variant: Variant | None = None) -> CheckReport:
    """Interior product, omega stages, lambda constants, HE Lambda^2_0 E projection, skew defect."""
    variant = variant or Variant()
    p = variant.params(n)
    col = _Collector("lemma1", n)
    eta = build_gamma0_alpha0(p)
    col.equal("interior gamma0 alpha0", cf.interior_gamma0_alpha0(p),
              interior(build_gamma0(p), build_alpha0(p)))
    col.equal("omega stage of gamma0 alpha0", cf.omega_stage_gamma0_alpha0(p), omega_heee(eta))

    g0, a0 = build_gamma0(p), build_alpha0(p)
    grp = t_form(p, 4).groups

    def fld(fn):
        return OneFormField(p, ("E", "H") * 4, grp,
                            {x: fn(t_vector(p, *x)) for x in p.tangent_basis()})

    col.equal("omega stage of gamma0 ^ alpha0(.)", cf.omega_stage_gamma_wedge_alpha(p),
              omega_heee(fld(lambda x: wedge(g0, interior(x, a0)))))
    col.equal("omega stage of F", cf.omega_stage_f(p), omega_heee(fld(lambda x: wedge(x, cf.f_trivector(p)))))
    col.equal("omega stage of G", cf.omega_stage_g(p), omega_heee(fld(lambda x: wedge(x, cf.g_trivector(p)))))

    hk = pipeline_hk(eta, variant.coeffs(n))
    heee = hk["omegaH2"]
    col.equal("lambda display", cf.lambda_display(p), heee)
    lam = _solve_coefficients(cf._lambda_terms(p), heee)
    col.equal("lambda constants", tuple(cf.lambdas(n)) + (Fraction(1, 5),),
              lam if lam is not None else "not a combination of the display terms")
    col.equal("projection onto H E Lambda^2_0 E", cf.pr_display(p), hk["prHELambda20E"])
    col.nonzero("skew defect", hk["skewDefect"])
    col.nonzero("HK component", hk["HK"])
    return col.report()


def check_lemma2(n: int, variant: Variant | None = None) -> CheckReport:
    variant = variant or Variant()
    p = variant.params(n)
    col = _Collector("lemma2", n)
    final = pipeline_he(build_gamma0_alpha0(p), variant.coeffs(n)).final
    col.equal("HE value", cf.he_display(p), final)
    col.equal("coefficient of h e_2", cf.he_coefficient(n), final.coeff((1, 2)))
    col.nonzero("HE nonzero", final)
    return col.report()


def check_lemma3(n: int, variant: Variant | None = None) -> CheckReport:
    variant = variant or Variant()
    p = variant.params(n)
    col = _Collector("lemma3", n)
    res = pipeline_s3h(build_gamma0_alpha0(p), variant.coeffs(n))
    stage = res["omegaE"]
    col.equal("beta display", cf.beta_display(p), stage)
    # sum_i e~_i e_2 e_i = -sum_i e_i e_2 e~_i, so beta_2 and beta_4 are only
    # determined through beta_4 - beta_2
    t = cf._beta_terms(p)
    b1, b2, b3, b4, b5 = cf.betas(n)
    bet = _solve_coefficients([t[0], t[2], t[3], t[4]], stage - t[5] - t[6])
    col.equal("beta constants (b1, b3, b4 - b2, b5)", (b1, b3, b4 - b2, b5),
              bet if bet is not None else "not a combination of the display terms")
    col.equal("S3H Lambda3 E projection", cf.lemma3_display(p), res["S3HLambda3E"])
    col.nonzero("S3H Lambda3_0 E component", res["d1"], vacuous=_lambda3_vacuous(p))
    col.details["dim Lambda3_0 E"] = len(primitive_basis(p, 3))
    return col.report()


def check_corollary(n: int, variant: Variant | None = None) -> CheckReport:
    variant = variant or Variant()
    p = variant.params(n)
    col = _Collector("corollary", n)
    res = pipeline_s3h(build_gamma0_alpha0(p), variant.coeffs(n))
    d2 = res["d2"]
    col.equal("S3H E value", cf.corollary_display(p), d2)
    # sym^H(h h h~) has component 1/3 at (1, 1, 2)
    col.equal("coefficient of sym(h h h~) e_2", cf.corollary_coefficient(n), d2.full().coeff((1, 1, 2, 2)) * 3)
    col.nonzero("S3H E nonzero", d2)
    col.nonzero("S3H Lambda3_0 E nonzero", res["d1"], vacuous=_lambda3_vacuous(p))
    return col.report()


# ----------------------------------------------------------------------
# properties


def random_domain_element(params: ModelParams, rng: random.Random, terms: int = 6) -> DomainElement:
    """Sum of ``terms`` random basis elements with coefficients p/q, |p|, q <= 9, p != 0."""
    dim = domain_dimension(params)
    total = None
    for _ in range(terms):
        num = 0
        while num == 0:
            num = rng.randint(-9, 9)
        c = Fraction(num, rng.randint(1, 9))
        e = domain_basis_element(params, rng.randrange(dim)) * c
        total = e if total is None else total + e
    return total


def _rng(seed: int, n: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{n}:{name}")


def check_trace_identities(n: int, samples: int = 50, seed: int = 0,
                           variant: Variant | None = None) -> CheckReport:
    """Both trace identities of T on the full domain basis (n = 2) or random samples."""
    variant = variant or Variant()
    p = variant.params(n)
    col = _Collector("traces", n)
    if n == 2:
        elements: Iterable = domain_basis(p)
        col.details["elements"] = f"full domain basis ({domain_dimension(p)})"
    else:
        rng = _rng(seed, n, "traces")
        elements = (random_domain_element(p, rng) for _ in range(samples))
        col.details["elements"] = f"{samples} random domain elements, seed {seed}"
    bad_wedge = bad_contr = count = 0
    for el in elements:
        t = ck_operator(el, variant.coeffs(n))
        bad_wedge += bool(wedge_trace(t))
        bad_contr += bool(contraction_trace(t))
        count += 1
    g = ck_operator(build_gamma0_alpha0(p), variant.coeffs(n))
    col.equal("wedge trace nonzero count", 0, bad_wedge)
    col.equal("contraction trace nonzero count", 0, bad_contr)
    col.equal("wedge trace on gamma0 alpha0", t_form(p, 5), wedge_trace(g))
    col.equal("contraction trace on gamma0 alpha0", t_form(p, 3), contraction_trace(g))
    col.details["checked"] = count
    return col.report()


def check_structure(n: int) -> CheckReport:
    """Quaternion relations, Omega invariance, primitive dimensions, embedding rank."""
    p = ModelParams(n)
    col = _Collector("structure", n)
    triple = build_j_triple(p)
    col.equal("failed quaternion relations", [], triple.quaternion_failures())
    col.equal("failed metric compatibilities", 0, len(triple.compatibility_failures()))
    rot = [[Fraction(3, 5), Fraction(4, 5), 0], [Fraction(-4, 5), Fraction(3, 5), 0], [0, 0, 1]]
    col.equal("Omega after rotating the triple", build_omega(p), build_omega(p, triple.rotated(rot)))
    col.nonzero("Omega", build_omega(p))
    d2 = comb(2 * n, 2) - trace_rank(p, 2)
    d3 = comb(2 * n, 3) - trace_rank(p, 3)
    col.equal("dim Lambda2_0 E", 2 * n * n - n - 1, d2)
    col.equal("dim Lambda3_0 E", comb(2 * n, 3) - 2 * n, d3)
    col.equal("rank of the S2H Lambda2_0 E embedding", 3 * d2, image_rank(p))
    return col.report()


# pipeline for W, and the canonical identification of the W-component with its target
def _he_iso(c: LabeledTensor) -> LabeledTensor:
    return contract_pair(contract_pair(c, 1, 2), 0, 2)            # H E


def _hk_iso(c: LabeledTensor) -> LabeledTensor:
    return permute(contract_pair(c, 1, 2), [1, 0, 2, 3])           # H E E E


def _s3he_iso(c: LabeledTensor) -> LabeledTensor:
    return contract_pair(c, 0, 4)                                  # H H H E


def _s3hl3_iso(c: LabeledTensor) -> LabeledTensor:
    return permute(c, [1, 2, 3, 0, 4, 5])                          # H H H E E E


_SCHUR = {
    "HE": (lambda eta: pipeline_he(eta).final, _he_iso),
    "HK": (lambda eta: pipeline_hk(eta)["HK"], _hk_iso),
    "S3HE": (lambda eta: pipeline_s3h(eta)["d2"], _s3he_iso),
    "S3HL3": (lambda eta: pipeline_s3h(eta)["d1"], _s3hl3_iso),
}


def _ratio(a: LabeledTensor, b: LabeledTensor):
    """c with a = c b, or None."""
    af, bf = a.full(), b.full()
    if not bf:
        return None if af else Scalar(0)
    key = next(iter(sorted(bf.entries)))
    c = af.coeff(key) / bf.coeff(key)
    return c if af == bf * c else None


def _two_components(p: ModelParams, rng: random.Random, w: str, tries: int = 40):
    """Two linearly independent nonzero W-components of random domain elements."""
    found: list[DomainElement] = []
    for _ in range(tries):
        part = decompose(random_domain_element(p, rng, terms=8))[w]
        if part.is_zero():
            continue
        if found and _ratio(part.coords, found[0].coords) is not None:
            continue
        found.append(part)
        if len(found) == 2:
            return found
    return found


def check_schur(n: int, seed: int = 0) -> CheckReport:
    """Each pipeline acts on its summand as one nonzero scalar and kills the other five."""
    p = ModelParams(n)
    col = _Collector("schur", n)
    rng = _rng(seed, n, "schur")
    constants = {}
    for w, (pipe, iso) in _SCHUR.items():
        if w == "S3HL3" and _lambda3_vacuous(p):
            col.nonzero(f"c_{w}", False, vacuous=True)
            continue
        parts = _two_components(p, rng, w)
        col.equal(f"independent {w} samples found", 2, len(parts))
        ratios = [_ratio(pipe(x), iso(x.coords)) for x in parts]
        same = len(ratios) == 2 and ratios[0] is not None and ratios[0] == ratios[1]
        col.equal(f"c_{w} proportional on two samples", True, same)
        col.nonzero(f"c_{w}", bool(same and ratios[0]))
        constants[w] = str(ratios[0]) if same else "not proportional"
        others = decompose(random_domain_element(p, rng, terms=8))
        col.equal(f"pipeline {w} on the other summands", 0,
                  sum(bool(pipe(v)) for k, v in others.items() if k != w and not v.is_zero()))
    col.details["constants"] = constants
    return col.report()


# ----------------------------------------------------------------------
# kernel oracle


def _flatten(f: OneFormField) -> dict:
    return {(x, k): c for x, v in f.items() for k, c in v.entries.items()}


def _ambient_kernel_dim(p: ModelParams, coefficients) -> int:
    """Kernel dimension of T on all of T* (x) Lambda^4 T."""

    basis = list(p.tangent_basis())
    grp = t_form(p, 4).groups
    cols = []
    for x in basis:
        for k in itertools.combinations(basis, 4):
            f = OneFormField(p, ("E", "H") * 4, grp, {x: t_form(p, 4, {sum(k, ()): 1})})
            cols.append(_flatten(ck_operator(f, coefficients)))
    return len(nullspace(cols))


def kernel_oracle(n: int, force: bool = False, variant: Variant | None = None,
                  ambient: bool | None = None) -> KernelReport:
    """Exact kernel of T on the domain basis and its six-summand decomposition.

    ``ambient`` also measures the kernel on all of T* (x) Lambda^4 T, which
    must equal dim Lambda^5 + dim Lambda^3; it defaults to on for n = 2.
    """
    if n > MAX_KERNEL_N and not force:
        raise SizeGuardError(f"kernel oracle refuses n = {n} > {MAX_KERNEL_N} without force")
    variant = variant or Variant()
    p = variant.params(n)
    coeffs = variant.coeffs(n)
    t0 = time.perf_counter()
    basis = domain_basis(p)
    cols = [_flatten(ck_operator(e, coeffs)) for e in basis]
    kernel = nullspace(cols)
    norms = {s: "zero" for s in SUMMANDS}
    reverified = True
    for vec in kernel:
        el = None
        for j, c in sorted(vec.items()):
            term = basis[j] * c
            el = term if el is None else el + term
        reverified &= ck_operator(el, coeffs).is_zero()
        for s, part in decompose(el).items():
            if not part.is_zero():
                norms[s] = "nonzero"
    d2 = len(primitive_basis(p, 2))
    d3 = len(primitive_basis(p, 3))
    dim_k = 2 * n * d2 - d3 - 2 * n
    bound = 2 * d3 + 4 * dim_k
    ok = reverified and all(norms[s] == "zero" for s in FORBIDDEN) and len(kernel) <= bound
    details = {"allowed summands": list(ALLOWED), "dim K": dim_k, "anchor": ANCHORS["kernel"]}
    if ambient is None:
        ambient = n == 2
    if ambient:
        dim = _ambient_kernel_dim(p, coeffs)
        expected = comb(4 * n, 5) + comb(4 * n, 3)
        details["ambient kernel dim"] = dim
        details["ambient kernel expected"] = expected
        ok = ok and dim == expected
    header = {
        "basis order": "X (x) u (x) beta; X over e_a h_s (a major), u over hh, hh~+h~h, h~h~, "
                       "beta over the primitive basis from exact elimination",
        "matrix": "column j stacks the Lambda^4 coefficients of T(basis_j), rows keyed by (X, canonical index)",
        "elimination": "fraction-free forward elimination, rational back substitution",
    }
    return KernelReport(n, len(basis), len(kernel), norms, "pass" if ok else "fail", bound,
                        reverified, header, time.perf_counter() - t0, details)


# ----------------------------------------------------------------------

CHECKS = ("lemma1", "lemma2", "lemma3", "corollary", "traces", "structure", "schur", "kernel")


def run_all(ns: Sequence[int], checks: Sequence[str] = CHECKS, *, seed: int = 0, samples: int = 50,
            force_large_n: bool = False, mutation: str | None = None):
    """Run ``checks`` for every n; returns (reports, kernel reports, exit status)."""
    reports: list[CheckReport] = []
    kernels: list[KernelReport] = []
    for n in ns:
        variant = MUTATIONS[mutation](n) if mutation else None
        for name in checks:
            if name == "lemma1":
                reports.append(check_lemma1(n, variant))
            elif name == "lemma2":
                reports.append(check_lemma2(n, variant))
            elif name == "lemma3":
                reports.append(check_lemma3(n, variant))
            elif name == "corollary":
                reports.append(check_corollary(n, variant))
            elif name == "traces":
                reports.append(check_trace_identities(n, samples, seed, variant))
            elif name == "structure":
                reports.append(check_structure(n))
            elif name == "schur":
                reports.append(check_schur(n, seed))
            elif name == "kernel":
                kernels.append(kernel_oracle(n, force=force_large_n, variant=variant))
            else:
                raise ValueError(f"unknown check {name!r}")
    ok = all(r.ok for r in reports) and all(k.ok for k in kernels)
    return reports, kernels, 0 if ok else 1
