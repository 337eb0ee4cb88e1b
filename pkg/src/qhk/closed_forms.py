"""Closed-form values of the pipeline stages on gamma_0 (x) alpha_0.

Each builder returns the expected tensor for a given n, written out term by
term.  Words like ``h e~_1 e_1 e_2`` are plain tensor products h (x) e~_1
(x) e_1 (x) e_2; a wedge inside a word is unnormalised, x ^ y = xy - yx.
Repeated index i is summed over 1..2n with e~_{n+j} = -e_j.
"""
from __future__ import annotations

from fractions import Fraction

from .params import ModelParams
from .tensor import LabeledTensor, alt_group, e_vector, h_vector, sym_group, t_vector, tensor, tsum, wedge

__all__ = [
    "lambdas",
    "betas",
    "he_coefficient",
    "lemma3_coefficients",
    "corollary_coefficient",
    "f_trivector",
    "g_trivector",
    "interior_gamma0_alpha0",
    "omega_stage_gamma0_alpha0",
    "omega_stage_gamma_wedge_alpha",
    "omega_stage_f",
    "omega_stage_g",
    "lambda_display",
    "pr_display",
    "he_display",
    "beta_display",
    "lemma3_display",
    "corollary_display",
    "sym_hhh",
]


def lambdas(n: int) -> tuple[Fraction, ...]:
    d = 5 * (4 * n - 3)
    return (Fraction(8 * (-8 * n * n + 7 * n + 3), d), Fraction(4 * (4 * n * n - n - 9), d),
            Fraction(-4 * (n + 3), d), Fraction(24 * n - 33, d))


def betas(n: int) -> tuple[Fraction, ...]:
    d = 5 * (4 * n - 3)
    return (Fraction(-2 * (16 * n * n - 4 * n - 1), d), Fraction(-(8 * n - 11), d),
            Fraction(-(8 * n - 1), d), Fraction(18 * n - 11, d),
            Fraction(-2 * (4 * n * n - 11 * n + 11), d))


def he_coefficient(n: int) -> Fraction:
    return Fraction(8 * n * (2 * n + 1), 5 * (4 * n - 3))


def lemma3_coefficients(n: int) -> tuple[Fraction, Fraction]:
    return Fraction(-6 * (n - 1), 4 * n - 3), Fraction(-4 * (4 * n * n - 3 * n + 3), 4 * n - 3)


def corollary_coefficient(n: int) -> Fraction:
    return Fraction(4 * n * (n + 3), 4 * n - 3)


# ----------------------------------------------------------------------
# word builders


class _Words:
    def __init__(self, p: ModelParams):
        self.p = p

    def e(self, a):
        return e_vector(self.p, a)

    def et(self, a):
        c, b = self.p.tilde_e(a)
        return e_vector(self.p, b, c)

    def h(self):
        return h_vector(self.p, 1)

    def ht(self):
        return h_vector(self.p, 2)

    def sum_i(self, f):
        return tsum(f(i) for i in self.p.e_indices())

    def tv(self, a, s, tilde=False):
        if tilde:
            c, b = self.p.tilde_e(a)
            return t_vector(self.p, b, s, c)
        return t_vector(self.p, a, s)

    def hw(self, x, y, z):
        return tensor(self.h(), x, y, z)

    def w2(self, x, y):
        return tensor(x, y) - tensor(y, x)


def sym_hhh(p: ModelParams) -> LabeledTensor:
    """sym^H(h h h~) = (h h h~ + h h~ h + h~ h h) / 3."""
    return sym_group(tensor(h_vector(p, 1), h_vector(p, 1), h_vector(p, 2)), [0, 1, 2])


def f_trivector(p: ModelParams) -> LabeledTensor:
    """e_ih ^ e~_ih ^ e_2h~, so that F(X) = X ^ f."""
    w = _Words(p)
    return w.sum_i(lambda i: wedge(wedge(w.tv(i, 1), w.tv(i, 1, True)), w.tv(2, 2)))


def g_trivector(p: ModelParams) -> LabeledTensor:
    """e_1h ^ e_2h ^ e~_1h~, so that G(X) = X ^ g."""
    w = _Words(p)
    return wedge(wedge(w.tv(1, 1), w.tv(2, 1)), w.tv(1, 2, True))


def interior_gamma0_alpha0(p: ModelParams) -> LabeledTensor:
    """e_ih ^ e~_ih ^ e_2h~ - 2 e_1h ^ e_2h ^ e~_1h~."""
    return f_trivector(p) - g_trivector(p) * 2


def omega_stage_gamma0_alpha0(p: ModelParams) -> LabeledTensor:
    """-4n h (e~_1 e_1 e_2 - e~_1 e_2 e_1)."""
    w = _Words(p)
    return (w.hw(w.et(1), w.e(1), w.e(2)) - w.hw(w.et(1), w.e(2), w.e(1))) * (-4 * p.n)


def omega_stage_gamma_wedge_alpha(p: ModelParams) -> LabeledTensor:
    """omega_H^2 omega_E of the field X -> gamma_0 ^ i_X alpha_0."""
    w = _Words(p)
    e, et, hw, si = w.e, w.et, w.hw, w.sum_i
    out = (si(lambda i: hw(et(i), e(i), e(2)) - hw(e(i), et(i), e(2)))
           + hw(et(1), e(1), e(2)) - hw(et(1), e(2), e(1))) * 2
    out = out + si(lambda i: hw(e(2), et(i), e(i)) - hw(e(2), e(i), et(i))
                   + hw(e(i), e(2), et(i)) - hw(et(i), e(2), e(i)))
    out = out + (hw(e(2), et(1), e(1)) - hw(e(1), et(1), e(2))) * (4 * p.n + 2)
    out = out + (hw(e(1), e(2), et(1)) - hw(e(2), e(1), et(1))) * 4
    return out


def omega_stage_f(p: ModelParams) -> LabeledTensor:
    """-(4n-4) h e_i e_2 e~_i + 3 h (e_2 e_i e~_i - e_2 e~_i e_i)."""
    w = _Words(p)
    e, et, hw, si = w.e, w.et, w.hw, w.sum_i
    return si(lambda i: hw(e(i), e(2), et(i))) * (-(4 * p.n - 4)) \
        + si(lambda i: hw(e(2), e(i), et(i)) - hw(e(2), et(i), e(i))) * 3


def omega_stage_g(p: ModelParams) -> LabeledTensor:
    """3 h (e_1 e~_1 e_2 - e_2 e~_1 e_1 - e~_1 e_2 e_1 + e~_1 e_1 e_2) - h e_i e_2 e~_i."""
    w = _Words(p)
    e, et, hw, si = w.e, w.et, w.hw, w.sum_i
    return (hw(e(1), et(1), e(2)) - hw(e(2), et(1), e(1)) - hw(et(1), e(2), e(1))
            + hw(et(1), e(1), e(2))) * 3 - si(lambda i: hw(e(i), e(2), et(i)))


def lambda_display(p: ModelParams, lam=None) -> LabeledTensor:
    """The HEEE stage of T(gamma_0 alpha_0) in terms of lambda_1..lambda_4."""
    lam = lam if lam is not None else lambdas(p.n)
    return tsum(t * c for t, c in zip(_lambda_terms(p), tuple(lam) + (Fraction(1, 5),)))


def _lambda_terms(p: ModelParams) -> list[LabeledTensor]:
    """The five tensors multiplying lambda_1..lambda_4 and 1/5."""
    w = _Words(p)
    e, et, hw, si = w.e, w.et, w.hw, w.sum_i
    return [
        hw(et(1), e(1), e(2)) - hw(et(1), e(2), e(1)),
        hw(e(2), et(1), e(1)) - hw(e(1), et(1), e(2)),
        si(lambda i: hw(e(2), e(i), et(i)) - hw(e(2), et(i), e(i))),
        si(lambda i: hw(e(i), e(2), et(i))),
        (hw(e(1), e(2), et(1)) - hw(e(2), e(1), et(1))) * 4
        + si(lambda i: hw(et(i), e(i), e(2)) - hw(e(i), et(i), e(2))) * 2
        - si(lambda i: hw(et(i), e(2), e(i))),
    ]


def pr_display(p: ModelParams) -> LabeledTensor:
    """Projection of the HEEE stage onto H E Lambda^2_0 E (six terms)."""
    w = _Words(p)
    e, et, si, h = w.e, w.et, w.sum_i, w.h()
    n = p.n
    l1, l2, l3, l4 = lambdas(n)
    return (tensor(h, et(1), w.w2(e(1), e(2))) * (2 * l1)
            + tensor(h, e(2), w.w2(et(1), e(1))) * (l2 + Fraction(4, 5))
            - tensor(h, e(1), w.w2(et(1), e(2))) * (l2 + Fraction(4, 5))
            + si(lambda i: tensor(h, e(i), w.w2(e(2), et(i)))) * (l4 + Fraction(2, 5))
            + si(lambda i: tensor(h, et(i), w.w2(e(i), e(2)))) * Fraction(3, 5)
            + si(lambda i: tensor(h, e(2), w.w2(e(i), et(i)))) * (Fraction(1, 2 * n) * (l2 - l4 - Fraction(1, 5))))


def he_display(p: ModelParams) -> LabeledTensor:
    return tensor(h_vector(p, 1), e_vector(p, 2)) * he_coefficient(p.n)


def _beta_terms(p: ModelParams) -> list[LabeledTensor]:
    """Tensors multiplying beta_1..beta_5, then the two fixed terms."""
    w = _Words(p)
    e, et, si, s = w.e, w.et, w.sum_i, sym_hhh(p)
    n = p.n

    def a(x, y, z):
        return tensor(s, x, y, z)

    return [
        a(et(1), e(1), e(2)) - a(et(1), e(2), e(1)),
        si(lambda i: a(et(i), e(2), e(i))),
        si(lambda i: a(e(2), et(i), e(i)) - a(e(2), e(i), et(i))),
        si(lambda i: a(e(i), e(2), et(i))),
        a(e(2), et(1), e(1)) - a(e(1), et(1), e(2)),
        -si(lambda i: a(e(i), et(i), e(2)) * (4 * n - 1) + a(et(i), e(i), e(2))) * Fraction(1, 4 * n - 3),
        -(a(e(1), e(2), et(1)) - a(e(2), e(1), et(1))) * Fraction(2, 4 * n - 3),
    ]


def beta_display(p: ModelParams, bet=None) -> LabeledTensor:
    """The S^3H-valued stage before alternation, in terms of beta_1..beta_5."""
    terms = _beta_terms(p)
    bet = bet if bet is not None else betas(p.n)
    return tsum(t * b for t, b in zip(terms, bet)) + terms[5] + terms[6]


def _w3(x, y, z):
    return alt_group(tensor(x, y, z), [0, 1, 2]) * 6


def lemma3_display(p: ModelParams) -> LabeledTensor:
    """-6(n-1)/(4n-3) s (e_i ^ e~_i ^ e_2) - 4(4n^2-3n+3)/(4n-3) s (e_1 ^ e_2 ^ e~_1)."""
    w = _Words(p)
    e, et, s = w.e, w.et, sym_hhh(p)
    c1, c2 = lemma3_coefficients(p.n)
    return tensor(s, w.sum_i(lambda i: _w3(e(i), et(i), e(2)))) * c1 + tensor(s, _w3(e(1), e(2), et(1))) * c2


def corollary_display(p: ModelParams) -> LabeledTensor:
    return tensor(sym_hhh(p), e_vector(p, 2)) * corollary_coefficient(p.n)
