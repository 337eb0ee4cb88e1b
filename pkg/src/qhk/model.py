"""Linear-algebra model of T = E (x) H for one value of n.

Covers the quaternionic structures, Kaehler forms and the fundamental
4-form, the embedding of S^2H (x) Lambda^2_0 E into Lambda^4 T, the test
element gamma_0 (x) alpha_0, and the domain T* (x) (S^2H Lambda^2_0 E)
together with its coordinates.

Two-forms and four-forms are stored as multivectors, identified through g.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .field import OneFormField
from .linalg import InconsistentSystem, LeftInverse
from .params import ModelParams, ParameterMismatch
from .scalar import I, ONE, ZERO, Scalar, as_scalar
from .symplectic import contract_omega_e_r, omega_e_bivector, primitive_basis
from .tensor import (Group, LabeledTensor, LabelError, form_grade, t_form,
                     t_vector, tensor, tsum, wedge)

__all__ = [
    "DomainError",
    "Matrix",
    "AdmissibleBasis",
    "build_j_triple",
    "kahler_form",
    "build_omega",
    "s2h_basis",
    "s2h_bracket",
    "embed_s2h",
    "embed_joint",
    "embed_preimage",
    "build_gamma0",
    "build_alpha0",
    "build_gamma0_alpha0",
    "DomainElement",
    "domain_basis",
    "domain_dimension",
]

Index = tuple[int, int]
# Linear map on the composite basis: column x -> {row y: coefficient}.
Matrix = Mapping[Index, Mapping[Index, Scalar]]


class DomainError(ValueError):
    """Input lies outside the subspace an operation is defined on."""


# ----------------------------------------------------------------------
# quaternionic structure


def _compose(a: Matrix, b: Matrix) -> dict:
    """a o b."""
    out = {}
    for x, col in b.items():
        acc: dict[Index, Scalar] = {}
        for y, c in col.items():
            for z, d in a.get(y, {}).items():
                acc[z] = acc.get(z, ZERO) + c * d
        out[x] = {z: v for z, v in acc.items() if v}
    return out


def _combine(*terms: tuple[object, Matrix]) -> dict:
    out: dict = {}
    for c, m in terms:
        c = as_scalar(c)
        for x, col in m.items():
            acc = out.setdefault(x, {})
            for y, v in col.items():
                acc[y] = acc.get(y, ZERO) + v * c
    return {x: {y: v for y, v in col.items() if v} for x, col in out.items()}


def _same(a: Matrix, b: Matrix) -> bool:
    keys = set(a) | set(b)
    return all(dict(a.get(x, {})) == dict(b.get(x, {})) for x in keys)


@dataclass(frozen=True)
class AdmissibleBasis:
    """Three anticommuting complex structures J1, J2, J3 = J1 J2 on T."""

    params: ModelParams
    J1: dict
    J2: dict
    J3: dict

    def __iter__(self) -> Iterator[dict]:
        return iter((self.J1, self.J2, self.J3))

    def identity(self) -> dict:
        return {x: {x: ONE} for x in self.params.tangent_basis()}

    def apply(self, J: Matrix, x: Index) -> dict:
        return dict(J.get(x, {}))

    def quaternion_failures(self) -> list[str]:
        """Relations J_a J_b (and triple products) that do not match the quaternions.

        Uses the table i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j on all
        9 ordered pairs and all 27 ordered triples.
        """
        names = ("J1", "J2", "J3")
        mats = dict(zip(names, self))
        one = self.identity()
        # quaternion units as (sign, name|None)
        table = {
            ("J1", "J1"): (-1, None), ("J2", "J2"): (-1, None), ("J3", "J3"): (-1, None),
            ("J1", "J2"): (1, "J3"), ("J2", "J3"): (1, "J1"), ("J3", "J1"): (1, "J2"),
            ("J2", "J1"): (-1, "J3"), ("J3", "J2"): (-1, "J1"), ("J1", "J3"): (-1, "J2"),
        }

        def unit(word):
            sign, cur = 1, None
            for w in word:
                if cur is None:
                    cur = w
                    continue
                s, cur = table[(cur, w)]
                sign *= s
            return sign, cur

        bad = []
        for length in (2, 3):
            for word in itertools.product(names, repeat=length):
                m = mats[word[0]]
                for w in word[1:]:
                    m = _compose(m, mats[w])
                sign, name = unit(word)
                want = _combine((sign, one if name is None else mats[name]))
                if not _same(m, want):
                    bad.append("".join(word))
        return bad

    def compatibility_failures(self) -> list[tuple]:
        """Basis pairs (a, X, Y) with g(J_a X, J_a Y) != g(X, Y)."""
        p = self.params
        basis = list(p.tangent_basis())
        bad = []
        for a, J in enumerate(self, start=1):
            for x in basis:
                for y in basis:
                    val = sum((c * d * p.g(u, v) for u, c in J[x].items() for v, d in J[y].items()), ZERO)
                    if val != p.g(x, y):
                        bad.append((a, x, y))
        return bad

    def rotated(self, rot) -> "AdmissibleBasis":
        """J'_a = sum_b rot[a][b] J_b for a rational rotation matrix ``rot``."""
        mats = list(self)
        new = [_combine(*((rot[a][b], mats[b]) for b in range(3))) for a in range(3)]
        return AdmissibleBasis(self.params, *new)


def build_j_triple(params: ModelParams) -> AdmissibleBasis:
    """J1 = i on h and -i on h~; J2 sends h to h~ and h~ to -h; J3 = J1 J2."""
    j1, j2 = {}, {}
    for a in params.e_indices():
        j1[(a, 1)] = {(a, 1): I}
        j1[(a, 2)] = {(a, 2): -I}
        j2[(a, 1)] = {(a, 2): ONE}
        j2[(a, 2)] = {(a, 1): -ONE}
    return AdmissibleBasis(params, j1, j2, _compose(j1, j2))


def kahler_form(J: Matrix, params: ModelParams) -> LabeledTensor:
    """The 2-vector w with i_Y i_X w = g(J X, Y) for all X, Y.

    Components are w^{bc} = g(J b^, c^) with b^ the g-dual of basis vector b.
    """
    basis = list(params.tangent_basis())
    entries = {}
    for b, c in itertools.combinations(basis, 2):
        cb, db = params.dual_t(b)
        cc, dc = params.dual_t(c)
        val = sum((v * params.g(y, dc) for y, v in J.get(db, {}).items()), ZERO) * (cb * cc)
        if val:
            entries[b + c] = val
    return t_form(params, 2, entries)


def build_omega(params: ModelParams, triple: AdmissibleBasis | None = None) -> LabeledTensor:
    """Omega = w1 ^ w1 + w2 ^ w2 + w3 ^ w3."""
    triple = triple or build_j_triple(params)
    forms = [kahler_form(J, params) for J in triple]
    return tsum(wedge(w, w) for w in forms)


# ----------------------------------------------------------------------
# S^2 H and the embedding into Lambda^4 T


def s2h_basis(params: ModelParams) -> tuple[LabeledTensor, ...]:
    """h(x)h, h(x)h~ + h~(x)h, h~(x)h~ as symmetric H-tensors."""
    sym = (Group("sym", ((0,), (1,))),)
    return tuple(LabeledTensor(params, ("H", "H"), sym, {k: 1}) for k in ((1, 1), (1, 2), (2, 2)))


def _endomorphism(s: LabeledTensor) -> dict:
    """z -> sum_{p,q} s^{pq} omega_H(h_q, z) h_p, as {(row, col): value}."""
    p = s.params
    full = s.full()
    out = {}
    for (a, b), v in full.entries.items():
        for z in (1, 2):
            w = p.omega_h(b, z)
            if w:
                out[(a, z)] = out.get((a, z), ZERO) + v * w
    return {k: v for k, v in out.items() if v}


def _s2h_inverse(params: ModelParams) -> LeftInverse:
    return LeftInverse([_endomorphism(u) for u in s2h_basis(params)])


def s2h_bracket(s1: LabeledTensor, s2: LabeledTensor) -> LabeledTensor:
    """The element of S^2H whose endomorphism is the commutator of those of s1, s2."""
    p = s1.params
    a, b = _endomorphism(s1), _endomorphism(s2)
    comm: dict = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                comm[(i, j)] = comm.get((i, j), ZERO) + x * y
    for (i, k), y in b.items():
        for (k2, j), x in a.items():
            if k == k2:
                comm[(i, j)] = comm.get((i, j), ZERO) - y * x
    comm = {k: v for k, v in comm.items() if v}
    coords = _s2h_inverse(p).solve(comm)
    basis = s2h_basis(p)
    return tsum((basis[j] * c for j, c in coords.items()), basis[0].zero_like())


def _s_beta(s: LabeledTensor, beta: LabeledTensor) -> LabeledTensor:
    """The 2-vector on T with components s^{pq} beta^{ab} at (e_a h_p, e_b h_q).

    On decomposables, (s (x) t + t (x) s)(e ^ f) -> s e ^ t f + t e ^ s f.
    """
    entries = {}
    sf, bf = s.full().entries, beta.full().entries
    for (pp, q), sv in sf.items():
        for (a, b), bv in bf.items():
            if (a, pp) < (b, q):
                entries[(a, pp, b, q)] = entries.get((a, pp, b, q), ZERO) + sv * bv
    return LabeledTensor._make(s.params, ("E", "H") * 2, t_form(s.params, 2).groups, entries)


def _pair_embed(s1: LabeledTensor, s2: LabeledTensor, beta: LabeledTensor) -> LabeledTensor:
    """(s1 ^ s2) beta -> s1 beta ^ s2 omega_E - s2 beta ^ s1 omega_E."""
    om = omega_e_bivector(beta.params)
    return wedge(_s_beta(s1, beta), _s_beta(s2, om)) - wedge(_s_beta(s2, beta), _s_beta(s1, om))


@lru_cache(maxsize=None)
def _identification(params: ModelParams) -> tuple[tuple[tuple[tuple[int, int], Scalar], ...], ...]:
    """For each S^2H basis element u_k, its image in Lambda^2(S^2H) as ((i, j), c) terms.

    The map is the inverse of the bracket u_i ^ u_j -> [u_i, u_j], scaled so
    that the embedding of h h~ + h~ h with e_1 ^ e_2 is exactly alpha_0.
    """
    basis = s2h_basis(params)
    pairs = list(itertools.combinations(range(3), 2))
    images = [dict(s2h_bracket(basis[i], basis[j]).entries) for i, j in pairs]
    inv = LeftInverse(images)
    raw = []
    for u in basis:
        coords = inv.solve(dict(u.entries))
        raw.append(tuple((pairs[k], c) for k, c in sorted(coords.items())))
    beta = _e12(params)
    probe = tsum(_pair_embed(basis[i], basis[j], beta) * c for (i, j), c in raw[1])
    alpha = build_alpha0(params)
    key = next(iter(sorted(alpha.entries)))
    if not probe.coeff(key):
        raise ArithmeticError("alpha_0 is not in the image of the embedding")
    scale = alpha.coeff(key) / probe.coeff(key)
    if probe * scale != alpha:
        raise ArithmeticError("alpha_0 is not in the image of the embedding")
    return tuple(tuple((ij, c * scale) for ij, c in terms) for terms in raw)


def _e12(params: ModelParams) -> LabeledTensor:
    return LabeledTensor(params, ("E", "E"), (Group("alt", ((0,), (1,))),), {(1, 2): 1})


def _check_s2h(s: LabeledTensor):
    if s.slots != ("H", "H"):
        raise DomainError("expected a symmetric 2-tensor over H")
    full = s.full()
    if any(full.coeff((b, a)) != v for (a, b), v in full.entries.items()):
        raise DomainError("expected a symmetric 2-tensor over H")


def _check_lambda2_e(beta: LabeledTensor):
    if beta.slots != ("E", "E"):
        raise DomainError("expected a 2-vector on E")
    full = beta.full()
    if any(full.coeff((b, a)) != -v for (a, b), v in full.entries.items()):
        raise DomainError("expected an alternating E-tensor")


def _s2h_coordinates(s: LabeledTensor) -> list[Scalar]:
    f = s.full()
    return [f.coeff((1, 1)), f.coeff((1, 2)), f.coeff((2, 2))]


def _embed_unchecked(s: LabeledTensor, beta: LabeledTensor) -> LabeledTensor:
    p = s.params
    basis = s2h_basis(p)
    ident = _identification(p)
    out = t_form(p, 4)
    for k, c in enumerate(_s2h_coordinates(s)):
        if not c:
            continue
        for (i, j), w in ident[k]:
            out = out + _pair_embed(basis[i], basis[j], beta) * (c * w)
    return out


def embed_s2h(s: LabeledTensor, beta: LabeledTensor) -> LabeledTensor:
    """The 4-vector on T attached to s in S^2H and a primitive 2-vector beta on E."""
    if s.params != beta.params:
        raise ParameterMismatch(f"{s.params} vs {beta.params}")
    _check_s2h(s)
    _check_lambda2_e(beta)
    if beta.groups != (Group("alt", ((0,), (1,))),):
        beta = LabeledTensor(beta.params, beta.slots, (Group("alt", ((0,), (1,))),),
                             {k: v for k, v in beta.full().entries.items() if k[0] < k[1]})
    if contract_omega_e_r(beta):
        raise DomainError("beta has nonzero symplectic trace")
    return _embed_unchecked(s, beta)


def embed_joint(z: LabeledTensor) -> LabeledTensor:
    """Linear extension of the embedding to S^2H (x) Lambda^2 E (slots H, H, E, E)."""
    if z.slots != ("H", "H", "E", "E"):
        raise LabelError(f"expected slots H H E E, got {z.slots}")
    p = z.params
    full = z.full()
    slices: dict[tuple, dict] = {}
    for (a, b, c, d), v in full.entries.items():
        if a <= b and c < d:
            slices.setdefault((a, b), {})[(c, d)] = v
    out = t_form(p, 4)
    basis = s2h_basis(p)
    index = {(1, 1): 0, (1, 2): 1, (2, 2): 2}
    for key, ent in slices.items():
        beta = LabeledTensor._make(p, ("E", "E"), (Group("alt", ((0,), (1,))),), ent)
        out = out + _embed_unchecked(basis[index[key]], beta)
    return out


@lru_cache(maxsize=None)
def _image_solver(params: ModelParams) -> tuple[LeftInverse, tuple]:
    labels = [(k, m) for k in range(3) for m in range(len(primitive_basis(params, 2)))]
    basis = s2h_basis(params)
    prim = primitive_basis(params, 2)
    cols = [dict(_embed_unchecked(basis[k], prim[m]).entries) for k, m in labels]
    return LeftInverse(cols), tuple(labels)


def embed_preimage(alpha: LabeledTensor) -> LabeledTensor:
    """Membership test: the S^2H (x) Lambda^2_0 E element (slots H, H, E, E) mapping to alpha.

    Raises DomainError when alpha is not in the image.
    """
    if form_grade(alpha) != 4:
        raise DomainError("expected a 4-vector on T")
    p = alpha.params
    solver, labels = _image_solver(p)
    try:
        coords = solver.solve(dict(alpha.entries))
    except InconsistentSystem:
        raise DomainError("4-vector is not in the image of S^2H Lambda^2_0 E") from None
    basis = s2h_basis(p)
    prim = primitive_basis(p, 2)
    out = LabeledTensor._make(p, ("H", "H", "E", "E"), (), {})
    for j, c in coords.items():
        k, m = labels[j]
        out = out + tensor(basis[k].full(), prim[m].full()) * c
    return out


def image_rank(params: ModelParams) -> int:
    """Rank of the embedding on a basis of S^2H (x) Lambda^2_0 E (raises if not injective)."""
    return _image_solver(params)[0].size


# ----------------------------------------------------------------------
# the test element


def _tv(params: ModelParams, a: int, s: int, tilde: bool = False) -> LabeledTensor:
    if tilde:
        c, b = params.tilde_e(a)
        return t_vector(params, b, s, c)
    return t_vector(params, a, s)


def build_gamma0(params: ModelParams) -> LabeledTensor:
    """gamma_0 = e~_1 h."""
    return _tv(params, 1, 1, tilde=True)


def build_alpha0(params: ModelParams) -> LabeledTensor:
    """alpha_0 = sum_i e_1h^e_2h^e_ih~^e~_ih~ - e_1h~^e_2h~^e_ih^e~_ih, i = 1..2n."""
    p = params

    def w(*vs):
        out = vs[0]
        for v in vs[1:]:
            out = wedge(out, v)
        return out

    return tsum(
        w(_tv(p, 1, 1), _tv(p, 2, 1), _tv(p, i, 2), _tv(p, i, 2, True))
        - w(_tv(p, 1, 2), _tv(p, 2, 2), _tv(p, i, 1), _tv(p, i, 1, True))
        for i in p.e_indices()
    )


def build_gamma0_alpha0(params: ModelParams) -> OneFormField:
    """The field X -> g(gamma_0, X) alpha_0."""
    return OneFormField.decomposable(build_gamma0(params), build_alpha0(params))


# ----------------------------------------------------------------------
# the domain T* (x) S^2H Lambda^2_0 E


COORD_SLOTS = ("E", "H", "H", "H", "E", "E")


@dataclass(frozen=True, eq=False)
class DomainElement:
    """An element of T* (x) (S^2H Lambda^2_0 E), held by its coordinates.

    ``coords`` has slots E, H (the T-slot, in the ``to_tensor`` convention
    of OneFormField), then H, H (S^2H) and E, E (Lambda^2_0 E).
    """

    coords: LabeledTensor

    def __post_init__(self):
        if self.coords.slots != COORD_SLOTS:
            raise LabelError(f"coordinates need slots {COORD_SLOTS}, got {self.coords.slots}")

    @property
    def params(self) -> ModelParams:
        return self.coords.params

    @classmethod
    def from_field(cls, field: OneFormField) -> "DomainElement":
        """Coordinates of a Lambda^4-valued field; DomainError unless every value is in the image."""
        t = field.to_tensor()
        p = field.params
        if field.slots != ("E", "H") * 4:
            raise DomainError("field values must be 4-vectors on T")
        buckets: dict[Index, dict] = {}
        for key, v in t.full().entries.items():
            buckets.setdefault(key[:2], {})[key[2:]] = v
        out = LabeledTensor._make(p, COORD_SLOTS, (), {})
        for head, ent in sorted(buckets.items()):
            value = LabeledTensor._make(p, ("E", "H") * 4, (), ent)
            alpha = LabeledTensor._make(p, value.slots, t_form(p, 4).groups,
                                        {k: v for k, v in ent.items()
                                         if t_form(p, 4).groups[0].is_canonical(k)})
            if alpha.full() != value:
                raise DomainError("field value is not alternating")
            pre = embed_preimage(alpha)
            out = out + tensor(t_vector(p, *head).full(), pre)
        return cls(out)

    @property
    def field(self) -> OneFormField:
        p = self.params
        buckets: dict[Index, dict] = {}
        for key, v in self.coords.full().entries.items():
            buckets.setdefault(key[:2], {})[key[2:]] = v
        total = LabeledTensor._make(p, ("E", "H") + ("E", "H") * 4, (), {})
        for head, ent in sorted(buckets.items()):
            z = LabeledTensor._make(p, ("H", "H", "E", "E"), (), ent)
            total = total + tensor(t_vector(p, *head).full(), embed_joint(z).full())
        value_group = t_form(p, 4).groups[0]
        shifted = value_group.remap({q: q + 2 for q in value_group.positions})
        canon = {k: v for k, v in total.entries.items() if shifted.is_canonical(k)}
        return OneFormField.from_tensor(LabeledTensor._make(p, total.slots, (shifted,), canon))

    def __add__(self, other: "DomainElement") -> "DomainElement":
        return DomainElement(self.coords.full() + other.coords.full())

    def __sub__(self, other: "DomainElement") -> "DomainElement":
        return DomainElement(self.coords.full() - other.coords.full())

    def __mul__(self, c) -> "DomainElement":
        return DomainElement(self.coords * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DomainElement):
            return NotImplemented
        return self.coords.full() == other.coords.full()

    __hash__ = None

    def is_zero(self) -> bool:
        return self.coords.is_zero()


def domain_dimension(params: ModelParams) -> int:
    return params.dimT * 3 * len(primitive_basis(params, 2))


def domain_basis(params: ModelParams) -> list[DomainElement]:
    """Elements X (x) u (x) beta over T-basis X, S^2H basis u, Lambda^2_0 E basis beta."""
    out = []
    s2h = s2h_basis(params)
    prim = primitive_basis(params, 2)
    for x in params.tangent_basis():
        xv = t_vector(params, *x).full()
        for u in s2h:
            for beta in prim:
                out.append(DomainElement(tensor(xv, u.full(), beta.full())))
    return out


def domain_basis_element(params: ModelParams, index: int) -> DomainElement:
    """The ``index``-th element of ``domain_basis`` without building the whole list."""
    prim = primitive_basis(params, 2)
    m = len(prim)
    xi, rest = divmod(index, 3 * m)
    k, b = divmod(rest, m)
    x = list(params.tangent_basis())[xi]
    return DomainElement(tensor(t_vector(params, *x).full(), s2h_basis(params)[k].full(), prim[b].full()))
