"""Sparse multilinear elements with E/H-labelled slots.

A ``LabeledTensor`` stores the components of a tensor in a product of copies
of E and H.  Slot positions may be collected into symmetry groups; a group
permutes *blocks* of slots (single slots for E- or H-tensors, ``(E, H)``
pairs for multivectors on T = E (x) H).  For a grouped tensor only the
canonical components are stored: block values strictly increasing inside an
alternating group, weakly increasing inside a symmetric one.  The stored
number is the component of the full tensor at that index, so with this
convention ``v1 ^ v2 = v1 (x) v2 - v2 (x) v1``.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .params import ModelParams, ParameterMismatch
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Group",
    "LabeledTensor",
    "LabelError",
    "DegreeError",
    "tensor",
    "tsum",
    "permute",
    "expand",
    "impose",
    "contract_pair",
    "alt_group",
    "sym_group",
    "wedge",
    "interior",
    "t_form",
    "t_vector",
    "e_vector",
    "h_vector",
    "scalar_tensor",
    "form_grade",
    "apply_linear",
]

LABELS = ("E", "H")


class LabelError(ValueError):
    """Operation would pair or group slots carrying different labels."""


class DegreeError(ValueError):
    """Operation received a tensor of unsuitable grade."""


@dataclass(frozen=True)
class Group:
    kind: str  # "alt" or "sym"
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.kind not in ("alt", "sym"):
            raise ValueError(f"unknown group kind {self.kind!r}")

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(p for b in self.blocks for p in b)

    def values(self, key) -> list[tuple[int, ...]]:
        return [tuple(key[p] for p in b) for b in self.blocks]

    def is_canonical(self, key) -> bool:
        vals = self.values(key)
        if self.kind == "alt":
            return all(vals[i] < vals[i + 1] for i in range(len(vals) - 1))
        return all(vals[i] <= vals[i + 1] for i in range(len(vals) - 1))

    def remap(self, mapping) -> "Group":
        return Group(self.kind, tuple(tuple(mapping[p] for p in b) for b in self.blocks))


@lru_cache(maxsize=None)
def _perms_with_sign(k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for perm in itertools.permutations(range(k)):
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        out.append((perm, -1 if inv % 2 else 1))
    return tuple(out)


def _sort_sign(items: list) -> tuple[list, int]:
    """Sort a short list; return (sorted, sign of the sorting permutation) or sign 0 on repeats."""
    k = len(items)
    inv = 0
    for i in range(k):
        for j in range(i + 1, k):
            if items[i] > items[j]:
                inv += 1
            elif items[i] == items[j]:
                return items, 0
    return sorted(items), (-1 if inv % 2 else 1)


class LabeledTensor:
    __slots__ = ("params", "slots", "groups", "_entries")

    def __init__(
        self,
        params: ModelParams,
        slots: Sequence[str],
        groups: Sequence[Group] = (),
        entries: Mapping[tuple, object] | None = None,
        *,
        check: bool = True,
    ):
        slots = tuple(slots)
        groups = tuple(groups)
        clean: dict[tuple, Scalar] = {}
        if entries:
            for k, v in entries.items():
                s = as_scalar(v) if check else v
                if s:
                    clean[tuple(k)] = s
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "slots", slots)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "_entries", clean)
        if check:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("LabeledTensor is immutable")

    @classmethod
    def _make(cls, params, slots, groups, entries: dict) -> "LabeledTensor":
        """Trusted constructor: ``entries`` must already be canonical and zero-free."""
        t = object.__new__(cls)
        object.__setattr__(t, "params", params)
        object.__setattr__(t, "slots", tuple(slots))
        object.__setattr__(t, "groups", tuple(groups))
        object.__setattr__(t, "_entries", {k: v for k, v in entries.items() if v})
        return t

    def _validate(self):
        for lab in self.slots:
            if lab not in LABELS:
                raise LabelError(f"slot label must be E or H, got {lab!r}")
        seen = set()
        for g in self.groups:
            pattern = None
            for b in g.blocks:
                labs = tuple(self.slots[p] for p in b)
                if pattern is None:
                    pattern = labs
                elif labs != pattern:
                    raise LabelError("blocks of one group must carry identical labels")
                for p in b:
                    if p in seen:
                        raise ValueError(f"slot {p} belongs to two groups")
                    seen.add(p)
        hi = {"E": self.params.dimE, "H": 2}
        for key in self._entries:
            if len(key) != len(self.slots):
                raise ValueError(f"index tuple {key} does not match {len(self.slots)} slots")
            for lab, i in zip(self.slots, key):
                if not 1 <= i <= hi[lab]:
                    raise ValueError(f"index {i} out of range for an {lab}-slot")
            for g in self.groups:
                if not g.is_canonical(key):
                    raise ValueError(f"index tuple {key} is not canonical for {g}")

    def _validate_labels(self):
        for g in self.groups:
            if len({tuple(self.slots[p] for p in b) for b in g.blocks}) > 1:
                raise LabelError("blocks of one group must carry identical labels")

    # ------------------------------------------------------------------
    @property
    def entries(self) -> Mapping[tuple, Scalar]:
        return MappingProxyType(self._entries)

    @property
    def signature(self) -> tuple:
        return (self.slots, self.groups)

    def __len__(self):
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def __bool__(self):
        return bool(self._entries)

    def coeff(self, key) -> Scalar:
        return self._entries.get(tuple(key), ZERO)

    def full(self) -> "LabeledTensor":
        """The same tensor with every symmetry group expanded."""
        t = self
        while t.groups:
            t = expand(t, 0)
        return t

    def _compatible(self, other: "LabeledTensor"):
        if not isinstance(other, LabeledTensor):
            raise TypeError(f"expected LabeledTensor, got {type(other).__name__}")
        if self.params != other.params:
            raise ParameterMismatch(f"{self.params} vs {other.params}")
        if self.slots != other.slots:
            raise LabelError(f"slot signatures differ: {self.slots} vs {other.slots}")

    def _aligned(self, other):
        self._compatible(other)
        if self.groups == other.groups:
            return self, other
        return self.full(), other.full()

    def __add__(self, other):
        a, b = self._aligned(other)
        out = dict(a._entries)
        for k, v in b._entries.items():
            out[k] = out[k] + v if k in out else v
        return LabeledTensor._make(a.params, a.slots, a.groups, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LabeledTensor._make(self.params, self.slots, self.groups,
                                   {k: -v for k, v in self._entries.items()})

    def __mul__(self, c):
        c = as_scalar(c)
        if not c:
            return self.zero_like()
        return LabeledTensor._make(self.params, self.slots, self.groups,
                                   {k: v * c for k, v in self._entries.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (ONE / as_scalar(c))

    def __eq__(self, other):
        if not isinstance(other, LabeledTensor):
            return NotImplemented
        if self.params != other.params or self.slots != other.slots:
            return False
        a, b = self._aligned(other)
        return a._entries == b._entries

    def __hash__(self):
        return hash((self.params, self.slots, len(self._entries)))

    def zero_like(self) -> "LabeledTensor":
        return LabeledTensor._make(self.params, self.slots, self.groups, {})

    def conj(self) -> "LabeledTensor":
        """Entrywise complex conjugation of the components."""
        return LabeledTensor._make(self.params, self.slots, self.groups,
                                   {k: v.conj() for k, v in self._entries.items()})

    # serialization ------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"n: {self.params.n}", "slots: " + " ".join(self.slots)]
        for g in self.groups:
            blocks = ";".join(",".join(str(p) for p in b) for b in g.blocks)
            lines.append(f"group: {g.kind} {blocks}")
        for k in sorted(self._entries):
            lines.append(f"({','.join(map(str, k))}) {self._entries[k]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, params: ModelParams | None = None) -> "LabeledTensor":
        slots: tuple = ()
        groups = []
        entries = {}
        n = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("n:"):
                n = int(line[2:])
            elif line.startswith("slots:"):
                slots = tuple(line[6:].split())
            elif line.startswith("group:"):
                kind, blocks = line[6:].split()
                groups.append(Group(kind, tuple(tuple(int(p) for p in b.split(","))
                                                for b in blocks.split(";"))))
            else:
                m = re.match(r"^\(([\d,]*)\)\s+(\S+)$", line)
                if not m:
                    raise ValueError(f"bad tensor line: {raw!r}")
                key = tuple(int(x) for x in m.group(1).split(",") if x)
                entries[key] = Scalar.parse(m.group(2))
        if params is None:
            if n is None:
                raise ValueError("serialized tensor carries no n")
            params = ModelParams(n)
        elif n is not None and n != params.n:
            raise ParameterMismatch(f"serialized n={n}, expected {params.n}")
        return cls(params, slots, groups, entries)

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self._entries.items())[:6])
        more = "" if len(self._entries) <= 6 else f", ... ({len(self._entries)} terms)"
        return f"LabeledTensor({''.join(self.slots)}, {{{body}{more}}})"


# ----------------------------------------------------------------------
# constructors


def scalar_tensor(params: ModelParams, c) -> LabeledTensor:
    return LabeledTensor(params, (), (), {(): c})


def e_vector(params: ModelParams, a: int, c=1) -> LabeledTensor:
    return LabeledTensor(params, ("E",), (), {(a,): c})


def h_vector(params: ModelParams, s: int, c=1) -> LabeledTensor:
    return LabeledTensor(params, ("H",), (), {(s,): c})


def _t_group(p: int) -> tuple[Group, ...]:
    if p == 0:
        return ()
    return (Group("alt", tuple((2 * k, 2 * k + 1) for k in range(p))),)


def t_form(params: ModelParams, p: int, entries: Mapping | None = None) -> LabeledTensor:
    """A p-vector on T; keys are flat tuples (a1, s1, ..., ap, sp)."""
    return LabeledTensor(params, ("E", "H") * p, _t_group(p), entries or {})


def t_vector(params: ModelParams, a: int, s: int, c=1) -> LabeledTensor:
    return t_form(params, 1, {(a, s): c})


def form_grade(t: LabeledTensor) -> int:
    """Grade of a multivector on T, or DegreeError if ``t`` is not one."""
    p = len(t.slots) // 2
    if t.slots != ("E", "H") * p or t.groups != _t_group(p):
        raise DegreeError(f"not an alternating tensor over T: {t.slots}, {t.groups}")
    return p


def tsum(items: Iterable[LabeledTensor], start: LabeledTensor | None = None) -> LabeledTensor:
    total = start
    for t in items:
        total = t if total is None else total + t
    if total is None:
        raise ValueError("tsum of an empty sequence needs a start value")
    return total


# ----------------------------------------------------------------------
# structural operations


def tensor(*ts: LabeledTensor) -> LabeledTensor:
    """Tensor (outer) product, slots concatenated left to right."""
    out = ts[0]
    for t in ts[1:]:
        if t.params != out.params:
            raise ParameterMismatch(f"{out.params} vs {t.params}")
        shift = len(out.slots)
        groups = out.groups + tuple(g.remap({p: p + shift for p in g.positions}) for g in t.groups)
        entries = {}
        for k1, v1 in out._entries.items():
            for k2, v2 in t._entries.items():
                entries[k1 + k2] = v1 * v2
        out = LabeledTensor._make(out.params, out.slots + t.slots, groups, entries)
    return out


def permute(t: LabeledTensor, order: Sequence[int]) -> LabeledTensor:
    """Reorder slots: new slot k is old slot ``order[k]``."""
    order = tuple(order)
    if sorted(order) != list(range(len(t.slots))):
        raise ValueError(f"{order} is not a permutation of the slots")
    inv = {old: new for new, old in enumerate(order)}
    slots = tuple(t.slots[o] for o in order)
    groups = tuple(g.remap(inv) for g in t.groups)
    entries = {tuple(k[o] for o in order): v for k, v in t._entries.items()}
    return LabeledTensor._make(t.params, slots, groups, entries)


def expand(t: LabeledTensor, index: int) -> LabeledTensor:
    """Drop symmetry group ``index``, materialising every permuted component."""
    g = t.groups[index]
    rest = t.groups[:index] + t.groups[index + 1:]
    k = len(g.blocks)
    perms = _perms_with_sign(k)
    out: dict[tuple, Scalar] = {}
    for key, val in t._entries.items():
        vals = g.values(key)
        done = set()
        for perm, sign in perms:
            new = list(key)
            for bi, src in enumerate(perm):
                for p, x in zip(g.blocks[bi], vals[src]):
                    new[p] = x
            nk = tuple(new)
            if g.kind == "sym":
                if nk in done:
                    continue
                done.add(nk)
                out[nk] = val
            else:
                out[nk] = val if sign > 0 else -val
    return LabeledTensor._make(t.params, t.slots, rest, out)


def impose(t: LabeledTensor, group: Group, check: bool = False) -> LabeledTensor:
    """Declare ``group`` as a symmetry of ``t`` and keep canonical components only.

    With ``check`` the claimed symmetry is verified exactly.
    """
    taken = {p for g in t.groups for p in g.positions}
    if taken & set(group.positions):
        raise ValueError("group overlaps an existing symmetry group")
    out = LabeledTensor._make(t.params, t.slots, t.groups + (group,),
                              {k: v for k, v in t._entries.items() if group.is_canonical(k)})
    out._validate_labels()
    if check and expand(out, len(out.groups) - 1) != t:
        raise ValueError(f"tensor is not {group.kind}-symmetric in {group.blocks}")
    return out


def _expand_touching(t: LabeledTensor, positions) -> tuple[LabeledTensor, list[Group]]:
    """Expand every group meeting ``positions``; return it with the expanded groups."""
    positions = set(positions)
    expanded = []
    i = 0
    while i < len(t.groups):
        g = t.groups[i]
        if positions & set(g.positions):
            expanded.append(g)
            t = expand(t, i)
        else:
            i += 1
    return t, expanded


def _drop_positions(t_groups, expanded, removed: Sequence[int], nslots: int):
    """Position map after deleting ``removed`` and surviving groups (re-imposable)."""
    removed = set(removed)
    mapping = {}
    j = 0
    for p in range(nslots):
        if p not in removed:
            mapping[p] = j
            j += 1
    kept = tuple(g.remap(mapping) for g in t_groups)
    reimpose = []
    for g in expanded:
        blocks = [b for b in g.blocks if not removed & set(b)]
        if len(blocks) >= 2:
            reimpose.append(Group(g.kind, tuple(tuple(mapping[p] for p in b) for b in blocks)))
    return mapping, kept, reimpose


def contract_pair(t: LabeledTensor, i: int, j: int) -> LabeledTensor:
    """Contract slots i and j with omega_E or omega_H (according to their label).

    The pairing is applied in the order given: omega(index_i, index_j).
    """
    if i == j:
        raise ValueError("cannot contract a slot with itself")
    if t.slots[i] != t.slots[j]:
        raise LabelError(f"cannot contract an {t.slots[i]}-slot with an {t.slots[j]}-slot")
    label = t.slots[i]
    full, expanded = _expand_touching(t, (i, j))
    mapping, kept, reimpose = _drop_positions(full.groups, expanded, (i, j), len(t.slots))
    pairing = t.params.pairing
    keep = [p for p in range(len(t.slots)) if p not in (i, j)]
    out: dict[tuple, Scalar] = {}
    for key, val in full._entries.items():
        w = pairing(label, key[i], key[j])
        if not w:
            continue
        nk = tuple(key[p] for p in keep)
        v = val if w == 1 else (-val if w == -1 else val * w)
        out[nk] = out[nk] + v if nk in out else v
    res = LabeledTensor._make(t.params, tuple(t.slots[p] for p in keep), kept, out)
    for g in reimpose:
        res = impose(res, g)
    return res


def _project_group(t: LabeledTensor, positions: Sequence[int], kind: str) -> LabeledTensor:
    positions = tuple(sorted(positions))
    labels = {t.slots[p] for p in positions}
    if len(labels) != 1:
        raise LabelError(f"positions {positions} carry mixed labels {sorted(labels)}")
    full, _ = _expand_touching(t, positions)
    k = len(positions)
    norm = Scalar(1, 0) / math.factorial(k)
    out: dict[tuple, Scalar] = {}
    for key, val in full._entries.items():
        vals = [key[p] for p in positions]
        for perm, sign in _perms_with_sign(k):
            new = list(key)
            for p, src in zip(positions, perm):
                new[p] = vals[src]
            nk = tuple(new)
            v = val if (kind == "sym" or sign > 0) else -val
            out[nk] = out[nk] + v if nk in out else v
    res = LabeledTensor._make(t.params, t.slots, full.groups,
                              {k2: v * norm for k2, v in out.items()})
    return impose(res, Group(kind, tuple((p,) for p in positions)))


def alt_group(t: LabeledTensor, positions: Sequence[int]) -> LabeledTensor:
    """Antisymmetrising projector (1/k!) sum sign(s) s over same-label slots."""
    return _project_group(t, positions, "alt")


def sym_group(t: LabeledTensor, positions: Sequence[int]) -> LabeledTensor:
    """Symmetrising projector (1/k!) sum s over same-label slots."""
    return _project_group(t, positions, "sym")


# ----------------------------------------------------------------------
# exterior algebra


def _single_alt(t: LabeledTensor) -> Group:
    if len(t.groups) != 1 or t.groups[0].kind != "alt" or \
            sorted(t.groups[0].positions) != list(range(len(t.slots))):
        if not t.slots:
            return Group("alt", ())
        if len(t.slots) <= 2 and not t.groups and len(set(t.slots)) == len(t.slots):
            # a bare vector (one slot, or one E-H pair)
            return Group("alt", (tuple(range(len(t.slots))),))
        raise DegreeError("wedge needs fully alternating operands")
    return t.groups[0]


def wedge(u: LabeledTensor, v: LabeledTensor) -> LabeledTensor:
    """Exterior product of two alternating tensors with blocks of the same shape."""
    if u.params != v.params:
        raise ParameterMismatch(f"{u.params} vs {v.params}")
    gu, gv = _single_alt(u), _single_alt(v)
    if not gu.blocks:
        return _scale_by_scalar_tensor(u, v)
    if not gv.blocks:
        return _scale_by_scalar_tensor(v, u)
    width = len(gu.blocks[0])
    shape_u = tuple(u.slots[p] for p in gu.blocks[0])
    shape_v = tuple(v.slots[p] for p in gv.blocks[0])
    if shape_u != shape_v:
        raise LabelError(f"block shapes differ: {shape_u} vs {shape_v}")
    p, q = len(gu.blocks), len(gv.blocks)
    out: dict[tuple, Scalar] = {}
    for ku, cu in u._entries.items():
        bu = gu.values(ku)
        for kv, cv in v._entries.items():
            blocks, sign = _sort_sign(bu + gv.values(kv))
            if not sign:
                continue
            nk = tuple(x for b in blocks for x in b)
            c = cu * cv
            if sign < 0:
                c = -c
            out[nk] = out[nk] + c if nk in out else c
    slots = shape_u * (p + q)
    group = Group("alt", tuple(tuple(range(width * k, width * (k + 1))) for k in range(p + q)))
    return LabeledTensor._make(u.params, slots, (group,), out)


def _scale_by_scalar_tensor(s: LabeledTensor, t: LabeledTensor) -> LabeledTensor:
    return t * s.coeff(())


def interior(x: LabeledTensor, alpha: LabeledTensor) -> LabeledTensor:
    """Interior product i_x(alpha) of a vector x on T with a multivector on T.

    i_x(v1 ^ ... ^ vp) = sum_k (-1)^(k+1) g(x, v_k) v1 ^ .. (v_k omitted) .. ^ vp.
    """
    if x.params != alpha.params:
        raise ParameterMismatch(f"{x.params} vs {alpha.params}")
    if form_grade(x) != 1:
        raise DegreeError("interior product needs a vector as first argument")
    p = form_grade(alpha)
    if p < 1:
        raise DegreeError("interior product of a grade-0 element")
    g = alpha.params.g
    out: dict[tuple, Scalar] = {}
    for kx, cx in x._entries.items():
        for key, val in alpha._entries.items():
            for k in range(p):
                w = g(kx, key[2 * k:2 * k + 2])
                if not w:
                    continue
                nk = key[:2 * k] + key[2 * k + 2:]
                c = cx * val * w
                if k % 2:
                    c = -c
                out[nk] = out[nk] + c if nk in out else c
    return LabeledTensor._make(alpha.params, ("E", "H") * (p - 1), _t_group(p - 1), out)


def apply_linear(t: LabeledTensor, label: str, matrix: Mapping[int, Mapping[int, object]]) -> LabeledTensor:
    """Act on every ``label``-slot with the linear map ``matrix[col][row]``.

    ``matrix[j]`` lists the image of basis vector j as {i: coefficient}.
    Symmetry groups are preserved because the action is diagonal.
    """
    full = t.full()
    positions = [p for p, lab in enumerate(t.slots) if lab == label]
    out: dict[tuple, Scalar] = {}
    for key, val in full._entries.items():
        partial = {key: val}
        for p in positions:
            nxt: dict[tuple, Scalar] = {}
            for k, v in partial.items():
                for i, c in matrix.get(k[p], {}).items():
                    nk = k[:p] + (i,) + k[p + 1:]
                    w = v * c
                    nxt[nk] = nxt[nk] + w if nk in nxt else w
            partial = nxt
        for k, v in partial.items():
            out[k] = out[k] + v if k in out else v
    res = LabeledTensor._make(t.params, t.slots, (), out)
    for g in t.groups:
        res = impose(res, g)
    return res
