"""Tensor-valued 1-forms on T, i.e. elements of T* (x) V."""
from __future__ import annotations

from types import MappingProxyType
from typing import Callable, Mapping

from .params import ModelParams, ParameterMismatch
from .scalar import Scalar, as_scalar
from .tensor import LabeledTensor, LabelError, _expand_touching, form_grade

__all__ = ["OneFormField"]

Index = tuple[int, int]


class OneFormField:
    """A linear map from T to ``LabeledTensor`` values, given on the basis e_a h_s.

    Missing keys are zero.  All values share one slot/group signature, which is
    kept even when every value vanishes.
    """

    __slots__ = ("params", "slots", "groups", "_values")

    def __init__(self, params: ModelParams, slots, groups=(), values: Mapping[Index, LabeledTensor] | None = None):
        slots, groups = tuple(slots), tuple(groups)
        clean = {}
        for x, v in (values or {}).items():
            if v.params != params:
                raise ParameterMismatch(f"value at {x} built for {v.params}")
            if v.slots != slots or (v.groups != groups and v):
                raise LabelError(f"value at {x} has signature {v.slots}/{v.groups}")
            if v.groups != groups:
                v = LabeledTensor._make(params, slots, groups, {})
            if v:
                clean[tuple(x)] = v
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "slots", slots)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "_values", clean)

    def __setattr__(self, name, value):
        raise AttributeError("OneFormField is immutable")

    @classmethod
    def like(cls, value: LabeledTensor, values: Mapping[Index, LabeledTensor] | None = None) -> "OneFormField":
        return cls(value.params, value.slots, value.groups, values)

    @classmethod
    def decomposable(cls, gamma: LabeledTensor, alpha: LabeledTensor) -> "OneFormField":
        """The field X -> g(gamma, X) alpha for a vector gamma on T."""
        if form_grade(gamma) != 1:
            raise ValueError("gamma must be a vector on T")
        p = gamma.params
        values = {}
        for x in p.tangent_basis():
            c = sum((v * p.g(k, x) for k, v in gamma.entries.items()), Scalar(0))
            if c:
                values[x] = alpha * c
        return cls(p, alpha.slots, alpha.groups, values)

    @property
    def values(self) -> Mapping[Index, LabeledTensor]:
        return MappingProxyType(self._values)

    def __call__(self, x: Index) -> LabeledTensor:
        v = self._values.get(tuple(x))
        if v is None:
            return LabeledTensor._make(self.params, self.slots, self.groups, {})
        return v

    def items(self):
        return self._values.items()

    def is_zero(self) -> bool:
        return not self._values

    def map(self, fn: Callable[[LabeledTensor], LabeledTensor], template: LabeledTensor | None = None) -> "OneFormField":
        """Apply a linear map valuewise; ``template`` fixes the output signature on zeros."""
        out = {x: fn(v) for x, v in self._values.items()}
        if template is None:
            template = fn(self(next(iter(self.params.tangent_basis()))))
        return OneFormField(self.params, template.slots, template.groups, out)

    def _check(self, other: "OneFormField"):
        if self.params != other.params:
            raise ParameterMismatch(f"{self.params} vs {other.params}")
        if self.slots != other.slots:
            raise LabelError("fields have different value signatures")

    def __add__(self, other: "OneFormField") -> "OneFormField":
        self._check(other)
        out = dict(self._values)
        for x, v in other._values.items():
            out[x] = out[x] + v if x in out else v
        groups = self.groups if self.groups == other.groups else ()
        out = {x: (v if v.groups == groups else v.full()) for x, v in out.items()}
        return OneFormField(self.params, self.slots, groups, out)

    def __neg__(self):
        return OneFormField(self.params, self.slots, self.groups, {x: -v for x, v in self._values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = as_scalar(c)
        return OneFormField(self.params, self.slots, self.groups, {x: v * c for x, v in self._values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, OneFormField):
            return NotImplemented
        if self.params != other.params or self.slots != other.slots:
            return False
        keys = set(self._values) | set(other._values)
        return all(self(x) == other(x) for x in keys)

    __hash__ = None

    # conversion to and from T (x) V -------------------------------------
    def to_tensor(self) -> LabeledTensor:
        """sum_b b^ (x) value(b), with b^ the g-dual of the basis vector b.

        The result has slots [E, H] followed by the value slots.
        """
        p = self.params
        shift = {q: q + 2 for g in self.groups for q in g.positions}
        groups = tuple(g.remap(shift) for g in self.groups)
        entries = {}
        for x, v in self._values.items():
            c, dual = p.dual_t(x)
            for k, val in v.entries.items():
                key = dual + k
                w = val * c
                entries[key] = entries[key] + w if key in entries else w
        return LabeledTensor._make(p, ("E", "H") + self.slots, groups, entries)

    @classmethod
    def from_tensor(cls, t: LabeledTensor) -> "OneFormField":
        """Inverse of ``to_tensor``: value(x) = g(x, first T-slot) contracted."""
        if t.slots[:2] != ("E", "H"):
            raise LabelError("first two slots must form a T-slot")
        t, _ = _expand_touching(t, (0, 1))
        p = t.params
        shift = {q: q - 2 for g in t.groups for q in g.positions}
        groups = tuple(g.remap(shift) for g in t.groups)
        slots = t.slots[2:]
        buckets: dict[Index, dict] = {}
        for key, val in t.entries.items():
            head = key[:2]
            for x in p.tangent_basis():
                w = p.g(x, head)
                if w:
                    d = buckets.setdefault(x, {})
                    k = key[2:]
                    d[k] = d[k] + val * w if k in d else val * w
        values = {x: LabeledTensor._make(p, slots, groups, d) for x, d in buckets.items()}
        return cls(p, slots, groups, values)

    def __repr__(self):
        return f"OneFormField({''.join(self.slots)}, {len(self._values)} nonzero values)"
