"""Exact Gaussian rationals ``a + b*i`` with arbitrary-precision parts."""
from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

__all__ = ["Scalar", "ZERO", "ONE", "I", "as_scalar"]

_PART = r"[+-]?\d+(?:/\d+)?"
_FULL_RE = re.compile(rf"^({_PART})([+-]\d+(?:/\d+)?)\*i$")
_IMAG_RE = re.compile(rf"^({_PART})\*i$")
_REAL_RE = re.compile(rf"^({_PART})$")


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, str)):
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _fmt(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Scalar:
    """Immutable exact complex rational.

    Parts are kept as reduced ``gmpy2.mpq`` values, so the canonical form
    (reduced fraction, positive denominator) holds by construction.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> "Scalar":
        s = object.__new__(cls)
        object.__setattr__(s, "re", re)
        object.__setattr__(s, "im", im)
        return s

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = as_scalar(other)
        return Scalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_scalar(other)
        return Scalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        o = as_scalar(other)
        if not self.im and not o.im:
            return Scalar._raw(self.re * o.re, self.im)
        return Scalar._raw(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_scalar(other)
        if not o:
            raise ZeroDivisionError("Scalar division by zero")
        if not o.im:
            return Scalar._raw(self.re / o.re, self.im / o.re)
        d = o.re * o.re + o.im * o.im
        return Scalar._raw((self.re * o.re + self.im * o.im) / d,
                           (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conj(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    # comparison -----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def to_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return Fraction(int(self.re.numerator), int(self.re.denominator))

    # serialization --------------------------------------------------------
    def __str__(self):
        if not self.im:
            return _fmt(self.re)
        if not self.re:
            return f"{_fmt(self.im)}*i"
        sign = "+" if self.im > 0 else ""
        return f"{_fmt(self.re)}{sign}{_fmt(self.im)}*i"

    def __repr__(self):
        return f"Scalar('{self}')"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Inverse of ``str``: accepts ``p/q``, ``r/s*i`` and ``p/q+r/s*i``."""
        t = text.strip().replace(" ", "")
        m = _FULL_RE.match(t)
        if m:
            return cls(m.group(1), m.group(2).lstrip("+"))
        m = _IMAG_RE.match(t)
        if m:
            return cls(0, m.group(1))
        m = _REAL_RE.match(t)
        if m:
            return cls(m.group(1))
        raise ValueError(f"not a scalar literal: {text!r}")


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact")
    return Scalar(x)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
