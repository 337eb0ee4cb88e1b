"""Exact sparse linear algebra over the Gaussian rationals.

Vectors and matrix rows are dicts ``{index: value}``.  Forward elimination
is fraction-free when every entry is a Gaussian integer: rows are cleared of
denominators up front and combined as ``a*r - b*p``, then divided by the
content of the result, so no intermediate fractions appear.
"""
from __future__ import annotations

from functools import reduce
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping, Sequence

from gmpy2 import mpq

from .scalar import ONE, Scalar, as_scalar

__all__ = ["Echelon", "rank", "nullspace", "LeftInverse", "InconsistentSystem"]

Row = dict


class InconsistentSystem(ValueError):
    """A linear system has no solution."""


def _integral(row: Mapping) -> dict:
    """Scale a row to coprime Gaussian-integer entries (real rows stay real)."""
    row = {k: as_scalar(v) for k, v in row.items() if v}
    if not row:
        return {}
    den = reduce(lcm, (int(v.re.denominator) * int(v.im.denominator) for v in row.values()), 1)
    out = {k: v * den for k, v in row.items()}
    return _primitive(out)


def _primitive(row: dict) -> dict:
    if all(not v.im for v in row.values()):
        g = reduce(gcd, (int(v.re.numerator) for v in row.values()), 0)
        if g > 1:
            q = mpq(g)
            return {k: Scalar._raw(v.re / q, v.im) for k, v in row.items()}
    return row


def _combine(a: Scalar, r: dict, b: Scalar, p: dict) -> dict:
    """a*r - b*p with zeros dropped."""
    out = {k: v * a for k, v in r.items()}
    for k, v in p.items():
        w = out.get(k)
        w = -(v * b) if w is None else w - v * b
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incremental row echelon form keyed by leading column.

    ``order`` fixes the column order used to pick leading entries.
    """

    def __init__(self, order: Sequence[Hashable] | None = None):
        self._pos = None if order is None else {c: i for i, c in enumerate(order)}
        self.pivots: dict[Hashable, dict] = {}

    def _lead(self, row: dict):
        if self._pos is None:
            return min(row)
        return min(row, key=self._pos.__getitem__)

    def reduce(self, row: Mapping) -> dict:
        r = _integral(dict(row))
        while r:
            c = self._lead(r)
            p = self.pivots.get(c)
            if p is None:
                return r
            r = _primitive(_combine(p[c], r, r[c], p))
        return r

    def add(self, row: Mapping) -> bool:
        """Insert a row; returns True when it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[self._lead(r)] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref(self) -> dict[Hashable, dict]:
        """Reduced rows with leading coefficient 1 (rational entries)."""
        cols = sorted(self.pivots, key=(lambda c: c) if self._pos is None else self._pos.__getitem__)
        done: dict[Hashable, dict] = {}
        for c in reversed(cols):
            r = dict(self.pivots[c])
            for c2 in list(r):
                if c2 != c and c2 in done:
                    f = r[c2]
                    for k, v in done[c2].items():
                        w = r.get(k)
                        w = -(v * f) if w is None else w - v * f
                        if w:
                            r[k] = w
                        else:
                            r.pop(k, None)
            lead = ONE / r[c]
            done[c] = {k: v * lead for k, v in r.items()}
        return done


def rank(rows: Iterable[Mapping]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(columns: Sequence[Mapping], nrows_hint: int | None = None) -> list[dict[int, Scalar]]:
    """Basis of {x : sum_j x_j columns[j] = 0}; vectors keyed by column number.

    The matrix is given column-wise; elimination runs on its transpose-free
    row form, with unknowns ordered by column number.
    """
    rows: dict[Hashable, dict] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    ech = Echelon(order=range(len(columns)))
    for i in sorted(rows, key=repr):
        ech.add(rows[i])
    red = ech.rref()
    pivots = set(red)
    basis = []
    for f in range(len(columns)):
        if f in pivots:
            continue
        vec = {f: ONE}
        for c, r in red.items():
            v = r.get(f)
            if v:
                vec[c] = -v
        basis.append(_integral(vec))
    return basis


class LeftInverse:
    """Solve ``sum_j x_j columns[j] = v`` for vectors in the column span.

    Built once per matrix; ``solve`` raises ``InconsistentSystem`` when v is
    outside the span.  Columns must be linearly independent.
    """

    def __init__(self, columns: Sequence[Mapping]):
        self.columns = [dict(c) for c in columns]
        k = len(self.columns)
        # Augment each column with an identity tag so that row reduction of the
        # transposed system records the combination producing every pivot.
        ech = Echelon()
        self._rows: dict[Hashable, dict] = {}
        for j, col in enumerate(self.columns):
            aug = {("v", i): v for i, v in col.items()}
            aug[("x", j)] = ONE
            if not any(key[0] == "v" for key in ech.reduce(aug)):
                raise ValueError("columns are linearly dependent")
            ech.add(aug)
        red = ech.rref()
        # every reduced row: leading ("v", i) -> combination of x's
        self._lead = {}
        for c, r in red.items():
            if c[0] != "v":
                raise ValueError("columns are linearly dependent")
            self._lead[c[1]] = (
                {key[1]: val for key, val in r.items() if key[0] == "v"},
                {key[1]: val for key, val in r.items() if key[0] == "x"},
            )
        self.size = k

    def solve(self, v: Mapping) -> dict[int, Scalar]:
        rest = dict(v)
        x: dict[int, Scalar] = {}
        for i, (vpart, xpart) in self._lead.items():
            c = rest.get(i)
            if not c:
                continue
            for k, val in vpart.items():
                w = rest.get(k)
                w = -(val * c) if w is None else w - val * c
                if w:
                    rest[k] = w
                else:
                    rest.pop(k, None)
            for j, val in xpart.items():
                w = x.get(j)
                w = val * c if w is None else w + val * c
                if w:
                    x[j] = w
                else:
                    x.pop(j, None)
        if rest:
            raise InconsistentSystem("vector is not in the column span")
        return x
