"""Model size and basis conventions shared by every module.

E has basis e_1..e_2n with e_{n+j} = j_E(e_j); H has basis h (index 1) and
h~ = j_H(h) (index 2).  The symplectic forms are

    omega_E(e_j, e_{n+j}) = 1,    omega_H(h, h~) = omega_h_sign,

all other basis pairings vanish.  The complexified metric on T = E (x) H is
g(e_a h_s, e_b h_t) = omega_E(e_a, e_b) * omega_H(h_s, h_t).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class ParameterMismatch(ValueError):
    """Raised when values built for different ``ModelParams`` are combined."""


@dataclass(frozen=True)
class ModelParams:
    n: int
    # Test knob: -1 flips the sign of omega_H (and therefore of g).
    omega_h_sign: int = 1

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise TypeError("n must be an integer")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.omega_h_sign not in (1, -1):
            raise ValueError("omega_h_sign must be +1 or -1")

    @property
    def dimE(self) -> int:
        return 2 * self.n

    @property
    def dimH(self) -> int:
        return 2

    @property
    def dimT(self) -> int:
        return 4 * self.n

    # symplectic pairings --------------------------------------------------
    def omega_e(self, a: int, b: int) -> int:
        n = self.n
        if a <= n and b == a + n:
            return 1
        if b <= n and a == b + n:
            return -1
        return 0

    def omega_h(self, s: int, t: int) -> int:
        if (s, t) == (1, 2):
            return self.omega_h_sign
        if (s, t) == (2, 1):
            return -self.omega_h_sign
        return 0

    def pairing(self, label: str, i: int, j: int) -> int:
        return self.omega_e(i, j) if label == "E" else self.omega_h(i, j)

    def g(self, x: tuple[int, int], y: tuple[int, int]) -> int:
        return self.omega_e(x[0], y[0]) * self.omega_h(x[1], y[1])

    # quaternionic structure on basis vectors ---------------------------------
    def tilde_e(self, a: int) -> tuple[int, int]:
        """j_E(e_a) as (coefficient, index)."""
        n = self.n
        return (1, a + n) if a <= n else (-1, a - n)

    def tilde_h(self, s: int) -> tuple[int, int]:
        return (1, 2) if s == 1 else (-1, 1)

    # symplectic duals: omega(dual(x), x') = delta(x, x') ----------------------
    def partner_e(self, a: int) -> int:
        n = self.n
        return a + n if a <= n else a - n

    def dual_e(self, a: int) -> tuple[int, int]:
        b = self.partner_e(a)
        return self.omega_e(b, a), b

    def dual_h(self, s: int) -> tuple[int, int]:
        t = 3 - s
        return self.omega_h(t, s), t

    def dual_t(self, x: tuple[int, int]) -> tuple[int, tuple[int, int]]:
        """The vector x^ with g(x^, y) = delta(x, y), as (coefficient, index)."""
        ce, a = self.dual_e(x[0])
        ch, s = self.dual_h(x[1])
        return ce * ch, (a, s)

    def e_indices(self) -> range:
        return range(1, 2 * self.n + 1)

    def tangent_basis(self) -> Iterator[tuple[int, int]]:
        for a in self.e_indices():
            for s in (1, 2):
                yield (a, s)
