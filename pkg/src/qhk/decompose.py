"""Splitting the domain into its six irreducible summands.

On coordinates (slots E, H | H, H | E, E) the H-slots carry H (x) S^2H,
split into its totally symmetric part S^3H and the remainder (a copy of H).
The E-slots carry E (x) Lambda^2_0 E, split by ``e_split`` into
Lambda^3_0 E, E and K.  The six summands are the products of the two
splittings.
"""
from __future__ import annotations

from .model import DomainElement, DomainError
from .operators import e_split
from .tensor import sym_group

__all__ = ["SUMMANDS", "FORBIDDEN", "ALLOWED", "decompose", "h_split"]

SUMMANDS = ("HE", "HL3", "HK", "S3HE", "S3HL3", "S3HK")
# Summands on which some pipeline acts by a nonzero scalar.
FORBIDDEN = ("HE", "HK", "S3HE", "S3HL3")
ALLOWED = ("HL3", "S3HK")

E_POSITIONS = (0, 4, 5)
H_POSITIONS = (1, 2, 3)


def h_split(coords):
    """(H part, S^3H part) of a coordinate tensor."""
    s3 = sym_group(coords, H_POSITIONS).full()
    return coords.full() - s3, s3


def decompose(eta: DomainElement) -> dict[str, DomainElement]:
    """The six components of eta, keyed by SUMMANDS; they sum back to eta."""
    if not isinstance(eta, DomainElement):
        raise DomainError("decompose needs a DomainElement (use DomainElement.from_field)")
    out = {}
    for hname, part in zip(("H", "S3H"), h_split(eta.coords)):
        pieces = e_split(part, E_POSITIONS)
        for ename, key in (("E", "E"), ("L3", "L3"), ("K", "K")):
            out[hname + ename] = DomainElement(pieces[key])
    return {name: out[name] for name in SUMMANDS}
