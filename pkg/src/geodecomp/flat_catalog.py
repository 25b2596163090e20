"""Cusp cross-sections: the six orientable flat 3-manifolds and nil manifolds.

Each boundary class carries an orientation.  Eta invariants are stored for one
reference orientation per flat letter (the signs of the standard table); the
opposite orientation negates them.

Two normalizations of the per-cusp signature defect coexist here:

* flat cusps use ``defect = +-eta`` with no factor 1/2, as in Hitchin's
  formula for cusped real-hyperbolic 4-manifolds;
* nil torus cusps (circle bundles over T^2 with Euler number e) use
  ``defect = sign(e) - e/3``, read off from the signature of a toroidal
  compactification.  Their eta invariant is ``-2 * defect``, i.e. the
  Atiyah-Patodi-Singer normalization.

The two never interact: flat and nil cusps cannot be glued to each other, and
in a closed assembly defects cancel in pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class UnsupportedEtaError(ValueError):
    """Raised for boundary classes with no known eta invariant or defect."""


def _sign(n) -> int:
    return (n > 0) - (n < 0)


@dataclass(frozen=True)
class SeifertData:
    """Seifert invariants M(genus; euler_obstruction; r_1, ..., r_n).

    A negative genus denotes a non-orientable base whose first mod-2 Betti
    number is ``-genus``.  Singular fibre invariants are kept in lowest terms
    inside (0, 1).
    """

    genus: int
    euler_obstruction: int
    singular_fibers: tuple = ()

    def __post_init__(self):
        fibres = []
        for r in self.singular_fibers:
            r = Fraction(r)
            r = r - (r.numerator // r.denominator)
            if r == 0:
                raise ValueError("singular fibre invariants must be non-integral")
            fibres.append(r)
        object.__setattr__(self, "singular_fibers", tuple(fibres))

    @property
    def base_euler_characteristic(self) -> int:
        return 2 - 2 * self.genus if self.genus >= 0 else 2 + self.genus

    def euler_number(self) -> Fraction:
        return self.euler_obstruction + sum(self.singular_fibers, Fraction(0))

    def orbifold_euler_characteristic(self) -> Fraction:
        chi = Fraction(self.base_euler_characteristic)
        for r in self.singular_fibers:
            chi -= 1 - Fraction(1, r.denominator)
        return chi

    def label(self) -> str:
        fibres = ",".join(str(r) for r in self.singular_fibers)
        return f"M({self.genus};{self.euler_obstruction};{fibres})"


@dataclass(frozen=True)
class FlatType:
    letter: str
    description: str
    seifert_presentations: tuple
    eta_reference: Fraction
    admits_orientation_reversal: bool


def _sd(genus, e, *fibres):
    return SeifertData(genus, e, tuple(Fraction(f) for f in fibres))


FLAT_TYPES = {
    "A": FlatType("A", "3-torus", (_sd(1, 0),), Fraction(0), True),
    "B": FlatType(
        "B",
        "unit cotangent bundle of the Klein bottle",
        (_sd(0, -2, "1/2", "1/2", "1/2", "1/2"), _sd(-2, 0)),
        Fraction(0),
        True,
    ),
    "C": FlatType("C", "third-turn flat manifold", (_sd(0, -1, "1/3", "1/3", "1/3"),), Fraction(-2, 3), False),
    "D": FlatType("D", "quarter-turn flat manifold", (_sd(0, -1, "1/2", "1/4", "1/4"),), Fraction(-1), False),
    "E": FlatType(
        "E", "0-surgery on the trefoil", (_sd(0, -1, "1/2", "1/3", "1/6"),), Fraction(-4, 3), False
    ),
    "F": FlatType("F", "Hantzsche-Wendt manifold", (_sd(-1, -1, "1/2", "1/2"),), Fraction(0), True),
}

LETTERS = tuple(FLAT_TYPES)


@dataclass(frozen=True)
class FlatBoundary:
    letter: str
    sign: int = 1

    def __post_init__(self):
        if self.letter not in FLAT_TYPES:
            raise ValueError(f"unknown flat type {self.letter!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class NilTorusBoundary:
    """Circle bundle over the torus with non-zero Euler number."""

    euler: int

    def __post_init__(self):
        if self.euler == 0:
            raise ValueError("Euler number 0 is the 3-torus; use nil_torus() or FlatBoundary('A')")


@dataclass(frozen=True)
class NilKleinBoundary:
    """Infranil manifold fibred over the Klein bottle, invariant k, orientation sign."""

    invariant: int
    sign: int = 1

    def __post_init__(self):
        if self.invariant == 0:
            raise ValueError("Klein-base invariant must be non-zero")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def signed_invariant(self) -> int:
        return self.invariant * self.sign


BoundaryClass = Union[FlatBoundary, NilTorusBoundary, NilKleinBoundary]


def nil_torus(euler: int, sign: int = 1) -> BoundaryClass:
    """Circle bundle over T^2; Euler number 0 is normalized to the 3-torus."""
    if euler == 0:
        return FlatBoundary("A", sign)
    return NilTorusBoundary(euler)


def reverse(b: BoundaryClass) -> BoundaryClass:
    if isinstance(b, FlatBoundary):
        return FlatBoundary(b.letter, -b.sign)
    if isinstance(b, NilTorusBoundary):
        return NilTorusBoundary(-b.euler)
    if isinstance(b, NilKleinBoundary):
        return NilKleinBoundary(b.invariant, -b.sign)
    raise TypeError(f"not a boundary class: {b!r}")


def eta(b: BoundaryClass) -> Fraction:
    if isinstance(b, FlatBoundary):
        return b.sign * FLAT_TYPES[b.letter].eta_reference
    if isinstance(b, NilTorusBoundary):
        return _sign(b.euler) * (Fraction(2 * abs(b.euler), 3) - 2)
    raise UnsupportedEtaError(f"no eta invariant available for {b!r}")


def defect(b: BoundaryClass, flat_convention: int = 1) -> Fraction:
    """Per-cusp contribution to the signature of a truncated piece.

    ``flat_convention=-1`` flips every flat reference orientation at once;
    invariants of closed assemblies must not depend on it.
    """
    if isinstance(b, FlatBoundary):
        return flat_convention * eta(b)
    if isinstance(b, NilTorusBoundary):
        return _sign(b.euler) - Fraction(b.euler, 3)
    raise UnsupportedEtaError(f"no signature defect available for {b!r}")


def glueable(b1: BoundaryClass, b2: BoundaryClass) -> bool:
    """True when b1 and b2 are orientation-reversingly diffeomorphic."""
    if isinstance(b1, FlatBoundary) and isinstance(b2, FlatBoundary):
        if b1.letter != b2.letter:
            return False
        return FLAT_TYPES[b1.letter].admits_orientation_reversal or b1.sign == -b2.sign
    if isinstance(b1, NilTorusBoundary) and isinstance(b2, NilTorusBoundary):
        return b1.euler == -b2.euler
    if isinstance(b1, NilKleinBoundary) and isinstance(b2, NilKleinBoundary):
        # conservative: Klein-base classes are not assumed to admit
        # orientation-reversing self-diffeomorphisms
        return b1.invariant == b2.invariant and b1.sign == -b2.sign
    return False


def supports_defect(b: BoundaryClass) -> bool:
    return isinstance(b, (FlatBoundary, NilTorusBoundary))


# -- JSON ------------------------------------------------------------------


def boundary_to_json(b: BoundaryClass) -> dict:
    if isinstance(b, FlatBoundary):
        return {"flat": {"letter": b.letter, "sign": b.sign}}
    if isinstance(b, NilTorusBoundary):
        return {"nil_torus": {"euler": b.euler}}
    if isinstance(b, NilKleinBoundary):
        return {"nil_klein": {"k": b.invariant, "sign": b.sign}}
    raise TypeError(f"not a boundary class: {b!r}")


def boundary_from_json(obj: dict) -> BoundaryClass:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"boundary class must be a single-key object, got {obj!r}")
    (kind, body), = obj.items()
    if kind == "flat":
        return FlatBoundary(body["letter"], int(body.get("sign", 1)))
    if kind == "nil_torus":
        return nil_torus(int(body["euler"]))
    if kind == "nil_klein":
        return NilKleinBoundary(int(body["k"]), int(body.get("sign", 1)))
    raise ValueError(f"unknown boundary kind {kind!r}")


def catalog_to_json() -> list:
    rows = []
    for ft in FLAT_TYPES.values():
        rows.append(
            {
                "letter": ft.letter,
                "description": ft.description,
                "seifert": [s.label() for s in ft.seifert_presentations],
                "eta": format_rational(ft.eta_reference),
                "admits_orientation_reversal": ft.admits_orientation_reversal,
            }
        )
    return rows


def format_rational(q) -> Union[int, str]:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
