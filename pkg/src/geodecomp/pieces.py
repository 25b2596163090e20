"""Truncated geometric 4-manifold pieces and their signatures.

A piece is described by its geometry, an orientation flag, its Euler
characteristic and the ordered list of its cusp cross-sections.  Two
signatures are attached:

* ``sigma_l2``: the curvature integral of the signature density.  It vanishes
  for every geometry except the complex-hyperbolic one, where Hirzebruch
  proportionality gives ``orientation * chi / 3``.
* ``sigma_top``: the signature of the compact truncated manifold, i.e.
  ``sigma_l2`` plus one boundary defect per cusp.  For a complex-hyperbolic
  piece in the complex orientation this is ``chi/3 - sum(n_i/3 - 1)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .flat_catalog import (
    BoundaryClass,
    FlatBoundary,
    NilKleinBoundary,
    NilTorusBoundary,
    boundary_from_json,
    boundary_to_json,
    defect,
    nil_torus,
    reverse,
    supports_defect,
)
from .sl2_monodromy import PuncturedSurfaceBundle, classify_parabolic


class Geometry(enum.Enum):
    REAL_HYPERBOLIC = "real_hyperbolic"
    COMPLEX_HYPERBOLIC = "complex_hyperbolic"
    F4 = "f4"
    H3xE1 = "h3xe1"
    H2xE2 = "h2xe2"
    H2xH2 = "h2xh2"
    SLxE1 = "sltilde_xe1"


PRODUCT_GEOMETRIES = frozenset({Geometry.H3xE1, Geometry.H2xE2, Geometry.H2xH2, Geometry.SLxE1})

# Hillman's cases (3), (4), (5): every piece of a decomposition lies in one.
HILLMAN_CASE = {
    Geometry.H2xH2: 3,
    Geometry.REAL_HYPERBOLIC: 4,
    Geometry.H3xE1: 4,
    Geometry.H2xE2: 4,
    Geometry.SLxE1: 4,
    Geometry.COMPLEX_HYPERBOLIC: 5,
    Geometry.F4: 5,
}


class UnsupportedDefectError(ValueError):
    pass


@dataclass(frozen=True)
class Piece:
    geometry: Geometry
    orientation: int
    chi: int
    cusps: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "geometry", Geometry(self.geometry))
        object.__setattr__(self, "cusps", tuple(self.cusps))
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if not self.cusps:
            raise ValueError("a truncated piece needs at least one cusp")


def _signed_nil_degree(b: BoundaryClass) -> int:
    if isinstance(b, NilTorusBoundary):
        return b.euler
    if isinstance(b, NilKleinBoundary):
        return b.signed_invariant
    return 0


def sigma_l2(p: Piece) -> Fraction:
    if p.geometry is Geometry.COMPLEX_HYPERBOLIC:
        return Fraction(p.orientation * p.chi, 3)
    return Fraction(0)


def sigma_top(p: Piece, flat_convention: int = 1) -> Fraction:
    for b in p.cusps:
        if not supports_defect(b):
            raise UnsupportedDefectError(f"piece {p.label or p.geometry.value}: no defect for cusp {b!r}")
    return sigma_l2(p) + sum((defect(b, flat_convention) for b in p.cusps), Fraction(0))


def validate(p: Piece) -> list:
    """List of broken piece invariants; empty when the piece is valid."""
    out = []
    g = p.geometry
    if p.chi < 0:
        out.append("chi must be non-negative")
    if g in (Geometry.REAL_HYPERBOLIC, Geometry.COMPLEX_HYPERBOLIC) and p.chi < 1:
        out.append("chi must be positive for hyperbolic pieces")
    if g is Geometry.F4 and p.chi != 0:
        out.append("chi must be 0 for F4 pieces")

    if g is Geometry.COMPLEX_HYPERBOLIC:
        for i, b in enumerate(p.cusps):
            if not isinstance(b, (NilTorusBoundary, NilKleinBoundary)):
                out.append(f"cusp {i}: complex-hyperbolic cusps must be infranil")
            elif _signed_nil_degree(b) * p.orientation <= 0:
                out.append(f"cusp {i}: orientation sign (cusp Euler number must share the piece orientation)")
        total = sum(abs(b.euler) for b in p.cusps if isinstance(b, NilTorusBoundary))
        if (p.chi - total) % 3:
            out.append("chi ≢ Σn (mod 3)")
    elif g is Geometry.REAL_HYPERBOLIC or g in PRODUCT_GEOMETRIES:
        for i, b in enumerate(p.cusps):
            if not isinstance(b, FlatBoundary):
                out.append(f"cusp {i}: {g.value} cusps must be flat")
    elif g is Geometry.F4:
        for i, b in enumerate(p.cusps):
            if isinstance(b, FlatBoundary) and b.letter not in ("A", "B"):
                out.append(f"cusp {i}: F4 flat cusps must be of type A or B")

    if not out and all(supports_defect(b) for b in p.cusps):
        s = sigma_top(p)
        if s.denominator != 1:
            out.append(f"signature {s} of the truncated piece is not an integer")
    return out


def reverse_orientation(p: Piece) -> Piece:
    label = p.label[:-3] if p.label.endswith("bar") else (p.label + "bar" if p.label else "")
    return Piece(p.geometry, -p.orientation, p.chi, tuple(reverse(b) for b in p.cusps), label)


def f4_piece_from_bundle(bundle: PuncturedSurfaceBundle, label: str = "") -> Piece:
    """F4 piece over a hyperbolic punctured surface with parabolic boundary monodromy."""
    cusps = []
    for m, flag in zip(bundle.boundary_monodromies, bundle.loop_orientations):
        cls = classify_parabolic(m)
        if cls.sign > 0:
            cusps.append(nil_torus(flag * cls.k, flag))
        elif cls.k == 0:
            cusps.append(FlatBoundary("B", flag))
        else:
            cusps.append(NilKleinBoundary(cls.k, flag))
    return Piece(Geometry.F4, 1, 0, tuple(cusps), label or bundle.label)


def piece_to_json(p: Piece) -> dict:
    return {
        "geometry": p.geometry.value,
        "orientation": p.orientation,
        "chi": p.chi,
        "cusps": [boundary_to_json(b) for b in p.cusps],
        "label": p.label,
    }


def piece_from_json(obj: dict) -> Piece:
    return Piece(
        Geometry(obj["geometry"]),
        int(obj.get("orientation", 1)),
        int(obj["chi"]),
        tuple(boundary_from_json(b) for b in obj["cusps"]),
        obj.get("label", ""),
    )
