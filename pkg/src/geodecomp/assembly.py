"""Closed 4-manifolds glued from pieces along their cusp cross-sections.

An assembly is a multigraph: vertices are pieces, edges pair two cusp slots
``(piece, cusp)``.  Self-edges are allowed.  The signature is computed twice:

* the L2 route sums ``sigma_l2`` over pieces (only complex-hyperbolic pieces
  contribute);
* the Novikov route sums the signatures of the truncated pieces, boundary
  defects included.

On a valid assembly the defects cancel edge by edge, so both routes agree
exactly; ``diagnose`` treats a mismatch as an internal error.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import networkx as nx

from .flat_catalog import defect, eta, glueable, supports_defect
from .pieces import (
    HILLMAN_CASE,
    Geometry,
    Piece,
    UnsupportedDefectError,
    piece_from_json,
    piece_to_json,
    reverse_orientation,
    sigma_l2,
    sigma_top,
    validate,
)


class AssemblyValidationError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InternalConsistencyError(AssertionError):
    pass


class Classification(enum.Enum):
    STRICT = "Strict"
    EQUALITY_CERTIFIED = "EqualityCertified"
    ZERO_CHI = "ZeroChi"


@dataclass(frozen=True)
class Assembly:
    pieces: tuple
    edges: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "edges", tuple(tuple(int(v) for v in e) for e in self.edges))
        if not self.pieces:
            raise ValueError("an assembly needs at least one piece")
        for e in self.edges:
            if len(e) != 4:
                raise ValueError(f"edge {e} must be (piece, cusp, piece, cusp)")

    def slot(self, piece: int, cusp: int):
        return self.pieces[piece].cusps[cusp]


@dataclass(frozen=True)
class Diagnosis:
    label: str
    chi: int
    sigma: int
    slack: int
    classification: Classification
    certificate: Optional[tuple] = None

    def as_dict(self) -> dict:
        out = {
            "label": self.label,
            "chi": self.chi,
            "sigma": self.sigma,
            "slack": self.slack,
            "classification": self.classification.value,
        }
        if self.certificate is not None:
            out["certificate"] = [list(c) for c in self.certificate]
        return out

    def line(self) -> str:
        return (
            f"label={self.label} chi={self.chi} sigma={self.sigma} "
            f"slack={self.slack} classification={self.classification.value}"
        )


def validate_assembly(a: Assembly) -> list:
    out = []
    seen = {}
    for n, (p, i, q, j) in enumerate(a.edges):
        if (p, i) == (q, j):
            out.append(f"edge {n}: slot ({p}, {i}) glued to itself")
            continue
        ok = True
        for piece, cusp in ((p, i), (q, j)):
            if not (0 <= piece < len(a.pieces)) or not (0 <= cusp < len(a.pieces[piece].cusps)):
                out.append(f"edge {n}: slot ({piece}, {cusp}) does not exist")
                ok = False
            elif (piece, cusp) in seen:
                out.append(f"edge {n}: slot ({piece}, {cusp}) already used by edge {seen[(piece, cusp)]}")
                ok = False
            else:
                seen[(piece, cusp)] = n
        if ok and not glueable(a.slot(p, i), a.slot(q, j)):
            out.append(f"edge {n}: {a.slot(p, i)} and {a.slot(q, j)} not orientation-reversing diffeomorphic")
    for k, piece in enumerate(a.pieces):
        for c in range(len(piece.cusps)):
            if (k, c) not in seen:
                out.append(f"unmatched cusp ({k}, {c}) of {piece.label or piece.geometry.value}")
        for v in validate(piece):
            out.append(f"piece {k} ({piece.label or piece.geometry.value}): {v}")
    cases = {HILLMAN_CASE[p.geometry] for p in a.pieces}
    if len(cases) > 1:
        out.append(f"pieces mix geometries from different decomposition cases {sorted(cases)}")
    if not is_connected(a):
        out.append("assembly is disconnected")
    if not out:
        chi = sum(p.chi for p in a.pieces)
        sigma = sum((sigma_l2(p) for p in a.pieces), Fraction(0))
        if sigma.denominator != 1:
            out.append(f"signature {sigma} is not an integer")
        elif (chi - sigma) % 2:
            out.append(f"chi={chi} and sigma={sigma} have different parity; no closed oriented 4-manifold has them")
    return out


def is_connected(a: Assembly) -> bool:
    g = nx.MultiGraph()
    g.add_nodes_from(range(len(a.pieces)))
    g.add_edges_from(
        (p, q) for p, _, q, _ in a.edges if 0 <= p < len(a.pieces) and 0 <= q < len(a.pieces)
    )
    return nx.is_connected(g)


def _require_valid(a: Assembly) -> None:
    violations = validate_assembly(a)
    if violations:
        raise AssemblyValidationError(violations)


def euler(a: Assembly) -> int:
    _require_valid(a)
    return sum(p.chi for p in a.pieces)


def signature_l2_route(a: Assembly) -> Fraction:
    _require_valid(a)
    return sum((sigma_l2(p) for p in a.pieces), Fraction(0))


def signature_novikov_route(a: Assembly, flat_convention: int = 1) -> Fraction:
    _require_valid(a)
    return sum((sigma_top(p, flat_convention) for p in a.pieces), Fraction(0))


def edge_defects(a: Assembly) -> list:
    """Per-edge ``(edge, defect, defect)`` contributions of both glued cusps."""
    out = []
    for e in a.edges:
        p, i, q, j = e
        b1, b2 = a.slot(p, i), a.slot(q, j)
        if supports_defect(b1) and supports_defect(b2):
            out.append((e, defect(b1), defect(b2)))
    return out


def edge_etas(a: Assembly) -> list:
    out = []
    for e in a.edges:
        p, i, q, j = e
        b1, b2 = a.slot(p, i), a.slot(q, j)
        if supports_defect(b1) and supports_defect(b2):
            out.append((e, eta(b1), eta(b2)))
    return out


def _certificate(a: Assembly):
    """Piece list witnessing chi = 3|sigma|, or None if the pieces do not allow it."""
    signs = {p.orientation for p in a.pieces if p.geometry is Geometry.COMPLEX_HYPERBOLIC}
    if len(signs) > 1:
        return None
    if any(p.geometry not in (Geometry.F4, Geometry.COMPLEX_HYPERBOLIC) for p in a.pieces):
        return None
    return tuple((p.label, p.geometry.value, p.orientation) for p in a.pieces)


def diagnose(a: Assembly) -> Diagnosis:
    chi = euler(a)
    sig_l2 = signature_l2_route(a)
    try:
        sig_top = signature_novikov_route(a)
    except UnsupportedDefectError:
        sig_top = None  # Klein-base cusps carry no defect
    if sig_top is not None and sig_top != sig_l2:
        raise InternalConsistencyError(f"{a.label}: L2 route {sig_l2} != Novikov route {sig_top}")
    if sig_l2.denominator != 1:
        raise InternalConsistencyError(f"{a.label}: signature {sig_l2} is not an integer")
    sigma = int(sig_l2)
    if (chi - sigma) % 2:
        raise InternalConsistencyError(f"{a.label}: chi={chi} and sigma={sigma} differ in parity")
    slack = chi - 3 * abs(sigma)
    if slack < 0:
        raise InternalConsistencyError(f"{a.label}: chi={chi} < 3|sigma|={3 * abs(sigma)}")
    certificate = None
    if chi == 0:
        cls = Classification.ZERO_CHI
    elif slack == 0:
        certificate = _certificate(a)
        if certificate is None:
            raise InternalConsistencyError(f"{a.label}: equality without an F4/complex certificate")
        cls = Classification.EQUALITY_CERTIFIED
    else:
        cls = Classification.STRICT
    return Diagnosis(a.label, chi, sigma, slack, cls, certificate)


def reverse_all(a: Assembly) -> Assembly:
    return Assembly(tuple(reverse_orientation(p) for p in a.pieces), a.edges, a.label)


def assembly_to_json(a: Assembly) -> dict:
    return {
        "pieces": [piece_to_json(p) for p in a.pieces],
        "edges": [list(e) for e in a.edges],
        "label": a.label,
    }


def assembly_from_json(obj: dict) -> Assembly:
    return Assembly(
        tuple(piece_from_json(p) for p in obj["pieces"]),
        tuple(tuple(e) for e in obj.get("edges", [])),
        obj.get("label", ""),
    )
