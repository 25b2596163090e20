"""Euler characteristic and signature of geometrically decomposed 4-manifolds.

Pieces are truncated finite-volume geometric manifolds; closed manifolds are
assembled by gluing their cusp cross-sections.  Signatures are computed both
from L2 curvature integrals and from boundary defects, in exact arithmetic.
"""
from .assembly import Assembly, Classification, Diagnosis, diagnose, validate_assembly
from .pieces import Geometry, Piece

__all__ = ["Assembly", "Classification", "Diagnosis", "Geometry", "Piece", "diagnose", "validate_assembly"]
__version__ = "0.1.0"
