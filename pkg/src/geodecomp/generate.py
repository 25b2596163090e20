"""Seeded random generators of valid closed assemblies.

Every generator draws a random connected multigraph (a random spanning tree
plus extra edges), assigns a boundary class to each edge and then repairs the
per-piece integrality constraints by walking the tree from the leaves up: the
class on the edge to a vertex's parent is chosen to fix that vertex's residue.
The root needs no repair because edge contributions cancel in pairs.  The
result is checked with ``validate_assembly`` before it is returned.

Cusp Euler numbers lie in [1, 30] and piece counts in [1, 12].
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .assembly import Assembly, validate_assembly
from .flat_catalog import FlatBoundary, NilTorusBoundary, defect, reverse
from .pieces import Geometry, Piece

EULER_RANGE = (1, 30)
PIECE_RANGE = (1, 12)

# flat class at the child end of an edge, keyed by the residue it contributes mod 1
_FLAT_FIX = {
    Fraction(0): ("A", "B", "D", "F"),
    Fraction(1, 3): ("C+", "E-"),
    Fraction(2, 3): ("C-", "E+"),
}


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _flat(code: str, rng) -> FlatBoundary:
    if len(code) == 2:
        return FlatBoundary(code[0], 1 if code[1] == "+" else -1)
    return FlatBoundary(code, int(rng.choice([1, -1])))


def _random_flat(rng) -> FlatBoundary:
    return FlatBoundary(str(rng.choice(list("ABCDEF"))), int(rng.choice([1, -1])))


def _euler(rng) -> int:
    return int(rng.integers(EULER_RANGE[0], EULER_RANGE[1] + 1))


def _tree(count: int, rng, allowed=None) -> list:
    """Parent list of a random spanning tree on ``count`` vertices (root 0)."""
    parent = [-1]
    for v in range(1, count):
        choices = [u for u in range(v) if allowed is None or allowed(u, v)]
        parent.append(int(rng.choice(choices)))
    return parent


def _order_leaves_first(parent: list) -> list:
    depth = [0] * len(parent)
    for v in range(1, len(parent)):
        depth[v] = depth[parent[v]] + 1
    return sorted(range(1, len(parent)), key=lambda v: -depth[v])


class _Builder:
    """Collects slots as (piece, boundary) pairs and edges between them."""

    def __init__(self, count: int):
        self.cusps = [[] for _ in range(count)]
        self.edges = []

    def glue(self, p: int, b, q: int) -> None:
        """Give ``p`` a cusp ``b`` and ``q`` the reversed cusp, and join them."""
        i = len(self.cusps[p])
        self.cusps[p].append(b)
        j = len(self.cusps[q])
        self.cusps[q].append(reverse(b))
        self.edges.append((p, i, q, j))


def _extra_edges(count: int, rng, allow_loops: bool) -> list:
    n_extra = int(rng.integers(0, count + 1))
    if count == 1:
        n_extra = max(n_extra, 1)
    out = []
    for _ in range(n_extra):
        p, q = (int(x) for x in rng.integers(0, count, size=2))
        if p == q and not allow_loops:
            continue
        out.append((p, q))
    return out


def _finish(pieces, builder, label) -> Assembly:
    a = Assembly(tuple(pieces), tuple(builder.edges), label)
    violations = validate_assembly(a)
    if violations:  # pragma: no cover - generator bug
        raise AssertionError(f"generator produced an invalid assembly {label}: {violations}")
    return a


# -- flat-cusp assemblies (decomposition cases with flat cross-sections) -------


def _flat_assembly(geometries, rng, label: str) -> Assembly:
    count = len(geometries)
    parent = _tree(count, rng)
    extra = _extra_edges(count, rng, allow_loops=True)
    b = _Builder(count)
    for p, q in extra:
        b.glue(p, _random_flat(rng), q)
    # tree edges: children before parents so each child's residue is final
    for v in _order_leaves_first(parent):
        residue = sum((defect(c) for c in b.cusps[v]), Fraction(0)) % 1
        need = (-residue) % 1
        child_end = _flat(str(rng.choice(_FLAT_FIX[need])), rng)
        b.glue(v, child_end, parent[v])
    pieces = []
    for g, cusps in zip(geometries, b.cusps):
        lo = 1 if g is Geometry.REAL_HYPERBOLIC else 0
        pieces.append(Piece(g, 1, int(rng.integers(lo, lo + 20)), tuple(cusps), g.value))
    chi = sum(p.chi for p in pieces)
    if chi % 2:  # sigma vanishes here, so chi must be even
        p0 = pieces[0]
        pieces[0] = Piece(p0.geometry, 1, p0.chi + 1, p0.cusps, p0.label)
    return _finish(pieces, b, label)


def random_real_hyperbolic_assembly(seed) -> Assembly:
    rng = _rng(seed)
    count = int(rng.integers(PIECE_RANGE[0], PIECE_RANGE[1] + 1))
    return _flat_assembly([Geometry.REAL_HYPERBOLIC] * count, rng, "real")


def random_flat_case_assembly(seed, case: int) -> Assembly:
    """Case 3 uses only H2xH2 pieces; case 4 mixes real-hyperbolic and product pieces."""
    rng = _rng(seed)
    count = int(rng.integers(PIECE_RANGE[0], PIECE_RANGE[1] + 1))
    if case == 3:
        geoms = [Geometry.H2xH2] * count
    elif case == 4:
        pool = [Geometry.REAL_HYPERBOLIC, Geometry.H3xE1, Geometry.H2xE2, Geometry.SLxE1]
        geoms = [pool[int(i)] for i in rng.integers(0, len(pool), size=count)]
    else:
        raise ValueError("flat-cusp cases are 3 and 4")
    return _flat_assembly(geoms, rng, f"case{case}")


# -- infranil-cusp assemblies (complex-hyperbolic and F4 pieces) ---------------


def _nil_assembly(kinds, rng, label: str) -> Assembly:
    """``kinds[v]`` is True for a complex-hyperbolic vertex, False for F4."""
    count = len(kinds)
    complex_idx = [v for v in range(count) if kinds[v]]
    if complex_idx:  # the root must be complex so no F4 residue is left over
        r = complex_idx[0]
        kinds = [kinds[r]] + kinds[:r] + kinds[r + 1:]
    orient = [0] * count
    parent = _tree(count, rng)
    for v in range(count):
        if not kinds[v]:
            continue
        p = parent[v]
        if p >= 0 and kinds[p]:
            orient[v] = -orient[p]
        else:
            orient[v] = int(rng.choice([1, -1]))

    def allowed(p, q):
        if kinds[p] and kinds[q]:
            return orient[p] == -orient[q]
        return True

    b = _Builder(count)
    for p, q in _extra_edges(count, rng, allow_loops=not all(kinds)):
        if p == q and kinds[p]:
            continue
        if not allowed(p, q):
            continue
        b.glue(p, _nil_edge(p, q, kinds, orient, rng), q)
    for v in _order_leaves_first(parent):
        p = parent[v]
        if kinds[v]:
            b.glue(v, _nil_edge(v, p, kinds, orient, rng), p)
            continue
        residue = sum(c.euler for c in b.cusps[v] if isinstance(c, NilTorusBoundary)) % 3
        # child end e with e ≡ -residue (mod 3), sign forced if the parent is complex
        sign = -orient[p] if kinds[p] else int(rng.choice([1, -1]))
        mags = [m for m in range(EULER_RANGE[0], EULER_RANGE[1] + 1) if (sign * m + residue) % 3 == 0]
        b.glue(v, NilTorusBoundary(sign * int(rng.choice(mags))), p)
    pieces = []
    for v in range(count):
        cusps = tuple(b.cusps[v])
        if kinds[v]:
            total = sum(abs(c.euler) for c in cusps)
            base = total % 3 or 3
            chi = base + 3 * int(rng.integers(0, 10))
            pieces.append(Piece(Geometry.COMPLEX_HYPERBOLIC, orient[v], chi, cusps, f"C{v}"))
        else:
            pieces.append(Piece(Geometry.F4, 1, 0, cusps, f"F{v}"))
    return _finish(pieces, b, label)


def _nil_edge(p, q, kinds, orient, rng):
    """Boundary class at the ``p`` end of an edge between p and q."""
    if kinds[p]:
        return NilTorusBoundary(orient[p] * _euler(rng))
    if kinds[q]:
        return NilTorusBoundary(-orient[q] * _euler(rng))
    if rng.random() < 0.2:
        return FlatBoundary(str(rng.choice(["A", "B"])), int(rng.choice([1, -1])))
    return NilTorusBoundary(int(rng.choice([1, -1])) * _euler(rng))


def random_mixed_assembly(seed) -> Assembly:
    """A random valid assembly from one of the three decomposition cases."""
    rng = _rng(seed)
    case = int(rng.choice([3, 4, 5]))
    if case in (3, 4):
        return random_flat_case_assembly(rng, case)
    count = int(rng.integers(PIECE_RANGE[0], PIECE_RANGE[1] + 1))
    kinds = [bool(x) for x in rng.random(count) < 0.5]
    if count == 1:
        kinds = [False]  # a lone complex piece has no admissible self-gluing
    return _nil_assembly(kinds, rng, "case5")


def random_complex_assembly(seed) -> Assembly:
    """All-complex-hyperbolic assembly with at least two pieces (hence at least one edge)."""
    rng = _rng(seed)
    count = int(rng.integers(2, PIECE_RANGE[1] + 1))
    return _nil_assembly([True] * count, rng, "complex")


def random_holzapfel_assembly(seed) -> Assembly:
    """Complex pieces of the Abelian/bielliptic profile chi = sum(n_i)/4.

    Adjacent pieces have opposite orientations, so the graph is bipartite and
    both colour classes carry the same total of cusp numbers; once every
    non-root piece has sum(n_i) ≡ 0 (mod 4) the root does as well.
    """
    rng = _rng(seed)
    count = int(rng.integers(2, PIECE_RANGE[1] + 1))
    parent = _tree(count, rng)
    orient = [int(rng.choice([1, -1]))]
    for v in range(1, count):
        orient.append(-orient[parent[v]])
    b = _Builder(count)
    for p, q in _extra_edges(count, rng, allow_loops=False):
        if orient[p] == -orient[q]:
            b.glue(p, NilTorusBoundary(orient[p] * _euler(rng)), q)
    for v in _order_leaves_first(parent):
        residue = sum(abs(c.euler) for c in b.cusps[v]) % 4
        mags = [m for m in range(EULER_RANGE[0], EULER_RANGE[1] + 1) if (m + residue) % 4 == 0]
        b.glue(v, NilTorusBoundary(orient[v] * int(rng.choice(mags))), parent[v])
    pieces = []
    for v in range(count):
        cusps = tuple(b.cusps[v])
        total = sum(abs(c.euler) for c in cusps)
        pieces.append(Piece(Geometry.COMPLEX_HYPERBOLIC, orient[v], total // 4, cusps, f"Ab{v}"))
    return _finish(pieces, b, "holzapfel")


GENERATORS = {
    "real": random_real_hyperbolic_assembly,
    "mixed": random_mixed_assembly,
    "complex": random_complex_assembly,
    "holzapfel": random_holzapfel_assembly,
}
