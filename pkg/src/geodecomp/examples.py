"""Named pieces and closed assemblies, plus the branched-cover invariants.

Families
--------
``M_m``   m copies of H_12 glued to 2m reversed F4 pieces X (chi = 3 sigma = 12m).
``M'_m``  2m F4 pieces X' glued to m copies of H_6 and to each other (chi = 3 sigma = 6m).
``Z_n``   Hirzebruch's cusped surface Y_n with its 4n^4 cusps filled by n^4
          reversed copies of H_n (chi = n^7 + n^5, sigma = (n^7 - n^5)/3).

All gluings use a fixed round-robin slot order, so the output is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .assembly import Assembly
from .flat_catalog import NilTorusBoundary
from .pieces import Geometry, Piece, f4_piece_from_bundle, reverse_orientation
from .sl2_monodromy import X0_BUNDLE, XPRIME_PRINTED_BUNDLE, square_cover


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def hirzebruch_cusped(n: int) -> Piece:
    _require(n >= 2, "n must be at least 2")
    cusps = (NilTorusBoundary(n),) * (4 * n**4)
    return Piece(Geometry.COMPLEX_HYPERBOLIC, 1, n**7, cusps, f"Y{n}")


def dg_h_piece(n: int) -> Piece:
    """Complex-hyperbolic H_n: chi = n, four cusps of Euler number n."""
    _require(n >= 2, "n must be at least 2")
    return Piece(Geometry.COMPLEX_HYPERBOLIC, 1, n, (NilTorusBoundary(n),) * 4, f"H{n}")


def holzapfel_piece(cusps, label: str = "") -> Piece:
    """Piece whose compactification is birational to an Abelian or bielliptic surface.

    There chi(X) = -sigma(X), which forces chi = sum(n_i) / 4.
    """
    cusps = [int(n) for n in cusps]
    _require(len(cusps) > 0 and all(n > 0 for n in cusps), "cusp self-intersections must be positive")
    total = sum(cusps)
    _require(total % 4 == 0, f"sum of cusp numbers {total} is not divisible by 4")
    return Piece(
        Geometry.COMPLEX_HYPERBOLIC,
        1,
        total // 4,
        tuple(NilTorusBoundary(n) for n in cusps),
        label or "Ab(" + ",".join(map(str, cusps)) + ")",
    )


def x_piece() -> Piece:
    """F4 piece X over the twice-punctured genus-2 surface (two cusps, Euler 12)."""
    return f4_piece_from_bundle(square_cover(X0_BUNDLE), "X")


def xprime_piece() -> Piece:
    """F4 piece X' with the six printed boundary monodromies (Euler 4, -4, -6, each twice)."""
    return f4_piece_from_bundle(XPRIME_PRINTED_BUNDLE, "X'")


def build_M(m: int) -> Assembly:
    _require(m >= 1, "m must be at least 1")
    h = dg_h_piece(12)
    xbar = reverse_orientation(x_piece())
    pieces = [h] * m + [xbar] * (2 * m)
    edges = []
    for i in range(m):
        for j in range(4):
            k = (2 * i + j) % (2 * m)
            edges.append((i, j, m + k, j // 2))
    return Assembly(tuple(pieces), tuple(edges), f"M_{m}")


def build_Mprime(m: int) -> Assembly:
    _require(m >= 1, "m must be at least 1")
    h6 = dg_h_piece(6)
    xp = xprime_piece()
    plus4 = [i for i, b in enumerate(xp.cusps) if b == NilTorusBoundary(4)]
    minus4 = [i for i, b in enumerate(xp.cusps) if b == NilTorusBoundary(-4)]
    minus6 = [i for i, b in enumerate(xp.cusps) if b == NilTorusBoundary(-6)]
    pieces = [h6] * m + [xp] * (2 * m)
    edges = []
    # the -6 cusps of copies 2i and 2i+1 fill the four cusps of the i-th H_6
    for i in range(m):
        for j in range(4):
            copy = m + 2 * i + j // 2
            edges.append((i, j, copy, minus6[j % 2]))
    # +4 cusps of each copy to the -4 cusps of the next copy, cyclically
    for c in range(2 * m):
        nxt = (c + 1) % (2 * m)
        for s in range(2):
            edges.append((m + c, plus4[s], m + nxt, minus4[s]))
    return Assembly(tuple(pieces), tuple(edges), f"M'_{m}")


def build_Z(n: int) -> Assembly:
    _require(n >= 2, "n must be at least 2")
    y = hirzebruch_cusped(n)
    hbar = reverse_orientation(dg_h_piece(n))
    count = n**4
    pieces = [y] + [hbar] * count
    edges = tuple((0, j, 1 + j // 4, j % 4) for j in range(4 * count))
    return Assembly(tuple(pieces), edges, f"Z_{n}")


FAMILIES = {"M": build_M, "Mprime": build_Mprime, "Z": build_Z}


# -- branched covers of the blown-up Abelian surface ---------------------------


@dataclass(frozen=True)
class BranchedCoverReport:
    n: int
    chi: int
    c1_squared: int
    L_components: int
    L_self_intersection: int
    L_component_chi: int
    R_components: int
    R_self_intersection: Fraction
    RL_intersection: int
    logBMY_defect: int
    minus_L_squared: int

    def as_dict(self) -> dict:
        from .flat_catalog import format_rational

        out = dict(self.__dict__)
        out["R_self_intersection"] = format_rational(self.R_self_intersection)
        return out


def branched_cover_invariants(n: int) -> BranchedCoverReport:
    """Invariants of the degree-8 cover of Y_n branched along 4n^2 elliptic curves.

    Y_n is E x E blown up at its n^4 n-torsion points, so chi(Y_n) = n^4.  The
    cover has ramification index 2 along R, and K = L + R, where L is the
    preimage of the exceptional curves.
    """
    _require(n >= 2 and n % 2 == 0, "n must be even and at least 2")
    degree, ramification = 8, 2
    chi_base = n**4
    branch_tori = 4 * n**2
    branch_self = -(n**2)
    exceptional = n**4

    # Branching over tori (chi = 0) does not change chi by Riemann-Hurwitz.
    chi = degree * chi_base

    # each branch torus has degree/ramification = 4 preimage components
    lifts_per_torus = degree // ramification
    r_components = branch_tori * lifts_per_torus
    # pull-back of B_j is 2 * (sum of its 4 lifts), so 4 * 4 * R_j^2 = 8 * B_j^2
    r_self = Fraction(degree * branch_self, ramification**2 * lifts_per_torus)

    # Each exceptional curve lifts to one connected curve, unramified of degree 8.
    l_components = exceptional
    l_self = degree * (-1)
    # E_i minus its 4 branch points is a 4-punctured sphere; each puncture has
    # degree/ramification preimages.
    l_chi = degree * (2 - 4) + 4 * (degree // ramification)

    # Each E_i meets four branch tori; each meeting point lifts to 4 points.
    rl = exceptional * 4 * (degree // ramification)

    L2 = l_components * l_self
    R2 = r_components * r_self
    c1_sq = L2 + 2 * rl + R2
    _require(Fraction(c1_sq).denominator == 1, "non-integral K^2")
    c1_sq = int(c1_sq)
    return BranchedCoverReport(
        n=n,
        chi=chi,
        c1_squared=c1_sq,
        L_components=l_components,
        L_self_intersection=l_self,
        L_component_chi=l_chi,
        R_components=r_components,
        R_self_intersection=r_self,
        RL_intersection=rl,
        logBMY_defect=3 * chi - c1_sq,
        minus_L_squared=-L2,
    )
