"""Integer 2x2 monodromy calculus for torus bundles over punctured surfaces.

Conventions
-----------
``commutator(A, B) = A B A^-1 B^-1``.  A bundle over a genus-g surface with
boundary loops c_1, ..., c_b is consistent when

    c_1 c_2 ... c_b = commutator(a_1, b_1^-1) ... commutator(a_g, b_g^-1),

which is the convention in which the once-punctured torus bundle with
monodromies X = (2 1; 1 1), Y = (1 1; 1 2) has boundary monodromy
[X, Y^-1] = (-1 -6; 0 -1).

A parabolic class ``(sign, k)`` is the SL2(Z) conjugacy class of
``sign * (1 k; 0 1)``; ``(+1, k)`` is a circle bundle over T^2 with Euler
number k, ``(-1, k)`` fibres over the Klein bottle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence


class NotParabolicError(ValueError):
    pass


class InconsistentCoverError(ValueError):
    pass


class UnsupportedCoverError(ValueError):
    pass


def _ext_gcd(a: int, b: int):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError("SL2Matrix entries must be integers")
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def from_rows(cls, rows) -> "SL2Matrix":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "SL2Matrix":
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "SL2Matrix":
        base = self if n >= 0 else self.inverse()
        result = IDENTITY
        for _ in range(abs(n)):
            result = result @ base
        return result

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __str__(self) -> str:
        return f"({self.a} {self.b}; {self.c} {self.d})"


IDENTITY = SL2Matrix(1, 0, 0, 1)


def product(matrices: Sequence[SL2Matrix]) -> SL2Matrix:
    result = IDENTITY
    for m in matrices:
        result = result @ m
    return result


def commutator(A: SL2Matrix, B: SL2Matrix) -> SL2Matrix:
    return A @ B @ A.inverse() @ B.inverse()


def conjugate(g: SL2Matrix, m: SL2Matrix) -> SL2Matrix:
    return g @ m @ g.inverse()


@dataclass(frozen=True)
class ParabolicClass:
    sign: int
    k: int

    def normal_form(self) -> SL2Matrix:
        m = SL2Matrix(1, self.k, 0, 1)
        return m if self.sign > 0 else -m


def classify_parabolic(M: SL2Matrix) -> ParabolicClass:
    """Conjugacy class of a parabolic (or +-identity) matrix.

    The unipotent part N = sign*M fixes a primitive integer vector v.  Any
    P in SL2(Z) with first column v conjugates N to (1 k; 0 1), and k does not
    depend on the choice of P or of the sign of v.
    """
    if abs(M.trace) != 2:
        raise NotParabolicError(f"{M} has trace {M.trace}, not +-2")
    sign = M.trace // 2
    N = M if sign > 0 else -M
    p, q, r, s = N.a - 1, N.b, N.c, N.d - 1
    if p == q == r == s == 0:
        return ParabolicClass(sign, 0)
    v1, v2 = (q, -p) if (p, q) != (0, 0) else (s, -r)
    g = gcd(v1, v2)
    v1, v2 = v1 // g, v2 // g
    _, y, x = _ext_gcd(v1, -v2)  # v1*y - v2*x = 1
    P = SL2Matrix(v1, x, v2, y)
    normal = P.inverse() @ N @ P
    if (normal.a, normal.c, normal.d) != (1, 0, 1):
        raise AssertionError(f"conjugation of {M} did not reach normal form: {normal}")
    return ParabolicClass(sign, normal.b)


@dataclass(frozen=True)
class PuncturedSurfaceBundle:
    """T^2-bundle over a genus-g surface with punctures.

    ``generator_images`` lists a_1, b_1, ..., a_g, b_g.  ``loop_orientations``
    records, per boundary, the sign relating the loop used for the monodromy to
    the orientation used when reading off the boundary Euler number.
    """

    genus: int
    generator_images: tuple
    boundary_monodromies: tuple
    loop_orientations: tuple = field(default=())
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generator_images", tuple(self.generator_images))
        object.__setattr__(self, "boundary_monodromies", tuple(self.boundary_monodromies))
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if len(self.generator_images) != 2 * self.genus:
            raise ValueError(f"expected {2 * self.genus} generator images, got {len(self.generator_images)}")
        if not self.boundary_monodromies:
            raise ValueError("at least one boundary is required")
        if not self.loop_orientations:
            object.__setattr__(self, "loop_orientations", (1,) * len(self.boundary_monodromies))
        else:
            object.__setattr__(self, "loop_orientations", tuple(self.loop_orientations))
        if len(self.loop_orientations) != len(self.boundary_monodromies):
            raise ValueError("one loop orientation per boundary is required")
        if any(s not in (1, -1) for s in self.loop_orientations):
            raise ValueError("loop orientations must be +-1")
        if self.base_euler_characteristic >= 0:
            raise ValueError("the base must be hyperbolic (negative Euler characteristic)")

    @property
    def base_euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary_monodromies)

    def boundary_classes(self) -> list:
        return [classify_parabolic(m) for m in self.boundary_monodromies]


def relation_check(bundle: PuncturedSurfaceBundle) -> bool:
    gens = bundle.generator_images
    rhs = product(commutator(gens[2 * i], gens[2 * i + 1].inverse()) for i in range(bundle.genus))
    return product(bundle.boundary_monodromies) == rhs


def riemann_hurwitz_chi(chi_base: int, degree: int, branch_points=()) -> int:
    """Euler characteristic of a degree-d cover branched over finitely many points.

    ``branch_points`` holds ``(count, local_degree)`` pairs: ``count`` branch
    points each of whose preimages all have the given local degree.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    chi = degree * chi_base
    for count, local in branch_points:
        if local < 1 or degree % local:
            raise ValueError(f"local degree {local} does not divide degree {degree}")
        chi -= count * (degree - degree // local)
    return chi


def _cover_genus(bundle: PuncturedSurfaceBundle) -> int:
    chi = riemann_hurwitz_chi(bundle.base_euler_characteristic, 4)
    boundaries = 2 * len(bundle.boundary_monodromies)
    twice_genus = 2 - chi - boundaries
    if twice_genus < 0 or twice_genus % 2:
        raise InconsistentCoverError(
            f"no surface with Euler characteristic {chi} and {boundaries} boundaries"
        )
    return twice_genus // 2


def _square_cover_punctured_torus(bundle):
    # pi_1 = <a, b>, puncture loop c = a b^-1 a^-1 b.  First a double cover
    # unwrapping a (two punctures), then a double cover branched at both
    # punctures.  The words below are free-group identities.
    a, b = bundle.generator_images
    s, t, u = b, conjugate(a, b), a @ a
    x, y = s, u
    d1 = s @ t.inverse()
    d2 = t @ u @ s.inverse() @ u.inverse()
    A1, B1 = conjugate(d1, x), conjugate(d1, y)
    gens = (A1, B1.inverse(), x, y.inverse())
    boundaries = (d1 @ d1, d2 @ d2)
    return gens, boundaries, (0, 0)


def _square_cover_pants(bundle):
    # c1 c2 c3 = 1.  First double cover branched over c1, c2; then branched
    # over the two lifts of c3.
    c1, c2, c3 = bundle.boundary_monodromies
    e1 = c1 @ c1
    e2 = c1.inverse() @ c2 @ c2 @ c1
    e3 = conjugate(c1.inverse(), c3)
    e4 = c3
    boundaries = (e1, e2, conjugate(e3, e1), conjugate(e3, e2), e3 @ e3, e4 @ e4)
    return (), boundaries, (0, 1, 0, 1, 2, 2)


def square_cover(bundle: PuncturedSurfaceBundle) -> PuncturedSurfaceBundle:
    """Pull back along a degree-4 cover that doubles and squares every puncture.

    Implemented for the once-punctured torus and the pair of pants; the new
    boundaries are listed in an order satisfying ``relation_check``.
    """
    genus = _cover_genus(bundle)
    shape = (bundle.genus, len(bundle.boundary_monodromies))
    if shape == (1, 1):
        recipe = _square_cover_punctured_torus
    elif shape == (0, 3):
        recipe = _square_cover_pants
    else:
        raise UnsupportedCoverError(f"no square-cover recipe for genus {shape[0]} with {shape[1]} punctures")
    if not relation_check(bundle):
        raise InconsistentCoverError("base monodromies do not satisfy the surface relation")
    gens, boundaries, origin = recipe(bundle)
    flags = tuple(bundle.loop_orientations[i] for i in origin)
    cover = PuncturedSurfaceBundle(genus, gens, boundaries, flags, label=f"{bundle.label}~4" if bundle.label else "")
    assert cover.base_euler_characteristic == 4 * bundle.base_euler_characteristic
    return cover


# -- data from Hillman's F4 examples ------------------------------------------

X_MAT = SL2Matrix(2, 1, 1, 1)
Y_MAT = SL2Matrix(1, 1, 1, 2)
V_MAT = SL2Matrix(1, 2, 0, 1)
U_MAT = SL2Matrix(1, 0, -2, 1)

X0_BUNDLE = PuncturedSurfaceBundle(1, (X_MAT, Y_MAT), (commutator(X_MAT, Y_MAT.inverse()),), label="X0")

# Boundary loops of the pair of pants ordered so that their product is 1.
XPRIME0_BUNDLE = PuncturedSurfaceBundle(0, (), (V_MAT, U_MAT, (V_MAT @ U_MAT).inverse()), label="X0'")

# The boundary monodromies of X' exactly as printed, each twice.  They are not
# the squares of the monodromies of XPRIME0_BUNDLE and their product is not 1.
XPRIME_PRINTED_BUNDLE = PuncturedSurfaceBundle(
    0,
    (),
    (
        SL2Matrix(1, 4, 0, 1),
        SL2Matrix(1, 4, 0, 1),
        SL2Matrix(1, -4, 0, 1),
        SL2Matrix(1, -4, 0, 1),
        SL2Matrix(1, -6, 0, 1),
        SL2Matrix(1, -6, 0, 1),
    ),
    label="X'",
)


# -- JSON ------------------------------------------------------------------


def matrix_to_json(m: SL2Matrix) -> list:
    return m.rows()


def matrix_from_json(rows) -> SL2Matrix:
    return SL2Matrix.from_rows(rows)


def bundle_to_json(bundle: PuncturedSurfaceBundle) -> dict:
    out = {
        "genus": bundle.genus,
        "generators": [matrix_to_json(m) for m in bundle.generator_images],
        "boundaries": [matrix_to_json(m) for m in bundle.boundary_monodromies],
    }
    if any(s != 1 for s in bundle.loop_orientations):
        out["loop_orientations"] = list(bundle.loop_orientations)
    if bundle.label:
        out["label"] = bundle.label
    return out


def bundle_from_json(obj: dict) -> PuncturedSurfaceBundle:
    return PuncturedSurfaceBundle(
        int(obj["genus"]),
        tuple(matrix_from_json(m) for m in obj.get("generators", [])),
        tuple(matrix_from_json(m) for m in obj["boundaries"]),
        tuple(obj.get("loop_orientations", ())),
        obj.get("label", ""),
    )
