import itertools

import numpy as np
import pytest

from geodecomp.sl2_monodromy import (
    IDENTITY,
    U_MAT,
    V_MAT,
    X0_BUNDLE,
    X_MAT,
    XPRIME0_BUNDLE,
    XPRIME_PRINTED_BUNDLE,
    Y_MAT,
    InconsistentCoverError,
    NotParabolicError,
    ParabolicClass,
    PuncturedSurfaceBundle,
    SL2Matrix,
    UnsupportedCoverError,
    bundle_from_json,
    bundle_to_json,
    classify_parabolic,
    commutator,
    conjugate,
    relation_check,
    riemann_hurwitz_chi,
    square_cover,
)


def brute_force_class(m: SL2Matrix, bound: int = 5):
    """Search small conjugators for sign*(1 k; 0 1); returns (sign, k) or None."""
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if a * d - b * c != 1:
            continue
        n = conjugate(SL2Matrix(a, b, c, d), m)
        if n.c == 0 and n.a == n.d:
            return n.a, n.a * n.b
    return None


def test_determinant_checked():
    with pytest.raises(ValueError):
        SL2Matrix(1, 1, 1, 1)


def test_commutator_examples():
    assert commutator(X_MAT, Y_MAT.inverse()) == SL2Matrix(-1, -6, 0, -1)
    assert commutator(X_MAT, X_MAT) == IDENTITY
    assert commutator(IDENTITY, Y_MAT) == IDENTITY


def test_classify_examples():
    assert classify_parabolic(SL2Matrix(-1, -6, 0, -1)) == ParabolicClass(-1, 6)
    assert classify_parabolic(SL2Matrix(1, 12, 0, 1)) == ParabolicClass(1, 12)
    assert classify_parabolic(SL2Matrix(1, 0, -4, 1)) == ParabolicClass(1, 4)
    assert brute_force_class(SL2Matrix(1, 0, -4, 1)) == (1, 4)
    assert classify_parabolic(IDENTITY) == ParabolicClass(1, 0)
    assert classify_parabolic(-IDENTITY) == ParabolicClass(-1, 0)
    with pytest.raises(NotParabolicError):
        classify_parabolic(X_MAT)


def test_normal_form_round_trip():
    for sign in (1, -1):
        for k in range(-7, 8):
            assert classify_parabolic(ParabolicClass(sign, k).normal_form()) == ParabolicClass(sign, k)


def _random_sl2(rng, bound=10):
    while True:
        a, b, c = (int(x) for x in rng.integers(-bound, bound + 1, size=3))
        if a != 0 and (1 + b * c) % a == 0:
            return SL2Matrix(a, b, c, (1 + b * c) // a)


def test_classification_conjugation_invariant():
    rng = np.random.default_rng(7)
    for _ in range(200):
        cls = ParabolicClass(int(rng.choice([1, -1])), int(rng.integers(-20, 21)))
        g = _random_sl2(rng)
        assert classify_parabolic(conjugate(g, cls.normal_form())) == cls


def test_classification_of_powers():
    for sign in (1, -1):
        for k in (1, 3, -5):
            m = ParabolicClass(sign, k).normal_form()
            for n in range(1, 5):
                assert classify_parabolic(m**n) == ParabolicClass(sign**n, k * n)


def test_group_operations_preserve_determinant():
    m = (X_MAT @ Y_MAT.inverse()) ** 5
    assert m.a * m.d - m.b * m.c == 1
    assert m @ m.inverse() == IDENTITY
    assert X_MAT ** -2 == (X_MAT @ X_MAT).inverse()


def test_relation_check_examples():
    assert relation_check(X0_BUNDLE)
    assert relation_check(PuncturedSurfaceBundle(0, (), (V_MAT, U_MAT.inverse(), U_MAT @ V_MAT.inverse())))
    assert relation_check(XPRIME0_BUNDLE)
    assert not relation_check(PuncturedSurfaceBundle(0, (), (V_MAT, V_MAT, V_MAT)))
    assert not relation_check(XPRIME_PRINTED_BUNDLE)


def test_base_must_be_hyperbolic():
    with pytest.raises(ValueError):
        PuncturedSurfaceBundle(0, (), (V_MAT,))


def test_square_cover_x0():
    cover = square_cover(X0_BUNDLE)
    assert cover.genus == 2
    assert cover.base_euler_characteristic == -4
    assert len(cover.generator_images) == 4
    assert [classify_parabolic(m) for m in cover.boundary_monodromies] == [ParabolicClass(1, 12)] * 2
    assert SL2Matrix(-1, -6, 0, -1) ** 2 == SL2Matrix(1, 12, 0, 1)
    assert relation_check(cover)


def test_square_cover_pants():
    cover = square_cover(XPRIME0_BUNDLE)
    assert cover.genus == 0 and len(cover.boundary_monodromies) == 6
    assert relation_check(cover)
    base = [classify_parabolic(m**2) for m in XPRIME0_BUNDLE.boundary_monodromies]
    assert [c.k for c in base] == [4, 4, 4]  # (VU)^-1 squares to class k = 4, not 6
    assert all(classify_parabolic(m) == ParabolicClass(1, 4) for m in cover.boundary_monodromies)
    assert [brute_force_class(m) for m in cover.boundary_monodromies] == [(1, 4)] * 6


def test_square_cover_identity_monodromies():
    cover = square_cover(PuncturedSurfaceBundle(0, (), (IDENTITY,) * 3))
    assert cover.boundary_monodromies == (IDENTITY,) * 6


def test_square_cover_errors():
    with pytest.raises(UnsupportedCoverError):
        square_cover(PuncturedSurfaceBundle(0, (), (IDENTITY,) * 4))
    with pytest.raises(InconsistentCoverError):
        square_cover(PuncturedSurfaceBundle(0, (), (V_MAT, V_MAT, V_MAT)))
    with pytest.raises(UnsupportedCoverError):
        square_cover(PuncturedSurfaceBundle(1, (IDENTITY, IDENTITY), (IDENTITY,) * 2))


def test_riemann_hurwitz():
    assert riemann_hurwitz_chi(-1, 4) == -4
    assert riemann_hurwitz_chi(2, 2, [(2, 2)]) == 2
    assert riemann_hurwitz_chi(0, 8) == 0
    with pytest.raises(ValueError):
        riemann_hurwitz_chi(2, 3, [(1, 2)])


def test_bundle_json_round_trip():
    for b in (X0_BUNDLE, XPRIME0_BUNDLE, square_cover(XPRIME0_BUNDLE)):
        assert bundle_from_json(bundle_to_json(b)) == b
