from fractions import Fraction

import pytest

from geodecomp.examples import dg_h_piece, hirzebruch_cusped, holzapfel_piece, x_piece
from geodecomp.flat_catalog import FlatBoundary, NilKleinBoundary, NilTorusBoundary
from geodecomp.pieces import (
    Geometry,
    Piece,
    UnsupportedDefectError,
    f4_piece_from_bundle,
    piece_from_json,
    piece_to_json,
    reverse_orientation,
    sigma_l2,
    sigma_top,
    validate,
)
from geodecomp.sl2_monodromy import X0_BUNDLE, XPRIME0_BUNDLE, square_cover


def complex_piece(chi, *eulers, orientation=1):
    return Piece(Geometry.COMPLEX_HYPERBOLIC, orientation, chi, tuple(NilTorusBoundary(e) for e in eulers))


def test_sigma_l2():
    h12 = dg_h_piece(12)
    assert sigma_l2(h12) == 4
    assert sigma_l2(reverse_orientation(h12)) == -4
    assert sigma_l2(Piece(Geometry.REAL_HYPERBOLIC, 1, 3, (FlatBoundary("C"),))) == 0
    for g in Geometry:
        if g is not Geometry.COMPLEX_HYPERBOLIC:
            assert sigma_l2(Piece(g, 1, 2, (FlatBoundary("A"),))) == 0


def test_sigma_top_examples():
    assert sigma_top(dg_h_piece(12)) == -8
    assert sigma_top(reverse_orientation(dg_h_piece(12))) == 8
    assert sigma_top(hirzebruch_cusped(2)) == 64
    assert sigma_top(reverse_orientation(x_piece())) == 6
    assert sigma_top(dg_h_piece(2)) == 2


def test_sigma_top_matches_compactification_formula():
    # sigma(Y) = sigma(X) + b with sigma(X) = (chi + D^2)/3, D^2 = -sum(n_i)
    for n in range(2, 10):
        p = dg_h_piece(n)
        assert sigma_top(p) == Fraction(p.chi - 4 * n, 3) + 4


def test_holzapfel_profile():
    assert (holzapfel_piece([4, 4, 4, 4]).chi, sigma_top(holzapfel_piece([4, 4, 4, 4]))) == (4, 0)
    assert (holzapfel_piece([8, 8]).chi, sigma_top(holzapfel_piece([8, 8]))) == (4, -2)
    for cusps in ([1, 3], [2, 2, 4], [5, 7, 1, 3]):
        p = holzapfel_piece(cusps)
        assert validate(p) == []
        assert sigma_top(p) == -sum(Fraction(n, 4) - 1 for n in cusps)
    with pytest.raises(ValueError):
        holzapfel_piece([1, 2])


def test_validate_examples():
    assert "chi ≢ Σn (mod 3)" in validate(complex_piece(5, 4))
    assert any("orientation sign" in v for v in validate(complex_piece(3, -3)))
    assert validate(Piece(Geometry.F4, 1, 0, (NilTorusBoundary(3), NilTorusBoundary(-3)))) == []


def test_validate_rules():
    assert validate(complex_piece(0, 3))
    assert any("must be 0" in v for v in validate(Piece(Geometry.F4, 1, 1, (FlatBoundary("A"),))))
    assert any("A or B" in v for v in validate(Piece(Geometry.F4, 1, 0, (FlatBoundary("C"), FlatBoundary("C", -1)))))
    assert any("flat" in v for v in validate(Piece(Geometry.REAL_HYPERBOLIC, 1, 1, (NilTorusBoundary(1),))))
    assert any("infranil" in v for v in validate(Piece(Geometry.COMPLEX_HYPERBOLIC, 1, 1, (FlatBoundary("A"),))))
    assert any("not an integer" in v for v in validate(Piece(Geometry.REAL_HYPERBOLIC, 1, 1, (FlatBoundary("C"),))))
    assert validate(complex_piece(3, -3, orientation=-1)) == []
    assert validate(Piece(Geometry.H2xE2, 1, 0, (FlatBoundary("C"), FlatBoundary("E")))) == []
    with pytest.raises(ValueError):
        Piece(Geometry.F4, 1, 0, ())
    with pytest.raises(ValueError):
        Piece(Geometry.F4, 0, 0, (FlatBoundary("A"),))


@pytest.mark.parametrize("n", range(2, 7))
def test_named_pieces_validate(n):
    assert validate(hirzebruch_cusped(n)) == []
    assert validate(dg_h_piece(n)) == []


def test_reverse_orientation():
    h = dg_h_piece(5)
    hbar = reverse_orientation(h)
    assert hbar.cusps == (NilTorusBoundary(-5),) * 4
    assert hbar.chi == h.chi and hbar.label == "H5bar"
    assert reverse_orientation(hbar) == h
    assert sigma_top(hbar) == -sigma_top(h)


def test_f4_piece_from_bundle():
    assert x_piece().cusps == (NilTorusBoundary(12),) * 2
    assert f4_piece_from_bundle(X0_BUNDLE).cusps == (NilKleinBoundary(6),)
    xp = f4_piece_from_bundle(square_cover(XPRIME0_BUNDLE))
    assert sorted(abs(b.euler) for b in xp.cusps) == [4] * 6
    with pytest.raises(UnsupportedDefectError):
        sigma_top(f4_piece_from_bundle(X0_BUNDLE))


def test_json_round_trip():
    for p in (dg_h_piece(12), x_piece(), f4_piece_from_bundle(X0_BUNDLE)):
        assert piece_from_json(piece_to_json(p)) == p
    assert piece_to_json(dg_h_piece(12))["cusps"][0] == {"nil_torus": {"euler": 12}}
