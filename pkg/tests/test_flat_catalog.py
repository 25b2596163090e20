from fractions import Fraction

import pytest

from geodecomp.flat_catalog import (
    FLAT_TYPES,
    LETTERS,
    FlatBoundary,
    NilKleinBoundary,
    NilTorusBoundary,
    SeifertData,
    UnsupportedEtaError,
    boundary_from_json,
    boundary_to_json,
    catalog_to_json,
    defect,
    eta,
    format_rational,
    glueable,
    nil_torus,
    reverse,
)

ALL = [FlatBoundary(x, s) for x in LETTERS for s in (1, -1)] + [
    NilTorusBoundary(e) for e in (-12, -4, -1, 1, 2, 12)
] + [NilKleinBoundary(6, 1), NilKleinBoundary(6, -1)]
SUPPORTED = [b for b in ALL if not isinstance(b, NilKleinBoundary)]


def test_eta_values():
    assert [eta(FlatBoundary(x)) for x in LETTERS] == [0, 0, Fraction(-2, 3), -1, Fraction(-4, 3), 0]
    assert eta(FlatBoundary("C", -1)) == Fraction(2, 3)
    assert eta(NilTorusBoundary(12)) == 6


def test_defect_values():
    assert defect(NilTorusBoundary(12)) == -3
    assert defect(NilTorusBoundary(-12)) == 3
    assert defect(FlatBoundary("D", -1)) == 1
    assert defect(FlatBoundary("C", 1), flat_convention=-1) == Fraction(2, 3)


def test_nil_eta_is_minus_twice_defect():
    for e in range(-30, 31):
        if e:
            assert eta(NilTorusBoundary(e)) == -2 * defect(NilTorusBoundary(e))


@pytest.mark.parametrize("b", SUPPORTED, ids=repr)
def test_eta_and_defect_are_odd(b):
    assert eta(reverse(b)) == -eta(b)
    assert defect(reverse(b)) == -defect(b)


@pytest.mark.parametrize("b", ALL, ids=repr)
def test_reverse_is_involution_and_glueable(b):
    assert reverse(reverse(b)) == b
    assert glueable(b, reverse(b))


def test_reverse_examples():
    assert reverse(NilTorusBoundary(4)) == NilTorusBoundary(-4)
    assert reverse(FlatBoundary("F", 1)) == FlatBoundary("F", -1)


def test_glueable_examples():
    assert glueable(NilTorusBoundary(12), NilTorusBoundary(-12))
    assert not glueable(FlatBoundary("C", 1), FlatBoundary("C", 1))
    assert glueable(FlatBoundary("A", 1), FlatBoundary("A", 1))
    assert not glueable(NilTorusBoundary(12), NilTorusBoundary(12))
    assert not glueable(FlatBoundary("A"), NilTorusBoundary(1))
    assert not glueable(FlatBoundary("C"), FlatBoundary("D", -1))
    assert not glueable(NilKleinBoundary(6, 1), NilKleinBoundary(6, 1))


def test_glueable_symmetric_and_eta_cancels():
    for x in ALL:
        for y in ALL:
            assert glueable(x, y) == glueable(y, x)
            if glueable(x, y) and isinstance(x, FlatBoundary) and x.letter in "CDE":
                assert eta(x) + eta(y) == 0


def test_seifert_flatness():
    for ft in FLAT_TYPES.values():
        assert len(ft.seifert_presentations) == (2 if ft.letter == "B" else 1)
        assert (ft.eta_reference == 0) == ft.admits_orientation_reversal
        for s in ft.seifert_presentations:
            assert s.euler_number() == 0
            assert s.orbifold_euler_characteristic() == 0


def test_seifert_normalizes_fibres():
    s = SeifertData(0, -1, (Fraction(4, 3), Fraction(-2, 3)))
    assert s.singular_fibers == (Fraction(1, 3), Fraction(1, 3))
    with pytest.raises(ValueError):
        SeifertData(0, 0, (Fraction(1),))


def test_nil_torus_zero_is_three_torus():
    assert nil_torus(0) == FlatBoundary("A", 1)
    assert nil_torus(0, -1) == FlatBoundary("A", -1)
    with pytest.raises(ValueError):
        NilTorusBoundary(0)


def test_klein_has_no_eta():
    with pytest.raises(UnsupportedEtaError):
        eta(NilKleinBoundary(6))
    with pytest.raises(UnsupportedEtaError):
        defect(NilKleinBoundary(6))


@pytest.mark.parametrize("b", ALL, ids=repr)
def test_json_round_trip(b):
    assert boundary_from_json(boundary_to_json(b)) == b


def test_json_shapes():
    assert boundary_to_json(FlatBoundary("C", -1)) == {"flat": {"letter": "C", "sign": -1}}
    assert boundary_from_json({"nil_torus": {"euler": 0}}) == FlatBoundary("A")
    with pytest.raises(ValueError):
        boundary_from_json({"bogus": {}})
    assert [r["eta"] for r in catalog_to_json()] == [0, 0, "-2/3", -1, "-4/3", 0]
    assert format_rational(Fraction(6, 3)) == 2
