from fractions import Fraction

import pytest

from geodecomp.assembly import (
    Assembly,
    AssemblyValidationError,
    Classification,
    assembly_from_json,
    assembly_to_json,
    diagnose,
    edge_defects,
    edge_etas,
    euler,
    reverse_all,
    signature_l2_route,
    signature_novikov_route,
    validate_assembly,
)
from geodecomp.examples import build_M, build_Mprime, build_Z, dg_h_piece
from geodecomp.flat_catalog import FlatBoundary, NilKleinBoundary, NilTorusBoundary
from geodecomp.generate import random_mixed_assembly, random_real_hyperbolic_assembly
from geodecomp.pieces import Geometry, Piece


def f4(*cusps):
    return Piece(Geometry.F4, 1, 0, cusps)


def test_euler_examples():
    assert euler(build_M(1)) == 12
    assert euler(build_Z(2)) == 160
    two_f4 = Assembly((f4(NilTorusBoundary(3)), f4(NilTorusBoundary(-3))), ((0, 0, 1, 0),))
    assert euler(two_f4) == 0
    assert diagnose(two_f4).classification is Classification.ZERO_CHI


def test_signature_routes():
    for m in (1, 2, 5):
        assert signature_l2_route(build_M(m)) == 4 * m
        assert signature_novikov_route(build_M(m)) == 4 * m
    assert signature_novikov_route(build_Mprime(1)) == 2
    assert signature_l2_route(build_Z(3)) == Fraction(3**7 - 3**5, 3)


def test_real_hyperbolic_eta_cancels_per_edge():
    a = random_real_hyperbolic_assembly(11)
    assert signature_l2_route(a) == signature_novikov_route(a) == 0
    for _, x, y in edge_defects(a):
        assert x + y == 0
    for _, x, y in edge_etas(a):
        assert x + y == 0


def test_diagnose_examples():
    d = diagnose(build_M(2))
    assert (d.chi, d.sigma, d.slack, d.classification) == (24, 8, 0, Classification.EQUALITY_CERTIFIED)
    assert {(g, o) for _, g, o in d.certificate} == {("complex_hyperbolic", 1), ("f4", -1)}
    d = diagnose(build_Z(2))
    assert (d.chi, d.sigma, d.slack, d.classification) == (160, 32, 64, Classification.STRICT)
    assert d.line() == "label=Z_2 chi=160 sigma=32 slack=64 classification=Strict"


def test_unmatched_cusps():
    v = validate_assembly(Assembly((dg_h_piece(12),), ()))
    assert sum("unmatched cusp" in x for x in v) == 4
    with pytest.raises(AssemblyValidationError) as err:
        diagnose(Assembly((dg_h_piece(12),), ()))
    assert len(err.value.violations) == 4


def test_non_reversing_edge():
    a = Assembly((f4(NilTorusBoundary(12)), f4(NilTorusBoundary(12))), ((0, 0, 1, 0),))
    assert any("not orientation-reversing" in v for v in validate_assembly(a))


def test_slot_errors():
    p = f4(NilTorusBoundary(3), NilTorusBoundary(-3))
    assert any("does not exist" in v for v in validate_assembly(Assembly((p,), ((0, 0, 0, 5),))))
    assert any("glued to itself" in v for v in validate_assembly(Assembly((p,), ((0, 0, 0, 0), (0, 1, 0, 1)))))
    assert any("already used" in v for v in validate_assembly(Assembly((p,), ((0, 0, 0, 1), (0, 1, 0, 0)))))
    assert validate_assembly(Assembly((p,), ((0, 0, 0, 1),))) == []


def test_disconnected_rejected():
    p = f4(NilTorusBoundary(3), NilTorusBoundary(-3))
    a = Assembly((p, p), ((0, 0, 0, 1), (1, 0, 1, 1)))
    assert validate_assembly(a) == ["assembly is disconnected"]


def test_mixed_cases_rejected():
    a = Assembly(
        (Piece(Geometry.REAL_HYPERBOLIC, 1, 1, (FlatBoundary("A"),)), Piece(Geometry.H2xH2, 1, 1, (FlatBoundary("A"),))),
        ((0, 0, 1, 0),),
    )
    assert any("different decomposition cases" in v for v in validate_assembly(a))


def test_parity_rule():
    a = Assembly((Piece(Geometry.REAL_HYPERBOLIC, 1, 1, (FlatBoundary("A"), FlatBoundary("A"))),), ((0, 0, 0, 1),))
    assert any("parity" in v for v in validate_assembly(a))


def test_klein_cusps_skip_novikov_route():
    p = f4(NilKleinBoundary(6, 1), NilKleinBoundary(6, -1))
    a = Assembly((p,), ((0, 0, 0, 1),))
    assert diagnose(a).classification is Classification.ZERO_CHI


def test_self_edges_allowed():
    a = Assembly((Piece(Geometry.REAL_HYPERBOLIC, 1, 2, (FlatBoundary("C"), FlatBoundary("C", -1))),), ((0, 0, 0, 1),))
    assert validate_assembly(a) == []
    assert diagnose(a).sigma == 0


def test_flat_convention_flip_leaves_sigma():
    for seed in range(40):
        a = random_mixed_assembly(seed)
        assert signature_novikov_route(a, 1) == signature_novikov_route(a, -1)


def test_reverse_all_negates_sigma():
    for a in (build_M(1), build_Z(2), random_mixed_assembly(5)):
        d, r = diagnose(a), diagnose(reverse_all(a))
        assert (r.chi, r.sigma) == (d.chi, -d.sigma)


def test_json_round_trip():
    a = build_Mprime(2)
    assert assembly_from_json(assembly_to_json(a)) == a
