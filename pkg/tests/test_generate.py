import numpy as np
import pytest

from geodecomp.assembly import diagnose, validate_assembly
from geodecomp.generate import (
    EULER_RANGE,
    GENERATORS,
    random_complex_assembly,
    random_flat_case_assembly,
    random_holzapfel_assembly,
)
from geodecomp.flat_catalog import NilTorusBoundary
from geodecomp.pieces import HILLMAN_CASE


@pytest.mark.parametrize("kind", sorted(GENERATORS))
def test_generators_valid_and_deterministic(kind):
    gen = GENERATORS[kind]
    for seed in range(30):
        a = gen(seed)
        assert validate_assembly(a) == []
        assert 1 <= len(a.pieces) <= 12
        assert a == gen(seed)


def test_generator_accepts_numpy_rng():
    a = GENERATORS["mixed"](np.random.default_rng(3))
    assert validate_assembly(a) == []


def test_euler_numbers_in_range():
    for seed in range(30):
        for p in random_complex_assembly(seed).pieces:
            assert all(EULER_RANGE[0] <= abs(c.euler) <= EULER_RANGE[1] for c in p.cusps)


@pytest.mark.parametrize("case", [3, 4])
def test_flat_cases_single_hillman_case(case):
    for seed in range(20):
        a = random_flat_case_assembly(seed, case)
        assert {HILLMAN_CASE[p.geometry] for p in a.pieces} == {case}
        assert diagnose(a).sigma == 0
    with pytest.raises(ValueError):
        random_flat_case_assembly(0, 5)


def test_holzapfel_profile():
    for seed in range(20):
        for p in random_holzapfel_assembly(seed).pieces:
            assert 4 * p.chi == sum(abs(c.euler) for c in p.cusps if isinstance(c, NilTorusBoundary))
