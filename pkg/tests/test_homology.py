import math

import pytest

from src.core.exceptions import NotACycleError, QuandleHomologyError, TheoryMismatchError
from src.models.chain import Chain
from src.services.homology import (
    class_order,
    cycle_order,
    direct_sum,
    format_group,
    homology_class,
    homology_group,
    induced_map,
    is_boundary,
    is_homologous,
    normalise_torsion,
    scalar_map,
)
from src.services.operations import star_map
from src.services.quandles import trivial
from src.utils.fixtures import R3_ORDER3_CYCLE


@pytest.mark.parametrize(
    "free, torsion, expected",
    [
        (0, [], "0"),
        (1, [], "Z"),
        (2, [2, 2, 2, 2, 8], "Z^2 ⊕ Z_2^4 ⊕ Z_8"),
        (0, [3], "Z_3"),
    ],
)
def test_format_group(free, torsion, expected):
    assert format_group(free, torsion) == expected


@pytest.mark.parametrize(
    "factors, expected",
    [([8, 3], [24]), ([6, 4], [2, 12]), ([2, 2], [2, 2]), ([1, 5], [5]), ([], [])],
)
def test_normalise_torsion(factors, expected):
    assert normalise_torsion(factors) == expected


@pytest.mark.parametrize("n, free, torsion", [(1, 1, []), (2, 0, []), (3, 0, [3])])
def test_r3_quandle_homology(r3, make_complex, n, free, torsion):
    group = homology_group(make_complex(r3, "Q"), n)
    assert group.free_rank == free
    assert group.torsion == torsion


def test_s4_rack_h2(s4, make_complex):
    group = homology_group(make_complex(s4, "R"), 2)
    assert str(group) == "Z ⊕ Z_2"
    assert group.exponent == 2
    assert group.rank == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trivial_quandle_has_zero_boundary(make_complex, n):
    group = homology_group(make_complex(trivial(2), "R"), n)
    assert group.free_rank == 2**n
    assert group.torsion == []


def test_degree_zero_is_rejected(r3, make_complex):
    with pytest.raises(TheoryMismatchError):
        homology_group(make_complex(r3), 0)


def test_report_fields(r3, make_complex):
    report = homology_group(make_complex(r3, "Q"), 3).to_report()
    assert report.quandle == "R3"
    assert report.theory == "Q"
    assert report.group == "Z_3"
    assert report.status == "ok"


def test_direct_sum(r3, s4, make_complex):
    a = homology_group(make_complex(r3, "Q"), 3)
    b = homology_group(make_complex(s4, "R"), 2)
    assert direct_sum(a, b) == (1, [6])


def test_generators_realise_torsion(r3, make_complex):
    group = homology_group(make_complex(r3, "Q"), 3, classify=True)
    [generator] = group.generators()
    assert class_order(generator, group) == 3
    assert class_order(2 * generator, group) == 3
    assert class_order(3 * generator, group) == 1


def test_generators_need_classification(r3, make_complex):
    group = homology_group(make_complex(r3, "Q"), 3)
    with pytest.raises(QuandleHomologyError):
        group.generators()


def test_degree_one_classes(r3, make_complex):
    group = homology_group(make_complex(r3, "Q"), 1, classify=True)
    a, c = Chain.generator((0,)), Chain.generator((2,))
    # ∂(0,1) = (0) - (2)
    assert is_homologous(a, c, group)
    assert class_order(a, group) == math.inf
    assert homology_class(a, group) == homology_class(c, group)


def test_published_order_three_cycle(r3, make_complex):
    cx = make_complex(r3, "Q")
    z = Chain(5, [(gen, coeff) for coeff, gen in R3_ORDER3_CYCLE])
    assert cycle_order(cx, z) == 3
    assert not is_boundary(cx, z)
    assert is_boundary(cx, 3 * z)


def test_not_a_cycle(r3, make_complex):
    cx = make_complex(r3, "Q")
    with pytest.raises(NotACycleError):
        cycle_order(cx, Chain.generator((0, 1)))
    group = homology_group(cx, 2, classify=True)
    with pytest.raises(NotACycleError):
        homology_class(Chain.generator((0, 1)), group)


def test_translation_acts_trivially_on_homology(r3, make_complex):
    cx = make_complex(r3, "Q")
    group = homology_group(cx, 3, classify=True)
    for a in range(r3.size):
        induced = induced_map(star_map(cx, a), group, group)
        assert induced.is_scalar(1)
        assert induced == scalar_map(group, 1)
        assert not induced.is_zero()


def test_scalar_multiple_of_identity(r3, make_complex):
    group = homology_group(make_complex(r3, "Q"), 3, classify=True)
    assert scalar_map(group, 3).is_zero()
    assert scalar_map(group, 4) == scalar_map(group, 1)
    assert scalar_map(group, 2).is_injective()
    assert not scalar_map(group, 3).is_injective()


def test_induced_map_degree_mismatch(r3, make_complex):
    cx = make_complex(r3, "Q")
    source = homology_group(cx, 2, classify=True)
    target = homology_group(cx, 3, classify=True)
    with pytest.raises(TheoryMismatchError):
        induced_map(star_map(cx, 0), source, target)
