import pytest

from src.core.exceptions import AxiomViolation, HypothesisError, InvalidSpecError
from src.models.quandle import QuandleHom
from src.services.quandles import (
    alexander,
    build_xset,
    check_homomorphism,
    check_retraction,
    conjugation,
    core,
    dihedral,
    find_isomorphism,
    load_quandle,
    quandle_from_table,
    takasaki,
    trivial,
    two_trivial,
    validate_quandle,
    xset_from_subset,
)
from src.services.verification import r2_epimorphism
from src.utils.spec_parser import parse_degrees

Z3_TABLE = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def test_dihedral_table(r3):
    assert r3.table == ((0, 2, 1), (2, 1, 0), (1, 0, 2))
    assert r3.is_quandle


def test_dihedral_equals_takasaki_of_cyclic_group():
    for k in (3, 4, 5, 6):
        assert dihedral(k).table == takasaki([k]).table


def test_validate_reports_idempotence_failures_for_racks():
    report = validate_quandle([[1, 1], [0, 0]])
    assert report.is_rack
    assert not report.is_quandle
    assert report.idempotence_failures == [0, 1]
    assert "idempotence fails at a=0" in report.failures

    rack = quandle_from_table([[1, 1], [0, 0]], name="flip")
    assert not rack.is_quandle


def test_validate_reports_distributivity_witness():
    table = [[0, 2, 1], [1, 1, 0], [2, 0, 2]]
    report = validate_quandle(table)
    assert not report.idempotence_failures
    assert not report.bijectivity_failures
    assert (0, 1, 2) in report.distributivity_failures
    with pytest.raises(AxiomViolation) as excinfo:
        quandle_from_table(table)
    assert excinfo.value.axiom == "right self-distributivity"


def test_validate_rejects_malformed_tables():
    with pytest.raises(InvalidSpecError):
        validate_quandle([[0, 1]])
    with pytest.raises(InvalidSpecError):
        validate_quandle([[0, 5], [1, 1]])


def test_alexander_s4_matches_fixture_file(s4):
    assert s4.size == 4
    assert s4.labels == ("0", "1", "t", "1+t")
    assert load_quandle("fixtures/s4").table == s4.table
    assert load_quandle("alexander:2:t2+t+1").table == s4.table


def test_alexander_rejects_non_invertible_extreme_coefficients():
    with pytest.raises(InvalidSpecError):
        alexander(4, [2, 1])
    with pytest.raises(InvalidSpecError):
        load_quandle("alexander:6:3t+1")


def test_bracket_alexander_quandles():
    for p in (3, 5):
        assert find_isomorphism(load_quandle(f"alexander:{p}:[2]"), dihedral(p)) is not None
    s4 = load_quandle("fixture:s4")
    assert find_isomorphism(load_quandle("alexander:2:[3]"), s4) is not None


def test_two_trivial_2_2_is_r4(r4):
    assert find_isomorphism(two_trivial(2, 2), r4) is not None
    assert find_isomorphism(two_trivial(1, 3), r4) is None


def test_q2_builtin_matches_fixture_file(q2):
    assert q2.size == 6
    assert load_quandle("fixtures/q2").table == q2.table


def test_q2_is_a_quandle_onto_r3(q2):
    assert validate_quandle(q2.table).is_quandle
    assert validate_quandle(load_quandle("fixtures/q2").table).is_quandle
    assert all(sorted(q2.table[a][b] for a in range(6)) == list(range(6)) for b in range(6))
    f = r2_epimorphism()
    assert check_homomorphism(f)
    assert sorted(set(f.values)) == [0, 1, 2]


def test_conjugation_and_core_of_abelian_group(r3):
    assert conjugation(Z3_TABLE).table == trivial(3).table
    assert core(Z3_TABLE).table == r3.table
    assert load_quandle("core:fixtures/z3_group").table == r3.table


def test_group_table_must_be_a_group():
    with pytest.raises(InvalidSpecError):
        conjugation([[0, 0], [0, 0]])


def test_orbit_xset_of_r4(r4):
    y = build_xset(r4, "orbit:0")
    assert y.carrier_size == 2
    assert y.embedding == (0, 2)
    assert y.action == ((0, 1, 0, 1), (1, 0, 1, 0))


def test_full_xset_is_the_quandle_action(r3):
    y = build_xset(r3, "full")
    assert y.is_full
    assert y.action == r3.table


def test_non_invariant_subset_is_rejected(r3):
    with pytest.raises(HypothesisError):
        xset_from_subset(r3, [0, 1], "Y")


def test_custom_action_is_validated(r3):
    from src.models.quandle import ConstructorSpec

    bad = ConstructorSpec("custom", {"action": [[0, 0, 0], [1, 0, 1]]})
    with pytest.raises(AxiomViolation):
        build_xset(r3, bad)


def test_homomorphisms(r3):
    assert check_homomorphism(r2_epimorphism())
    assert check_homomorphism(QuandleHom(r3, r3, (0, 1, 2), name="id"))
    assert check_homomorphism(QuandleHom(r3, r3, (0, 0, 0), name="const"))
    assert not check_homomorphism(QuandleHom(r3, r3, (0, 0, 1), name="bad"))


def test_twist_retraction_of_r3_in_r6(r3):
    r6 = dihedral(6)
    inclusion = QuandleHom(r3, r6, (0, 2, 4), name="i")
    retraction = QuandleHom(r6, r3, tuple(x % 3 for x in range(6)), name="r")
    assert check_retraction(inclusion, retraction) == "twist"
    identity_retraction = QuandleHom(r6, r3, (0, 2, 1, 0, 2, 1), name="r'")
    assert check_retraction(inclusion, identity_retraction) == "retraction"


def test_unknown_specs_are_rejected():
    with pytest.raises(InvalidSpecError):
        load_quandle("bogus:1")
    with pytest.raises(InvalidSpecError):
        load_quandle("fixture:nothing")


def test_parse_degrees():
    assert parse_degrees("1..3") == [1, 2, 3]
    assert parse_degrees("2,5") == [2, 5]
    assert parse_degrees("4") == [4]
    with pytest.raises(InvalidSpecError):
        parse_degrees("3..1")
    with pytest.raises(InvalidSpecError):
        parse_degrees("0..2")
