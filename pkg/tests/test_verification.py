import numpy as np
import pytest

from src.core.exceptions import QuandleHomologyError, SizeLimitExceeded
from src.services.verification import (
    CHECKS,
    Check,
    Outcome,
    Tally,
    complex_of,
    derivative_identity_residuals,
    expected_free_rank,
    list_checks,
    random_chain,
    resolve_check_ids,
    run_check,
)


@pytest.mark.parametrize(
    "check_id",
    [
        "r3-h3q",
        "s4-h2r",
        "half-boundaries",
        "derivative-identities",
        "rank-additivity",
        "burnside",
        "snf-self-check",
    ],
)
def test_cheap_checks_pass(check_id):
    result = run_check(check_id)
    assert result.status == "pass", result.computed
    assert result.id == check_id
    assert result.runtime >= 0


def test_published_group_check_reports_group():
    result = run_check("r3-h3q")
    assert result.expected == "Z_3"
    assert result.computed == "Z_3"
    assert result.provenance == "published"


def test_unknown_check():
    with pytest.raises(QuandleHomologyError):
        run_check("no-such-check")
    with pytest.raises(QuandleHomologyError):
        resolve_check_ids(["burnside", "no-such-check"])


def test_resolve_all_skips_deep_checks():
    ids = resolve_check_ids("all")
    assert "burnside" in ids
    assert "s4-h6q" not in ids
    assert "s4-h6q" in resolve_check_ids("all", deep=True)
    # Deep checks named explicitly still run
    assert resolve_check_ids(["s4-h6q"]) == ["s4-h6q"]
    assert len(list_checks(deep=True)) == len(CHECKS)


def test_size_limit_marks_check_skipped(monkeypatch):
    def too_big() -> Outcome:
        raise SizeLimitExceeded("C_9 is too large", degree=9)

    monkeypatch.setitem(CHECKS, "too-big", Check("too-big", "d", "e", "trivial", too_big))
    result = run_check("too-big")
    assert result.status == "skipped"
    assert "too large" in result.computed


def test_crashing_check_fails(monkeypatch):
    def crash() -> Outcome:
        raise ZeroDivisionError("boom")

    monkeypatch.setitem(CHECKS, "crash", Check("crash", "d", "e", "trivial", crash))
    result = run_check("crash")
    assert result.status == "fail"
    assert result.computed.startswith("ZeroDivisionError")


def test_tally():
    tally = Tally()
    tally.expect(True, "a")
    assert tally.outcome() == Outcome(True, "1 cases hold")
    tally.expect(False, "b")
    outcome = tally.outcome()
    assert not outcome.ok
    assert outcome.computed == "1/2 failed: b"


@pytest.mark.parametrize(
    "theory, orbits, n, expected",
    [
        ("R", 2, 3, 8),
        ("Q", 2, 3, 2),
        ("D", 2, 3, 6),
        ("LQ", 2, 1, 2),
        ("LQ", 3, 3, 18),
        ("DD", 2, 1, 0),
        ("Q", 1, 3, 0),
    ],
)
def test_expected_free_rank(theory, orbits, n, expected):
    assert expected_free_rank(theory, orbits, n) == expected


def test_derivative_residuals_vanish_on_q2():
    cx = complex_of("fixture:q2")
    c = random_chain(cx, 4, np.random.default_rng(5), terms=8)
    residuals = derivative_identity_residuals(cx, c)
    # 2 sums, then 4 identities per element and one per unordered pair
    assert len(residuals) == 2 + 4 * 6 + 15
    assert [label for label, r in residuals.items() if not r.is_zero()] == []


def test_alias_resolves_to_derivative_identities():
    assert resolve_check_ids(["lemma22"]) == ["derivative-identities"]
    assert run_check("lemma22").id == "derivative-identities"


def test_r8_h3q_pins_the_computed_group():
    result = run_check("r8-h3q")
    assert result.status == "pass", result.computed
    assert result.computed == "Z^2 ⊕ Z_2^2 ⊕ Z_8^2"
    assert result.provenance == "recomputed"
    assert result.description.endswith("printed as Z^2 ⊕ Z_8^2")


def test_default_set_covers_r8_degree_4():
    ids = resolve_check_ids("all")
    assert "r8-h4q" in ids
    assert "r16-h3q" not in ids
    assert "s4-h7q" not in CHECKS


@pytest.mark.slow
@pytest.mark.parametrize("check_id", [c.id for c in list_checks()])
def test_default_check_passes(check_id):
    result = run_check(check_id)
    assert result.status == "pass", result.computed
