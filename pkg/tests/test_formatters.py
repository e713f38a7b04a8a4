import json

import pytest

from src.core.exceptions import InvalidSpecError
from src.models.chain import Chain
from src.models.schema import HomologyReport, VerificationCheck, VerificationReport
from src.services.quandles import build_xset, load_quandle
from src.utils.formatters import (
    format_chain,
    format_homology,
    format_verification,
    quandle_to_file,
    xset_to_file,
)


@pytest.fixture
def reports() -> list[HomologyReport]:
    return [
        HomologyReport(
            quandle="R4", theory="Q", degree=2, free_rank=2, torsion=[2, 2], group="Z^2 ⊕ Z_2^2"
        ),
        HomologyReport(
            quandle="R4",
            theory="R",
            degree=3,
            xset="orbit(0)",
            status="skipped",
            reason="C_4 has 256 generators",
        ),
    ]


def test_format_homology_pretty(reports):
    assert format_homology(reports).splitlines() == [
        "H_2^Q(R4) = Z^2 ⊕ Z_2^2",
        "H_3^R(R4; orbit(0)) = skipped (C_4 has 256 generators)",
    ]


def test_format_homology_csv(reports):
    lines = format_homology(reports, "csv").splitlines()
    assert lines[1] == "R4,full,Q,2,ok,2,2 2,Z^2 ⊕ Z_2^2"
    assert lines[2] == "R4,orbit(0),R,3,skipped,,,"


def test_json_is_sorted_and_stable(reports):
    text = format_homology(reports, "json")
    assert text == format_homology(reports, "json")
    first = json.loads(text)[0]
    assert list(first) == sorted(first)


def test_unknown_format(reports):
    with pytest.raises(InvalidSpecError):
        format_homology(reports, "xml")


def test_format_verification():
    report = VerificationReport.from_checks(
        [
            VerificationCheck(
                id="r3-h3q",
                description="H_3^Q(dihedral:3)",
                expected="Z_3",
                computed="Z_3",
                provenance="published",
                status="pass",
                runtime=0.1,
            ),
            VerificationCheck(
                id="x",
                description="d",
                expected="0",
                computed="Z",
                provenance="trivial",
                status="fail",
            ),
        ]
    )
    lines = format_verification(report).splitlines()
    assert lines[0].startswith("[   PASS] r3-h3q  expected Z_3; computed Z_3")
    assert lines[1].startswith("[   FAIL] x       expected 0")
    assert lines[-1] == "1 passed, 1 failed, 0 skipped"
    assert not report.ok


def test_format_chain():
    c = Chain(2, {(1, 0): -2, (0, 1): 1})
    assert format_chain(c) == "(0,1) - 2(1,0)"
    data = json.loads(format_chain(c, "json"))
    assert data["terms"] == [
        {"coeff": "1", "tuple": [0, 1]},
        {"coeff": "-2", "tuple": [1, 0]},
    ]
    assert format_chain(Chain.zero(3)) == "0"


def test_quandle_and_xset_files():
    s4 = load_quandle("fixture:s4")
    data = quandle_to_file(s4)
    assert data.size == 4
    assert data.labels == ["0", "1", "t", "1+t"]
    xset = xset_to_file(build_xset(load_quandle("dihedral:4"), "orbit:1"), "dihedral:4")
    assert xset.carrier_size == 2
    assert xset.embedding == [1, 3]
    assert xset.quandle == "dihedral:4"
