import math

import numpy as np
import pytest

from src.core.exceptions import InvalidSpecError
from src.services.analysis import analyze_orbits
from src.services.quandles import alexander
from src.utils.polynomial import (
    AlexanderModule,
    bracket_polynomial,
    format_residue,
    parse_polynomial,
)


def test_parse_polynomial_syntaxes():
    assert parse_polynomial("t2+t+1") == [1, 1, 1]
    assert parse_polynomial("t^2 + t + 1") == [1, 1, 1]
    assert parse_polynomial("2t+1") == [1, 2]
    assert parse_polynomial("t3-1") == [-1, 0, 0, 1]
    assert parse_polynomial("[5]") == [1, 1, 1, 1, 1]


def test_parse_polynomial_rejects_garbage():
    with pytest.raises(InvalidSpecError):
        parse_polynomial("")
    with pytest.raises(InvalidSpecError):
        parse_polynomial("t+x")


def test_bracket_polynomial():
    assert bracket_polynomial(3) == [1, 1, 1]
    with pytest.raises(InvalidSpecError):
        bracket_polynomial(1)


def test_format_residue():
    assert format_residue([0, 0], 2) == "0"
    assert format_residue([1, 1], 2) == "1+t"
    assert format_residue([2, 0, 1], 3) == "2+t^2"


def test_s4_module():
    module = AlexanderModule(2, (1, 1, 1))
    assert module.degree == 2
    assert module.size == 4
    assert module.orbit_count() == 1
    assert module.annihilating_k() == 3
    assert module.labels() == ("0", "1", "t", "1+t")


def test_coefficients_are_reduced_mod_m():
    module = AlexanderModule(3, (4, 0, 3, 1))
    assert module.coefficients == (1, 0, 0, 1)


@pytest.mark.parametrize("m,poly", [(2, [1, 1, 1, 1]), (3, [1, 1]), (4, [1, 1, 1]), (2, [1] * 6)])
def test_orbit_count_is_gcd_of_m_and_p_at_one(m, poly):
    module = AlexanderModule(m, tuple(poly))
    expected = math.gcd(m, module.value_at_one())
    assert module.orbit_count() == expected
    assert analyze_orbits(alexander(m, poly)).orbit_count == expected


def test_operation_table_is_t_a_plus_one_minus_t_b():
    module = AlexanderModule(5, (2, 1))
    # t acts as -2 = 3 on Z_5
    table = module.operation_table()
    expected = np.array([[(3 * a - 2 * b) % 5 for b in range(5)] for a in range(5)])
    assert np.array_equal(table, expected)
