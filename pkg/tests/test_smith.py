import math
from itertools import combinations

import numpy as np
import pytest

from src.core.exceptions import SNFCheckError
from src.models.matrix import SparseIntMatrix
from src.utils.smith import SNFResult, invariant_factors, smith_normal_form, solve, verify_snf

sympy = pytest.importorskip("sympy")


def _oracle(rows: list[list[int]]) -> tuple[int, list[int]]:
    """Rank and invariant factors from gcds of k x k minors (determinantal divisors)."""
    m = sympy.Matrix(rows)
    divisors = [1]
    for k in range(1, min(m.shape) + 1):
        g = 0
        for r in combinations(range(m.rows), k):
            for c in combinations(range(m.cols), k):
                g = math.gcd(g, int(m.extract(list(r), list(c)).det()))
        if g == 0:
            break
        divisors.append(g)
    factors = [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]
    return len(factors), [f for f in factors if f > 1]


def test_reference_diagonals():
    result = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert result.diagonal == (2, 6, 12)

    m = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    result = smith_normal_form(m)
    assert result.diagonal == (1, 10, 30)
    assert result.rank == 3
    assert result.invariant_factors == [10, 30]


def test_transforms_diagonalise():
    m = np.array([[4, 6, 2], [8, 3, 7], [1, 1, 1]], dtype=object)
    result = smith_normal_form(m)
    assert np.array_equal(result.U.dot(m).dot(result.V), result.diagonal_matrix())
    verify_snf(m, result)


def test_verify_snf_rejects_a_wrong_diagonal():
    m = np.array([[2, 0], [0, 3]], dtype=object)
    wrong = SNFResult((2, 2), (2, 3))
    with pytest.raises(SNFCheckError):
        verify_snf(m, wrong)


def test_zero_and_empty_matrices():
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == ()
    assert invariant_factors(SparseIntMatrix.zeros(3, 0)) == (0, [])


def test_sparse_engine_matches_dense_engine(rng):
    for _ in range(20):
        rows, cols = int(rng.integers(1, 7)), int(rng.integers(1, 7))
        dense = rng.integers(-3, 4, size=(rows, cols))
        sparse = SparseIntMatrix.from_dense(dense)
        result = smith_normal_form(dense.tolist())
        assert invariant_factors(sparse) == (result.rank, result.invariant_factors)


def test_against_sympy(rng):
    for _ in range(15):
        rows, cols = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        dense = rng.integers(-5, 6, size=(rows, cols)).tolist()
        assert invariant_factors(SparseIntMatrix.from_dense(dense)) == _oracle(dense)


def test_large_entries_keep_exact_precision():
    big = 2**80 + 1
    result = smith_normal_form([[big, 0], [0, 2 * big]])
    assert result.diagonal == (big, 2 * big)


def test_solve():
    m = [[2, 0], [0, 3]]
    result = smith_normal_form(m)
    x = solve(result, [4, 9])
    assert list(x) == [2, 3]
    assert solve(result, [1, 0]) is None
