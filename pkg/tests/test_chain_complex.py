import pytest

from src.core.config import settings
from src.core.exceptions import InvalidSpecError, SizeLimitExceeded, TheoryMismatchError
from src.models.chain import Chain
from src.services.chain_complex import (
    chain_from_file,
    chain_from_terms,
    chain_to_file,
    load_chain,
    matrix_from_file,
    matrix_to_file,
)
from src.services.quandles import quandle_from_table


def _random_chain(cx, n, rng, terms=6) -> Chain:
    m, x = cx.xset.carrier_size, cx.quandle.size
    pairs = []
    for _ in range(terms):
        gen = (int(rng.integers(m)),) + tuple(int(v) for v in rng.integers(x, size=n - 1))
        pairs.append((gen, int(rng.integers(-3, 4))))
    return Chain(n, pairs)


@pytest.mark.parametrize(
    "theory, expected",
    [("R", 27), ("Q", 12), ("LQ", 18), ("D", 15), ("DD", 9)],
)
def test_basis_sizes_r3_degree_3(r3, make_complex, theory, expected):
    cx = make_complex(r3, theory)
    assert cx.basis_size(3) == expected
    assert len(cx.enumerate_basis(3)) == expected


def test_basis_is_lexicographic(r3, make_complex):
    basis = make_complex(r3, "Q").enumerate_basis(2)
    assert basis == [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]


def test_degree_one_late_theories(r3, make_complex):
    assert make_complex(r3, "LQ").basis_size(1) == 3
    assert make_complex(r3, "DD").basis_size(1) == 0
    assert make_complex(r3, "R").basis_size(0) == 0


def test_boundary_of_pair(r3, make_complex):
    cx = make_complex(r3)
    c = Chain.generator((0, 1))
    assert cx.boundary(c) == Chain(1, {(0,): 1, (2,): -1})


def test_boundary_of_degree_one_is_zero(r3, make_complex):
    assert make_complex(r3).boundary(Chain.generator((1,))).is_zero()


def test_quotient_boundary_drops_degenerate_faces(r3, make_complex):
    rack = make_complex(r3)
    quandle = make_complex(r3, "Q")
    c = Chain.generator((0, 1, 0))
    assert quandle.boundary(c) == rack.boundary(c).filter(lambda g: g[0] != g[1])


@pytest.mark.parametrize("theory", ["R", "Q", "LQ"])
def test_boundary_squared_vanishes(r4, make_complex, rng, theory):
    cx = make_complex(r4, theory)
    for n in (3, 4):
        c = cx.project(_random_chain(cx, n, rng))
        assert cx.boundary(cx.boundary(c)).is_zero()


@pytest.mark.parametrize("theory", ["D", "DD"])
def test_degenerate_subcomplex_is_closed(r3, make_complex, theory):
    cx = make_complex(r3, theory)
    for gen in cx.enumerate_basis(3):
        image = cx.boundary(Chain.generator(gen))
        assert cx.project(image) == image


def test_boundary_matrix_squares_to_zero(s4, make_complex):
    cx = make_complex(s4, "Q")
    product = cx.boundary_matrix(2) @ cx.boundary_matrix(3)
    assert product.nnz == 0


def test_half_boundaries_recover_boundary(r3, make_complex, rng):
    cx = make_complex(r3)
    c = _random_chain(cx, 4, rng)
    d0, d1 = cx.half_boundaries(c)
    assert d0 - d1 == cx.boundary(c)


def test_derivatives_sum_to_half_boundaries(s4, make_complex, rng):
    cx = make_complex(s4)
    c = _random_chain(cx, 3, rng)
    halves = cx.half_boundaries(c)
    for kind in (0, 1):
        total = Chain.zero(2)
        for q in range(s4.size):
            total = total + cx.partial_derivative(c, q, kind)
        assert total == halves[kind]


@pytest.mark.parametrize("n", [3, 4])
def test_mixed_derivative_identities(s4, make_complex, rng, n):
    cx = make_complex(s4)
    c = _random_chain(cx, n, rng)
    d0 = cx.half_boundaries(c)[0]
    for q in range(s4.size):
        dq0 = cx.partial_derivative(c, q, 0)
        dq1 = cx.partial_derivative(c, q, 1)
        # ∂¹/∂q anticommutes with ∂⁰ and with ∂⁰/∂q
        assert (cx.half_boundaries(dq1)[0] + cx.partial_derivative(d0, q, 1)).is_zero()
        assert (cx.partial_derivative(dq1, q, 0) + cx.partial_derivative(dq0, q, 1)).is_zero()
        for p in range(s4.size):
            swapped = cx.partial_derivative(cx.partial_derivative(c, p, 0), q, 0)
            assert (cx.partial_derivative(dq0, p, 0) + swapped).is_zero()


def test_derivative_identities_on_a_generator(r3, make_complex):
    cx = make_complex(r3)
    gen = Chain.generator((0, 1, 0))
    # only coordinates 1 and 3 equal 0
    assert cx.partial_derivative(gen, 0, 0) == Chain(2, [((1, 0), -1), ((0, 1), -1)])
    assert cx.partial_derivative(gen, 0, 1) == Chain(2, [((1, 0), -1), ((0, 2), -1)])
    d0 = cx.half_boundaries(gen)[0]
    dq1 = cx.partial_derivative(gen, 0, 1)
    assert (cx.half_boundaries(dq1)[0] + cx.partial_derivative(d0, 0, 1)).is_zero()


def test_partial_derivative_rejects_bad_input(r3, make_complex):
    cx = make_complex(r3)
    c = Chain.generator((0, 1))
    with pytest.raises(InvalidSpecError):
        cx.partial_derivative(c, 5, 0)
    with pytest.raises(InvalidSpecError):
        cx.partial_derivative(c, 0, 2)


def test_half_boundaries_need_classical_pair(r4, make_complex):
    cx = make_complex(r4, "R", "orbit:0")
    with pytest.raises(TheoryMismatchError):
        cx.half_boundaries(Chain.generator((0, 1)))


def test_star_then_inverse_is_identity(q2, make_complex, rng):
    cx = make_complex(q2)
    c = _random_chain(cx, 3, rng)
    for a in range(q2.size):
        assert cx.star_chain(cx.star_chain(c, a), a, inverse=True) == c
        assert cx.star_power(c, a, -2) == cx.star_chain(
            cx.star_chain(c, a, inverse=True), a, inverse=True
        )


def test_star_commutes_with_boundary(r4, make_complex, rng):
    cx = make_complex(r4)
    c = _random_chain(cx, 3, rng)
    assert cx.boundary(cx.star_chain(c, 1)) == cx.star_chain(cx.boundary(c), 1)


def test_rack_rejects_quandle_theories(make_complex):
    rack = quandle_from_table([[1, 1], [0, 0]], name="swap")
    assert not rack.is_quandle
    make_complex(rack, "R")
    for theory in ("Q", "D", "LQ", "DD"):
        with pytest.raises(TheoryMismatchError):
            make_complex(rack, theory)


def test_chain_outside_complex(r3, make_complex):
    with pytest.raises(InvalidSpecError):
        make_complex(r3).boundary(Chain.generator((0, 3)))


def test_pair_boundary_uses_action(r4, make_complex):
    cx = make_complex(r4, "R", "orbit:0")
    # Y = {0, 2}; y index 1 is element 2, and 2 * 1 = 0
    c = Chain.generator((1, 1))
    assert cx.boundary(c) == Chain(1, {(1,): 1, (0,): -1})


def test_chain_file_one_based():
    data = {
        "degree": 2,
        "labels": "one-based",
        "terms": [{"coeff": "2", "tuple": [1, 3]}, {"coeff": -1, "tuple": [3, 1]}],
    }
    assert chain_from_file(data) == Chain(2, {(0, 2): 2, (2, 0): -1})


def test_chain_file_keeps_big_coefficients():
    big = 10**30
    c = Chain(1, {(0,): big})
    assert chain_from_file(chain_to_file(c)) == c
    assert chain_to_file(c).terms[0].coeff == str(big)


def test_malformed_chain_file():
    with pytest.raises(InvalidSpecError):
        chain_from_file({"degree": 2, "terms": [{"coeff": "1", "tuple": [0]}]})


def test_load_chain_from_fixtures_dir():
    c = load_chain("c01.json")
    assert c.degree == 2
    with pytest.raises(InvalidSpecError):
        load_chain("no_such_chain.json")


def test_chain_from_terms_infers_degree():
    assert chain_from_terms([(1, (0, 1, 2)), (-1, [2, 1, 0])]).degree == 3
    with pytest.raises(InvalidSpecError):
        chain_from_terms([])


def test_matrix_file(r3, make_complex):
    matrix = make_complex(r3, "Q").boundary_matrix(3)
    restored = matrix_from_file(matrix_to_file(matrix))
    assert restored.shape == matrix.shape
    assert restored.entries == matrix.entries


def test_size_limit(monkeypatch, s4, make_complex):
    monkeypatch.setattr(settings, "MATRIX_COLUMN_LIMIT", 100)
    cx = make_complex(s4)
    assert len(cx.enumerate_basis(3)) == 64
    with pytest.raises(SizeLimitExceeded):
        cx.enumerate_basis(4)
