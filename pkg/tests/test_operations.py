import pytest

from src.core.exceptions import HypothesisError, InvalidSpecError
from src.models.chain import Chain
from src.models.quandle import QuandleHom
from src.services.chain_complex import chain_from_terms
from src.services.operations import (
    append_chain,
    f_map,
    fibonacci_chain,
    fibonacci_sequence,
    g_map,
    h_a_map,
    h_prime_a_map,
    h_w_defect,
    h_w_map,
    homotopy_residual,
    is_extreme,
    op_f,
    op_g,
    op_h_a,
    op_h_prime_a,
    op_phi,
    op_pushforward,
    pushforward_derivative_residual,
    resolve_operation,
    star_map,
    translation_order,
    verify_chain_map,
)
from src.utils.fixtures import Q2_TO_R3_ONE_BASED, S4_EXTREME_W, from_one_based


def _random_chain(cx, n, rng, terms=5) -> Chain:
    m, x = cx.xset.carrier_size, cx.quandle.size
    pairs = []
    for _ in range(terms):
        gen = (int(rng.integers(m)),) + tuple(int(v) for v in rng.integers(x, size=n - 1))
        pairs.append((gen, int(rng.integers(1, 4))))
    return Chain(n, pairs)


@pytest.fixture
def q2_to_r3(q2, r3) -> QuandleHom:
    values = tuple(Q2_TO_R3_ONE_BASED[a + 1] for a in range(q2.size))
    return QuandleHom(q2, r3, values, name="q2->r3")


def test_h_a_appends():
    assert op_h_a(Chain(2, {(0, 1): 2}), 3) == Chain(3, {(0, 1, 3): 2})


def test_h_a_alone_is_not_a_chain_map(r3, make_complex):
    cx = make_complex(r3)
    check = verify_chain_map(h_a_map(cx, 0), cx, 2)
    assert not check.ok
    assert check.generator is not None
    assert not check.residual.is_zero()


@pytest.mark.parametrize("theory", ["R", "Q"])
def test_h_prime_a_is_a_chain_map(r4, make_complex, theory):
    cx = make_complex(r4, theory)
    for a in range(r4.size):
        phi = h_prime_a_map(cx, a)
        for n in (1, 2, 3):
            assert verify_chain_map(phi, cx, n).ok


def test_h_prime_a_on_pairs(r4, make_complex):
    pair = make_complex(r4, "R", "orbit:0")
    assert verify_chain_map(h_prime_a_map(pair, 1), pair, 2).ok


def test_h_prime_a_sums_translates(r3, make_complex):
    cx = make_complex(r3)
    assert translation_order(cx, 0) == 2
    c = Chain.generator((1,))
    # 1 * 0 = 2
    assert op_h_prime_a(cx, c, 0) == Chain(2, {(1, 0): 1, (2, 0): 1})


def test_star_is_a_chain_map(s4, make_complex):
    cx = make_complex(s4, "Q")
    assert verify_chain_map(star_map(cx, 2), cx, 3).ok


def test_f_and_g(r4, make_complex, rng):
    whole = make_complex(r4)
    pair = make_complex(r4, "R", "orbit:1")
    c = _random_chain(whole, 2, rng)
    assert op_f(op_g(pair, c)) == pair.xset.carrier_size * c
    for n in (1, 2, 3):
        assert verify_chain_map(g_map(pair), whole, n, pair).ok
        assert verify_chain_map(f_map(), pair, n + 1, whole).ok


def test_homotopy_identity(r4, make_complex):
    pair = make_complex(r4, "R", "orbit:0")
    for gen in pair.enumerate_basis(3):
        assert homotopy_residual(pair, gen, [1, 3]).is_zero()


def test_phi_needs_invariant_subset(r4, make_complex):
    cx = make_complex(r4)
    with pytest.raises(HypothesisError):
        op_phi(cx, Chain.generator((0, 1)), [0, 1])


def test_phi_sums_over_subset(r4, make_complex):
    cx = make_complex(r4)
    # 1 * 0 = 3 and 1 * 2 = 3
    assert op_phi(cx, Chain.generator((1, 2)), [0, 2]) == Chain(2, {(3, 2): 2})


def test_fibonacci_sequence_of_r3(r3, make_complex):
    assert fibonacci_sequence(r3, 0, 1) == [0, 1, 2]
    s = fibonacci_chain(r3, 0, 1)
    assert s == Chain(2, {(0, 1): 1, (1, 2): 1, (2, 0): 1})
    assert make_complex(r3, "Q").boundary(s).is_zero()


def test_s4_extreme_chain_needs_quandle_mode(s4, make_complex):
    cx = make_complex(s4)
    w = chain_from_terms(from_one_based(S4_EXTREME_W))
    assert is_extreme(cx, w, "quandle").extreme
    report = is_extreme(cx, w, "rack")
    assert not report.extreme
    with pytest.raises(HypothesisError):
        h_w_map(cx, w, "rack")
    with pytest.raises(InvalidSpecError):
        is_extreme(cx, w, "group")


def test_h_w_defect_formula(s4, make_complex, rng):
    cx = make_complex(s4)
    w = chain_from_terms(from_one_based(S4_EXTREME_W))
    for n in (1, 2, 3):
        u = _random_chain(cx, n, rng, terms=3)
        lhs, rhs = h_w_defect(cx, u, w)
        assert lhs == rhs


def test_append_chain_is_bilinear():
    u = Chain(1, {(0,): 2, (1,): -1})
    w = Chain(2, {(1, 2): 3})
    assert append_chain(u, w) == Chain(3, {(0, 1, 2): 6, (1, 1, 2): -3})


def test_pushforward(q2_to_r3, make_complex, rng):
    source = make_complex(q2_to_r3.source)
    target = make_complex(q2_to_r3.target)
    c = _random_chain(source, 3, rng)
    assert target.boundary(op_pushforward(q2_to_r3, c)) == op_pushforward(
        q2_to_r3, source.boundary(c)
    )
    for p in range(3):
        assert pushforward_derivative_residual(source, target, q2_to_r3, c, p).is_zero()


def test_pushforward_rejects_non_homomorphism(r3):
    f = QuandleHom(r3, r3, (0, 0, 1))
    with pytest.raises(HypothesisError):
        op_pushforward(f, Chain.generator((0, 1)))


def test_resolve_operation(r3, make_complex):
    cx = make_complex(r3)
    phi = resolve_operation(cx, {"op": "h_prime_a", "a": 1})
    assert phi.shift == 1
    assert phi.params["k"] == 2
    assert resolve_operation(cx, {"op": "f"}).sign == -1
    with pytest.raises(InvalidSpecError, match="needs parameter 'a'"):
        resolve_operation(cx, {"op": "h_a"})
    with pytest.raises(InvalidSpecError):
        resolve_operation(cx, {"op": "nope"})


def test_resolve_operation_accepts_name_key(r3, make_complex):
    cx = make_complex(r3)
    by_name = resolve_operation(cx, {"name": "h_prime_a", "a": 0})
    by_op = resolve_operation(cx, {"op": "h_prime_a", "a": 0})
    assert (by_name.name, by_name.params) == (by_op.name, by_op.params)
    with pytest.raises(InvalidSpecError):
        resolve_operation(cx, {"a": 0})
