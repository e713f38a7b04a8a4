import math

import pytest

from src.core.exceptions import BudgetExceeded, InvalidSpecError
from src.services.analysis import (
    analyze_orbits,
    cayley_digraph,
    cayley_edges,
    check_burnside,
    check_j_regular,
    connecting_word,
    distance_rho,
    element_order,
    quandle_k,
)
from src.services.quandles import dihedral, load_quandle, trivial, two_trivial


def test_orbits_of_r4(r4):
    orbits = analyze_orbits(r4)
    assert orbits.orbits == [[0, 2], [1, 3]]
    assert orbits.orbit_count == 2
    assert not orbits.connected


def test_r3_is_a_connected_quasigroup(r3):
    orbits = analyze_orbits(r3)
    assert orbits.connected
    assert orbits.quasigroup
    assert orbits.per_orbit_quasigroup == (True,)


def test_s4_and_q2_are_connected(s4, q2):
    assert analyze_orbits(s4).connected
    assert analyze_orbits(q2).connected


def test_element_orders(r3, s4, q2):
    assert element_order(r3, 0) == 2
    assert all(element_order(s4, a) == 3 for a in range(4))
    assert all(element_order(q2, a) == 4 for a in range(6))
    assert quandle_k(s4) == 3
    assert quandle_k(q2) == 4
    assert quandle_k(trivial(3)) == 1


@pytest.mark.parametrize("k0, k1", [(2, 3), (3, 3), (2, 4), (1, 5)])
def test_two_trivial_is_an_lcm_quandle(k0, k1):
    assert quandle_k(two_trivial(k0, k1)) == math.lcm(k0, k1)


def test_element_order_rejects_unknown_element(r3):
    with pytest.raises(InvalidSpecError):
        element_order(r3, 3)


def test_distance_rho(r3, r4, s4):
    assert distance_rho(r3, 0, 0) == 0
    assert distance_rho(r3, 0, 1) == 1
    assert distance_rho(r4, 0, 1) == math.inf
    assert distance_rho(r4, 0, 2) == 1
    # every orbit of an Alexander quandle is 1-connected
    assert all(distance_rho(s4, x0, x) <= 1 for x0 in range(4) for x in range(4))


def test_connecting_word_pads_with_the_target(r3):
    word = connecting_word(r3, 0, 1, 3)
    assert len(word) == 3
    value = 0
    for letter in word:
        value = r3.op(value, letter)
    assert value == 1
    assert connecting_word(dihedral(4), 0, 1, 2) is None


def test_j_regularity(r3, s4):
    for j in (1, 2, 3):
        assert all(check_j_regular(s4, a, j) for a in range(4))
        assert all(check_j_regular(r3, a, j) for a in range(3))
    assert check_j_regular(trivial(2), 0, 1)


def test_j_regularity_budget(s4):
    with pytest.raises(BudgetExceeded, match="inner automorphisms of length 3$"):
        check_j_regular(s4, 0, 3, budget=2)


def test_burnside_words(r3, r4):
    assert check_burnside(r3, 3)
    assert not check_burnside(r4, 3)
    assert check_burnside(trivial(1), 1)
    assert not check_burnside(trivial(3), 1)
    assert check_burnside(trivial(3), 2)


def test_cayley_digraph(r3):
    t2 = trivial(2)
    edges = cayley_edges(t2)
    assert len(edges) == 4
    assert all(x == image for x, _, image in edges)

    r3_edges = cayley_edges(r3)
    assert len(r3_edges) == 9
    assert sum(1 for x, _, image in r3_edges if x == image) == 3

    graph = cayley_digraph(load_quandle("fixture:q2"))
    assert graph.number_of_edges() == 36
    assert all(graph.has_edge(x, x) for x in graph.nodes)
