"""Structural analysis of finite racks and quandles: orbits, orders, distances, regularity."""

import math

import networkx as nx
import numpy as np
from networkx.utils import UnionFind

from src.core.config import settings
from src.core.exceptions import BudgetExceeded, InvalidSpecError
from src.core.logging import logger
from src.models.quandle import OrbitData, Quandle

INFINITY = math.inf


def analyze_orbits(quandle: Quandle) -> OrbitData:
    """Orbit partition under right translations, plus quasigroup flags."""
    n = quandle.size
    forest = UnionFind(range(n))
    for a in range(n):
        for b in range(n):
            forest.union(a, quandle.op(a, b))

    classes = sorted((sorted(group) for group in forest.to_sets()), key=lambda g: g[0])
    orbit_id = [0] * n
    for i, group in enumerate(classes):
        for a in group:
            orbit_id[a] = i

    per_orbit = []
    for group in classes:
        members = set(group)
        per_orbit.append(
            all({quandle.op(a, x) for x in group} == members for a in group)
        )
    quasigroup = all(len(set(row)) == n for row in quandle.table)
    return OrbitData(
        orbit_id=tuple(orbit_id),
        orbit_count=len(classes),
        per_orbit_quasigroup=tuple(per_orbit),
        connected=len(classes) == 1,
        quasigroup=quasigroup,
    )


def permutation_order(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = math.lcm(order, length)
    return order


def element_order(quandle: Quandle, a: int) -> int:
    """Least k with x * a^k = x for all x (the k-condition order of a)."""
    _check_element(quandle, a)
    return permutation_order(quandle.columns[a])


def quandle_k(quandle: Quandle) -> int:
    """lcm of all element orders: the least k making Q a k-quandle."""
    return math.lcm(*(element_order(quandle, a) for a in range(quandle.size)))


def cayley_digraph(quandle: Quandle) -> nx.MultiDiGraph:
    """Digraph with one edge x -> x*y labelled y for every pair (x, y)."""
    graph = nx.MultiDiGraph(name=quandle.name)
    graph.add_nodes_from(range(quandle.size))
    for x in range(quandle.size):
        for y in range(quandle.size):
            graph.add_edge(x, quandle.op(x, y), key=y, label=y)
    return graph


def cayley_edges(quandle: Quandle) -> list[tuple[int, int, int]]:
    """All n^2 labelled edges as triples (x, y, x*y)."""
    return [(x, y, quandle.op(x, y)) for x in range(quandle.size) for y in range(quandle.size)]


def distance_rho(quandle: Quandle, x0: int, x: int) -> float:
    """Least j with x0 * x1 * ... * xj = x, or ``math.inf`` when unreachable."""
    _check_element(quandle, x0)
    _check_element(quandle, x)
    if x0 == x:
        return 0
    try:
        return nx.shortest_path_length(cayley_digraph(quandle), x0, x)
    except nx.NetworkXNoPath:
        return INFINITY


def connecting_word(quandle: Quandle, x0: int, x: int, length: int) -> tuple[int, ...] | None:
    """Lexicographically least shortest word u with x0 * u1 * ... = x, padded with
    x to exactly ``length`` letters. None when no such word exists."""
    if x0 == x:
        word: tuple[int, ...] = ()
    else:
        # BFS over words in lexicographic order gives the least shortest word
        previous: dict[int, tuple[int, int]] = {x0: (-1, -1)}
        frontier = [x0]
        found = False
        while frontier and not found:
            nxt = []
            for node in frontier:
                for letter in range(quandle.size):
                    image = quandle.op(node, letter)
                    if image not in previous:
                        previous[image] = (node, letter)
                        nxt.append(image)
                        if image == x:
                            found = True
            frontier = nxt
        if x not in previous:
            return None
        letters = []
        node = x
        while node != x0:
            node, letter = previous[node]
            letters.append(letter)
        word = tuple(reversed(letters))
    if len(word) > length:
        return None
    if len(word) < length and not quandle.is_quandle:
        return None
    return word + (x,) * (length - len(word))


def inner_automorphisms(quandle: Quandle, j: int, budget: int | None = None) -> np.ndarray:
    """Distinct permutations x -> x * x1 * ... * xj (repetition allowed), one per row."""
    if j < 1:
        raise InvalidSpecError(f"length must be positive, got {j}")
    budget = budget or settings.PERMUTATION_BUDGET
    generators = np.array(quandle.columns, dtype=np.int64)
    current = np.unique(generators, axis=0)
    for _ in range(j - 1):
        # alpha followed by *b is generators[b][alpha]
        composed = generators[:, current].reshape(-1, quandle.size)
        current = np.unique(composed, axis=0)
        if len(current) > budget:
            raise BudgetExceeded(f"more than {budget} inner automorphisms of length {j}", length=j)
    logger.debug("inner_automorphisms", quandle=quandle.name, length=j, count=len(current))
    return current


def check_j_regular(quandle: Quandle, a: int, j: int, budget: int | None = None) -> bool:
    """True iff length-j inner automorphisms agreeing on sending some x to a coincide."""
    _check_element(quandle, a)
    perms = inner_automorphisms(quandle, j, budget)
    hits = (perms == a).sum(axis=0)
    return bool((hits <= 1).all())


def burnside_word(quandle: Quandle, a0: int, a1: int, n: int) -> int:
    """Left-normed alternating word of n letters ending in a1."""
    letters = [a1 if (n - i) % 2 == 0 else a0 for i in range(1, n + 1)]
    value = letters[0]
    for letter in letters[1:]:
        value = quandle.op(value, letter)
    return value


def check_burnside(quandle: Quandle, n: int) -> bool:
    """True iff a_n(a0, a1) = a0 for every pair."""
    if n < 1:
        raise InvalidSpecError(f"word length must be positive, got {n}")
    return all(
        burnside_word(quandle, a0, a1, n) == a0
        for a0 in range(quandle.size)
        for a1 in range(quandle.size)
    )


def _check_element(quandle: Quandle, a: int) -> None:
    if not 0 <= a < quandle.size:
        raise InvalidSpecError(f"element {a} outside {quandle.name}")
