"""Homological operations: chain maps between rack/quandle chain complexes.

Every operation exists in two forms: ``op_*`` evaluates it on a chain, and
``*_map`` returns a ChainMapDescriptor that can be verified against the
boundary and pushed to homology.
"""

import itertools
import math
from collections.abc import Sequence

from src.core.exceptions import HypothesisError, InvalidSpecError, TheoryMismatchError
from src.core.logging import logger
from src.models.chain import (
    Chain,
    ChainMapCheck,
    ChainMapDescriptor,
    ExtremeChainReport,
    GeneratorTuple,
    Theory,
)
from src.models.quandle import Quandle, QuandleHom
from src.services.analysis import (
    analyze_orbits,
    check_j_regular,
    connecting_word,
    element_order,
    permutation_order,
)
from src.services.chain_complex import ChainComplex, load_chain
from src.services.quandles import check_homomorphism, xset_from_subset


def verify_chain_map(
    phi: ChainMapDescriptor,
    source: ChainComplex,
    n: int,
    target: ChainComplex | None = None,
) -> ChainMapCheck:
    """Check ∂φ = sign·φ∂ on every generator of C_n(source).

    Quotient theories compare after dropping degenerate tuples.
    """
    target = target or source
    basis = source.enumerate_basis(n)
    for gen in basis:
        residual = _chain_map_residual(phi, source, target, gen)
        if not residual.is_zero():
            logger.debug("chain_map_failed", name=phi.name, degree=n, generator=gen)
            return ChainMapCheck(phi.name, n, False, gen, residual, len(basis))
    return ChainMapCheck(phi.name, n, True, checked=len(basis))


def _chain_map_residual(
    phi: ChainMapDescriptor, source: ChainComplex, target: ChainComplex, gen: GeneratorTuple
) -> Chain:
    n = len(gen)
    image = phi.on_generator(gen)
    if n + phi.shift < 2:
        # Everything lands in C_0 = 0
        return Chain.zero(max(n + phi.shift - 1, 0))
    lhs = target.boundary(image)
    if n >= 2:
        rhs = phi(source.boundary(Chain.generator(gen)))
        residual = lhs - phi.sign * rhs
    else:
        residual = lhs
    return target.project(residual) if target.theory.is_quotient else residual


# Right translations


def translation_order(cx: ChainComplex, a: int) -> int:
    """Order of ∗a acting on chains of the pair (X on itself and on Y)."""
    k = element_order(cx.quandle, a)
    column = [cx.xset.act(y, a) for y in range(cx.xset.carrier_size)]
    return math.lcm(k, permutation_order(column))


def star_map(cx: ChainComplex, a: int) -> ChainMapDescriptor:
    return ChainMapDescriptor(
        f"∗{a}", 0, lambda gen: cx.star_chain(Chain.generator(gen), a).items(), params={"a": a}
    )


# h_a and h'_a


def op_h_a(c: Chain, a: int) -> Chain:
    """Append a to every tuple."""
    return c.map_generators(c.degree + 1, lambda gen: [(gen + (a,), 1)])


def h_a_map(cx: ChainComplex, a: int) -> ChainMapDescriptor:
    _check_element(cx.quandle, a)
    return ChainMapDescriptor(f"h_{a}", 1, lambda gen: [(gen + (a,), 1)], params={"a": a})


def op_h_prime_a(cx: ChainComplex, c: Chain, a: int, k: int | None = None) -> Chain:
    """Σ_{i<k} (∗a)^i h_a(c) with k the order of ∗a unless given."""
    _check_element(cx.quandle, a)
    k = k or translation_order(cx, a)
    term = op_h_a(c, a)
    total = Chain.zero(c.degree + 1)
    for _ in range(k):
        total = total + term
        term = cx.star_chain(term, a)
    return total


def h_prime_a_map(cx: ChainComplex, a: int, k: int | None = None) -> ChainMapDescriptor:
    k = k or translation_order(cx, a)
    return ChainMapDescriptor(
        f"h'_{a}",
        1,
        lambda gen: op_h_prime_a(cx, Chain.generator(gen), a, k).items(),
        params={"a": a, "k": k},
    )


def common_order(cx: ChainComplex, reps: Sequence[int]) -> int:
    return math.lcm(*(translation_order(cx, a) for a in reps))


def op_h_prime_vec(cx: ChainComplex, c: Chain, reps: Sequence[int]) -> Chain:
    """Sum of h'_{a_i} over one representative per orbit, with a common k."""
    _check_representatives(cx.quandle, reps)
    k = common_order(cx, reps)
    total = Chain.zero(c.degree + 1)
    for a in reps:
        total = total + op_h_prime_a(cx, c, a, k)
    return total


def h_prime_vec_map(cx: ChainComplex, reps: Sequence[int]) -> ChainMapDescriptor:
    reps = list(reps)
    return ChainMapDescriptor(
        "h'_a",
        1,
        lambda gen: op_h_prime_vec(cx, Chain.generator(gen), reps).items(),
        params={"reps": reps},
    )


def _check_representatives(quandle: Quandle, reps: Sequence[int]) -> None:
    orbits = analyze_orbits(quandle)
    seen = sorted(orbits.orbit_id[a] for a in reps)
    if seen != list(range(orbits.orbit_count)):
        raise HypothesisError(
            f"representatives {list(reps)} must hit each of the "
            f"{orbits.orbit_count} orbits of {quandle.name} exactly once"
        )


class HBarPrime:
    """h̄'_a: C_{n+1} -> C_n for chosen orbit representatives and word length j.

    Each last coordinate x is moved to its orbit representative by a fixed word
    of length j; the first n coordinates are translated by the same word.
    """

    def __init__(self, cx: ChainComplex, reps: Sequence[int], j: int, check: bool = True):
        if not cx.classical:
            raise TheoryMismatchError("h̄' is defined on the classical complex")
        quandle = cx.quandle
        _check_representatives(quandle, reps)
        self.cx = cx
        self.j = j
        self.k = common_order(cx, reps)
        orbits = analyze_orbits(quandle)
        rep_of = {orbits.orbit_id[a]: a for a in reps}
        if check:
            for a in reps:
                if not check_j_regular(quandle, a, j + 1):
                    raise HypothesisError(f"{quandle.name} is not {j + 1}-regular at {a}")
        self.representative = [rep_of[orbits.orbit_id[x]] for x in range(quandle.size)]
        self.words = []
        for x in range(quandle.size):
            word = connecting_word(quandle, x, self.representative[x], j)
            if word is None:
                raise HypothesisError(
                    f"{x} is not {j}-connected to {self.representative[x]} in {quandle.name}"
                )
            self.words.append(word)

    def bar(self, gen: GeneratorTuple) -> GeneratorTuple:
        head, last = gen[:-1], gen[-1]
        for letter in self.words[last]:
            column = self.cx.quandle.columns[letter]
            head = tuple(column[x] for x in head)
        return head

    def rule(self, gen: GeneratorTuple) -> list[tuple[GeneratorTuple, int]]:
        head = self.bar(gen)
        a = self.representative[gen[-1]]
        column = self.cx.quandle.columns[a]
        terms = []
        for _ in range(self.k):
            terms.append((head, 1))
            head = tuple(column[x] for x in head)
        return terms

    def descriptor(self) -> ChainMapDescriptor:
        return ChainMapDescriptor("h̄'_a", -1, self.rule, params={"j": self.j, "k": self.k})


def op_hbar_prime(cx: ChainComplex, c: Chain, reps: Sequence[int], j: int) -> Chain:
    if c.degree < 1:
        raise TheoryMismatchError("h̄' needs degree >= 1")
    return HBarPrime(cx, reps, j).descriptor()(c)


def hbar_words_agree(quandle: Quandle, reps: Sequence[int], j: int) -> bool:
    """True when every length-j word moving x to its representative induces the same translation."""
    orbits = analyze_orbits(quandle)
    rep_of = {orbits.orbit_id[a]: a for a in reps}
    for x in range(quandle.size):
        target = rep_of[orbits.orbit_id[x]]
        translations = set()
        for word in itertools.product(range(quandle.size), repeat=j):
            images = list(range(quandle.size))
            for letter in word:
                images = [quandle.op(v, letter) for v in images]
            if images[x] == target:
                translations.add(tuple(images))
        if len(translations) > 1:
            return False
    return True


# f, g, φ and the homotopy H for pairs


def op_f(c: Chain) -> Chain:
    """Strip the Y coordinate."""
    return c.map_generators(c.degree - 1, lambda gen: [(gen[1:], 1)])


def op_g(pair: ChainComplex, c: Chain) -> Chain:
    """Sum over every Y value placed in front."""
    ys = range(pair.xset.carrier_size)
    return c.map_generators(c.degree + 1, lambda gen: [((y,) + gen, 1) for y in ys])


def f_map() -> ChainMapDescriptor:
    return ChainMapDescriptor("f", -1, lambda gen: [(gen[1:], 1)], sign=-1)


def g_map(pair: ChainComplex) -> ChainMapDescriptor:
    ys = range(pair.xset.carrier_size)
    return ChainMapDescriptor("g", 1, lambda gen: [((y,) + gen, 1) for y in ys], sign=-1)


def _invariant_subset(cx: ChainComplex, subset: Sequence[int]) -> list[int]:
    elements = sorted(set(subset))
    # Raises HypothesisError when X1 is not closed under the action of X
    xset_from_subset(cx.quandle, elements, "X1")
    return elements


def op_phi(cx: ChainComplex, c: Chain, subset: Sequence[int]) -> Chain:
    """φ(y, x2, ..., xn) = Σ_{x ∈ X1} (y∗x, x2, ..., xn)."""
    return phi_map(cx, subset)(c)


def phi_map(cx: ChainComplex, subset: Sequence[int]) -> ChainMapDescriptor:
    elements = _invariant_subset(cx, subset)

    def rule(gen: GeneratorTuple):
        return [((cx.xset.act(gen[0], x),) + gen[1:], 1) for x in elements]

    return ChainMapDescriptor("φ", 0, rule, params={"X1": elements})


def homotopy_H(cx: ChainComplex, c: Chain, subset: Sequence[int]) -> Chain:
    """H(y, x2, ..., xn) = Σ_{x ∈ X1} (y, x, x2, ..., xn)."""
    elements = _invariant_subset(cx, subset)
    return c.map_generators(
        c.degree + 1, lambda gen: [(gen[:1] + (x,) + gen[1:], 1) for x in elements]
    )


def homotopy_residual(cx: ChainComplex, gen: GeneratorTuple, subset: Sequence[int]) -> Chain:
    """∂H + H∂ - (|X1|·Id - φ) on one generator; zero when the homotopy identity holds."""
    elements = _invariant_subset(cx, subset)
    c = Chain.generator(gen)
    lhs = cx.boundary(homotopy_H(cx, c, elements))
    if c.degree >= 2:
        lhs = lhs + homotopy_H(cx, cx.boundary(c), elements)
    return lhs - (len(elements) * c - op_phi(cx, c, elements))


# Extreme chains and h_w


def is_extreme(cx: ChainComplex, w: Chain, mode: str = "rack") -> ExtremeChainReport:
    """∂⁰w and all ∂¹w/∂q, projected to the quandle quotient in quandle mode."""
    if mode not in ("rack", "quandle"):
        raise InvalidSpecError(f"mode must be rack or quandle, got {mode}")
    d0, _ = cx.half_boundaries(w)
    residuals = {q: cx.partial_derivative(w, q, 1) for q in range(cx.quandle.size)}
    if mode == "quandle":
        quotient = cx.with_theory(Theory.Q)
        d0 = quotient.project(d0)
        residuals = {q: quotient.project(r) for q, r in residuals.items()}
    return ExtremeChainReport(mode=mode, d0_residual=d0, per_q_residuals=residuals)


def append_chain(u: Chain, w: Chain) -> Chain:
    """(u, w) extended bilinearly."""
    acc: dict[GeneratorTuple, int] = {}
    for gen_u, cu in u:
        for gen_w, cw in w:
            key = gen_u + gen_w
            acc[key] = acc.get(key, 0) + cu * cw
    return Chain(u.degree + w.degree, acc)


def op_h_w(cx: ChainComplex, u: Chain, w: Chain, mode: str = "rack", check: bool = True) -> Chain:
    if check:
        _require_extreme(cx, w, mode)
    return append_chain(u, w)


def h_w_map(
    cx: ChainComplex, w: Chain, mode: str = "rack", check: bool = True
) -> ChainMapDescriptor:
    if check:
        _require_extreme(cx, w, mode)
    return ChainMapDescriptor(
        "h_w", w.degree, lambda gen: append_chain(Chain.generator(gen), w).items()
    )


def _require_extreme(cx: ChainComplex, w: Chain, mode: str) -> None:
    report = is_extreme(cx, w, mode)
    if not report.extreme:
        residual = report.d0_residual
        if residual.is_zero():
            residual = report.per_q_residuals[report.failing[0]]
        raise HypothesisError(f"w is not extreme in {mode} mode", residual=residual)


def h_w_defect(cx: ChainComplex, u: Chain, w: Chain) -> tuple[Chain, Chain]:
    """Both sides of ∂h_w(u) - h_w(∂u) = (-1)^n [(u, ∂⁰w) - Σ_q (u∗q, ∂¹w/∂q)]."""
    n = u.degree
    lhs = cx.boundary(append_chain(u, w))
    if n >= 2:
        lhs = lhs - append_chain(cx.boundary(u), w)
    d0, _ = cx.half_boundaries(w)
    inner = append_chain(u, d0)
    for q in range(cx.quandle.size):
        derivative = cx.partial_derivative(w, q, 1)
        if not derivative.is_zero():
            inner = inner - append_chain(cx.star_chain(u, q), derivative)
    return lhs, (-1) ** n * inner


def _check_h_prime_w(cx: ChainComplex, w: Chain, q: int, k: int) -> None:
    quandle = cx.quandle
    support = sorted({x for gen, _ in w for x in gen})
    subset = sorted(set(support) | {q})
    xset_from_subset(quandle, subset, "Q1")
    columns = {quandle.columns[x] for x in subset}
    if len(columns) != 1:
        raise HypothesisError(f"elements {subset} induce different right translations")
    if k % element_order(quandle, q):
        raise HypothesisError(f"{q} is not a {k}-element of {quandle.name}")


def op_h_prime_w(cx: ChainComplex, u: Chain, w: Chain, q: int, k: int) -> Chain:
    """Σ_{i<k} h_w(u) ∗ q^i for w supported on a trivial invariant subquandle."""
    _check_h_prime_w(cx, w, q, k)
    term = append_chain(u, w)
    total = Chain.zero(term.degree)
    for _ in range(k):
        total = total + term
        term = cx.star_chain(term, q)
    return total


def h_prime_w_map(cx: ChainComplex, w: Chain, q: int, k: int) -> ChainMapDescriptor:
    _check_h_prime_w(cx, w, q, k)
    return ChainMapDescriptor(
        "h'_w",
        w.degree,
        lambda gen: op_h_prime_w(cx, Chain.generator(gen), w, q, k).items(),
    )


# Fibonacci chains


def fibonacci_sequence(quandle: Quandle, a0: int, a1: int) -> list[int]:
    """q_0, ..., q_{N-1} with q_{i+2} = q_i ∗ q_{i+1}, one full period."""
    _check_element(quandle, a0)
    _check_element(quandle, a1)
    sequence = [a0, a1]
    while True:
        nxt = quandle.op(sequence[-2], sequence[-1])
        if (sequence[-1], nxt) == (a0, a1):
            return sequence[:-1]
        sequence.append(nxt)


def fibonacci_chain(quandle: Quandle, a0: int, a1: int) -> Chain:
    """s(a0, a1) = Σ (q_i, q_{i+1}) over one period."""
    q = fibonacci_sequence(quandle, a0, a1)
    N = len(q)
    return Chain(2, [((q[i], q[(i + 1) % N]), 1) for i in range(N)])


def extreme_from_word(cx: ChainComplex, a0: int, a1: int) -> Chain:
    """∂⁰ (∂¹(q_0, ..., q_{N-1}, q_0) / ∂q_0) for the Fibonacci sequence of (a0, a1)."""
    q = fibonacci_sequence(cx.quandle, a0, a1)
    word = Chain.generator(tuple(q) + (q[0],))
    derivative = cx.partial_derivative(word, q[0], 1)
    if derivative.degree < 1 or derivative.is_zero():
        return Chain.zero(max(derivative.degree - 1, 0))
    d0, _ = cx.half_boundaries(derivative)
    return d0


# Pushforward


def op_pushforward(f: QuandleHom, c: Chain, check: bool = True) -> Chain:
    """f^(n)(x1, ..., xn) = (f(x1), ..., f(xn)) extended linearly."""
    if check and not check_homomorphism(f):
        raise HypothesisError(f"{f.name} is not a quandle homomorphism")
    return c.relabel(f)


def pushforward_map(f: QuandleHom) -> ChainMapDescriptor:
    if not check_homomorphism(f):
        raise HypothesisError(f"{f.name} is not a quandle homomorphism")
    return ChainMapDescriptor(f.name, 0, lambda gen: [(tuple(f(x) for x in gen), 1)])


def pushforward_derivative_residual(
    source: ChainComplex, target: ChainComplex, f: QuandleHom, w: Chain, p: int
) -> Chain:
    """∂¹f(w)/∂p - f Σ_{q ∈ f⁻¹(p)} ∂¹w/∂q."""
    lhs = target.partial_derivative(op_pushforward(f, w), p, 1)
    rhs = Chain.zero(w.degree - 1)
    for q in f.preimage(p):
        rhs = rhs + source.partial_derivative(w, q, 1)
    return lhs - op_pushforward(f, rhs, check=False)


def _check_element(quandle: Quandle, a: int) -> None:
    if not 0 <= a < quandle.size:
        raise InvalidSpecError(f"element {a} outside {quandle.name}")


# Named operations for batch use


def _operation_name(spec: dict) -> str | None:
    """The ``op`` key, with ``name`` accepted as an older spelling."""
    return spec.get("op", spec.get("name"))


def _param(spec: dict, key: str, default=None):
    if key in spec:
        return spec[key]
    if default is None:
        raise InvalidSpecError(f"operation '{_operation_name(spec)}' needs parameter '{key}'")
    return default


OPERATION_BUILDERS = {
    "star": lambda cx, spec: star_map(cx, int(_param(spec, "a"))),
    "h_a": lambda cx, spec: h_a_map(cx, int(_param(spec, "a"))),
    "h_prime_a": lambda cx, spec: h_prime_a_map(
        cx, int(_param(spec, "a")), spec.get("k") and int(spec["k"])
    ),
    "h_prime_vec": lambda cx, spec: h_prime_vec_map(cx, [int(a) for a in _param(spec, "reps")]),
    "hbar_prime": lambda cx, spec: HBarPrime(
        cx, [int(a) for a in _param(spec, "reps")], int(_param(spec, "j", 1))
    ).descriptor(),
    "f": lambda cx, spec: f_map(),
    "g": lambda cx, spec: g_map(cx),
    "phi": lambda cx, spec: phi_map(cx, [int(x) for x in _param(spec, "subset")]),
    "h_w": lambda cx, spec: h_w_map(
        cx, load_chain(_param(spec, "w_file")), str(_param(spec, "mode", "rack"))
    ),
    "h_prime_w": lambda cx, spec: h_prime_w_map(
        cx, load_chain(_param(spec, "w_file")), int(_param(spec, "q")), int(_param(spec, "k"))
    ),
}


def resolve_operation(cx: ChainComplex, spec: dict) -> ChainMapDescriptor:
    """Chain map from ``{"op": ..., <params>}`` such as ``{"op": "h_prime_a", "a": 0}``."""
    name = _operation_name(spec)
    if name not in OPERATION_BUILDERS:
        raise InvalidSpecError(
            f"unknown operation '{name}', expected one of {sorted(OPERATION_BUILDERS)}"
        )
    phi = OPERATION_BUILDERS[name](cx, spec)
    logger.debug("operation_resolved", operation=phi.name, params=phi.params)
    return phi
