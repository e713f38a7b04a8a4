"""Chains: finite integer combinations of generator tuples."""

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Union

GeneratorTuple = tuple[int, ...]


class Theory(str, Enum):
    """Which chain complex of the pair (X, Y) is meant."""
    R = "R"      # rack complex
    Q = "Q"      # quotient by degenerate tuples
    D = "D"      # degenerate subcomplex
    DD = "DD"    # late degenerate subcomplex
    LQ = "LQ"    # quotient by late degenerate tuples

    @property
    def is_quotient(self) -> bool:
        return self in (Theory.Q, Theory.LQ)

    @property
    def is_subcomplex(self) -> bool:
        return self in (Theory.D, Theory.DD)

    @property
    def late(self) -> bool:
        """True for theories whose degeneracy ignores the Y coordinate."""
        return self in (Theory.DD, Theory.LQ)


TermSource = Union["Chain", Mapping[GeneratorTuple, int], Iterable[tuple[GeneratorTuple, int]]]


class Chain:
    """An element of the free abelian group on n-tuples.

    Terms are kept sorted with zero coefficients purged, so two chains are
    equal exactly when their term lists are equal.
    """

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: TermSource = ()):
        if degree < 0:
            raise ValueError(f"negative degree {degree}")
        acc: dict[GeneratorTuple, int] = {}
        items = terms.items() if isinstance(terms, (Mapping, Chain)) else terms
        for gen, coeff in items:
            gen = tuple(gen)
            if len(gen) != degree:
                raise ValueError(f"tuple {gen} does not have degree {degree}")
            acc[gen] = acc.get(gen, 0) + int(coeff)
        self.degree = degree
        self._terms: tuple[tuple[GeneratorTuple, int], ...] = tuple(
            sorted((gen, coeff) for gen, coeff in acc.items() if coeff)
        )
        self._hash: int | None = None

    @classmethod
    def zero(cls, degree: int) -> "Chain":
        return cls(degree)

    @classmethod
    def generator(cls, gen: Iterable[int], coeff: int = 1) -> "Chain":
        gen = tuple(gen)
        return cls(len(gen), [(gen, coeff)])

    @classmethod
    def _from_sorted(cls, degree: int, terms: tuple[tuple[GeneratorTuple, int], ...]) -> "Chain":
        chain = cls.__new__(cls)
        chain.degree = degree
        chain._terms = terms
        chain._hash = None
        return chain

    # Mapping-like access

    def items(self) -> tuple[tuple[GeneratorTuple, int], ...]:
        return self._terms

    def __iter__(self) -> Iterator[tuple[GeneratorTuple, int]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, gen: GeneratorTuple) -> int:
        for key, coeff in self._terms:
            if key == gen:
                return coeff
        return 0

    def support(self) -> list[GeneratorTuple]:
        return [gen for gen, _ in self._terms]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    # Arithmetic

    def _check(self, other: "Chain") -> None:
        if not isinstance(other, Chain):
            raise TypeError(f"cannot combine Chain with {type(other).__name__}")
        if other.degree != self.degree and self._terms and other._terms:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        degree = self.degree if self._terms else other.degree
        return Chain(degree, list(self._terms) + list(other._terms))

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __neg__(self) -> "Chain":
        return Chain._from_sorted(self.degree, tuple((g, -c) for g, c in self._terms))

    def __mul__(self, scalar: int) -> "Chain":
        if not isinstance(scalar, int):
            return NotImplemented
        if scalar == 0:
            return Chain(self.degree)
        return Chain._from_sorted(self.degree, tuple((g, scalar * c) for g, c in self._terms))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, self._terms))
        return self._hash

    def map_generators(
        self,
        degree: int,
        rule: Callable[[GeneratorTuple], Iterable[tuple[GeneratorTuple, int]]],
    ) -> "Chain":
        """Extend a generator rule linearly; ``rule`` yields (tuple, coeff) pairs."""
        acc: dict[GeneratorTuple, int] = {}
        for gen, coeff in self._terms:
            for image, c in rule(gen):
                acc[image] = acc.get(image, 0) + coeff * c
        return Chain(degree, acc)

    def filter(self, keep: Callable[[GeneratorTuple], bool]) -> "Chain":
        """Drop the terms whose tuple fails ``keep``."""
        return Chain._from_sorted(self.degree, tuple((g, c) for g, c in self._terms if keep(g)))

    def relabel(self, mapping: Callable[[int], int]) -> "Chain":
        """Apply ``mapping`` to every coordinate (no linearity issues: may merge terms)."""
        return Chain(self.degree, [(tuple(mapping(x) for x in g), c) for g, c in self._terms])

    def __repr__(self) -> str:
        return f"Chain({self.degree}, {dict(self._terms)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (gen, coeff) in enumerate(self._terms):
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            body = "(" + ",".join(str(x) for x in gen) + ")"
            if magnitude != 1:
                body = f"{magnitude}{body}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


GeneratorRule = Callable[[GeneratorTuple], Iterable[tuple[GeneratorTuple, int]]]


@dataclass(frozen=True)
class ChainMapDescriptor:
    """A linear map on chains given by its value on generators.

    ``sign`` is +1 when the map commutes with the boundary and -1 when it
    anticommutes; ``shift`` is the change in degree.
    """
    name: str
    shift: int
    rule: GeneratorRule
    sign: int = 1
    params: dict = field(default_factory=dict, compare=False)

    def __call__(self, c: Chain) -> Chain:
        if c.degree + self.shift < 0:
            raise ValueError(f"{self.name} lowers degree {c.degree} below zero")
        return c.map_generators(c.degree + self.shift, self.rule)

    def on_generator(self, gen: GeneratorTuple) -> Chain:
        return self(Chain.generator(gen))

    def compose(self, inner: "ChainMapDescriptor") -> "ChainMapDescriptor":
        """self after inner."""

        def rule(gen: GeneratorTuple):
            return self(inner.on_generator(gen)).items()

        return ChainMapDescriptor(
            name=f"{self.name}∘{inner.name}",
            shift=self.shift + inner.shift,
            rule=rule,
            sign=self.sign * inner.sign,
        )

    def scaled(self, factor: int) -> "ChainMapDescriptor":
        def rule(gen: GeneratorTuple):
            return [(image, factor * c) for image, c in self.rule(gen)]

        return ChainMapDescriptor(f"{factor}·{self.name}", self.shift, rule, self.sign)


@dataclass(frozen=True)
class ChainMapCheck:
    """Outcome of checking ∂φ = sign·φ∂ on a basis; a failing generator is the witness."""
    name: str
    degree: int
    ok: bool
    generator: Optional[GeneratorTuple] = None
    residual: Optional[Chain] = None
    checked: int = 0


@dataclass(frozen=True)
class ExtremeChainReport:
    """∂⁰w and every ∂¹w/∂q; w is extreme when all of them vanish."""
    mode: str
    d0_residual: Chain
    per_q_residuals: dict = field(default_factory=dict)

    @property
    def extreme(self) -> bool:
        residuals = self.per_q_residuals.values()
        return self.d0_residual.is_zero() and all(r.is_zero() for r in residuals)

    @property
    def failing(self) -> list[int]:
        """Elements q whose derivative does not vanish."""
        return sorted(q for q, r in self.per_q_residuals.items() if not r.is_zero())
