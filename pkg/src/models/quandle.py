"""Quandle, X-set and homomorphism models."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Quandle:
    """A finite rack or quandle given by its multiplication table.

    Elements are the dense indices ``0..size-1`` and ``table[a][b] = a * b``.
    Constructor-specific names (residue polynomials, group elements, published
    labels) live only in ``labels``.
    """
    size: int
    table: Table
    name: str = "Q"
    labels: Optional[tuple[str, ...]] = None
    is_quandle: bool = True

    def op(self, a: int, b: int) -> int:
        """Return a * b."""
        return self.table[a][b]

    @cached_property
    def array(self) -> np.ndarray:
        """Read-only int64 copy of the table."""
        arr = np.array(self.table, dtype=np.int64).reshape(self.size, self.size)
        arr.setflags(write=False)
        return arr

    @cached_property
    def columns(self) -> Table:
        """``columns[b]`` is the right translation x -> x * b as a tuple."""
        return tuple(
            tuple(self.table[a][b] for a in range(self.size)) for b in range(self.size)
        )

    @cached_property
    def inverse_columns(self) -> Table:
        """``inverse_columns[b][x]`` is the unique c with c * b = x."""
        result = []
        for b in range(self.size):
            inv = [0] * self.size
            for a, image in enumerate(self.columns[b]):
                inv[image] = a
            result.append(tuple(inv))
        return tuple(result)

    def label(self, a: int) -> str:
        """Display name of element a."""
        if self.labels:
            return self.labels[a]
        return str(a)

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        return f"{self.name} (|Q|={self.size})"


@dataclass(frozen=True)
class XSet:
    """A set Y with a right action of the quandle X.

    ``embedding`` is present when Y is an invariant subset of X; it maps each
    Y index to the X element it stands for. It is required by the theories
    that compare the Y coordinate with an X coordinate (D and Q).
    """
    quandle: Quandle
    carrier_size: int
    action: Table
    embedding: Optional[tuple[int, ...]] = None
    name: str = "full"

    def act(self, y: int, x: int) -> int:
        """Return y * x."""
        return self.action[y][x]

    @cached_property
    def inverse_action(self) -> Table:
        """``inverse_action[x][y]`` is the unique y' with y' * x = y."""
        result = []
        for x in range(self.quandle.size):
            inv = [0] * self.carrier_size
            for y in range(self.carrier_size):
                inv[self.action[y][x]] = y
            result.append(tuple(inv))
        return tuple(result)

    @property
    def is_full(self) -> bool:
        """True when Y = X with the quandle's own action (the classical case)."""
        return (
            self.carrier_size == self.quandle.size
            and self.embedding == tuple(range(self.quandle.size))
            and self.action == self.quandle.table
        )

    def element(self, y: int) -> int:
        """X element represented by Y index y."""
        if self.embedding is None:
            raise ValueError(f"X-set '{self.name}' is not a subset of {self.quandle.name}")
        return self.embedding[y]


@dataclass(frozen=True)
class OrbitData:
    """Orbit partition of a rack acting on itself by right translations."""
    orbit_id: tuple[int, ...]
    orbit_count: int
    per_orbit_quasigroup: tuple[bool, ...]
    connected: bool
    quasigroup: bool

    @property
    def orbits(self) -> list[list[int]]:
        """Orbits as sorted element lists, ordered by least element."""
        groups: list[list[int]] = [[] for _ in range(self.orbit_count)]
        for element, orbit in enumerate(self.orbit_id):
            groups[orbit].append(element)
        return groups


@dataclass(frozen=True)
class QuandleHom:
    """A map of quandles given by its values on source elements."""
    source: Quandle
    target: Quandle
    values: tuple[int, ...]
    name: str = "f"

    def __call__(self, a: int) -> int:
        return self.values[a]

    def preimage(self, p: int) -> list[int]:
        """Source elements sent to p."""
        return [a for a, image in enumerate(self.values) if image == p]


@dataclass
class ValidationReport:
    """Result of checking the rack/quandle axioms on a raw table."""
    size: int
    idempotence_failures: list[int] = field(default_factory=list)
    bijectivity_failures: list[int] = field(default_factory=list)
    distributivity_failures: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def is_rack(self) -> bool:
        return not self.bijectivity_failures and not self.distributivity_failures

    @property
    def is_quandle(self) -> bool:
        return self.is_rack and not self.idempotence_failures

    @property
    def failures(self) -> list[str]:
        """Human readable list of every failed axiom with its first witness."""
        lines = []
        if self.idempotence_failures:
            a = self.idempotence_failures[0]
            lines.append(f"idempotence fails at a={a}")
        if self.bijectivity_failures:
            b = self.bijectivity_failures[0]
            lines.append(f"right translation by b={b} is not a bijection")
        if self.distributivity_failures:
            a, b, c = self.distributivity_failures[0]
            lines.append(f"right distributivity fails at (a, b, c)=({a}, {b}, {c})")
        return lines


@dataclass(frozen=True)
class ConstructorSpec:
    """A quandle (or X-set) constructor descriptor: a kind plus its parameters."""
    kind: str
    params: dict = field(default_factory=dict)

    def __hash__(self) -> int:
        return hash((self.kind, repr(sorted(self.params.items()))))
