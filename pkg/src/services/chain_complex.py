"""Rack, quandle and degenerate chain complexes of a pair (X, Y).

A generator of degree n is a tuple ``(y, x2, ..., xn)`` with y an index into
the X-set Y and the x's elements of X. In the classical case Y = X.
"""

import itertools
import json
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from src.core.config import settings
from src.core.exceptions import (
    InvalidSpecError,
    SizeLimitExceeded,
    TheoryMismatchError,
)
from src.core.logging import logger
from src.models.chain import Chain, GeneratorTuple, Theory
from src.models.matrix import SparseIntMatrix
from src.models.quandle import Quandle, XSet
from src.models.schema import ChainFile, ChainTerm, MatrixFile
from src.services.quandles import build_xset


class ChainComplex:
    """C_*^W(X, Y) for W in R, Q, D, DD, LQ.

    Quotient theories (Q, LQ) are realised on the non-degenerate tuples with
    degenerate images dropped; subcomplex theories (D, DD) on the degenerate
    tuples. C_0 is the zero group.
    """

    def __init__(
        self,
        quandle: Quandle,
        xset: Optional[XSet] = None,
        theory: Theory | str = Theory.R,
    ):
        self.quandle = quandle
        self.xset = xset or build_xset(quandle, "full")
        self.theory = Theory(theory)
        if self.xset.quandle.size != quandle.size:
            raise TheoryMismatchError(f"X-set '{self.xset.name}' acts on a different rack")
        if self.theory is not Theory.R and not quandle.is_quandle:
            raise TheoryMismatchError(
                f"theory {self.theory.value} needs a quandle, {quandle.name} is only a rack"
            )
        if self.theory in (Theory.Q, Theory.D) and self.xset.embedding is None:
            raise TheoryMismatchError(
                f"theory {self.theory.value} needs Y to be an invariant subset of X"
            )

    def __repr__(self) -> str:
        return f"ChainComplex({self.quandle.name}, Y={self.xset.name}, {self.theory.value})"

    @property
    def classical(self) -> bool:
        return self.xset.is_full

    def with_theory(self, theory: Theory | str) -> "ChainComplex":
        return ChainComplex(self.quandle, self.xset, theory)

    # Bases

    def is_degenerate(self, gen: GeneratorTuple) -> bool:
        """Adjacent repeat from position 1 (D, Q) or from position 2 (DD, LQ)."""
        if len(gen) < 2:
            return False
        if self.theory.late:
            return any(gen[i] == gen[i + 1] for i in range(1, len(gen) - 1))
        if self.xset.embedding is None:
            raise TheoryMismatchError("degeneracy at position 1 needs Y inside X")
        if self.xset.embedding[gen[0]] == gen[1]:
            return True
        return any(gen[i] == gen[i + 1] for i in range(1, len(gen) - 1))

    def _keeps(self, gen: GeneratorTuple) -> bool:
        if self.theory is Theory.R:
            return True
        return self.is_degenerate(gen) == self.theory.is_subcomplex

    def basis_size(self, n: int) -> int:
        if n < 1:
            return 0
        m, x = self.xset.carrier_size, self.quandle.size
        full = m * x ** (n - 1)
        if self.theory is Theory.R:
            return full
        if self.theory.late:
            quotient = m if n == 1 else m * x * (x - 1) ** (n - 2)
        else:
            quotient = m * (x - 1) ** (n - 1)
        return quotient if self.theory.is_quotient else full - quotient

    def enumerate_basis(self, n: int) -> list[GeneratorTuple]:
        """Lexicographically ordered basis of C_n."""
        if n < 1:
            return []
        size = self.basis_size(n)
        if size > settings.MATRIX_COLUMN_LIMIT:
            raise SizeLimitExceeded(
                f"C_{n} of {self.quandle.name} has {size} generators, "
                f"limit is {settings.MATRIX_COLUMN_LIMIT}",
                degree=n,
                size=size,
            )
        ranges = [range(self.xset.carrier_size)] + [range(self.quandle.size)] * (n - 1)
        if self.theory is Theory.R:
            return list(itertools.product(*ranges))
        return [gen for gen in itertools.product(*ranges) if self._keeps(gen)]

    def project(self, c: Chain) -> Chain:
        """Image in the complex: drop degenerate (quotient) or non-degenerate (subcomplex) terms."""
        if self.theory is Theory.R:
            return c
        return c.filter(self._keeps)

    # Boundaries

    def _check_chain(self, c: Chain) -> None:
        for gen, _ in c:
            if not gen:
                continue
            if not 0 <= gen[0] < self.xset.carrier_size or any(
                not 0 <= x < self.quandle.size for x in gen[1:]
            ):
                raise InvalidSpecError(f"tuple {gen} has coordinates outside {self!r}")

    def generator_boundary(self, gen: GeneratorTuple) -> list[tuple[GeneratorTuple, int]]:
        """Rack boundary of one tuple, terms i = 2..n, before any projection."""
        n = len(gen)
        table = self.quandle.table
        action = self.xset.action
        terms = []
        for p in range(1, n):
            sign = 1 if p % 2 else -1  # (-1)^i with i = p + 1
            xi = gen[p]
            tail = gen[p + 1:]
            terms.append((gen[:p] + tail, sign))
            moved = (action[gen[0]][xi],) + tuple(table[x][xi] for x in gen[1:p]) + tail
            terms.append((moved, -sign))
        return terms

    def boundary(self, c: Chain) -> Chain:
        """The boundary of c; degree-1 chains go to the zero chain."""
        if c.degree < 1:
            raise TheoryMismatchError("boundary needs degree >= 1")
        self._check_chain(c)
        if c.degree == 1:
            return Chain.zero(0)
        image = c.map_generators(c.degree - 1, self.generator_boundary)
        return self.project(image) if self.theory.is_quotient else image

    def boundary_matrix(self, n: int) -> SparseIntMatrix:
        """Matrix of the boundary C_n -> C_{n-1} in the enumerate_basis orderings."""
        columns = self.enumerate_basis(n)
        rows = self.enumerate_basis(n - 1)
        if n <= 1:
            return SparseIntMatrix.zeros(len(rows), len(columns))
        index = {gen: i for i, gen in enumerate(rows)}
        quotient = self.theory.is_quotient
        entries: dict[tuple[int, int], int] = {}
        for col, gen in enumerate(columns):
            stray: dict[GeneratorTuple, int] = {}
            for face, coeff in self.generator_boundary(gen):
                row = index.get(face)
                if row is None:
                    if not quotient:
                        stray[face] = stray.get(face, 0) + coeff
                    continue
                key = (row, col)
                entries[key] = entries.get(key, 0) + coeff
            if any(stray.values()):
                raise TheoryMismatchError(
                    f"boundary of {gen} leaves the {self.theory.value} complex"
                )
        matrix = SparseIntMatrix(len(rows), len(columns), entries)
        logger.debug(
            "boundary_matrix",
            quandle=self.quandle.name,
            xset=self.xset.name,
            theory=self.theory.value,
            degree=n,
            shape=matrix.shape,
            nnz=matrix.nnz,
        )
        return matrix

    def chain_from_vector(self, n: int, vector: Sequence[int], basis=None) -> Chain:
        basis = basis if basis is not None else self.enumerate_basis(n)
        return Chain(n, [(gen, int(v)) for gen, v in zip(basis, vector) if v])

    def vector_from_chain(self, c: Chain, basis=None) -> list[int]:
        """Coordinates in enumerate_basis(n); terms outside the basis are dropped."""
        basis = basis if basis is not None else self.enumerate_basis(c.degree)
        index = {gen: i for i, gen in enumerate(basis)}
        vector = [0] * len(basis)
        for gen, coeff in self.project(c):
            if gen in index:
                vector[index[gen]] += coeff
        return vector

    # Half boundaries and derivatives (classical case)

    def _require_classical(self) -> None:
        if not self.classical:
            raise TheoryMismatchError(
                f"half boundaries are defined for Y = X, got Y = {self.xset.name}"
            )

    def face0(self, gen: GeneratorTuple, i: int) -> GeneratorTuple:
        """Delete coordinate i (1-based)."""
        return gen[: i - 1] + gen[i:]

    def face1(self, gen: GeneratorTuple, i: int) -> GeneratorTuple:
        """Act by x_i on the coordinates before i, delete coordinate i."""
        xi = gen[i - 1]
        column = self.quandle.columns[xi]
        return tuple(column[x] for x in gen[: i - 1]) + gen[i:]

    def half_boundaries(self, c: Chain) -> tuple[Chain, Chain]:
        """(d0, d1) with d0 - d1 equal to the boundary; both sum i = 1..n."""
        self._require_classical()
        self._check_chain(c)
        n = c.degree
        if n < 1:
            raise TheoryMismatchError("half boundaries need degree >= 1")

        def rule(kind: int):
            face = self.face0 if kind == 0 else self.face1

            def expand(gen: GeneratorTuple):
                return [(face(gen, i), (-1) ** i) for i in range(1, n + 1)]

            return expand

        return c.map_generators(n - 1, rule(0)), c.map_generators(n - 1, rule(1))

    def partial_derivative(self, c: Chain, q: int, kind: int) -> Chain:
        """Sum over i of (-1)^i d_i^kind restricted to the coordinates with x_i = q."""
        self._require_classical()
        if not 0 <= q < self.quandle.size:
            raise InvalidSpecError(f"element {q} outside {self.quandle.name}")
        if kind not in (0, 1):
            raise InvalidSpecError(f"derivative kind must be 0 or 1, got {kind}")
        n = c.degree
        if n < 1:
            raise TheoryMismatchError("derivatives need degree >= 1")
        face = self.face0 if kind == 0 else self.face1

        def expand(gen: GeneratorTuple):
            return [(face(gen, i), (-1) ** i) for i in range(1, n + 1) if gen[i - 1] == q]

        return c.map_generators(n - 1, expand)

    def star_chain(self, c: Chain, a: int, inverse: bool = False) -> Chain:
        """Coordinatewise right translation by a (the Y slot through the action)."""
        if not 0 <= a < self.quandle.size:
            raise InvalidSpecError(f"element {a} outside {self.quandle.name}")
        if inverse:
            ys = self.xset.inverse_action[a]
            xs = self.quandle.inverse_columns[a]
        else:
            ys = tuple(self.xset.action[y][a] for y in range(self.xset.carrier_size))
            xs = self.quandle.columns[a]

        def move(gen: GeneratorTuple):
            if not gen:
                return [(gen, 1)]
            return [((ys[gen[0]],) + tuple(xs[x] for x in gen[1:]), 1)]

        return c.map_generators(c.degree, move)

    def star_power(self, c: Chain, a: int, k: int) -> Chain:
        """(∗a)^k; negative k applies the inverse translation."""
        for _ in range(abs(k)):
            c = self.star_chain(c, a, inverse=k < 0)
        return c


# Chain and matrix files


def chain_from_terms(
    terms: Iterable[tuple[int, Iterable[int]]], degree: Optional[int] = None
) -> Chain:
    """Chain from (coeff, tuple) pairs, the order used by the fixtures."""
    pairs = [(tuple(gen), coeff) for coeff, gen in terms]
    if degree is None:
        if not pairs:
            raise InvalidSpecError("cannot infer the degree of an empty chain")
        degree = len(pairs[0][0])
    return Chain(degree, pairs)


def chain_from_file(data: ChainFile | dict) -> Chain:
    try:
        parsed = data if isinstance(data, ChainFile) else ChainFile.model_validate(data)
    except ValidationError as e:
        raise InvalidSpecError(f"malformed chain file: {e.errors()[0]['msg']}") from e
    offset = 1 if parsed.labels == "one-based" else 0
    return Chain(
        parsed.degree,
        [(tuple(x - offset for x in term.tuple), int(term.coeff)) for term in parsed.terms],
    )


def load_chain(path: str | Path) -> Chain:
    path = Path(path)
    if not path.is_file():
        candidate = Path(settings.FIXTURES_DIR) / path.name
        if not candidate.is_file():
            raise InvalidSpecError(f"chain file not found: {path}")
        path = candidate
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidSpecError(f"{path} is not valid JSON: {e}") from e
    return chain_from_file(data)


def chain_to_file(c: Chain) -> ChainFile:
    return ChainFile(
        degree=c.degree,
        terms=[ChainTerm(coeff=str(coeff), tuple=list(gen)) for gen, coeff in c],
    )


def matrix_to_file(matrix: SparseIntMatrix) -> MatrixFile:
    return MatrixFile(
        rows=matrix.rows,
        cols=matrix.cols,
        entries=[(r, c, str(v)) for (r, c), v in sorted(matrix.entries.items())],
    )


def matrix_from_file(data: MatrixFile | dict) -> SparseIntMatrix:
    parsed = data if isinstance(data, MatrixFile) else MatrixFile.model_validate(data)
    return SparseIntMatrix(parsed.rows, parsed.cols, {(r, c): int(v) for r, c, v in parsed.entries})
