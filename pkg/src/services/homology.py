"""Homology groups, cycle classification and induced maps."""

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.core.exceptions import (
    ChainMapError,
    NotACycleError,
    QuandleHomologyError,
    TheoryMismatchError,
)
from src.core.logging import logger
from src.models.chain import Chain, ChainMapDescriptor, GeneratorTuple
from src.models.matrix import SparseIntMatrix
from src.models.schema import HomologyReport
from src.services.chain_complex import ChainComplex
from src.services.operations import verify_chain_map
from src.utils.smith import invariant_factors, smith_normal_form

INFINITE_ORDER = math.inf


def format_group(free_rank: int, torsion: list[int]) -> str:
    """``Z^2 ⊕ Z_2^4 ⊕ Z_8``; the trivial group is ``0``."""
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    for d, count in sorted(Counter(torsion).items()):
        parts.append(f"Z_{d}" if count == 1 else f"Z_{d}^{count}")
    return " ⊕ ".join(parts) if parts else "0"


@dataclass
class ClassificationContext:
    """Everything needed to write a cycle in the chosen generators of H_n.

    ``projector`` sends a cycle to coordinates in the kernel basis (the
    columns of ``kernel``); ``row_transform`` is the row transform of the
    SNF of the relation matrix of im ∂_{n+1} in those coordinates.
    """
    basis: list[GeneratorTuple]
    kernel: np.ndarray
    projector: np.ndarray
    row_transform: np.ndarray
    row_transform_inv: np.ndarray
    relation_diagonal: tuple[int, ...]

    @property
    def kernel_rank(self) -> int:
        return self.kernel.shape[1]

    @property
    def free_positions(self) -> list[int]:
        return list(range(len(self.relation_diagonal), self.kernel_rank))

    @property
    def torsion_positions(self) -> list[int]:
        return [i for i, d in enumerate(self.relation_diagonal) if d > 1]

    @property
    def moduli(self) -> list[int]:
        """0 for a free coordinate, d for a Z_d coordinate, in presentation order."""
        return [0] * len(self.free_positions) + [
            self.relation_diagonal[i] for i in self.torsion_positions
        ]


@dataclass
class HomologyGroup:
    """H_n presented as Z^free_rank ⊕ Z_d1 ⊕ ... with d1 | d2 | ..."""
    quandle: str
    xset: str
    theory: str
    degree: int
    free_rank: int
    torsion: list[int] = field(default_factory=list)
    context: Optional[ClassificationContext] = field(default=None, repr=False, compare=False)
    complex: Optional[ChainComplex] = field(default=None, repr=False, compare=False)

    def __str__(self) -> str:
        return format_group(self.free_rank, self.torsion)

    @property
    def group(self) -> str:
        return str(self)

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 when torsion free)."""
        return self.torsion[-1] if self.torsion else 1

    @property
    def rank(self) -> int:
        """Number of cyclic summands in the presentation."""
        return self.free_rank + len(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def isomorphic(self, other: "HomologyGroup") -> bool:
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def to_report(self) -> HomologyReport:
        return HomologyReport(
            quandle=self.quandle,
            theory=self.theory,
            degree=self.degree,
            xset=self.xset,
            free_rank=self.free_rank,
            torsion=list(self.torsion),
            group=str(self),
        )

    def generators(self) -> list[Chain]:
        """Cycles representing the presentation generators, free ones first."""
        ctx = self._require_context()
        images = ctx.kernel.dot(ctx.row_transform_inv)
        basis = ctx.basis
        result = []
        for i in ctx.free_positions + ctx.torsion_positions:
            column = images[:, i]
            result.append(
                Chain(self.degree, [(basis[r], int(v)) for r, v in enumerate(column) if v])
            )
        return result

    def _require_context(self) -> ClassificationContext:
        if self.context is None:
            raise QuandleHomologyError(
                f"H_{self.degree} of {self.quandle} was computed without classification data"
            )
        return self.context


def direct_sum(*groups: HomologyGroup) -> tuple[int, list[int]]:
    """Free rank and invariant factors of a direct sum."""
    free = sum(g.free_rank for g in groups)
    primary: list[int] = []
    for g in groups:
        primary.extend(g.torsion)
    return free, normalise_torsion(primary)


def normalise_torsion(factors: list[int]) -> list[int]:
    """Invariant factors of ⊕ Z_{f} for arbitrary factors."""
    if not factors:
        return []
    matrix = SparseIntMatrix(len(factors), len(factors), {(i, i): f for i, f in enumerate(factors)})
    _, torsion = invariant_factors(matrix)
    return torsion


def homology_group(complex: ChainComplex, n: int, classify: bool = False) -> HomologyGroup:
    """H_n = ker ∂_n / im ∂_{n+1} of the given complex."""
    if n < 1:
        raise TheoryMismatchError(f"homology starts in degree 1, got {n}")
    started = time.perf_counter()
    dim = complex.basis_size(n)
    lower = complex.boundary_matrix(n)
    upper = complex.boundary_matrix(n + 1)
    rank_n, _ = invariant_factors(lower)
    rank_up, torsion = invariant_factors(upper)
    group = HomologyGroup(
        quandle=complex.quandle.name,
        xset=complex.xset.name,
        theory=complex.theory.value,
        degree=n,
        free_rank=dim - rank_n - rank_up,
        torsion=torsion,
        complex=complex,
    )
    if classify:
        group.context = _classification_context(complex, n, lower, upper)
        computed = (len(group.context.free_positions), group.context.relation_diagonal)
        if computed[0] != group.free_rank or [d for d in computed[1] if d > 1] != torsion:
            raise QuandleHomologyError(
                "tracked and untracked eliminations disagree",
                degree=n,
                quandle=complex.quandle.name,
            )
    logger.info(
        "homology_computed",
        quandle=group.quandle,
        xset=group.xset,
        theory=group.theory,
        degree=n,
        group=str(group),
        classify=classify,
        elapsed=round(time.perf_counter() - started, 3),
    )
    return group


def _classification_context(
    complex: ChainComplex, n: int, lower: SparseIntMatrix, upper: SparseIntMatrix
) -> ClassificationContext:
    basis = complex.enumerate_basis(n)
    lower_snf = smith_normal_form(lower)
    r = lower_snf.rank
    kernel = lower_snf.V[:, r:]
    projector = lower_snf.V_inv[r:, :]
    k = kernel.shape[1]

    # Relation matrix: im ∂_{n+1} in kernel coordinates, one column per distinct image
    columns = {}
    for column in upper.column_dicts():
        if not column:
            continue
        image = np.zeros(k, dtype=object)
        for row, v in column.items():
            image += projector[:, row] * v
        key = tuple(int(x) for x in image)
        if not any(key):
            continue
        lead = next(x for x in key if x)
        if lead < 0:
            key = tuple(-x for x in key)
        columns[key] = True
    relations = np.zeros((k, len(columns)), dtype=object)
    for j, key in enumerate(sorted(columns)):
        relations[:, j] = key
    relation_snf = smith_normal_form(relations, track_cols=False)
    logger.debug(
        "classification_context",
        quandle=complex.quandle.name,
        degree=n,
        kernel_rank=k,
        relations=len(columns),
    )
    return ClassificationContext(
        basis=basis,
        kernel=kernel,
        projector=projector,
        row_transform=relation_snf.U,
        row_transform_inv=relation_snf.U_inv,
        relation_diagonal=relation_snf.diagonal,
    )


def _require_cycle(z: Chain, group: HomologyGroup) -> None:
    complex = group.complex
    if complex is None:
        raise QuandleHomologyError("homology group has no chain complex attached")
    if z.degree != group.degree and not z.is_zero():
        raise TheoryMismatchError(f"chain of degree {z.degree} classified in H_{group.degree}")
    if complex.theory.is_subcomplex and complex.project(z) != z:
        raise TheoryMismatchError(f"chain is not inside the {complex.theory.value} subcomplex")
    if z.is_zero() or z.degree < 2:
        return
    boundary = complex.boundary(z)
    if not boundary.is_zero():
        raise NotACycleError(boundary)


def homology_class(z: Chain, group: HomologyGroup) -> tuple[int, ...]:
    """Coordinates of [z]: free coordinates over Z, then torsion coordinates mod d_i."""
    _require_cycle(z, group)
    ctx = group._require_context()
    vector = np.array(group.complex.vector_from_chain(z, ctx.basis), dtype=object)
    coords = ctx.row_transform.dot(ctx.projector.dot(vector))
    free = [int(coords[i]) for i in ctx.free_positions]
    torsion = [int(coords[i]) % ctx.relation_diagonal[i] for i in ctx.torsion_positions]
    return tuple(free + torsion)


def is_boundary(complex: ChainComplex, z: Chain) -> bool:
    return cycle_order(complex, z) == 1


def cycle_order(complex: ChainComplex, z: Chain) -> float:
    """Order of [z] in H_n without tracked transforms.

    Compares the invariant factors of im ∂_{n+1} with those of im ∂_{n+1} + Z z;
    both lattices have the same saturation when the ranks agree.
    """
    n = z.degree
    if n >= 2:
        boundary = complex.boundary(z)
        if not boundary.is_zero():
            raise NotACycleError(boundary)
    upper = complex.boundary_matrix(n + 1)
    vector = complex.vector_from_chain(z)
    if not any(vector):
        return 1
    rank_before, torsion_before = invariant_factors(upper)
    entries = dict(upper.entries)
    for row, v in enumerate(vector):
        if v:
            entries[(row, upper.cols)] = v
    extended = SparseIntMatrix(upper.rows, upper.cols + 1, entries)
    rank_after, torsion_after = invariant_factors(extended)
    if rank_after > rank_before:
        return INFINITE_ORDER
    return math.prod(torsion_before) // math.prod(torsion_after)


def class_order(z: Chain, group: HomologyGroup) -> float:
    """Order of [z]; ``math.inf`` for classes of infinite order."""
    if group.context is None:
        _require_cycle(z, group)
        return cycle_order(group.complex, z)
    coords = homology_class(z, group)
    ctx = group.context
    free_count = len(ctx.free_positions)
    if any(coords[:free_count]):
        return INFINITE_ORDER
    order = 1
    for c, d in zip(coords[free_count:], ctx.moduli[free_count:]):
        order = math.lcm(order, d // math.gcd(c, d))
    return order


def is_homologous(z1: Chain, z2: Chain, group: HomologyGroup) -> bool:
    return class_order(z1 - z2, group) == 1


@dataclass
class HomologyMap:
    """Matrix of an induced map between two presented homology groups.

    Column j is the class of the image of the j-th source generator.
    """
    name: str
    source: HomologyGroup
    target: HomologyGroup
    matrix: np.ndarray

    @property
    def target_moduli(self) -> list[int]:
        return self.target._require_context().moduli

    def reduced(self) -> np.ndarray:
        """Matrix with torsion rows reduced modulo their orders."""
        result = self.matrix.copy()
        for i, d in enumerate(self.target_moduli):
            if d:
                result[i, :] = result[i, :] % d
        return result

    def is_scalar(self, s: int) -> bool:
        """True iff the map equals s·Id (source and target presentations must agree)."""
        if self.source.rank != self.target.rank:
            return False
        return self.__eq__(scalar_map(self.source, s, name=f"{s}·Id"))

    def is_zero(self) -> bool:
        return not self.reduced().any()

    def compose(self, inner: "HomologyMap") -> "HomologyMap":
        """self after inner."""
        matrix = self.matrix.dot(inner.matrix) if inner.matrix.size else inner.matrix
        return HomologyMap(f"{self.name}∘{inner.name}", inner.source, self.target, matrix)

    def is_injective(self) -> bool:
        """Injectivity on the presented groups, decided through an integer kernel computation."""
        source_moduli = self.source._require_context().moduli
        target_moduli = self.target_moduli
        m, k = self.matrix.shape
        torsion_rows = [i for i, d in enumerate(target_moduli) if d]
        # Solve M x = Σ d_i e_i y_i over the integers; the x parts form the preimage lattice
        block = np.zeros((m, k + len(torsion_rows)), dtype=object)
        block[:, :k] = self.matrix
        for j, i in enumerate(torsion_rows):
            block[i, k + j] = -target_moduli[i]
        snf = smith_normal_form(block, track_rows=False)
        preimage = snf.V[:k, snf.rank:]
        for column in preimage.T:
            for x, d in zip(column, source_moduli):
                if (d == 0 and x != 0) or (d and x % d):
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomologyMap):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and np.array_equal(
            self.reduced(), other.reduced()
        )


def scalar_map(group: HomologyGroup, s: int, name: str = "s·Id") -> HomologyMap:
    size = group.rank
    matrix = np.zeros((size, size), dtype=object)
    for i in range(size):
        matrix[i, i] = s
    return HomologyMap(name, group, group, matrix)


def induced_map(
    phi: ChainMapDescriptor,
    source: HomologyGroup,
    target: HomologyGroup,
    check: bool = True,
) -> HomologyMap:
    """Matrix of phi_* from the source presentation to the target presentation."""
    if source.degree + phi.shift != target.degree:
        raise TheoryMismatchError(
            f"{phi.name} shifts degree by {phi.shift}, "
            f"cannot map H_{source.degree} to H_{target.degree}"
        )
    if check:
        result = verify_chain_map(phi, source.complex, source.degree, target.complex)
        if not result.ok:
            raise ChainMapError(phi.name, result.generator, result.residual)
    target._require_context()
    columns = []
    for generator in source.generators():
        image = target.complex.project(phi(generator))
        columns.append(homology_class(image, target))
    matrix = np.zeros((target.rank, source.rank), dtype=object)
    for j, coords in enumerate(columns):
        matrix[:, j] = coords
    return HomologyMap(phi.name, source, target, matrix)
