"""Sparse exact integer matrices."""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SparseIntMatrix:
    """Integer matrix stored as a coordinate map with no stored zeros.

    Entries are Python ints, so values never overflow.
    """
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v:
                clean[(r, c)] = int(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Mapping[int, int]]) -> "SparseIntMatrix":
        """Build from a sequence of sparse columns ``{row: value}``."""
        entries = {}
        cols = 0
        for c, column in enumerate(columns):
            cols = c + 1
            for r, v in column.items():
                if v:
                    entries[(r, c)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_dense(cls, data) -> "SparseIntMatrix":
        arr = np.asarray(data, dtype=object)
        if arr.ndim != 2:
            raise ValueError("dense matrix must be two-dimensional")
        rows, cols = arr.shape
        entries = {
            (r, c): int(arr[r, c]) for r in range(rows) for c in range(cols) if arr[r, c]
        }
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseIntMatrix":
        return cls(rows, cols, {})

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def get(self, r: int, c: int) -> int:
        return self.entries.get((r, c), 0)

    def row_dicts(self) -> list[dict[int, int]]:
        """Rows as ``{col: value}`` dictionaries (fresh copies)."""
        result: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            result[r][c] = v
        return result

    def column_dicts(self) -> list[dict[int, int]]:
        """Columns as ``{row: value}`` dictionaries (fresh copies)."""
        result: list[dict[int, int]] = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            result[c][r] = v
        return result

    def to_dense(self) -> np.ndarray:
        """Dense object-dtype array of Python ints."""
        arr = np.zeros((self.rows, self.cols), dtype=object)
        for (r, c), v in self.entries.items():
            arr[r, c] = v
        return arr

    def transpose(self) -> "SparseIntMatrix":
        entries = {(c, r): v for (r, c), v in self.entries.items()}
        return SparseIntMatrix(self.cols, self.rows, entries)

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right_rows = other.row_dicts()
        acc: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in right_rows[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseIntMatrix(self.rows, other.cols, acc)

    def apply(self, vector: Mapping[int, int]) -> dict[int, int]:
        """Multiply by a sparse column vector ``{col: value}``."""
        cols = self.column_dicts()
        out: dict[int, int] = {}
        for c, x in vector.items():
            for r, v in cols[c].items():
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and dict(self.entries) == dict(other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries.items())))
