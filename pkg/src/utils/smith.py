"""Exact Smith normal form over the integers.

Two engines share this module:

- ``smith_normal_form`` works on a dense numpy object array of Python ints and
  maintains U, U^-1, V, V^-1 incrementally so that ``U @ M @ V`` is diagonal.
  It is used where cycles have to be classified.
- ``invariant_factors`` only needs the diagonal. It first eliminates unit
  pivots on a sparse dict-of-rows representation (boundary matrices are mostly
  +-1 entries) and hands the small remainder to the dense engine.
"""

import heapq
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.core.config import settings
from src.core.exceptions import SNFCheckError
from src.core.logging import logger
from src.models.matrix import SparseIntMatrix


@dataclass(frozen=True)
class SNFResult:
    """Diagonal of the SNF plus the (optionally tracked) unimodular transforms."""
    shape: tuple[int, int]
    diagonal: tuple[int, ...]
    U: Optional[np.ndarray] = None
    U_inv: Optional[np.ndarray] = None
    V: Optional[np.ndarray] = None
    V_inv: Optional[np.ndarray] = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def invariant_factors(self) -> list[int]:
        """Diagonal entries greater than one."""
        return [d for d in self.diagonal if d > 1]

    def diagonal_matrix(self) -> np.ndarray:
        rows, cols = self.shape
        D = np.zeros((rows, cols), dtype=object)
        for i, d in enumerate(self.diagonal):
            D[i, i] = d
        return D


def _as_dense(matrix) -> np.ndarray:
    if isinstance(matrix, SparseIntMatrix):
        return matrix.to_dense()
    arr = np.array(matrix, dtype=object)
    if arr.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    return np.vectorize(int, otypes=[object])(arr) if arr.size else arr


def _eliminate(A, U=None, U_inv=None, V=None, V_inv=None) -> list[int]:
    """Diagonalise A in place. Returns the positive diagonal with d_i | d_{i+1}.

    The optional transforms are updated so that U @ M @ V == A throughout.
    """
    rows, cols = A.shape
    diagonal = []
    for t in range(min(rows, cols)):
        sub = A[t:, t:]
        rs, cs = np.nonzero(sub)
        if len(rs) == 0:
            break
        # Smallest absolute value; np.nonzero is row-major so ties go to lowest row, then column
        k = min(range(len(rs)), key=lambda i: abs(sub[rs[i], cs[i]]))
        _swap_rows(A, U, U_inv, t, t + int(rs[k]))
        _swap_cols(A, V, V_inv, t, t + int(cs[k]))

        while True:
            p = A[t, t]
            q = A[t + 1:, t] // p
            if q.any():
                A[t + 1:, :] -= q[:, None] * A[t, :][None, :]
                if U is not None:
                    U[t + 1:, :] -= q[:, None] * U[t, :][None, :]
                if U_inv is not None:
                    U_inv[:, t] += U_inv[:, t + 1:].dot(q)
            q = A[t, t + 1:] // p
            if q.any():
                A[:, t + 1:] -= A[:, t][:, None] * q[None, :]
                if V is not None:
                    V[:, t + 1:] -= V[:, t][:, None] * q[None, :]
                if V_inv is not None:
                    V_inv[t, :] += q.dot(V_inv[t + 1:, :])

            col_left = np.nonzero(A[t + 1:, t])[0]
            row_left = np.nonzero(A[t, t + 1:])[0]
            if len(col_left) or len(row_left):
                candidates = [(abs(A[t + 1 + r, t]), 0, t + 1 + int(r)) for r in col_left]
                candidates += [(abs(A[t, t + 1 + c]), 1, t + 1 + int(c)) for c in row_left]
                _, axis, index = min(candidates)
                if axis == 0:
                    _swap_rows(A, U, U_inv, t, index)
                else:
                    _swap_cols(A, V, V_inv, t, index)
                continue

            bad = np.nonzero(A[t + 1:, t + 1:] % p)
            if len(bad[0]) == 0:
                break
            r = t + 1 + int(bad[0][0])
            A[t, :] += A[r, :]
            if U is not None:
                U[t, :] += U[r, :]
            if U_inv is not None:
                U_inv[:, r] -= U_inv[:, t]

        if A[t, t] < 0:
            A[t, :] *= -1
            if U is not None:
                U[t, :] *= -1
            if U_inv is not None:
                U_inv[:, t] *= -1
        diagonal.append(int(A[t, t]))
    return diagonal


def _swap_rows(A, U, U_inv, i: int, j: int) -> None:
    if i == j:
        return
    A[[i, j], :] = A[[j, i], :]
    if U is not None:
        U[[i, j], :] = U[[j, i], :]
    if U_inv is not None:
        U_inv[:, [i, j]] = U_inv[:, [j, i]]


def _swap_cols(A, V, V_inv, i: int, j: int) -> None:
    if i == j:
        return
    A[:, [i, j]] = A[:, [j, i]]
    if V is not None:
        V[:, [i, j]] = V[:, [j, i]]
    if V_inv is not None:
        V_inv[[i, j], :] = V_inv[[j, i], :]


def smith_normal_form(
    matrix,
    track_rows: bool = True,
    track_cols: bool = True,
    check: Optional[bool] = None,
) -> SNFResult:
    """Smith normal form with unimodular transforms, U @ M @ V = D."""
    M = _as_dense(matrix)
    rows, cols = M.shape
    A = M.copy()
    U = np.identity(rows, dtype=object) if track_rows else None
    U_inv = np.identity(rows, dtype=object) if track_rows else None
    V = np.identity(cols, dtype=object) if track_cols else None
    V_inv = np.identity(cols, dtype=object) if track_cols else None

    diagonal = _eliminate(A, U, U_inv, V, V_inv)
    result = SNFResult((rows, cols), tuple(diagonal), U, U_inv, V, V_inv)
    if settings.SNF_SELF_CHECK if check is None else check:
        verify_snf(M, result)
    return result


def verify_snf(M: np.ndarray, result: SNFResult) -> None:
    """Raise SNFCheckError unless U·M·V = D and both transforms are inverted exactly."""
    rows, cols = result.shape
    diagonal = result.diagonal
    if any(d <= 0 for d in diagonal):
        raise SNFCheckError("diagonal entries must be positive", diagonal=diagonal)
    if any(b % a for a, b in zip(diagonal, diagonal[1:])):
        raise SNFCheckError("diagonal violates the divisibility chain", diagonal=diagonal)
    if result.U is not None and result.V is not None:
        if not np.array_equal(result.U.dot(M).dot(result.V), result.diagonal_matrix()):
            raise SNFCheckError("U @ M @ V differs from the diagonal", shape=result.shape)
    if result.U is not None and not np.array_equal(
        result.U.dot(result.U_inv), np.identity(rows, dtype=object)
    ):
        raise SNFCheckError("row transform is not inverted exactly", shape=result.shape)
    if result.V is not None and not np.array_equal(
        result.V.dot(result.V_inv), np.identity(cols, dtype=object)
    ):
        raise SNFCheckError("column transform is not inverted exactly", shape=result.shape)


def solve(result: SNFResult, b) -> Optional[np.ndarray]:
    """One integer solution x of M x = b from a fully tracked SNF, or None."""
    if result.U is None or result.V is None:
        raise ValueError("solve needs both transforms")
    y = result.U.dot(np.array(b, dtype=object))
    rows, cols = result.shape
    z = np.zeros(cols, dtype=object)
    for i, d in enumerate(result.diagonal):
        if y[i] % d:
            return None
        z[i] = y[i] // d
    if any(y[result.rank:]):
        return None
    return result.V.dot(z)


def _unit_pivot_pass(rows: dict[int, dict[int, int]]) -> int:
    """Eliminate +-1 pivots in place, shortest row first. Returns the number removed."""
    columns: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            columns.setdefault(c, set()).add(r)

    heap = [(len(row), r) for r, row in rows.items()]
    heapq.heapify(heap)
    removed = 0
    while heap:
        length, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is None or len(row) != length:
            continue
        units = [c for c, v in row.items() if v in (1, -1)]
        if not units:
            continue
        c = min(units, key=lambda col: (len(columns[col]), col))
        v = row[c]
        for other in sorted(columns[c] - {r}):
            target = rows[other]
            factor = target[c] * v
            for cc, val in row.items():
                new = target.get(cc, 0) - factor * val
                if new:
                    if cc not in target:
                        columns[cc].add(other)
                    target[cc] = new
                elif cc in target:
                    del target[cc]
                    columns[cc].discard(other)
            heapq.heappush(heap, (len(target), other))
        for cc in row:
            columns[cc].discard(r)
        del rows[r]
        removed += 1
    return removed


def invariant_factors(matrix: SparseIntMatrix) -> tuple[int, list[int]]:
    """Rank and invariant factors (> 1) of a sparse integer matrix."""
    rows = {r: row for r, row in enumerate(matrix.row_dicts()) if row}
    units = _unit_pivot_pass(rows)

    remaining_rows = sorted(r for r, row in rows.items() if row)
    remaining_cols = sorted({c for row in rows.values() for c in row})
    diagonal: list[int] = []
    if remaining_rows:
        col_index = {c: j for j, c in enumerate(remaining_cols)}
        A = np.zeros((len(remaining_rows), len(remaining_cols)), dtype=object)
        for i, r in enumerate(remaining_rows):
            for c, v in rows[r].items():
                A[i, col_index[c]] = v
        diagonal = _eliminate(A)
    logger.debug(
        "invariant_factors",
        shape=matrix.shape,
        unit_pivots=units,
        dense_block=(len(remaining_rows), len(remaining_cols)),
    )
    return units + len(diagonal), [d for d in diagonal if d > 1]
