"""Vectors, matrices, rank and dual spaces over GF(q).

Everything is exact: Gaussian elimination picks the first nonzero pivot
(lowest row index wins; there are no magnitude heuristics in an exact
field).  Matrices are immutable row-major tuples of element indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gf import FieldMismatchError, FieldSpec
from .rng import SeedStream


class RankDeficientError(ValueError):
    """Operation requires a full-row-rank matrix."""


@dataclass(frozen=True)
class VectorGF:
    field: FieldSpec
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "entries", tuple(self.field.validate_element(e) for e in self.entries)
        )

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class MatrixGF:
    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        n = len(self.rows[0])
        fixed = []
        for row in self.rows:
            if len(row) != n:
                raise ValueError("ragged matrix rows")
            fixed.append(tuple(self.field.validate_element(e) for e in row))
        object.__setattr__(self, "rows", tuple(fixed))

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])


def matrix(field: FieldSpec, rows: Sequence[Sequence[int]]) -> MatrixGF:
    return MatrixGF(field, tuple(tuple(r) for r in rows))


def identity(field: FieldSpec, k: int) -> MatrixGF:
    return matrix(field, [[1 if i == j else 0 for j in range(k)] for i in range(k)])


def vec_mat(x: Sequence[int], M: MatrixGF) -> tuple[int, ...]:
    """Row vector times matrix, x (len k) * M (k x n) -> len n."""
    F = M.field
    if len(x) != M.k:
        raise ValueError(f"vector length {len(x)} != matrix rows {M.k}")
    out = [0] * M.n
    for xi, row in zip(x, M.rows):
        if xi == 0:
            continue
        for j, e in enumerate(row):
            if e:
                out[j] = F.add(out[j], F.mul(xi, e))
    return tuple(out)


def mat_mul(A: MatrixGF, B: MatrixGF) -> MatrixGF:
    if A.field != B.field:
        raise FieldMismatchError("matrix product across different fields")
    if A.n != B.k:
        raise ValueError(f"inner dimensions differ: {A.n} vs {B.k}")
    return MatrixGF(A.field, tuple(vec_mat(row, B) for row in A.rows))


def transpose(M: MatrixGF) -> MatrixGF:
    return MatrixGF(M.field, tuple(zip(*M.rows)))


def row_reduce(M: MatrixGF) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    F = M.field
    rows = [list(r) for r in M.rows]
    nrows, ncols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = F.inv(rows[r][c])
        if inv != 1:
            rows[r] = [F.mul(inv, e) for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(e, F.mul(f, pe)) for e, pe in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def mat_rank(M: MatrixGF) -> int:
    return len(row_reduce(M)[1])


def row_basis(M: MatrixGF) -> list[tuple[int, ...]]:
    """Row-reduced basis of the row space (may be empty for a zero matrix)."""
    rows, pivots = row_reduce(M)
    return [tuple(rows[i]) for i in range(len(pivots))]


def dual_generator(G: MatrixGF) -> MatrixGF:
    """Generator of the dual code: H with n-k independent rows, G @ H^T = 0.

    For G row-equivalent to [I_k | A] this is [-A^T | I_{n-k}] up to the
    pivot-column bookkeeping.  Requires full row rank.
    """
    rows, pivots = row_reduce(G)
    k, n = G.k, G.n
    if len(pivots) != k:
        raise RankDeficientError(
            f"matrix has rank {len(pivots)} < {k}; reduce to a full-rank basis first"
        )
    if k == n:
        raise ValueError("the full space [n,n] has the zero code as dual; "
                         "there is no generator matrix to return")
    F = G.field
    free = [c for c in range(n) if c not in set(pivots)]
    hrows = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(rows[i][f])
        hrows.append(tuple(v))
    return MatrixGF(F, tuple(hrows))


def random_matrix(field: FieldSpec, k: int, n: int, stream: SeedStream) -> MatrixGF:
    """k x n matrix with entries i.i.d. uniform on [0, q), row-major draw order."""
    if k < 1 or n < 1:
        raise ValueError("matrix dimensions must be >= 1")
    q = field.q
    return MatrixGF(
        field,
        tuple(tuple(stream.next_below(q) for _ in range(n)) for _ in range(k)),
    )
