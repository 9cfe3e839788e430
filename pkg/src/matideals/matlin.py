"""Dense exact matrices over F_q, echelon forms and subspace keys."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .gf import FieldSpec


class MatrixError(ValueError):
    """Shape or field mismatch between matrices."""


@dataclass(frozen=True)
class Mat:
    """Immutable ``rows x cols`` matrix of field codes, stored row-major."""

    rows: int
    cols: int
    field: FieldSpec
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise MatrixError("entry count does not match shape")
        q = self.field.q
        if any(not 0 <= x < q for x in self.entries):
            raise MatrixError(f"entries must be field codes in [0, {q})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], F: FieldSpec, cols: Optional[int] = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise MatrixError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise MatrixError("ragged rows")
        return cls(len(rows), cols, F, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int, F: FieldSpec) -> "Mat":
        return cls(rows, cols, F, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int, F: FieldSpec) -> "Mat":
        return cls(n, n, F, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, n: int, i: int, j: int, F: FieldSpec) -> "Mat":
        """The matrix unit E_ij (1-based indices)."""
        e = [0] * (n * n)
        e[(i - 1) * n + (j - 1)] = 1
        return cls(n, n, F, tuple(e))

    @classmethod
    def from_code(cls, code: int, n: int, F: FieldSpec) -> "Mat":
        """Inverse of :attr:`code` for square matrices."""
        q = F.q
        out = [0] * (n * n)
        for pos in range(n * n - 1, -1, -1):
            code, out[pos] = divmod(code, q)
        return cls(n, n, F, tuple(out))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def code(self) -> int:
        """Integer with base-q digits equal to the entries, first entry most
        significant, so code order is row-major lexicographic order."""
        q = self.field.q
        c = 0
        for x in self.entries:
            c = c * q + x
        return c

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, self.field,
                   tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def _check_same(self, other: "Mat") -> None:
        if self.field != other.field:
            raise MatrixError(f"field mismatch: {self.field} vs {other.field}")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise MatrixError("shape mismatch")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        add = self.field.add_table
        return Mat(self.rows, self.cols, self.field,
                   tuple(add[a][b] for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        add, neg = self.field.add_table, self.field.neg_table
        return Mat(self.rows, self.cols, self.field,
                   tuple(add[a][neg[b]] for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in self.row(i)) for i in range(self.rows))


def mat_mul(A: Mat, B: Mat) -> Mat:
    if A.field != B.field:
        raise MatrixError(f"field mismatch: {A.field} vs {B.field}")
    if A.cols != B.rows:
        raise MatrixError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    add, mul = A.field.add_table, A.field.mul_table
    n, m = A.cols, B.cols
    bcols = [B.entries[j::m] for j in range(m)]
    out = []
    for i in range(A.rows):
        arow = A.entries[i * n:(i + 1) * n]
        for col in bcols:
            s = 0
            for a, b in zip(arow, col):
                if a and b:
                    s = add[s][mul[a][b]]
            out.append(s)
    return Mat(A.rows, m, A.field, tuple(out))


def _reduce(rows: list[list[int]], ncols: int, F: FieldSpec) -> list[int]:
    """In-place Gauss-Jordan elimination; returns 0-based pivot columns.

    Leftmost nonzero column, topmost nonzero row; zero rows sink to the bottom.
    """
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        src = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        inv = F.inv(rows[r][c])
        prow = [mul[inv][x] for x in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f:
                nf = neg[f]
                rows[i] = [add[x][mul[nf][y]] for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and 1-based pivot columns."""
    rows = M.to_rows()
    pivots = _reduce(rows, M.cols, M.field)
    return Mat(M.rows, M.cols, M.field, tuple(x for r in rows for x in r)), [c + 1 for c in pivots]


def rank(M: Mat) -> int:
    return len(rref(M)[1])


def is_idempotent(M: Mat) -> bool:
    if not M.is_square:
        raise MatrixError("idempotency needs a square matrix")
    return mat_mul(M, M) == M


@dataclass(frozen=True)
class SubspaceKey:
    """Canonical form of a subspace of F_q^n: its RREF basis.

    ``reduced_rows`` is ``dim x ambient_dim`` (possibly with zero rows when
    the subspace is zero).  Two keys compare equal iff the subspaces do.
    """

    ambient_dim: int
    dim: int
    pivot_cols: tuple[int, ...]
    reduced_rows: Mat

    @property
    def field(self) -> FieldSpec:
        return self.reduced_rows.field

    def basis(self) -> list[tuple[int, ...]]:
        return [self.reduced_rows.row(i) for i in range(self.dim)]

    def contains_vector(self, v: Sequence[int]) -> bool:
        """Reduce ``v`` against the basis; membership iff it vanishes."""
        F = self.field
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        v = list(v)
        for j, c in enumerate(self.pivot_cols):
            f = v[c - 1]
            if f:
                nf = neg[f]
                v = [add[x][mul[nf][y]] for x, y in zip(v, self.reduced_rows.row(j))]
        return not any(v)

    def contains(self, other: "SubspaceKey") -> bool:
        return all(self.contains_vector(r) for r in other.basis())

    def to_json(self) -> dict:
        return {
            "n": self.ambient_dim,
            "field": self.field.to_json(),
            "pivots": list(self.pivot_cols),
            "reduced_rows": [list(r) for r in self.basis()],
        }


def subspace_key(vectors: Iterable[Sequence[int]], n: int, F: FieldSpec) -> SubspaceKey:
    rows = [list(v) for v in vectors]
    pivots = _reduce(rows, n, F)
    k = len(pivots)
    basis = Mat(k, n, F, tuple(x for r in rows[:k] for x in r))
    return SubspaceKey(n, k, tuple(c + 1 for c in pivots), basis)


def row_space_key(M: Mat) -> SubspaceKey:
    """Key of W(M), the span of the rows of M."""
    return subspace_key(M.to_rows(), M.cols, M.field)


def col_space_key(M: Mat) -> SubspaceKey:
    """Key of V(M), the span of the columns of M."""
    return row_space_key(M.transpose())


# Batched kernels: stacks of matrices as integer arrays of shape (N, r, c).

def field_arrays(F: FieldSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(add, mul, neg, inv) tables as numpy arrays."""
    return (np.array(F.add_table, dtype=np.int64), np.array(F.mul_table, dtype=np.int64),
            np.array(F.neg_table, dtype=np.int64), np.array(F.inv_table, dtype=np.int64))


def batch_matmul(A: np.ndarray, B: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Products ``A[i] @ B[i]`` over F_q; either side may broadcast."""
    add, mul, _, _ = field_arrays(F)
    A, B = np.broadcast_arrays(A[..., :, :, None], B[..., None, :, :])
    # A, B now (..., r, m, c); sum over the middle axis
    out = mul[A[..., 0, :], B[..., 0, :]]
    for t in range(1, A.shape[-2]):
        out = add[out, mul[A[..., t, :], B[..., t, :]]]
    return out


def batch_rank(A: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Rank of every matrix in the stack ``A`` of shape (N, r, c)."""
    add, mul, neg, inv = field_arrays(F)
    A = np.array(A, dtype=np.int64, copy=True)
    N, r, c = A.shape
    rk = np.zeros(N, dtype=np.int64)
    idx = np.arange(N)
    rows = np.arange(r)
    for col in range(c):
        cand = (A[:, :, col] != 0) & (rows[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = idx[has]
        src = cand[sel].argmax(axis=1)
        dst = rk[sel]
        top = A[sel, dst].copy()
        A[sel, dst] = A[sel, src]
        A[sel, src] = top
        prow = A[sel, dst]
        prow = mul[inv[prow[:, col]][:, None], prow]
        A[sel, dst] = prow
        below = rows[None, :] > dst[:, None]
        f = A[sel, :, col] * below
        A[sel] = add[A[sel], mul[neg[f][:, :, None], prow[:, None, :]]]
        rk[sel] += 1
    return rk
