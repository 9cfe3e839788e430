"""Left ideals of M_n(F_q) through their row spaces.

A left ideal <M> = {XM} is determined by the row space W(M), so every ideal
question here reduces to echelon forms.  Each ideal of rank k has exactly one
generator in the canonical family E(n, k): the RREF basis of W(M) with row j
moved to row ``pivot_j``.  All counts are exact Python integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

import numpy as np

from .gf import FieldSpec
from .matlin import (
    Mat,
    MatrixError,
    SubspaceKey,
    is_idempotent,
    mat_mul,
    rank,
    row_space_key,
    col_space_key,
    subspace_key,
)


class NotIdempotentError(ValueError):
    pass


class NotCanonical(ValueError):
    """A matrix is outside E(n, k); ``condition`` names the violated rule."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"condition ({condition}) violated: {message}")
        self.condition = condition


@dataclass(frozen=True)
class CanonicalIdempotent:
    matrix: Mat
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def to_json(self) -> dict:
        return {
            "n": self.matrix.rows,
            "field": self.matrix.field.to_json(),
            "rows": self.matrix.to_rows(),
            "pivotal_positions": list(self.pivots),
        }


@dataclass(frozen=True)
class IdealHandle:
    key: SubspaceKey
    canonical: CanonicalIdempotent

    @property
    def rank(self) -> int:
        return self.key.dim

    def to_json(self) -> dict:
        return self.key.to_json()


def _check_pair(M1: Mat, M2: Mat) -> None:
    if M1.field != M2.field:
        raise MatrixError(f"field mismatch: {M1.field} vs {M2.field}")
    if not (M1.is_square and M2.is_square and M1.rows == M2.rows):
        raise MatrixError("expected two square matrices of the same size")


def ideal_rank(M: Mat) -> int:
    return rank(M)


def left_ideal_contains(M1: Mat, M2: Mat) -> bool:
    """<M1> is a subset of <M2>: every row of M1 lies in W(M2)."""
    _check_pair(M1, M2)
    W2 = row_space_key(M2)
    return all(W2.contains_vector(M1.row(i)) for i in range(M1.rows))


def same_left_ideal(M1: Mat, M2: Mat) -> bool:
    _check_pair(M1, M2)
    return row_space_key(M1) == row_space_key(M2)


def same_right_ideal(M1: Mat, M2: Mat) -> bool:
    _check_pair(M1, M2)
    return col_space_key(M1) == col_space_key(M2)


def idempotents_same_ideal(R: Mat, S: Mat) -> bool:
    """For idempotents R, S: <R> = <S> iff RS = R and SR = S."""
    _check_pair(R, S)
    for name, X in (("R", R), ("S", S)):
        if not is_idempotent(X):
            raise NotIdempotentError(f"{name} is not idempotent")
    return mat_mul(R, S) == R and mat_mul(S, R) == S


def check_equivalence_triple(R: Mat, S: Mat) -> tuple[bool, bool, bool]:
    """Evaluate separately:

    (i)   R and S idempotent with <R> = <S>
    (ii)  RS = R and SR = S
    (iii) R = S + (I - S)RS with S idempotent
    """
    _check_pair(R, S)
    I = Mat.identity(R.rows, R.field)
    RS, SR = mat_mul(R, S), mat_mul(S, R)
    s_idem = is_idempotent(S)
    first = is_idempotent(R) and s_idem and same_left_ideal(R, S)
    second = RS == R and SR == S
    third = s_idem and R == S + mat_mul(I - S, RS)
    return first, second, third


def idempotent_generators(S: Mat) -> list[Mat]:
    """Every idempotent generator of <S>, sorted by row-major code.

    These are S + (I - S)MS over all M.  The map M -> (I - S)MS is linear, so
    its image is spanned by the images of the matrix units and we only walk
    that span.
    """
    if not S.is_square:
        raise MatrixError("expected a square matrix")
    if not is_idempotent(S):
        raise NotIdempotentError("S is not idempotent")
    n, F = S.rows, S.field
    ImS = Mat.identity(n, F) - S
    images = [mat_mul(mat_mul(ImS, Mat.unit(n, i, j, F)), S)
              for i in range(1, n + 1) for j in range(1, n + 1)]
    span = subspace_key((T.entries for T in images), n * n, F)
    basis = span.basis()
    add, mul = F.add_table, F.mul_table
    out = []
    for coeffs in itertools.product(range(F.q), repeat=len(basis)):
        v = list(S.entries)
        for c, b in zip(coeffs, basis):
            if c:
                v = [add[x][mul[c][y]] for x, y in zip(v, b)]
        out.append(Mat(n, n, F, tuple(v)))
    out.sort(key=lambda m: m.code)
    return out


def idempotent_generators_sweep(S: Mat) -> list[Mat]:
    """Same set as :func:`idempotent_generators`, by running M over all of
    M_n(F_q).  Only feasible for tiny n and q."""
    if not is_idempotent(S):
        raise NotIdempotentError("S is not idempotent")
    n, F = S.rows, S.field
    ImS = Mat.identity(n, F) - S
    seen = {}
    for entries in itertools.product(range(F.q), repeat=n * n):
        M0 = S + mat_mul(mat_mul(ImS, Mat(n, n, F, entries)), S)
        seen[M0.code] = M0
    return [seen[c] for c in sorted(seen)]


# Canonical family E(n, k)

def _shapes(n: int, k: int) -> Iterator[tuple[tuple[int, ...], list[tuple[int, int]]]]:
    """Pivot sets in lexicographic order with their free positions.

    Free positions are (j, h), 0-based: echelon row j, column h to the right
    of its pivot and not itself a pivot column, listed row-major.
    """
    if not 0 <= k <= n:
        raise ValueError(f"k must be in [0, {n}], got {k}")
    for piv in itertools.combinations(range(n), k):
        pset = set(piv)
        free = [(j, h) for j, c in enumerate(piv) for h in range(c + 1, n) if h not in pset]
        yield piv, free


def enumerate_subspaces(n: int, k: int, F: FieldSpec) -> Iterator[SubspaceKey]:
    """All k-dimensional subspaces of F_q^n, each once, as RREF keys."""
    for piv, free in _shapes(n, k):
        for values in itertools.product(range(F.q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for j, c in enumerate(piv):
                rows[j][c] = 1
            for (j, h), x in zip(free, values):
                rows[j][h] = x
            yield SubspaceKey(n, k, tuple(c + 1 for c in piv),
                              Mat(k, n, F, tuple(x for r in rows for x in r)))


def canonical_idempotent_for_subspace(key: SubspaceKey) -> CanonicalIdempotent:
    """The member of E(n, k) whose row space is ``key``.

    The zero subspace maps to the zero matrix with no pivots.
    """
    n, F = key.ambient_dim, key.field
    entries = [0] * (n * n)
    for j, c in enumerate(key.pivot_cols):
        entries[(c - 1) * n:c * n] = key.reduced_rows.row(j)
    return CanonicalIdempotent(Mat(n, n, F, tuple(entries)), key.pivot_cols)


def canonical_family_blocks(n: int, k: int, F: FieldSpec) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
    """E(n, k) one pivot shape at a time.

    Yields ``(pivots, stack)`` with ``stack`` of shape (q**f, n, n), f the
    number of free entries, rows ordered by ascending free-entry code.
    """
    q = F.q
    for piv, free in _shapes(n, k):
        f = len(free)
        count = q ** f
        stack = np.zeros((count, n, n), dtype=np.int64)
        for c in piv:
            stack[:, c, c] = 1
        codes = np.arange(count, dtype=np.int64)
        for t, (j, h) in enumerate(free):
            # first free entry is the most significant digit
            stack[:, piv[j], h] = (codes // q ** (f - 1 - t)) % q
        yield tuple(c + 1 for c in piv), stack


def enumerate_canonical_idempotents(n: int, k: int, F: FieldSpec) -> Iterator[CanonicalIdempotent]:
    for piv, stack in canonical_family_blocks(n, k, F):
        for m in stack.reshape(len(stack), n * n).tolist():
            yield CanonicalIdempotent(Mat(n, n, F, tuple(m)), piv)


def pivotal_positions(A: Mat) -> list[int]:
    """Pivotal positions of a member of E(n, k).

    Raises :class:`NotCanonical` naming the first violated condition.
    """
    if not A.is_square:
        raise MatrixError("expected a square matrix")
    n = A.rows
    piv = [i for i in range(n) if any(A.row(i))]
    for i in piv:
        if A[i, i] != 1:
            raise NotCanonical("ii", f"row {i + 1} is nonzero but has {A[i, i]} on the diagonal")
        if any(A[i, h] for h in range(i)):
            raise NotCanonical("ii", f"row {i + 1} has a nonzero entry left of the diagonal")
    for j, i in enumerate(piv):
        for s in piv[j + 1:]:
            if A[i, s]:
                raise NotCanonical("iii", f"entry ({i + 1}, {s + 1}) lies in a later pivotal column")
    return [i + 1 for i in piv]


def subspace_to_ideal(key: SubspaceKey) -> IdealHandle:
    return IdealHandle(key, canonical_idempotent_for_subspace(key))


def ideal_to_subspace(h: IdealHandle) -> SubspaceKey:
    return h.key


def ideal_of(M: Mat) -> IdealHandle:
    return subspace_to_ideal(row_space_key(M))


# Counting

def _check_k(n: int, k: int) -> None:
    if not 0 <= k <= n:
        raise ValueError(f"k must be in [0, {n}], got {k}")


def _exact_div(num: int, den: int) -> int:
    quo, rem = divmod(num, den)
    assert rem == 0, f"{num} is not divisible by {den}"
    return quo


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    _check_k(n, k)
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return _exact_div(num, den)


def count_canonical_recurrence(n: int, k: int, q: int) -> int:
    """|E(n, k)| from S(n, k) = S(n-1, k-1) + q^k S(n-1, k)."""
    _check_k(n, k)
    return _canonical_rec(n, k, q)


@lru_cache(maxsize=None)
def _canonical_rec(n: int, k: int, q: int) -> int:
    if k == 0 or k == n:
        return 1
    if k > n:
        return 0
    return _canonical_rec(n - 1, k - 1, q) + _canonical_rec(n - 1, k, q) * q ** k


def count_idempotent_generators(n: int, k: int, q: int) -> int:
    _check_k(n, k)
    return q ** ((n - k) * k)


def count_independent_tuples(n: int, k: int, q: int) -> int:
    """Ordered k-tuples of linearly independent vectors in F_q^n."""
    _check_k(n, k)
    out = 1
    for i in range(k):
        out *= q ** n - q ** i
    return out


def count_rank_k_matrices(n: int, k: int, q: int) -> int:
    """Rank-k matrices in M_n(F_q), from the closed form
    q^(k(k-1)/2) * prod(q^(n-i) - 1)^2 / prod(q^(i+1) - 1), i < k.

    Cross-checked against (number of rank-k ideals) x (rank-k matrices in
    one such ideal), the latter being the independent k-tuple count.
    Without the q^(k(k-1)/2) factor the formula is only right for k <= 1.
    """
    _check_k(n, k)
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    closed = _exact_div(q ** (k * (k - 1) // 2) * num * num, den)
    assert closed == gaussian_binomial(n, k, q) * count_independent_tuples(n, k, q)
    return closed


@dataclass(frozen=True)
class CountTable:
    n: int
    q: int
    ideals: tuple[int, ...]
    generators_per_ideal: tuple[int, ...]
    rank_matrices: tuple[int, ...]
    canonical_family_size: tuple[int, ...]

    def rows(self) -> list[tuple[int, int, int, int, int]]:
        return [(k, self.ideals[k], self.generators_per_ideal[k], self.rank_matrices[k],
                 self.canonical_family_size[k]) for k in range(self.n + 1)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "ideals": list(self.ideals),
            "generators_per_ideal": list(self.generators_per_ideal),
            "rank_matrices": list(self.rank_matrices),
            "canonical_family_size": list(self.canonical_family_size),
        }


class CountInconsistency(AssertionError):
    pass


def count_table(n: int, F: Union[FieldSpec, int]) -> CountTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    q = F if isinstance(F, int) else F.q
    ks = range(n + 1)
    table = CountTable(
        n, q,
        tuple(gaussian_binomial(n, k, q) for k in ks),
        tuple(count_idempotent_generators(n, k, q) for k in ks),
        tuple(count_rank_k_matrices(n, k, q) for k in ks),
        tuple(count_canonical_recurrence(n, k, q) for k in ks),
    )
    if table.ideals != table.canonical_family_size:
        raise CountInconsistency(f"ideal counts {table.ideals} != |E(n,k)| {table.canonical_family_size}")
    if sum(table.rank_matrices) != q ** (n * n):
        raise CountInconsistency(f"rank census sums to {sum(table.rank_matrices)}, not q^(n^2)")
    return table
