"""Vectors, matrices and canonical subspaces over GF(q).

Vectors are tuples of field element indices; matrices are sequences of
such rows.  A :class:`Subspace` is identified by its reduced row echelon
basis, so equality of subspaces is equality of the stored matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .gf import FieldSpec

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def rref(field: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[Matrix, int]:
    """Reduced row echelon form of ``rows`` and its rank.

    Zero rows are kept at the bottom so the output has the input's shape.
    """
    if not rows:
        return (), 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    add, mul, neg, inv = field.add_table, field.mul_table, field.neg_table, field.inv_table
    m = [list(r) for r in rows]
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        prow = m[rank]
        s = inv[prow[col]]
        if s != 1:
            prow[:] = [mul[s][x] for x in prow]
        for i in range(len(m)):
            c = m[i][col]
            if i != rank and c:
                f = neg[c]
                mf = mul[f]
                m[i] = [add[x][mf[y]] for x, y in zip(m[i], prow)]
        rank += 1
        if rank == len(m):
            break
    return tuple(tuple(r) for r in m), rank


def rank(field: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return rref(field, rows)[1]


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^n given by its RREF basis (rows ordered by pivot)."""

    n: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    def __str__(self) -> str:
        if not self.basis:
            return "<0>"
        return "<" + "; ".join("".join(map(str, r)) if all(x < 10 for x in r) else ",".join(map(str, r)) for r in self.basis) + ">"


def span(field: FieldSpec, vectors: Sequence[Sequence[int]], n: int | None = None) -> Subspace:
    """Subspace spanned by ``vectors``; ``n`` is needed only when the list is empty."""
    if vectors:
        width = len(vectors[0])
        if n is not None and n != width:
            raise ValueError(f"vectors have length {width}, expected {n}")
        n = width
    if n is None or n < 1:
        raise ValueError("ambient dimension must be given and positive")
    m, r = rref(field, vectors)
    return Subspace(n, m[:r])


def _stack_rank(field: FieldSpec, u: Subspace, w: Subspace) -> int:
    if u.n != w.n:
        raise ValueError(f"ambient dimensions differ: {u.n} vs {w.n}")
    if not u.basis or not w.basis:
        return u.dim + w.dim
    return rank(field, u.basis + w.basis)


def intersection_dim(field: FieldSpec, u: Subspace, w: Subspace) -> int:
    """dim(u ∩ w), via dim u + dim w - dim(u + w)."""
    return u.dim + w.dim - _stack_rank(field, u, w)


def sum_dim(field: FieldSpec, u: Subspace, w: Subspace) -> int:
    return _stack_rank(field, u, w)


def contains(field: FieldSpec, w: Subspace, x: Sequence[int]) -> bool:
    """True iff ``x`` lies in ``w``: reduce ``x`` against the RREF pivots."""
    if len(x) != w.n:
        raise ValueError(f"vector of length {len(x)} in ambient dimension {w.n}")
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    v = list(x)
    for row, piv in zip(w.basis, w.pivots):
        c = v[piv]
        if c:
            mf = mul[neg[c]]
            v = [add[a][mf[b]] for a, b in zip(v, row)]
    return not any(v)


def is_subspace_of(field: FieldSpec, u: Subspace, w: Subspace) -> bool:
    return all(contains(field, w, r) for r in u.basis)


def free_positions(n: int, pivots: Sequence[int]) -> list[tuple[int, int]]:
    """(row, col) cells of an RREF matrix with the given pivots that may hold any value, row-major."""
    piv = set(pivots)
    return [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in piv]


def iter_subspaces(field: FieldSpec, n: int, k: int) -> Iterator[Subspace]:
    """Every k-dimensional subspace of GF(q)^n exactly once.

    Order: pivot-column sets lexicographically, then the free entries
    (row-major) counted as a base-q numeral, first free cell most significant.
    """
    if not 0 <= k <= n:
        raise ValueError(f"subspace dimension {k} out of range 0..{n}")
    q = field.q
    for pivots in combinations(range(n), k):
        cells = free_positions(n, pivots)
        for values in product(range(q), repeat=len(cells)):
            m = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                m[i][p] = 1
            for (i, j), x in zip(cells, values):
                m[i][j] = x
            yield Subspace(n, tuple(tuple(r) for r in m))


def enumerate_subspaces(field: FieldSpec, n: int, k: int) -> list[Subspace]:
    return list(iter_subspaces(field, n, k))


def all_vectors(field: FieldSpec, n: int) -> Iterator[Vector]:
    return product(range(field.q), repeat=n)


def unit_vector(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))
