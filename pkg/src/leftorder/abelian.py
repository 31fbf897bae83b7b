"""Abelianization: exponent-sum matrices, Smith normal form, first Betti number."""
from __future__ import annotations

from dataclasses import dataclass

from .words import Presentation


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(ent) != self.rows or any(len(r) != self.cols for r in ent):
            raise ValueError("entries do not match the declared shape")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self):
        return [list(r) for r in self.entries]

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix(self.rows, other.cols, tuple(tuple(r) for r in out))


def abelianization_matrix(p: Presentation) -> IntMatrix:
    """Relator exponent sums: column ``j`` holds the per-generator sums of relator ``j``."""
    cols = [r.exponent_sums(p.ngens) for r in p.relators]
    entries = tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(p.ngens))
    return IntMatrix(p.ngens, len(cols), entries)


@dataclass(frozen=True)
class SmithForm:
    """``left @ D @ right == m`` with ``D`` diagonal; ``left_inv @ m @ right_inv == D``."""

    diagonal: tuple
    left: IntMatrix
    right: IntMatrix
    left_inv: IntMatrix
    right_inv: IntMatrix
    shape: tuple

    def diag_matrix(self) -> IntMatrix:
        r, c = self.shape
        return IntMatrix(
            r, c,
            tuple(tuple(self.diagonal[i] if i == j and i < len(self.diagonal) else 0 for j in range(c)) for i in range(r)),
        )

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Diagonalize ``m`` by unimodular row/column operations.

    Returns the divisibility chain ``d1 | d2 | ...`` (nonnegative, zeros last)
    together with transforms in both directions.
    """
    R, C = m.rows, m.cols
    a = m.tolist()
    # invariant: L @ a @ Rt == m  and  Li @ m @ Ri == a
    L = IntMatrix.identity(R).tolist()
    Li = IntMatrix.identity(R).tolist()
    Rt = IntMatrix.identity(C).tolist()
    Ri = IntMatrix.identity(C).tolist()

    def row_add(i, j, k):  # row_i += k * row_j
        if not k:
            return
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        Li[i] = [x + k * y for x, y in zip(Li[i], Li[j])]
        for row in L:  # L <- L E^-1: col_j -= k col_i
            row[j] -= k * row[i]

    def row_swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        Li[i], Li[j] = Li[j], Li[i]
        for row in L:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        Li[i] = [-x for x in Li[i]]
        for row in L:
            row[i] = -row[i]

    def col_add(i, j, k):  # col_i += k * col_j
        if not k:
            return
        for row in a:
            row[i] += k * row[j]
        for row in Ri:
            row[i] += k * row[j]
        Rt[j] = [x - k * y for x, y in zip(Rt[j], Rt[i])]  # Rt <- F^-1 Rt

    def col_swap(i, j):
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in Ri:
            row[i], row[j] = row[j], row[i]
        Rt[i], Rt[j] = Rt[j], Rt[i]

    for t in range(min(R, C)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, R) for j in range(t, C) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            row_swap(t, pi)
            col_swap(t, pj)
            done = True
            for i in range(t + 1, R):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, C):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, R) for j in range(t + 1, C) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if t < R and t < C and a[t][t] < 0:
            row_neg(t)

    diag = tuple(a[i][i] for i in range(min(R, C)))

    def mk(x, r, c):
        return IntMatrix(r, c, tuple(tuple(row) for row in x))

    return SmithForm(diag, mk(L, R, R), mk(Rt, C, C), mk(Li, R, R), mk(Ri, C, C), (R, C))


def bareiss_rank(m: IntMatrix) -> int:
    """Rank by fraction-free (Bareiss) elimination; independent of the Smith routine."""
    a = m.tolist()
    R, C = m.rows, m.cols
    rank, prev = 0, 1
    for col in range(C):
        piv = next((i for i in range(rank, R) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, R):
            for j in range(col + 1, C):
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        if rank == R:
            break
    return rank


def abelian_invariants(p: Presentation) -> tuple:
    """Smith diagonal padded with zeros to one entry per generator.

    The abelianization is the direct sum of ``Z/d`` over these entries
    (``Z/0 = Z``, ``Z/1 = 0``).
    """
    snf = smith_normal_form(abelianization_matrix(p))
    return tuple(snf.diagonal) + (0,) * (p.ngens - len(snf.diagonal))


def first_betti(p: Presentation) -> int:
    """Rank of the abelianization: generators minus rank of the relator matrix."""
    return p.ngens - smith_normal_form(abelianization_matrix(p)).rank
