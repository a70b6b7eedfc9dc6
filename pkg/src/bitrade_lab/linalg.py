"""Exact integer matrix algebra.

Everything here works over Python ints, so entries never overflow.  The
three public entry points are :func:`snf` (Smith normal form with the
unimodular transforms), :func:`hnf_row_lattice` and :func:`det_bareiss`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class NotSquare(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    """Dense, immutable matrix of arbitrary-precision integers."""

    nrows: int
    ncols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError(
                f"expected {self.nrows * self.ncols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [list(map(int, r)) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows(_identity(n), ncols=n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n
        )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self.entries[i * self.ncols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for i in range(self.nrows):
            r = self.row(i)
            out.append([sum(a * b for a, b in zip(r, c) if a) for c in cols])
        return IntMatrix.from_rows(out, ncols=other.ncols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.nrows, self.ncols, tuple(-x for x in self.entries))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[j::self.ncols]) if self.nrows else ()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], ncols=len(cols))

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def to_json(self) -> list[list[str]]:
        """Nested lists of decimal strings (entries routinely exceed 64 bits)."""
        return [[str(x) for x in self.row(i)] for i in range(self.nrows)]

    @classmethod
    def from_json(cls, data: list[list[str]], ncols: int | None = None) -> "IntMatrix":
        return cls.from_rows([[int(x) for x in r] for r in data], ncols=ncols)

    def __str__(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class SnfResult:
    d: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i, i] for i in range(min(self.d.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _min_abs(a: list[list[int]], t: int) -> tuple[int, int] | None:
    # Row-major scan; a 1 cannot be beaten, so stop there.
    best = None
    best_val = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            x = row[j]
            if x:
                ax = x if x > 0 else -x
                if best is None or ax < best_val:
                    best, best_val = (i, j), ax
                    if ax == 1:
                        return best
    return best


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form ``d = u @ m @ v`` with unimodular ``u`` and ``v``.

    Pivots are chosen as the smallest nonzero absolute value in the
    remaining block, ties broken by lowest (row, column).  The diagonal of
    ``d`` is nonnegative and forms a divisibility chain.
    """
    nr, nc = m.shape
    a = m.rows()
    u = _identity(nr)
    vt = _identity(nc)  # rows of vt are the columns of v

    def row_op(i: int, k: int, q: int, start: int) -> None:
        # row_i -= q * row_k; columns before `start` are zero in both rows
        ai, at = a[i], a[k]
        for j in range(start, nc):
            if at[j]:
                ai[j] -= q * at[j]
        ui, ut = u[i], u[k]
        for j in range(nr):
            if ut[j]:
                ui[j] -= q * ut[j]

    def col_op(j: int, t: int, q: int) -> None:
        # col_j -= q * col_t
        for i in range(t, nr):
            ai = a[i]
            if ai[t]:
                ai[j] -= q * ai[t]
        vj, vtt = vt[j], vt[t]
        for k in range(nc):
            if vtt[k]:
                vj[k] -= q * vtt[k]

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        vt[j], vt[k] = vt[k], vt[j]

    for t in range(min(nr, nc)):
        pos = _min_abs(a, t)
        if pos is None:
            break
        if pos[0] != t:
            swap_rows(t, pos[0])
        if pos[1] != t:
            swap_cols(t, pos[1])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    row_op(i, t, a[i][t] // p, t)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    col_op(j, t, a[t][j] // p)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder is now smaller than the pivot; move the smallest in
                best, best_val = None, abs(p)
                for i in range(t + 1, nr):
                    if a[i][t] and abs(a[i][t]) < best_val:
                        best, best_val = ("r", i), abs(a[i][t])
                for j in range(t + 1, nc):
                    if a[t][j] and abs(a[t][j]) < best_val:
                        best, best_val = ("c", j), abs(a[t][j])
                if best is not None:
                    if best[0] == "r":
                        swap_rows(t, best[1])
                    else:
                        swap_cols(t, best[1])
                continue
            if abs(p) != 1:
                bad = _first_not_divisible(a, t, p)
                if bad is not None:
                    row_op(t, bad, -1, t)  # row_t += row_bad
                    continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    d = IntMatrix.from_rows(a, ncols=nc)
    return SnfResult(d, IntMatrix.from_rows(u, ncols=nr), IntMatrix.from_rows(vt, ncols=nc).transpose())


def _first_not_divisible(a: list[list[int]], t: int, p: int) -> int | None:
    for i in range(t + 1, len(a)):
        row = a[i]
        for j in range(t + 1, len(row)):
            if row[j] % p:
                return i
    return None


def hnf_row_lattice(m: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by the rows of ``m``.

    Output rows are in echelon form with positive pivots, entries above each
    pivot reduced into ``[0, pivot)``; zero rows are dropped.
    """
    a = m.rows()
    nr, nc = m.shape
    p = 0
    pivots = []
    for col in range(nc):
        if p >= nr:
            break
        while True:
            nz = [i for i in range(p, nr) if a[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(a[i][col]), i))
            a[p], a[k] = a[k], a[p]
            clean = True
            for i in range(p + 1, nr):
                if a[i][col]:
                    q = a[i][col] // a[p][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[p])]
                    if a[i][col]:
                        clean = False
            if clean:
                break
        if a[p][col] == 0:
            continue
        if a[p][col] < 0:
            a[p] = [-x for x in a[p]]
        for i in range(p):
            q = a[i][col] // a[p][col]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[p])]
        pivots.append(col)
        p += 1
    return IntMatrix.from_rows(a[:p], ncols=nc)


def det_bareiss(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square():
        raise NotSquare(f"determinant of a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = m.rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        ak = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """Rows spanning the integer lattice ``{x : m @ x = 0}``."""
    res = snf(m)
    r = res.rank
    v = res.v
    return IntMatrix.from_rows(
        [list(v.column(j)) for j in range(r, m.ncols)], ncols=m.ncols
    )
