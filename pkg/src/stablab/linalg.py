"""Dense exact linear algebra over the rational-function field.

Solving is fraction-free (Bareiss) on a denominator-cleared copy, so all
intermediate entries stay polynomial; back-substitution returns exact
rational-function solutions together with a kernel basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .ring import DivisionByZero, LaurentPoly, RationalFunction, RingError, VarTable


class LinalgError(RingError):
    pass


class Inconsistent(LinalgError):
    pass


class Singular(LinalgError):
    pass


class DimensionMismatch(LinalgError):
    pass


class Matrix:
    """Dense matrix of RationalFunction entries over a shared VarTable."""

    __slots__ = ("table", "rows", "cols", "entries")

    def __init__(self, table: VarTable, entries: Sequence[Sequence[RationalFunction]]):
        self.table = table
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged rows")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, table: VarTable, rows: int, cols: int) -> "Matrix":
        z = RationalFunction.const(table, 0)
        return cls(table, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, table: VarTable, n: int) -> "Matrix":
        z = RationalFunction.const(table, 0)
        o = RationalFunction.const(table, 1)
        return cls(table, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, table: VarTable, diag: Sequence[RationalFunction]) -> "Matrix":
        z = RationalFunction.const(table, 0)
        n = len(diag)
        return cls(table, [[diag[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, table: VarTable, rows) -> "Matrix":
        return cls(table, rows)

    def copy(self) -> "Matrix":
        return Matrix(self.table, [list(r) for r in self.entries])

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __setitem__(self, ij, value: RationalFunction):
        i, j = ij
        self.entries[i][j] = value

    def row(self, i: int) -> list[RationalFunction]:
        return list(self.entries[i])

    def col(self, j: int) -> list[RationalFunction]:
        return [self.entries[i][j] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            self.entries[i][j] == other.entries[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __hash__(self):
        return hash((self.rows, self.cols))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            self.table,
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            self.table,
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.table, [[-e for e in row] for row in self.entries])

    def scale(self, c: RationalFunction) -> "Matrix":
        return Matrix(self.table, [[e * c for e in row] for row in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
        zero = RationalFunction.const(self.table, 0)
        out = [[zero] * other.cols for _ in range(self.rows)]
        # skip structural zeros; matrices in this package are often sparse
        for i in range(self.rows):
            arow = self.entries[i]
            orow = out[i]
            for k in range(self.cols):
                a = arow[k]
                if a.is_zero():
                    continue
                brow = other.entries[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b.is_zero():
                        continue
                    orow[j] = orow[j] + a * b
        return Matrix(self.table, out)

    def apply(self, vec: Sequence[RationalFunction]) -> list[RationalFunction]:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        zero = RationalFunction.const(self.table, 0)
        out = []
        for i in range(self.rows):
            acc = zero
            for k, a in enumerate(self.entries[i]):
                if not a.is_zero() and not vec[k].is_zero():
                    acc = acc + a * vec[k]
            out.append(acc)
        return out

    def transpose(self) -> "Matrix":
        return Matrix(
            self.table,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; row/col index = (self index, other index)."""
        zero = RationalFunction.const(self.table, 0)
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        out = [[zero] * cols for _ in range(rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.entries[i][j]
                if a.is_zero():
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        b = other.entries[k][l]
                        if not b.is_zero():
                            out[i * other.rows + k][j * other.cols + l] = a * b
        return Matrix(self.table, out)

    def map(
        self, fn: Callable[[RationalFunction], RationalFunction], table: VarTable | None = None
    ) -> "Matrix":
        return Matrix(table or self.table, [[fn(e) for e in row] for row in self.entries])

    def _same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")

    # -- inversion and determinant -----------------------------------------

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        inv = Matrix.identity(self.table, n).entries
        for col in range(n):
            piv = None
            best = None
            for r in range(col, n):
                e = a[r][col]
                if not e.is_zero():
                    size = len(e.num) + len(e.den)
                    if best is None or size < best:
                        best = size
                        piv = r
            if piv is None:
                raise Singular("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col]
            pinv = p.inv()
            a[col] = [e * pinv for e in a[col]]
            inv[col] = [e * pinv for e in inv[col]]
            for r in range(n):
                if r == col:
                    continue
                f = a[r][col]
                if f.is_zero():
                    continue
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return Matrix(self.table, inv)

    def det(self) -> RationalFunction:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return RationalFunction.const(self.table, 1)
        a = [list(row) for row in self.entries]
        sign = 1
        result = RationalFunction.const(self.table, 1)
        for col in range(n):
            piv = None
            for r in range(col, n):
                if not a[r][col].is_zero():
                    piv = r
                    break
            if piv is None:
                return RationalFunction.const(self.table, 0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                sign = -sign
            p = a[col][col]
            result = result * p
            pinv = p.inv()
            for r in range(col + 1, n):
                f = a[r][col]
                if f.is_zero():
                    continue
                f = f * pinv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        if sign < 0:
            result = -result
        return result

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


@dataclass
class LinearSolution:
    """Result of solve_linear: particular solution plus kernel basis."""

    status: str  # "unique" | "affine"
    particular: list[RationalFunction]
    kernel: list[list[RationalFunction]]

    @property
    def dimension(self) -> int:
        return len(self.kernel)


def _clear_row(row: list[RationalFunction]) -> list[LaurentPoly]:
    """Scale a row of rational functions to a common polynomial row."""
    table = row[0].table
    den = LaurentPoly.const(table, 1)
    for e in row:
        if e.is_zero():
            continue
        # multiply by e.den unless already divisible
        if den.exact_div(e.den) is None:
            den = den * e.den
    out = []
    for e in row:
        if e.is_zero():
            out.append(LaurentPoly.zero(table))
        else:
            q = den.exact_div(e.den)
            out.append(e.num * q)
    return out


def solve_linear(A: Matrix, b: Sequence[RationalFunction]) -> LinearSolution:
    """Exact solution of A x = b by fraction-free Gaussian elimination.

    Returns the unique solution or an affine solution space (particular
    point plus kernel basis); raises Inconsistent when no solution exists.
    """
    if len(b) != A.rows:
        raise DimensionMismatch("right-hand side length mismatch")
    table = A.table
    m, n = A.rows, A.cols
    aug = [_clear_row(A.row(i) + [b[i]]) for i in range(m)]
    one = LaurentPoly.const(table, 1)
    prev = one
    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    for c in range(n):
        piv = None
        best = None
        for i in range(r, m):
            if not aug[i][c].is_zero():
                size = len(aug[i][c])
                if best is None or size < best:
                    best = size
                    piv = i
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(r + 1, m):
            if all(aug[i][j].is_zero() for j in range(c, n + 1)):
                continue
            new_row = []
            for j in range(n + 1):
                val = aug[r][c] * aug[i][j] - aug[i][c] * aug[r][j]
                q = val.exact_div(prev)
                if q is None:
                    raise LinalgError("fraction-free step failed to divide")
                new_row.append(q)
            aug[i] = new_row
        prev = aug[r][c]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    rank = len(pivots)
    for i in range(rank, m):
        if all(aug[i][j].is_zero() for j in range(n)) and not aug[i][n].is_zero():
            raise Inconsistent("no solution")
    pivot_cols = [c for (_, c) in pivots]
    free_cols = [c for c in range(n) if c not in pivot_cols]
    zero = RationalFunction.const(table, 0)

    def back_substitute(free_assign: dict[int, RationalFunction], homogeneous: bool):
        x = [zero] * n
        for c, v in free_assign.items():
            x[c] = v
        for k in range(rank - 1, -1, -1):
            i, c = pivots[k]
            acc = zero if homogeneous else RationalFunction.from_poly(aug[i][n])
            for j in range(c + 1, n):
                if not aug[i][j].is_zero() and not x[j].is_zero():
                    acc = acc - RationalFunction.from_poly(aug[i][j]) * x[j]
            x[c] = acc / RationalFunction.from_poly(aug[i][c])
        return x

    particular = back_substitute({c: zero for c in free_cols}, homogeneous=False)
    kernel = []
    for fc in free_cols:
        assign = {c: zero for c in free_cols}
        assign[fc] = RationalFunction.const(table, 1)
        kernel.append(back_substitute(assign, homogeneous=True))
    status = "unique" if not kernel else "affine"
    return LinearSolution(status=status, particular=particular, kernel=kernel)
