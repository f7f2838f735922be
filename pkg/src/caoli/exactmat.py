"""Exact dense integer matrices and vectors.

Entries are Python ints, so every operation is exact at any size. Nothing in
this module touches floating point, and every division checks its remainder.
Vectors are plain tuples of ints; matrices are immutable row-major tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, InexactDivisionError, StructureError

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    n_rows: int
    n_cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_rows < 1 or self.n_cols < 1:
            raise DimensionError(f"matrix shape must be positive, got {self.n_rows}x{self.n_cols}")
        if len(self.entries) != self.n_rows * self.n_cols:
            raise DimensionError(
                f"{self.n_rows}x{self.n_cols} matrix needs {self.n_rows * self.n_cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        rows = [tuple(int(v) for v in row) for row in rows]
        if not rows:
            raise DimensionError("matrix needs at least one row")
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise DimensionError(f"row {i} has {len(row)} entries, expected {width}")
        return cls(len(rows), width, tuple(v for row in rows for v in row))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence[int]) -> IntMatrix:
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(f"index ({i}, {j}) out of range for {self.n_rows}x{self.n_cols}")
        return self.entries[i * self.n_cols + j]

    def row(self, i: int) -> IntVector:
        start = i * self.n_cols
        return self.entries[start:start + self.n_cols]

    def rows(self) -> list[IntVector]:
        return [self.row(i) for i in range(self.n_rows)]

    def diagonal(self) -> IntVector:
        return tuple(self[i, i] for i in range(min(self.n_rows, self.n_cols)))

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        n = self.n_rows
        return all(self[i, j] == self[j, i] for i in range(n) for j in range(i + 1, n))

    def is_unit_lower_triangular(self) -> bool:
        if not self.is_square:
            return False
        n = self.n_rows
        return all(
            self[i, j] == (1 if i == j else 0)
            for i in range(n) for j in range(i, n)
        )

    def is_unit_upper_triangular(self) -> bool:
        return self.is_square and transpose(self).is_unit_lower_triangular()

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return mat_mul(self, other)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows())


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.n_cols != b.n_rows:
        raise DimensionError(f"cannot multiply {a.n_rows}x{a.n_cols} by {b.n_rows}x{b.n_cols}")
    b_cols = [tuple(b[k, j] for k in range(b.n_rows)) for j in range(b.n_cols)]
    out = []
    for i in range(a.n_rows):
        a_row = a.row(i)
        for col in b_cols:
            out.append(sum(x * y for x, y in zip(a_row, col) if x and y))
    return IntMatrix(a.n_rows, b.n_cols, tuple(out))


def transpose(a: IntMatrix) -> IntMatrix:
    return IntMatrix(
        a.n_cols, a.n_rows,
        tuple(a[i, j] for j in range(a.n_cols) for i in range(a.n_rows)),
    )


def vec_mat(x: Sequence[int], a: IntMatrix) -> IntVector:
    """Row vector times matrix, ``x @ a``."""
    if len(x) != a.n_rows:
        raise DimensionError(f"vector of length {len(x)} cannot multiply {a.n_rows}x{a.n_cols}")
    return tuple(
        sum(x[i] * a[i, j] for i in range(a.n_rows) if x[i])
        for j in range(a.n_cols)
    )


def quadratic_form(x: Sequence[int], b: IntMatrix) -> int:
    """Return ``sum_i sum_j x_i * b_ij * x_j``."""
    if not b.is_square:
        raise DimensionError(f"quadratic form needs a square matrix, got {b.n_rows}x{b.n_cols}")
    if len(x) != b.n_rows:
        raise DimensionError(f"vector of length {len(x)} does not match {b.n_rows}x{b.n_cols}")
    total = 0
    for i, xi in enumerate(x):
        if xi:
            total += xi * sum(b[i, j] * xj for j, xj in enumerate(x) if xj)
    return total


def solve_unit_upper(u: IntMatrix, z: Sequence[int]) -> IntVector:
    """Solve ``x @ u = z`` for x, where u is unit upper triangular.

    Column j of the product reads ``z_j = x_j + sum_{i<j} x_i u_ij``, so x is
    found left to right without ever forming the inverse.
    """
    if not u.is_unit_upper_triangular():
        raise StructureError("solve_unit_upper needs a unit upper-triangular matrix")
    n = u.n_rows
    if len(z) != n:
        raise DimensionError(f"right-hand side has length {len(z)}, expected {n}")
    x: list[int] = []
    for j in range(n):
        x.append(z[j] - sum(x[i] * u[i, j] for i in range(j) if x[i]))
    return tuple(x)


def exact_div_row(v: Sequence[int], s: int) -> IntVector:
    if s == 0:
        raise InexactDivisionError("division of a row by zero")
    out = []
    for k, value in enumerate(v):
        q, r = divmod(value, s)
        if r:
            raise InexactDivisionError(f"entry {k} ({value}) is not divisible by {s}")
        out.append(q)
    return tuple(out)
