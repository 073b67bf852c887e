"""
Exact rational linear algebra.

Every entry is a `fractions.Fraction`; nothing in cylab ever touches a float.
Matrices are immutable values and all operations are pure functions.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from cylab.errors import ShapeMismatch, SingularMatrix

Scalar = Fraction | int


def to_rational(value: Scalar | str) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True, repr=True)
class RationalMatrix:
    """
    A dense row-major matrix of exact rationals.

    Attributes:
        rows (int): Number of rows.
        cols (int): Number of columns.
        entries (tuple[Fraction, ...]): Row-major entries, `rows * cols` of them.
    """

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch(f"negative shape {self.rows}x{self.cols}")

        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                "{} entries do not fill a {}x{} matrix".format(
                    len(self.entries), self.rows, self.cols
                )
            )

        object.__setattr__(
            self, "entries", tuple(to_rational(value) for value in self.entries)
        )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None
    ) -> "RationalMatrix":
        """
        Builds a matrix from a list of rows.

        Parameters:
            - rows (Sequence[Sequence[Scalar]]): The rows, all of equal length.
            - cols (int, optional): Column count, needed only when `rows` is empty.

        Raises:
            - ShapeMismatch: If the rows are ragged.
        """
        width = len(rows[0]) if rows else (cols or 0)

        if any(len(row) != width for row in rows):
            raise ShapeMismatch("ragged rows")

        return cls(len(rows), width, tuple(value for row in rows for value in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> "RationalMatrix":
        return cls.from_rows(columns).transpose()

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls.diag([1] * size)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "RationalMatrix":
        size = len(values)
        return cls(
            size,
            size,
            tuple(
                values[i] if i == j else Fraction(0)
                for i in range(size)
                for j in range(size)
            ),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )

        other_cols = other.columns()
        return RationalMatrix(
            self.rows,
            other.cols,
            tuple(
                sum((a * b for a, b in zip(self.row(i), col)), Fraction(0))
                for i in range(self.rows)
                for col in other_cols
            ),
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")

        return RationalMatrix(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def scale(self, factor: Scalar) -> "RationalMatrix":
        return RationalMatrix(
            self.rows, self.cols, tuple(factor * value for value in self.entries)
        )

    def submatrix(
        self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None
    ) -> "RationalMatrix":
        row_ids = list(range(self.rows)) if rows is None else list(rows)
        col_ids = list(range(self.cols)) if cols is None else list(cols)
        return RationalMatrix(
            len(row_ids),
            len(col_ids),
            tuple(self[i, j] for i in row_ids for j in col_ids),
        )

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ShapeMismatch("hstack needs equal row counts")

        return RationalMatrix.from_rows(
            [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)],
            cols=self.cols + other.cols,
        )

    def is_zero(self) -> bool:
        return all(value == 0 for value in self.entries)


def rref(matrix: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """
    Reduced row-echelon form by Gauss-Jordan elimination.

    Returns:
        tuple: The reduced matrix and the indices of its pivot columns.
    """
    rows = matrix.to_rows()
    pivots: list[int] = []
    lead = 0

    for col in range(matrix.cols):
        pivot = next((i for i in range(lead, matrix.rows) if rows[i][col] != 0), None)
        if pivot is None:
            continue

        rows[lead], rows[pivot] = rows[pivot], rows[lead]
        inverse = 1 / rows[lead][col]
        rows[lead] = [value * inverse for value in rows[lead]]

        for i in range(matrix.rows):
            if i != lead and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[lead])]

        pivots.append(col)
        lead += 1
        if lead == matrix.rows:
            break

    return RationalMatrix.from_rows(rows, cols=matrix.cols), tuple(pivots)


def rank(matrix: RationalMatrix) -> int:
    return len(rref(matrix)[1])


def det(matrix: RationalMatrix) -> Fraction:
    """
    Determinant by fraction-exact elimination.

    Raises:
        - ShapeMismatch: If the matrix is not square.
    """
    if not matrix.is_square:
        raise ShapeMismatch(f"determinant of a {matrix.rows}x{matrix.cols} matrix")

    rows = matrix.to_rows()
    size = matrix.rows
    result = Fraction(1)

    for col in range(size):
        pivot = next((i for i in range(col, size) if rows[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)

        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            result = -result

        result *= rows[col][col]
        for i in range(col + 1, size):
            if rows[i][col] != 0:
                factor = rows[i][col] / rows[col][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[col])]

    return result


def cofactor_det(matrix: RationalMatrix) -> Fraction:
    """Laplace expansion along the first row. Exponential, kept as an oracle for `det`."""
    if not matrix.is_square:
        raise ShapeMismatch(f"determinant of a {matrix.rows}x{matrix.cols} matrix")

    if matrix.rows == 0:
        return Fraction(1)

    total = Fraction(0)
    rest = range(1, matrix.rows)
    for j in range(matrix.cols):
        if matrix[0, j] == 0:
            continue
        minor = matrix.submatrix(rest, [k for k in range(matrix.cols) if k != j])
        sign = 1 if j % 2 == 0 else -1
        total += sign * matrix[0, j] * cofactor_det(minor)

    return total


def invert(matrix: RationalMatrix) -> RationalMatrix:
    """
    Inverts a square matrix exactly.

    Parameters:
        - matrix (RationalMatrix): A square nonsingular matrix.

    Returns:
        - RationalMatrix: The inverse, with `matrix @ result == identity`.

    Raises:
        - ShapeMismatch: If the matrix is not square.
        - SingularMatrix: If its determinant vanishes.
    """
    if not matrix.is_square:
        raise ShapeMismatch(f"cannot invert a {matrix.rows}x{matrix.cols} matrix")

    size = matrix.rows
    reduced, pivots = rref(matrix.hstack(RationalMatrix.identity(size)))

    if pivots[:size] != tuple(range(size)):
        raise SingularMatrix("matrix is singular")

    return reduced.submatrix(cols=range(size, 2 * size))


def solve(matrix: RationalMatrix, rhs: Sequence[Scalar]) -> tuple[Fraction, ...]:
    """Solves `matrix @ x = rhs` by Cramer's rule."""
    if not matrix.is_square or len(rhs) != matrix.rows:
        raise ShapeMismatch("Cramer's rule needs a square system")

    denominator = det(matrix)
    if denominator == 0:
        raise SingularMatrix("system matrix is singular")

    solution = []
    for j in range(matrix.cols):
        replaced = RationalMatrix.from_rows(
            [
                [rhs[i] if k == j else matrix[i, k] for k in range(matrix.cols)]
                for i in range(matrix.rows)
            ]
        )
        solution.append(det(replaced) / denominator)

    return tuple(solution)


def left_kernel_basis(matrix: RationalMatrix) -> RationalMatrix:
    """
    Basis of `{v : v @ matrix = 0}` in reduced row-echelon form.

    The result has `matrix.rows - rank(matrix)` rows; an empty basis is a
    `0 x matrix.rows` matrix.
    """
    reduced, pivots = rref(matrix.transpose())
    size = matrix.rows
    free = [j for j in range(size) if j not in pivots]

    basis = []
    for f in free:
        vector = [Fraction(0)] * size
        vector[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vector[p] = -reduced[i, f]
        basis.append(vector)

    if not basis:
        return RationalMatrix.zeros(0, size)

    return rref(RationalMatrix.from_rows(basis))[0]


def minors(matrix: RationalMatrix, k: int):
    """Yields `(row_ids, col_ids, value)` for every k x k minor."""
    for row_ids in itertools.combinations(range(matrix.rows), k):
        for col_ids in itertools.combinations(range(matrix.cols), k):
            yield row_ids, col_ids, det(matrix.submatrix(row_ids, col_ids))


def all_minors_nonzero(matrix: RationalMatrix, k: int) -> bool:
    if k > min(matrix.rows, matrix.cols):
        raise ShapeMismatch(f"no {k}x{k} minors in a {matrix.rows}x{matrix.cols} matrix")

    return all(value != 0 for _, _, value in minors(matrix, k))


def vandermonde_matrix(points: Sequence[Scalar]) -> RationalMatrix:
    """Row i is `(1, p_i, p_i**2, ...)`."""
    size = len(points)
    return RationalMatrix.from_rows(
        [[to_rational(p) ** k for k in range(size)] for p in points], cols=size
    )


def vandermonde_det(points: Sequence[Scalar]) -> Fraction:
    result = Fraction(1)
    for i, j in itertools.combinations(range(len(points)), 2):
        result *= to_rational(points[j]) - to_rational(points[i])
    return result
