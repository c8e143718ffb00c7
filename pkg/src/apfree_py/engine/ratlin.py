"""Exact rational dense matrices and reduced row echelon form."""

from collections.abc import Iterable, Sequence
from fractions import Fraction

from ..exceptions import DimensionMismatchError, TraceFormatError

Rat = Fraction


class RatMatrix:
    """Immutable dense matrix of exact rationals, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence[Fraction]]):
        """Initialize the matrix.

        Args:
            rows: Number of rows
            cols: Number of columns
            entries: Row-major grid with exactly rows x cols values
        """
        grid = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if len(grid) != rows or any(len(row) != cols for row in grid):
            raise DimensionMismatchError(
                (rows, cols),
                (len(grid), len(grid[0]) if grid else 0),
                message=f"Entry grid does not have shape {rows}x{cols}",
            )
        self.rows = rows
        self.cols = cols
        self.entries = grid

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | Fraction]], cols: int | None = None):
        """Build from a list of rows; `cols` is needed only when there are no rows."""
        width = len(rows[0]) if rows else (cols or 0)
        return cls(len(rows), width, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        return cls(
            size, size, [[1 if i == j else 0 for j in range(size)] for i in range(size)]
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def scale(self, factor: int | Fraction) -> "RatMatrix":
        return RatMatrix(
            self.rows, self.cols, [[x * factor for x in row] for row in self.entries]
        )

    def delete_columns(self, columns: Iterable[int]) -> "RatMatrix":
        drop = set(columns)
        keep = [j for j in range(self.cols) if j not in drop]
        return RatMatrix(
            self.rows, len(keep), [[row[j] for j in keep] for row in self.entries]
        )

    def select_columns(self, columns: Sequence[int]) -> "RatMatrix":
        return RatMatrix(
            self.rows, len(columns), [[row[j] for j in columns] for row in self.entries]
        )

    def apply(self, vector: Sequence[int | Fraction]) -> list[Fraction]:
        """Matrix-vector product M·x."""
        if len(vector) != self.cols:
            raise DimensionMismatchError(self.shape, (len(vector), 1))
        return [
            sum((a * x for a, x in zip(row, vector, strict=True)), Fraction(0))
            for row in self.entries
        ]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        """Dump format: one row per line, exact entries separated by single spaces."""
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)

    @classmethod
    def from_text(cls, text: str) -> "RatMatrix":
        """Parse the dump format produced by to_text."""
        rows: list[list[Fraction]] = []
        for line in text.strip().splitlines():
            if not line.strip():
                continue
            try:
                rows.append([Fraction(token) for token in line.split()])
            except ValueError as e:
                raise TraceFormatError(f"Bad matrix entry in line '{line}'", line) from e
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise TraceFormatError("Matrix rows have different lengths")
        return cls.from_rows(rows)


def rref_with_pivots(matrix: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the pivot column of each nonzero row.

    Pivot rule: first nonzero entry in column order, no magnitude pivoting.
    """
    grid = [list(row) for row in matrix.entries]
    pivots: list[int] = []
    pivot_row = 0
    for col in range(matrix.cols):
        if pivot_row == matrix.rows:
            break
        found = next(
            (r for r in range(pivot_row, matrix.rows) if grid[r][col] != 0), None
        )
        if found is None:
            continue
        grid[pivot_row], grid[found] = grid[found], grid[pivot_row]
        lead = grid[pivot_row][col]
        if lead != 1:
            grid[pivot_row] = [x / lead for x in grid[pivot_row]]
        pivot = grid[pivot_row]
        for r in range(matrix.rows):
            if r == pivot_row:
                continue
            factor = grid[r][col]
            if factor != 0:
                grid[r] = [x - factor * y for x, y in zip(grid[r], pivot, strict=True)]
        pivots.append(col)
        pivot_row += 1
    return RatMatrix(matrix.rows, matrix.cols, grid), pivots


def rref(matrix: RatMatrix) -> tuple[RatMatrix, int]:
    """Unique reduced row echelon form of M and its rank."""
    reduced, pivots = rref_with_pivots(matrix)
    return reduced, len(pivots)


def rank(matrix: RatMatrix) -> int:
    return rref(matrix)[1]


def mat_mul(left: RatMatrix, right: RatMatrix) -> RatMatrix:
    """Exact product L·R."""
    if left.cols != right.rows:
        raise DimensionMismatchError(left.shape, right.shape)
    columns = [right.column(j) for j in range(right.cols)]
    return RatMatrix(
        left.rows,
        right.cols,
        [
            [
                sum((a * b for a, b in zip(row, col, strict=True)), Fraction(0))
                for col in columns
            ]
            for row in left.entries
        ],
    )


def is_invertible(matrix: RatMatrix) -> bool:
    """True iff M is square with full rank."""
    return matrix.rows == matrix.cols and rank(matrix) == matrix.rows


def row_space_equal(first: RatMatrix, second: RatMatrix) -> bool:
    """Same column count and identical nonzero RREF rows."""
    if first.cols != second.cols:
        return False
    a, rank_a = rref(first)
    b, rank_b = rref(second)
    return rank_a == rank_b and a.entries[:rank_a] == b.entries[:rank_b]
