"""Exact dense linear algebra over the rationals.

Plain Gaussian elimination on Fraction entries, no floating point and
no pivot heuristics: elimination always scans columns left to right
and rows top to bottom, so ranks, echelon forms, kernels and
intersections come out bit-for-bit identical on every run.  Matrices
at this scale are tiny (tens of rows), so density costs nothing.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain

from .errors import DimensionMismatchError

Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_vector(entries) -> Vector:
    return tuple(Fraction(x) for x in entries)


class RationalMatrix:
    """Immutable rational matrix stored row-major."""

    __slots__ = ("num_rows", "num_cols", "_rows")

    def __init__(self, rows, num_cols: int | None = None):
        data = tuple(as_vector(r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionMismatchError("ragged rows")
            if num_cols is not None and num_cols != width:
                raise DimensionMismatchError("num_cols does not match row width")
            num_cols = width
        self.num_rows = len(data)
        self.num_cols = num_cols if num_cols is not None else 0
        self._rows = data

    @classmethod
    def zeros(cls, num_rows: int, num_cols: int) -> "RationalMatrix":
        return cls([[_ZERO] * num_cols for _ in range(num_rows)], num_cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def stack(cls, *matrices: "RationalMatrix") -> "RationalMatrix":
        widths = {m.num_cols for m in matrices}
        if len(widths) > 1:
            raise DimensionMismatchError("stacked matrices must share a column count")
        width = widths.pop() if widths else 0
        return cls([r for m in matrices for r in m._rows], width)

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i][j]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self._rows[i][j] for i in range(self.num_rows)] for j in range(self.num_cols)],
            self.num_rows,
        )

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (
            self.num_rows == other.num_rows
            and self.num_cols == other.num_cols
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.num_rows, self.num_cols, self._rows))

    def __repr__(self):
        return f"RationalMatrix({self.num_rows}x{self.num_cols})"

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.num_rows, self.num_cols) != (other.num_rows, other.num_cols):
            raise DimensionMismatchError("shape mismatch in addition")
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            self.num_cols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-a for a in r] for r in self._rows], self.num_cols)

    def __rmul__(self, scalar) -> "RationalMatrix":
        c = Fraction(scalar)
        return RationalMatrix([[c * a for a in r] for r in self._rows], self.num_cols)

    def __mul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.num_cols != other.num_rows:
            raise DimensionMismatchError("inner dimensions do not match")
        cols = other.transpose()._rows
        return RationalMatrix(
            [[_dot(r, c) for c in cols] for r in self._rows], other.num_cols
        )

    def mat_vec(self, vec) -> Vector:
        v = as_vector(vec)
        if len(v) != self.num_cols:
            raise DimensionMismatchError("vector length does not match column count")
        return tuple(_dot(r, v) for r in self._rows)

    @property
    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self._rows)

    # ------------------------------------------------------------------
    # elimination

    def rref(self) -> tuple["RationalMatrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        rows = [list(r) for r in self._rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.num_cols):
            pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            lead = rows[r][c]
            rows[r] = [x / lead for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return RationalMatrix(rows, self.num_cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def row_space(self) -> "RationalMatrix":
        """Canonical echelon basis of the row space (nonzero rref rows)."""
        reduced, pivots = self.rref()
        return RationalMatrix(reduced.rows[: len(pivots)], self.num_cols)

    def kernel(self) -> tuple[Vector, ...]:
        """Exact kernel basis, one vector per free column.

        Each vector is scaled so its first nonzero entry is 1, which
        makes the basis canonical.
        """
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.num_cols):
            if free in pivot_set:
                continue
            v = [_ZERO] * self.num_cols
            v[free] = _ONE
            for r, c in enumerate(pivots):
                v[c] = -reduced.entry(r, free)
            lead = next(x for x in v if x != 0)
            basis.append(tuple(x / lead for x in v))
        return tuple(basis)


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), _ZERO)


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a row space.

    Rows are kept fully reduced (leading 1, zeros above and below every
    pivot), so membership tests and coset reduction are one pass.
    """

    def __init__(self, num_cols: int):
        self.num_cols = num_cols
        self._pivot_rows: dict[int, list[Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    def reduce(self, vec) -> list[Fraction]:
        """Residue of ``vec`` modulo the current row space."""
        v = [Fraction(x) for x in vec]
        if len(v) != self.num_cols:
            raise DimensionMismatchError("vector length does not match column count")
        for col, row in self._pivot_rows.items():
            c = v[col]
            if c:
                for j in range(self.num_cols):
                    # rows are interreduced, so one subtraction per pivot suffices
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def insert(self, vec) -> bool:
        """Add ``vec`` to the span; returns True when the rank grew."""
        v = self.reduce(vec)
        pivot = next((j for j, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        lead = v[pivot]
        v = [x / lead for x in v]
        for row in self._pivot_rows.values():
            c = row[pivot]
            if c:
                for j in range(self.num_cols):
                    if v[j]:
                        row[j] -= c * v[j]
        self._pivot_rows[pivot] = v
        return True

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def rows(self) -> RationalMatrix:
        ordered = [self._pivot_rows[c] for c in sorted(self._pivot_rows)]
        return RationalMatrix(ordered, self.num_cols)


def intersect_row_spaces(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Echelon basis of rowspace(a) and rowspace(b) intersected.

    Zassenhaus: row reduce the block matrix [[A A], [B 0]]; the right
    halves of rows whose left half vanished span the intersection.
    """
    if a.num_cols != b.num_cols:
        raise DimensionMismatchError("row spaces live in different dimensions")
    n = a.num_cols
    block = RationalMatrix(
        [list(r) + list(r) for r in a.rows] + [list(r) + [_ZERO] * n for r in b.rows],
        2 * n,
    )
    reduced, pivots = block.rref()
    found = [
        row[n:]
        for row in reduced.rows[: len(pivots)]
        if all(x == 0 for x in row[:n])
    ]
    return RationalMatrix(found, n).row_space()


def quotient_complement(subspace: RationalMatrix, preferred=()) -> list[Vector]:
    """Representatives completing ``subspace`` to its full ambient space.

    Scans the preferred candidates first, then the standard unit
    vectors, keeping each vector that increases the rank; the result
    has length (ambient dimension - rank of subspace) and the choice is
    deterministic.
    """
    n = subspace.num_cols
    ech = EchelonBasis(n)
    for row in subspace.rows:
        ech.insert(row)
    units = ([_ONE if j == i else _ZERO for j in range(n)] for i in range(n))
    chosen: list[Vector] = []
    for cand in chain(preferred, units):
        if ech.rank == n:
            break
        v = as_vector(cand)
        if len(v) != n:
            raise DimensionMismatchError("candidate length does not match ambient dimension")
        if ech.insert(v):
            chosen.append(v)
    return chosen


class LinearSolver:
    """Expresses vectors as combinations of a fixed list of rows.

    Factors the transposed system once, then answers many queries: for
    a row matrix M and target t, ``solve(t)`` returns x with x M = t,
    or None when t is outside the row space.  Free coordinates are set
    to zero, so answers are deterministic; when the rows are linearly
    independent the answer is the unique one.
    """

    def __init__(self, m: RationalMatrix):
        self.num_rows = m.num_rows
        self.num_cols = m.num_cols
        # eliminate [M^T | I] with pivots restricted to the M^T part
        a = [list(r) for r in m.transpose().rows]
        n, k = self.num_cols, self.num_rows
        t = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
        pivots: list[int] = []
        r = 0
        for c in range(k):
            pivot_row = next((i for i in range(r, n) if a[i][c] != 0), None)
            if pivot_row is None:
                continue
            a[r], a[pivot_row] = a[pivot_row], a[r]
            t[r], t[pivot_row] = t[pivot_row], t[r]
            lead = a[r][c]
            a[r] = [x / lead for x in a[r]]
            t[r] = [x / lead for x in t[r]]
            for i in range(n):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                    t[i] = [x - f * y for x, y in zip(t[i], t[r])]
            pivots.append(c)
            r += 1
            if r == n:
                break
        self._pivots = pivots
        self._transform = t

    def solve(self, target) -> Vector | None:
        t = as_vector(target)
        if len(t) != self.num_cols:
            raise DimensionMismatchError("target length does not match column count")
        y = [_dot(row, t) for row in self._transform]
        x = [_ZERO] * self.num_rows
        for i, c in enumerate(self._pivots):
            x[c] = y[i]
        if any(y[i] != 0 for i in range(len(self._pivots), self.num_cols)):
            return None
        return tuple(x)
